#pragma once

// Exact counters: congruence curves in boxes, integer points on lifted
// curves, and Vinogradov systems over sparse sets.

#include <cstdint>
#include <utility>
#include <vector>

#include "curvebox/arith.hpp"

namespace curvebox {

/// x in [1, H] admitting at least one companion y in [1, H].
struct SolutionSetX {
  std::vector<std::int64_t> elements;  // sorted
  std::int64_t H = 0;

  std::size_t size() const noexcept { return elements.size(); }
};

struct CurveCount {
  std::uint64_t N = 0;  // solutions counted with multiplicity
  SolutionSetX X;
};

/// y = f(x) (mod q) over (0, H]^2 in O(H). The box must be normalized.
CurveCount count_points_curve(const ModPoly& f, const BoxRegion& box);

/// y^2 - c0*y = f(x) (mod q), f cubic with unit leading coefficient.
class HyperellipticCurve {
 public:
  /// Throws Error(InvalidInstance) unless f has degree 3.
  HyperellipticCurve(ModPoly f, std::int64_t c0);

  const ModPoly& poly() const noexcept { return f_; }
  std::int64_t c0() const noexcept { return c0_; }
  std::int64_t modulus() const noexcept { return f_.modulus(); }

 private:
  ModPoly f_;
  std::int64_t c0_;
};

struct ShiftedHyperelliptic {
  HyperellipticCurve curve;
  BoxRegion box;
};

/// Moves the box to (0, H]^2: x -> x + K, y -> y + L.
ShiftedHyperelliptic shift_normalize(const HyperellipticCurve& c, const BoxRegion& box);

/// True when the per-x square-root path applies: q an odd prime and H^2 > q.
bool hyperelliptic_fast_path_applies(std::int64_t q, std::int64_t H);

CurveCount count_points_hyperelliptic(const HyperellipticCurve& c, const BoxRegion& box);
CurveCount count_points_hyperelliptic_double_loop(const HyperellipticCurve& c,
                                                  const BoxRegion& box);
/// Requires hyperelliptic_fast_path_applies's primality condition (odd prime q).
CurveCount count_points_hyperelliptic_fast(const HyperellipticCurve& c, const BoxRegion& box);

struct VinogradovInstance {
  std::vector<std::int64_t> X;
  int k = 1;
  int s = 1;

  /// Throws Error(InvalidArgument) on repeated elements or k, s < 1.
  static VinogradovInstance make(std::vector<std::int64_t> X, int k, int s);
  /// s <= k(k+1)/2, the regime of the mean value bound.
  bool in_critical_range() const noexcept { return 2 * s <= k * (k + 1); }
};

/// J_{k,s}(X) by meet-in-the-middle over all ordered s-tuples.
/// Throws Error(BudgetExceeded) when |X|^s > budget.
std::uint64_t vinogradov_count(const VinogradovInstance& inst,
                               std::uint64_t budget = kDefaultBudget);

/// J(X) == J(X + c).
bool vinogradov_shift_invariance_check(const VinogradovInstance& inst, std::int64_t c,
                                       std::uint64_t budget = kDefaultBudget);

/// Integer model z*y = w0 + w1 x + ... + wd x^d + t*q for t in [t_lo, t_hi].
struct LiftedCurve {
  std::int64_t q = 0;
  std::int64_t n = 0;  // witness: n = z (mod q), w_i = a_i n (mod q)
  std::int64_t z = 0;
  std::int64_t w0 = 0;
  std::vector<std::int64_t> w;  // w_1 .. w_d
  i128 t_lo = 0;
  i128 t_hi = -1;

  int degree() const noexcept { return static_cast<int>(w.size()); }
  bool empty_range() const noexcept { return t_lo > t_hi; }
};

/// Integer model n*y^2 - z1*y = w0 + w1 x + w2 x^2 + w3 x^3 + t*q.
struct LiftedHyperellipticCurve {
  std::int64_t q = 0;
  std::int64_t n = 0;
  std::int64_t z1 = 0;
  std::int64_t w0 = 0;
  std::vector<std::int64_t> w;  // w_1 .. w_3
  i128 t_lo = 0;
  i128 t_hi = -1;

  bool empty_range() const noexcept { return t_lo > t_hi; }
};

struct LiftedCount {
  std::vector<std::pair<i128, std::uint64_t>> per_t;  // only nonzero entries
  std::uint64_t total = 0;
};

/// Integer points (x, y) in (0, H]^2 on the lifted curve, per t.
LiftedCount count_lifted_points(const LiftedCurve& curve, const BoxRegion& box);
LiftedCount count_lifted_points(const LiftedHyperellipticCurve& curve, const BoxRegion& box);

/// floor(sqrt(x)) for x >= 0.
i128 isqrt128(i128 x);

}  // namespace curvebox
