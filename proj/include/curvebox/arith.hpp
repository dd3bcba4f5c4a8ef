#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "curvebox/common.hpp"

namespace curvebox {

// Largest supported modulus. Products of two residues and a box coordinate
// stay well inside 128-bit intermediates.
inline constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

/// Polynomial over Z/qZ of degree d >= 2 whose leading coefficient is a unit.
/// Coefficients are stored reduced to [0, q), lowest degree first.
class ModPoly {
 public:
  /// Throws Error(InvalidInstance) naming the violated invariant.
  ModPoly(std::int64_t q, std::vector<std::int64_t> coeffs);

  std::int64_t modulus() const noexcept { return q_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }
  std::int64_t coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  std::int64_t leading() const noexcept { return coeffs_.back(); }

  friend bool operator==(const ModPoly&, const ModPoly&) = default;

 private:
  std::int64_t q_;
  std::vector<std::int64_t> coeffs_;
};

/// Half-open box (K, K+H] x (L, L+H].
struct BoxRegion {
  std::int64_t K = 0;
  std::int64_t L = 0;
  std::int64_t H = 1;

  /// Throws Error(InvalidInstance) when H < 1.
  static BoxRegion make(std::int64_t K, std::int64_t L, std::int64_t H);
  static BoxRegion origin(std::int64_t H) { return make(0, 0, H); }

  bool contains(std::int64_t x, std::int64_t y) const noexcept {
    return x > K && x - K <= H && y > L && y - L <= H;
  }
  bool normalized() const noexcept { return K == 0 && L == 0; }

  friend bool operator==(const BoxRegion&, const BoxRegion&) = default;
};

/// Canonical residue in [0, q).
inline std::int64_t mod_reduce(i128 x, std::int64_t q) {
  i128 r = x % q;
  if (r < 0) r += q;
  return static_cast<std::int64_t>(r);
}

/// Least absolute residue in (-q/2, q/2].
std::int64_t least_absolute_residue(i128 x, std::int64_t q);

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>(static_cast<i128>(a) * b % q);
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t q);
std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t q);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);
std::uint64_t prev_prime(std::uint64_t n);

/// Square roots of a modulo an odd prime p (Tonelli-Shanks). Returns the roots
/// in increasing order: none, one (a == 0), or two.
std::vector<std::int64_t> sqrt_mod_prime(std::int64_t a, std::int64_t p);

/// f(x) mod q by Horner's rule.
std::int64_t eval_poly_mod(const ModPoly& f, std::int64_t x);

/// |{y in (lo, lo+H] : y = r (mod q)}| in closed form.
std::int64_t interval_residue_count(std::int64_t lo, std::int64_t H, std::int64_t r,
                                    std::int64_t q);

/// Coefficients of g(X) = f(X + shift) mod q.
std::vector<std::int64_t> taylor_shift(std::span<const std::int64_t> coeffs,
                                       std::int64_t shift, std::int64_t q);

struct ShiftedInstance {
  ModPoly poly;
  BoxRegion box;
};

/// g(x) = f(x + K) - L (mod q) together with the box (0, H]^2.
ShiftedInstance shift_normalize(const ModPoly& f, const BoxRegion& box);

/// floor(x^(1/k)) for x >= 0.
std::int64_t integer_root(std::int64_t x, int k);

}  // namespace curvebox
