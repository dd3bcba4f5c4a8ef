#pragma once

// Geometry of numbers over exact integers and rationals: lattices, LLL,
// enumeration in weighted bodies, successive minima and duality.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "curvebox/common.hpp"

namespace curvebox {

inline constexpr int kMaxDimension = 8;

using BigMatrix = std::vector<std::vector<BigInt>>;

/// Full-rank sublattice of Z^n spanned by the rows of an integer basis.
class IntegerLattice {
 public:
  /// Throws Error(InvalidArgument) if the rows are not square or singular.
  explicit IntegerLattice(std::vector<IntVector> rows);

  int dimension() const noexcept { return static_cast<int>(rows_.size()); }
  const std::vector<IntVector>& basis() const noexcept { return rows_; }
  const IntVector& row(int i) const { return rows_.at(static_cast<std::size_t>(i)); }
  /// |det(basis)|
  const BigInt& covolume() const noexcept { return covolume_; }

  BigMatrix big_basis() const;

 private:
  std::vector<IntVector> rows_;
  BigInt covolume_;
};

/// The lattice (1/denominator) * scaled.
struct DualLattice {
  IntegerLattice scaled;
  BigInt denominator;

  Rational covolume() const;
};

enum class BodyKind { SupBox, L1CrossPolytope };

/// Symmetric convex body with positive rational weights w:
///   SupBox:          |x_i| <= w_i
///   L1CrossPolytope: sum |x_i| / w_i <= 1
struct WeightedBody {
  BodyKind kind = BodyKind::SupBox;
  std::vector<Rational> weights;

  /// Throws Error(InvalidArgument) unless every weight is positive.
  static WeightedBody make(BodyKind kind, std::vector<Rational> weights);
  static WeightedBody unit(BodyKind kind, int n);

  int dimension() const noexcept { return static_cast<int>(weights.size()); }
  Rational volume() const;

  friend bool operator==(const WeightedBody&, const WeightedBody&) = default;
};

struct MinimaProfile {
  std::vector<Rational> lambdas;
  /// Witness i attains lambdas[i]; for a dual lattice these are the scaled
  /// integer vectors and the actual witness is witness / denominator.
  std::vector<IntVector> witnesses;
  BigInt denominator = 1;
};

struct EnumerationOptions {
  /// Upper bound on visited enumeration-tree nodes before BudgetExceeded.
  std::uint64_t max_visits = kDefaultBudget;
};

BigInt exact_determinant(const BigMatrix& m);

/// Row-style Hermite normal form: upper triangular, positive pivots, entries
/// above each pivot reduced into [0, pivot).
BigMatrix hermite_normal_form(const BigMatrix& rows);
bool same_lattice(const IntegerLattice& a, const IntegerLattice& b);

/// LLL with Lovasz parameter delta (default 99/100), exact integer arithmetic.
IntegerLattice lll_reduce(const IntegerLattice& lat, const Rational& delta = Rational(99, 100));
/// In-place variant on arbitrary-precision rows.
void lll_reduce_rows(BigMatrix& rows, const Rational& delta = Rational(99, 100));

/// Gauge of v with respect to body: the least t >= 0 with v in t*body.
Rational body_norm(std::span<const std::int64_t> v, const WeightedBody& body);

/// Every lattice vector with body_norm(v) <= scale, origin included.
std::vector<IntVector> enumerate_lattice_points(const IntegerLattice& lat,
                                                const WeightedBody& body,
                                                const Rational& scale,
                                                const EnumerationOptions& opts = {});
std::uint64_t count_lattice_points(const IntegerLattice& lat, const WeightedBody& body,
                                   const Rational& scale,
                                   const EnumerationOptions& opts = {});
/// Streaming form; visit is called once per point.
void for_each_lattice_point(const IntegerLattice& lat, const WeightedBody& body,
                            const Rational& scale,
                            const std::function<void(const IntVector&)>& visit,
                            const EnumerationOptions& opts = {});

MinimaProfile successive_minima(const IntegerLattice& lat, const WeightedBody& body,
                                const EnumerationOptions& opts = {});
MinimaProfile successive_minima(const DualLattice& lat, const WeightedBody& body,
                                const EnumerationOptions& opts = {});

/// Basis of the inverse transpose, over a common denominator.
DualLattice dual_lattice(const IntegerLattice& lat);
DualLattice dual_lattice(const DualLattice& lat);

/// Polar body: SupBox(w) <-> L1CrossPolytope(1/w).
WeightedBody dual_body(const WeightedBody& body);

/// lambda_1 ... lambda_n * Vol(body) / covol(lat); lies in [2^n/n!, 2^n].
Rational minkowski_second_ratio(const IntegerLattice& lat, const WeightedBody& body,
                                const EnumerationOptions& opts = {});
Rational minkowski_second_ratio(const MinimaProfile& minima, const WeightedBody& body,
                                const Rational& covolume);

void require_dimension(int n);

}  // namespace curvebox
