#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "curvebox/gon.hpp"

namespace curvebox::detail {

// Upper bound on body norms for a search; visitors may lower it to prune.
struct SearchBound {
  Rational value;
  bool changed = false;

  void lower(const Rational& v) {
    value = v;
    changed = true;
  }
};

// LLL-reduced basis of a lattice in the body's normalized coordinates, ready
// for repeated Fincke-Pohst searches at different scales.
//
// Normalization: with weights w_i = p_i / q_i and M = lcm(p_i), coordinate i is
// multiplied by c_i = M q_i / p_i, an integer. The body at scale s becomes the
// cube (SupBox) or cross-polytope (L1) of radius s*M, both inside the
// Euclidean ball of radius s*M*sqrt(n) resp. s*M.
//
// With a nonempty span, the first span.size() basis vectors span the
// primitive sublattice lat & span_Q(span), and searches skip that sublattice.
class EnumerationContext {
 public:
  EnumerationContext(const IntegerLattice& lat, const WeightedBody& body,
                     const std::vector<IntVector>& span = {});

  int dimension() const noexcept { return n_; }
  int span_rank() const noexcept { return span_rank_; }
  const std::vector<IntVector>& reduced_basis() const noexcept { return reduced_; }
  const WeightedBody& body() const noexcept { return body_; }
  /// Body norms of lattice vectors are multiples of 1 / M.
  Rational norm_step() const { return Rational(BigInt(1), unit_); }

  /// Calls visit for every lattice vector with body_norm <= scale.
  void enumerate(const Rational& scale, const std::function<void(const IntVector&)>& visit,
                 const EnumerationOptions& opts) const;

  /// Calls visit for lattice vectors outside the span sublattice with
  /// body_norm <= bound.value; bound may shrink during the search.
  void search(SearchBound& bound, const std::function<void(const IntVector&)>& visit,
              const EnumerationOptions& opts) const;

 private:
  // y with ||y||_1 = 1 orthogonal to the first k normalized basis vectors,
  // stored sparsely, and y . b_k.
  struct Functional {
    std::vector<int> index;
    std::vector<long double> value;
    long double along = 0.0L;
  };

  void build_functionals(const BigMatrix& rows);

  int n_;
  int span_rank_ = 0;
  WeightedBody body_;
  BigInt unit_;                      // M
  std::vector<BigInt> col_scale_;    // c_i
  std::vector<i128> col_scale_small_;
  std::vector<IntVector> reduced_;   // original coordinates
  std::vector<std::vector<long double>> mu_;
  std::vector<long double> bstar_;
  // SupBox only: per level k, the vertices of {y perp b_0..b_{k-1}, |y|_1 <= 1}.
  // Together they cut out the exact projection of the box.
  std::vector<std::vector<Functional>> functionals_;
};

/// A body-norm minimizer among lattice vectors accepted by keep (the first
/// one the search reaches), searched up to the largest reduced basis norm;
/// nullopt when nothing there is accepted.
std::optional<std::pair<IntVector, Rational>> shortest_matching(
    const EnumerationContext& ctx, const std::function<bool(const IntVector&)>& keep,
    const EnumerationOptions& opts);

}  // namespace curvebox::detail
