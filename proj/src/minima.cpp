#include <algorithm>

#include "enum_context.hpp"

namespace curvebox {

namespace {

i128 squared_length(const IntVector& v) {
  i128 s = 0;
  for (auto x : v) s += static_cast<i128>(x) * x;
  return s;
}

bool canonical_sign(const IntVector& v) {
  for (auto x : v) {
    if (x != 0) return x > 0;
  }
  return false;  // origin
}

// Greedy construction: witness i minimizes (norm, Euclidean length, lex)
// among vectors outside the span of witnesses 1..i-1, which attains the i-th
// successive minimum. Each step searches a basis whose leading vectors span
// the previous witnesses' sublattice, so that sublattice is never enumerated.
MinimaProfile greedy_minima(const IntegerLattice& lat, const WeightedBody& body,
                            const EnumerationOptions& opts) {
  const int n = lat.dimension();
  MinimaProfile profile;
  for (int i = 0; i < n; ++i) {
    const detail::EnumerationContext ctx(lat, body, profile.witnesses);
    detail::SearchBound bound{Rational(-1)};
    for (int j = i; j < n; ++j) {
      const Rational nb = body_norm(ctx.reduced_basis()[j], body);
      if (bound.value < 0 || nb < bound.value) bound.value = nb;
    }
    std::optional<IntVector> best;
    Rational best_norm;
    i128 best_len = 0;
    ctx.search(
        bound,
        [&](const IntVector& v) {
          if (!canonical_sign(v)) return;
          const Rational nv = body_norm(v, body);
          const i128 len = squared_length(v);
          if (best) {
            if (nv > best_norm) return;
            if (nv == best_norm && (len > best_len || (len == best_len && v >= *best))) return;
          }
          best = v;
          best_norm = nv;
          best_len = len;
          if (nv < bound.value) bound.lower(nv);
        },
        opts);
    if (!best) throw Error(ErrorCode::InvalidArgument, "successive minima: enumeration incomplete");
    profile.lambdas.push_back(best_norm);
    profile.witnesses.push_back(*best);
  }
  return profile;
}

}  // namespace

MinimaProfile successive_minima(const IntegerLattice& lat, const WeightedBody& body,
                                const EnumerationOptions& opts) {
  return greedy_minima(lat, body, opts);
}

MinimaProfile successive_minima(const DualLattice& lat, const WeightedBody& body,
                                const EnumerationOptions& opts) {
  MinimaProfile p = greedy_minima(lat.scaled, body, opts);
  for (auto& l : p.lambdas) {
    l /= Rational(lat.denominator);
    l.canonicalize();
  }
  p.denominator = lat.denominator;
  return p;
}

}  // namespace curvebox

namespace curvebox::detail {

std::optional<std::pair<IntVector, Rational>> shortest_matching(
    const EnumerationContext& ctx, const std::function<bool(const IntVector&)>& keep,
    const EnumerationOptions& opts) {
  const WeightedBody& body = ctx.body();
  SearchBound bound{Rational(0)};
  for (const auto& b : ctx.reduced_basis()) {
    const Rational nb = body_norm(b, body);
    if (nb > bound.value) bound.value = nb;
  }
  const Rational step = ctx.norm_step();
  std::optional<std::pair<IntVector, Rational>> best;
  ctx.search(
      bound,
      [&](const IntVector& v) {
        const Rational nv = body_norm(v, body);
        if ((best && nv >= best->second) || !keep(v)) return;
        best.emplace(v, nv);
        bound.lower(nv - step);
      },
      opts);
  return best;
}

}  // namespace curvebox::detail
