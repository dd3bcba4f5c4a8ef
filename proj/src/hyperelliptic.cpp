#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "curvebox/reduction.hpp"
#include "enum_context.hpp"

namespace curvebox {

namespace {

constexpr int kX1 = 0, kX2 = 1, kX3 = 2, kY1 = 3, kY2 = 4;

i128 pow_i128(std::int64_t b, int e) {
  i128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::pair<i128, i128> monomial_range(std::int64_t coef, int e, std::int64_t H) {
  const i128 top = static_cast<i128>(coef) * pow_i128(H, e);
  return {std::min<i128>(coef, top), std::max<i128>(coef, top)};
}

}  // namespace

IntegerLattice build_hyperelliptic_lattice(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                                           std::int64_t c0, std::int64_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidInstance, "modulus q must be at least 2");
  if (std::gcd(mod_reduce(a3, q), q) != 1) {
    throw Error(ErrorCode::InvalidInstance, "leading coefficient not coprime to q");
  }
  std::vector<IntVector> rows(5, IntVector(5, 0));
  const std::int64_t coef[4] = {mod_reduce(a1, q), mod_reduce(a2, q), mod_reduce(a3, q),
                                mod_reduce(c0, q)};
  for (int i = 0; i < 4; ++i) {
    rows[i][i] = 1;
    rows[i][kY2] = -coef[i];
  }
  rows[4][kY2] = q;
  return IntegerLattice(std::move(rows));
}

WeightedBody build_hyperelliptic_body(std::int64_t H) {
  if (H < 1) throw Error(ErrorCode::InvalidArgument, "H must be positive");
  auto w = [H](int e) { return Rational(to_big(6 * pow_i128(H, e))); };
  std::vector<Rational> weights(5);
  weights[kX1] = w(1);
  weights[kX2] = w(2);
  weights[kX3] = w(3);
  weights[kY1] = w(1);
  weights[kY2] = w(2);
  return WeightedBody::make(BodyKind::SupBox, std::move(weights));
}

std::optional<HyperellipticDualVector> find_short_hyperelliptic_dual_vector(
    const HyperellipticCurve& c, std::int64_t H, const EnumerationOptions& opts) {
  const ModPoly& f = c.poly();
  const std::int64_t q = c.modulus();
  const DualLattice dual = dual_lattice(
      build_hyperelliptic_lattice(f.coeff(1), f.coeff(2), f.coeff(3), c.c0(), q));
  if (dual.denominator != q) {
    throw Error(ErrorCode::InvalidArgument, "unexpected dual denominator");
  }
  const WeightedBody body = dual_body(build_hyperelliptic_body(H));

  std::optional<std::pair<IntVector, Rational>> best;
  try {
    detail::EnumerationContext ctx(dual.scaled, body);
    best = detail::shortest_matching(
        ctx, [q](const IntVector& v) { return v[kY2] > 0 && v[kY2] % q != 0; }, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BudgetExceeded) return std::nullopt;
    throw;
  }
  if (!best) return std::nullopt;

  const IntVector& v = best->first;
  HyperellipticDualVector sv;
  sv.n = v[kY2];
  sv.w = {v[kX1], v[kX2], v[kX3]};
  sv.z1 = v[kY1];
  sv.w0 = least_absolute_residue(static_cast<i128>(f.coeff(0)) * sv.n, q);
  sv.norm = best->second / Rational(BigInt(static_cast<long>(q)));
  sv.norm.canonicalize();

  BigInt mx = abs(BigInt(static_cast<long>(sv.z1))) * H;
  mx = std::max<BigInt>(mx, abs(BigInt(static_cast<long>(sv.n))) * H * H);
  for (int i = 1; i <= 3; ++i) {
    mx = std::max<BigInt>(mx, abs(BigInt(static_cast<long>(sv.w[i - 1]))) * to_big(pow_i128(H, i)));
  }
  sv.size_constant = Rational(mx, BigInt(static_cast<long>(q)));
  sv.size_constant.canonicalize();

  if (!congruence_recheck(c, sv)) {
    throw Error(ErrorCode::InvalidArgument, "dual vector failed the congruence recheck");
  }
  return sv;
}

bool congruence_recheck(const HyperellipticCurve& c, const HyperellipticDualVector& sv) {
  const ModPoly& f = c.poly();
  const std::int64_t q = c.modulus();
  if (sv.w.size() != 3 || mod_reduce(sv.n, q) == 0) return false;
  for (int i = 1; i <= 3; ++i) {
    if (mod_reduce(static_cast<i128>(f.coeff(i)) * sv.n - sv.w[i - 1], q) != 0) return false;
  }
  if (mod_reduce(static_cast<i128>(c.c0()) * sv.n - sv.z1, q) != 0) return false;
  if (mod_reduce(static_cast<i128>(f.coeff(0)) * sv.n - sv.w0, q) != 0) return false;
  return sv.w[2] != 0;
}

LiftedHyperellipticCurve lift_hyperelliptic(const HyperellipticCurve& c, std::int64_t H,
                                            const HyperellipticDualVector& sv) {
  LiftedHyperellipticCurve out;
  out.q = c.modulus();
  out.n = sv.n;
  out.z1 = sv.z1;
  out.w0 = sv.w0;
  out.w = sv.w;
  // t = (n y^2 - z1 y - w0 - sum w_i x^i) / q
  auto [lo, hi] = monomial_range(sv.n, 2, H);
  auto [zl, zh] = monomial_range(-sv.z1, 1, H);
  lo += zl - sv.w0;
  hi += zh - sv.w0;
  for (int i = 1; i <= 3; ++i) {
    auto [a, b] = monomial_range(sv.w[i - 1], i, H);
    lo -= b;
    hi -= a;
  }
  out.t_lo = ceil_div(lo, static_cast<i128>(out.q));
  out.t_hi = floor_div(hi, static_cast<i128>(out.q));
  return out;
}

HyperellipticCaseReport classify_hyperelliptic_case(const HyperellipticCurve& c, std::int64_t H,
                                                    const ClassifyOptions& opts) {
  const ModPoly& f = c.poly();
  const IntegerLattice lat =
      build_hyperelliptic_lattice(f.coeff(1), f.coeff(2), f.coeff(3), c.c0(), c.modulus());
  const WeightedBody body = build_hyperelliptic_body(H);
  const auto bound = theorem4_bound(c.modulus(), H);

  HyperellipticCaseReport r;
  r.minima = successive_minima(lat, body, opts.enumeration);
  if (r.minima.lambdas.back() <= 1) {
    r.kind = CaseKind::Spread;
    if (opts.count_lattice_points) {
      r.lattice_point_count = count_lattice_points(lat, body, Rational(1), opts.enumeration);
    }
    r.predicted_bound = bound.terms[0].eval(c.modulus(), H);
  } else {
    r.kind = CaseKind::Lift;
    r.short_vector = find_short_hyperelliptic_dual_vector(c, H, opts.enumeration);
    if (!r.short_vector) {
      throw Error(ErrorCode::BudgetExceeded, "short dual vector search exceeded the budget");
    }
    r.predicted_bound = bound.terms[1].eval(c.modulus(), H);
  }
  return r;
}

}  // namespace curvebox
