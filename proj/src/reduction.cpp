#include "curvebox/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "enum_context.hpp"

namespace curvebox {

namespace {

BigInt big_pow(std::int64_t base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), BigInt(static_cast<long>(base)).get_mpz_t(), e);
  return r;
}

// Interval [lo, hi] of coef * v^e over v in [1, H].
std::pair<i128, i128> monomial_range(std::int64_t coef, int e, std::int64_t H) {
  i128 top = coef;
  for (int i = 0; i < e; ++i) top *= H;
  return {std::min<i128>(coef, top), std::max<i128>(coef, top)};
}

}  // namespace

IntegerLattice build_congruence_lattice(const ModPoly& f) {
  const int d = f.degree();
  const std::size_t n = static_cast<std::size_t>(d) + 1;
  std::vector<IntVector> rows(n, IntVector(n, 0));
  rows[0][0] = f.modulus();
  for (int i = 1; i <= d; ++i) {
    rows[i][0] = -f.coeff(i);
    rows[i][i] = 1;
  }
  return IntegerLattice(std::move(rows));
}

WeightedBody build_body(int d, std::int64_t H, const Rational& c) {
  if (H < 1) throw Error(ErrorCode::InvalidArgument, "H must be positive");
  std::vector<Rational> w;
  w.push_back(c * Rational(BigInt(static_cast<long>(H))));
  for (int i = 1; i <= d; ++i) {
    w.push_back(c * Rational(big_pow(H, static_cast<unsigned long>(i))));
  }
  return WeightedBody::make(BodyKind::SupBox, std::move(w));
}

bool power_le(std::int64_t H, const Rational& e, std::int64_t q) {
  // H <= q^(a/b)  <=>  H^b <= q^a
  const unsigned long a = mpz_get_ui(e.get_num_mpz_t());
  const unsigned long b = mpz_get_ui(e.get_den_mpz_t());
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  return big_pow(H, b) <= big_pow(q, a);
}

bool power_lt(std::int64_t H, const Rational& e, std::int64_t q) {
  const unsigned long a = mpz_get_ui(e.get_num_mpz_t());
  const unsigned long b = mpz_get_ui(e.get_den_mpz_t());
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  return big_pow(H, b) < big_pow(q, a);
}

bool PowerThreshold::admits(std::int64_t H) const { return power_le(H, exponent, q); }

double PowerThreshold::value() const {
  return std::pow(static_cast<double>(q), exponent.get_d());
}

PowerThreshold minkowski_first_threshold(int d, std::int64_t q) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "degree must be at least 2");
  Rational e(2, d * d + d + 2);
  e.canonicalize();
  return PowerThreshold{e, q};
}

std::optional<ShortDualVector> find_short_dual_vector(const ModPoly& f, std::int64_t H,
                                                      const EnumerationOptions& opts) {
  const int d = f.degree();
  const std::int64_t q = f.modulus();
  const DualLattice dual = dual_lattice(build_congruence_lattice(f));
  if (dual.denominator != q) {
    throw Error(ErrorCode::InvalidArgument, "unexpected dual denominator");
  }
  const WeightedBody body = dual_body(build_body(d, H, Rational(tuple_length(d))));

  std::optional<std::pair<IntVector, Rational>> best;
  try {
    detail::EnumerationContext ctx(dual.scaled, body);
    best = detail::shortest_matching(
        ctx, [q](const IntVector& v) { return v[0] > 0 && v[0] % q != 0; }, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BudgetExceeded) return std::nullopt;
    throw;
  }
  if (!best) return std::nullopt;

  const IntVector& v = best->first;
  ShortDualVector sv;
  sv.z = v[0];
  sv.n = mod_reduce(sv.z, q);
  sv.w.assign(v.begin() + 1, v.end());
  sv.w0 = least_absolute_residue(static_cast<i128>(f.coeff(0)) * sv.n, q);
  sv.norm = best->second / Rational(BigInt(static_cast<long>(q)));
  sv.norm.canonicalize();

  Rational c(BigInt(static_cast<long>(std::abs(sv.z))) * H, BigInt(static_cast<long>(q)));
  for (int i = 1; i <= d; ++i) {
    Rational ci(BigInt(static_cast<long>(std::abs(sv.w[i - 1]))) * big_pow(H, i),
                BigInt(static_cast<long>(q)));
    if (ci > c) c = ci;
  }
  c.canonicalize();
  sv.size_constant = c;

  if (!congruence_recheck(f, sv)) {
    throw Error(ErrorCode::InvalidArgument, "dual vector failed the congruence recheck");
  }
  return sv;
}

bool congruence_recheck(const ModPoly& f, const ShortDualVector& sv) {
  const std::int64_t q = f.modulus();
  if (static_cast<int>(sv.w.size()) != f.degree()) return false;
  if (mod_reduce(sv.n - sv.z, q) != 0) return false;
  for (int i = 1; i <= f.degree(); ++i) {
    if (mod_reduce(static_cast<i128>(f.coeff(i)) * sv.n - sv.w[i - 1], q) != 0) return false;
  }
  if (mod_reduce(static_cast<i128>(f.coeff(0)) * sv.n - sv.w0, q) != 0) return false;
  return sv.w.back() != 0;
}

LiftedCurve lift_curve(const ModPoly& f, std::int64_t H, const ShortDualVector& sv) {
  LiftedCurve c;
  c.q = f.modulus();
  c.n = sv.n;
  c.z = sv.z;
  c.w0 = sv.w0;
  c.w = sv.w;
  // t = (z y - w0 - sum w_i x^i) / q over (x, y) in [1, H]^2.
  auto [lo, hi] = monomial_range(sv.z, 1, H);
  lo -= sv.w0;
  hi -= sv.w0;
  for (int i = 1; i <= f.degree(); ++i) {
    auto [a, b] = monomial_range(sv.w[i - 1], i, H);
    lo -= b;
    hi -= a;
  }
  c.t_lo = ceil_div(lo, static_cast<i128>(c.q));
  c.t_hi = floor_div(hi, static_cast<i128>(c.q));
  return c;
}

std::string to_string(CaseKind k) { return k == CaseKind::Spread ? "Spread" : "Lift"; }

CaseReport classify_case(const ModPoly& f, std::int64_t H, const ClassifyOptions& opts) {
  const int d = f.degree();
  require_dimension(d + 1);
  if (d > 5) throw Error(ErrorCode::DimensionTooLarge, "case classification supports d <= 5");
  const IntegerLattice lat = build_congruence_lattice(f);
  const WeightedBody body = build_body(d, H, Rational(tuple_length(d)));

  CaseReport r;
  r.minima = successive_minima(lat, body, opts.enumeration);
  const auto bound = theorem3_bound(d, f.modulus(), H);
  if (r.minima.lambdas.back() < 1) {
    r.kind = CaseKind::Spread;
    if (opts.count_lattice_points) {
      r.lattice_point_count = count_lattice_points(lat, body, Rational(1), opts.enumeration);
    }
    r.predicted_bound = bound.terms[0].eval(f.modulus(), H);
  } else {
    r.kind = CaseKind::Lift;
    r.short_vector = find_short_dual_vector(f, H, opts.enumeration);
    if (!r.short_vector) {
      throw Error(ErrorCode::BudgetExceeded, "short dual vector search exceeded the budget");
    }
    r.predicted_bound = bound.terms[1].eval(f.modulus(), H);
  }
  return r;
}

}  // namespace curvebox
