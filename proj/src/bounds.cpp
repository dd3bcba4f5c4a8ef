#include <cmath>

#include "curvebox/reduction.hpp"

namespace curvebox {

double PowerTerm::eval(std::int64_t q, std::int64_t H) const {
  const double lh = std::log(static_cast<double>(H));
  const double lq = std::log(static_cast<double>(q));
  return coefficient * std::exp(h_exp.get_d() * lh + q_exp.get_d() * lq);
}

Rational PowerTerm::q_exponent_at(const Rational& e) const {
  Rational r = h_exp * e + q_exp;
  r.canonicalize();
  return r;
}

namespace {

PowerTerm term(Rational h, Rational q) {
  h.canonicalize();
  q.canonicalize();
  return PowerTerm{h, q, 1.0};
}

BoundEvaluation evaluate(std::vector<PowerTerm> terms, std::int64_t q, std::int64_t H) {
  BoundEvaluation b{std::move(terms), 0.0};
  for (const auto& t : b.terms) b.value += t.eval(q, H);
  return b;
}

}  // namespace

BoundEvaluation theorem3_bound(int d, std::int64_t q, std::int64_t H) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "degree must be at least 2");
  const Rational e(2, d * (d + 1));
  return evaluate({term(1 + e, -e), term(Rational(1, d), 0)}, q, H);
}

bool theorem3_diagonal_regime(int d, std::int64_t q, std::int64_t H) {
  Rational e(2, d * d + 1);
  e.canonicalize();
  return power_le(H, e, q);
}

BoundEvaluation theorem4_bound(std::int64_t q, std::int64_t H) {
  return evaluate({term(Rational(3, 2), Rational(-1, 6)), term(Rational(1, 3), 0)}, q, H);
}

bool theorem4_diagonal_regime(std::int64_t q, std::int64_t H) {
  return power_le(H, Rational(1, 7), q);
}

ReferenceBounds reference_bounds(std::int64_t p, std::int64_t H) {
  ReferenceBounds r;
  if (power_lt(H, Rational(1, 8), p)) {
    r.branch = 0;
    r.three_branch = term(Rational(1, 3), 0);
  } else if (power_lt(H, Rational(5, 23), p)) {
    // (H^4 / p)^(1/6) H
    r.branch = 1;
    r.three_branch = term(Rational(5, 3), Rational(-1, 6));
  } else if (power_lt(H, Rational(1, 3), p)) {
    // (H^3 / p)^(1/16) H
    r.branch = 2;
    r.three_branch = term(Rational(19, 16), Rational(-1, 16));
  } else {
    r.branch = 3;
  }
  if (r.three_branch) r.three_branch_value = r.three_branch->eval(p, H);
  // H^(1/3) + (H^3 / p)^(1/12) H
  r.sharpened = {term(Rational(1, 3), 0), term(Rational(5, 4), Rational(-1, 12))};
  for (const auto& t : r.sharpened) r.sharpened_value += t.eval(p, H);
  return r;
}

}  // namespace curvebox
