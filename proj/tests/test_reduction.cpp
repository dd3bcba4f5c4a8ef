#include <doctest.h>

#include <cmath>

#include "curvebox/reduction.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace curvebox;

namespace {

std::vector<mpz_class> congruence_weights(int d, std::int64_t H) {
  const int s = tuple_length(d);
  std::vector<mpz_class> W{mpz_class(s) * H};
  mpz_class p = 1;
  for (int i = 1; i <= d; ++i) {
    p *= H;
    W.push_back(s * p);
  }
  return W;
}

bool satisfies_congruence(const ModPoly& f, const IntVector& v) {
  i128 acc = v[0];
  for (int i = 1; i <= f.degree(); ++i) acc += static_cast<i128>(f.coeff(i)) * v[i];
  return oracle::mod(acc, f.modulus()) == 0;
}

}  // namespace

TEST_CASE("congruence lattice") {
  SplitMix64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const std::int64_t q = rng.between(2, 2000000000);
    const int d = static_cast<int>(rng.between(2, 5));
    const ModPoly f = random_poly(rng, q, d);
    const IntegerLattice L = build_congruence_lattice(f);
    CHECK(L.covolume() == q);
    IntVector e0(d + 1, 0), e1(d + 1, 0);
    e0[0] = q;
    e1[0] = -f.coeff(1);
    e1[1] = 1;
    CHECK(satisfies_congruence(f, e0));
    CHECK(satisfies_congruence(f, e1));
  }
  const ModPoly f = random_poly(rng, 10007, 3);
  const IntegerLattice L = build_congruence_lattice(f);
  for (int t = 0; t < 1000; ++t) {
    IntVector v(4, 0);
    for (const auto& row : L.basis()) {
      const std::int64_t c = rng.between(-1000, 1000);
      for (int k = 0; k < 4; ++k) v[k] += c * row[k];
    }
    CHECK(satisfies_congruence(f, v));
  }
}

TEST_CASE("box D") {
  for (int d = 2; d <= 5; ++d) {
    const std::int64_t H = 7;
    const Rational c(3, 2);
    const WeightedBody D = build_body(d, H, c);
    // Vol = 2^(d+1) c^(d+1) H^(1+1+2+...+d)
    mpz_class hp;
    mpz_ui_pow_ui(hp.get_mpz_t(), H, static_cast<unsigned long>((d * d + d + 2) / 2));
    Rational expect(hp);
    for (int i = 0; i <= d; ++i) expect *= 2 * c;
    CHECK(D.volume() == expect);
    CHECK(build_body(d, 1, c).weights == std::vector<Rational>(d + 1, c));
  }
}

TEST_CASE("Minkowski first threshold") {
  CHECK(minkowski_first_threshold(2, 1000).exponent == Rational(1, 4));
  CHECK(minkowski_first_threshold(3, 1000).exponent == Rational(1, 7));
  for (std::int64_t q : {2, 101, 1000000007}) {
    CHECK(minkowski_first_threshold(2, q).admits(1));
  }
  CHECK(minkowski_first_threshold(2, 256).admits(4));
  CHECK_FALSE(minkowski_first_threshold(2, 256).admits(5));
  CHECK_FALSE(minkowski_first_threshold(2, 255).admits(4));
  CHECK(power_le(3, Rational(1, 7), 2187));
  CHECK_FALSE(power_lt(3, Rational(1, 7), 2187));
}

TEST_CASE("short dual vector") {
  // Small coefficients: (1, a_1, ..., a_d) itself is a certificate.
  {
    const ModPoly f(1000003, {17, 2, 1});
    const std::int64_t H = 10;
    const auto sv = find_short_dual_vector(f, H);
    REQUIRE(sv);
    const auto W = congruence_weights(2, H);
    const Rational certificate(W[0] + 2 * W[1] + W[2], mpz_class(1000003));
    CHECK(sv->norm <= certificate);
    CHECK(congruence_recheck(f, *sv));
  }

  SplitMix64 rng(2);
  {
    const ModPoly f = random_poly(rng, 10007, 2);
    const auto sv = find_short_dual_vector(f, 10);
    REQUIRE(sv);
    CHECK(congruence_recheck(f, *sv));
    CHECK(sv->w.back() != 0);
    CHECK(oracle::mod(sv->n - sv->z, 10007) == 0);
    for (int i = 1; i <= 2; ++i) {
      CHECK(oracle::mod(static_cast<i128>(f.coeff(i)) * sv->n - sv->w[i - 1], 10007) == 0);
    }
  }

  for (int t = 0; t < 40; ++t) {
    const std::int64_t q = rng.between(3, 2000);
    const int d = 2 + t % 2;
    const ModPoly f = random_poly(rng, q, d);
    const std::int64_t H = rng.between(1, 12);
    const auto sv = find_short_dual_vector(f, H);
    REQUIRE(sv);
    std::vector<std::int64_t> c{1};
    for (int i = 1; i <= d; ++i) c.push_back(f.coeff(i));
    CHECK(sv->norm == oracle::best_dual_gauge(c, congruence_weights(d, H), q));
    CHECK(congruence_recheck(f, *sv));
    CHECK(2 * sv->w0 > -q);
    CHECK(2 * sv->w0 <= q);

    // Size certificate: |z| H <= C q and |w_i| H^i <= C q with C the recorded constant.
    const Rational C = sv->size_constant;
    CHECK(Rational(std::abs(sv->z) * H) <= C * q);
    i128 hp = 1;
    for (int i = 1; i <= d; ++i) {
      hp *= H;
      CHECK(Rational(to_big(std::abs(sv->w[i - 1]) * hp)) <= C * q);
    }
  }

  ShortDualVector bad;
  bad.n = 1;
  bad.z = 2;
  bad.w = {1, 1};
  CHECK_FALSE(congruence_recheck(ModPoly(11, {0, 1, 1}), bad));
}

TEST_CASE("lift_curve") {
  SplitMix64 rng(3);
  int checked = 0;
  for (int t = 0; t < 80; ++t) {
    const int d = 2 + t % 2;
    const std::int64_t q = random_prime(rng, 1000, 100000000);
    const std::int64_t H = rng.between(2, 40);
    std::vector<std::int64_t> a = coeffs_of(random_poly(rng, q, d));
    // Plant a solution at (x0, y0) so the brute-force loop has something to map.
    const std::int64_t x0 = rng.between(1, H), y0 = rng.between(1, H);
    a[0] = 0;
    a[0] = oracle::mod(y0 - oracle::naive_eval(a, x0, q), q);
    const ModPoly f(q, a);
    const auto sv = find_short_dual_vector(f, H);
    REQUIRE(sv);
    const LiftedCurve lc = lift_curve(f, H, *sv);

    // Width of the t interval is at most 2 (d + 1) C + 1.
    const Rational width(to_big(lc.t_hi - lc.t_lo));
    CHECK(width <= 2 * (d + 1) * sv->size_constant + 1);

    std::uint64_t N = 0;
    for (std::int64_t x = 1; x <= H; ++x) {
      for (std::int64_t y = 1; y <= H; ++y) {
        if (oracle::naive_eval(coeffs_of(f), x, q) != oracle::mod(y, q)) continue;
        ++N;
        i128 v = static_cast<i128>(sv->z) * y - sv->w0, xp = 1;
        for (int i = 1; i <= d; ++i) {
          xp *= x;
          v -= static_cast<i128>(sv->w[i - 1]) * xp;
        }
        CHECK(v % q == 0);
        CHECK(v / q >= lc.t_lo);
        CHECK(v / q <= lc.t_hi);
        ++checked;
      }
    }
    CHECK(N <= count_lifted_points(lc, BoxRegion::origin(H)).total);
  }
  CHECK(checked > 0);

  // Monomial with the trivial vector n = 1 recovers y = x^d at t = 0.
  for (int d = 2; d <= 3; ++d) {
    std::vector<std::int64_t> a(d + 1, 0);
    a[d] = 1;
    const ModPoly f(1000003, a);
    ShortDualVector sv;
    sv.n = 1;
    sv.z = 1;
    sv.w.assign(d, 0);
    sv.w.back() = 1;
    CHECK(congruence_recheck(f, sv));
    const LiftedCurve lc = lift_curve(f, 50, sv);
    CHECK(lc.t_lo <= 0);
    CHECK(lc.t_hi >= 0);
    const auto lifted = count_lifted_points(lc, BoxRegion::origin(50));
    bool found = false;
    for (const auto& [t, k] : lifted.per_t) {
      if (t == 0) {
        CHECK(k == static_cast<std::uint64_t>(integer_root(50, d)));
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("classify_case") {
  SplitMix64 rng(4);
  int spreads = 0;
  for (int t = 0; t < 10; ++t) {
    const std::int64_t q = random_prime(rng, 100, 200);
    const ModPoly f = random_poly(rng, q, 2);
    const std::int64_t H = 8;
    const CaseReport r = classify_case(f, H);
    CHECK((r.kind == CaseKind::Spread) == (r.minima.lambdas.back() < 1));
    if (r.kind != CaseKind::Spread) continue;
    ++spreads;
    REQUIRE(r.lattice_point_count.has_value());
    CHECK_FALSE(r.short_vector.has_value());
    CHECK(*r.lattice_point_count ==
          oracle::box_count(build_congruence_lattice(f).basis(), build_body(2, H, 3).weights, 1));
  }
  CHECK(spreads > 0);
  for (int t = 0; t < 10; ++t) {
    const std::int64_t q = random_prime(rng, 100, 1000);
    ClassifyOptions opts;
    opts.count_lattice_points = false;
    CHECK(classify_case(random_poly(rng, q, 2), q, opts).kind == CaseKind::Spread);
  }
  int lifts = 0;
  for (int t = 0; t < 10; ++t) {
    const std::int64_t q = random_prime(rng, 100000000, 2000000000);
    const ModPoly f = random_poly(rng, q, 2 + t % 2);
    const CaseReport r = classify_case(f, 1);
    lifts += r.kind == CaseKind::Lift;
    CHECK(r.short_vector.has_value() == (r.kind == CaseKind::Lift));
    CHECK(r.lattice_point_count.has_value() == (r.kind == CaseKind::Spread));
    CHECK(std::is_sorted(r.minima.lambdas.begin(), r.minima.lambdas.end()));
    CHECK((r.kind == CaseKind::Spread) == (r.minima.lambdas.back() < 1));
  }
  CHECK(lifts == 10);
  CHECK(to_string(CaseKind::Spread) == "Spread");
  CHECK(to_string(CaseKind::Lift) == "Lift");
}

TEST_CASE("theorem bounds") {
  for (int d = 2; d <= 5; ++d) {
    Rational e(2, d * d + 1), want(2, d * (d * d + 1));
    e.canonicalize();
    want.canonicalize();
    const auto b = theorem3_bound(d, 1000, 10);
    CHECK(b.terms[0].q_exponent_at(e) == b.terms[1].q_exponent_at(e));
    CHECK(b.terms[1].q_exponent_at(e) == want);
    // Below the threshold the first term is the smaller one.
    for (const Rational& f : {Rational(1, 100), Rational(e / 2), e}) {
      CHECK(b.terms[0].q_exponent_at(f) <= b.terms[1].q_exponent_at(f));
    }
  }
  const auto b = theorem3_bound(2, 1000000, 251);
  CHECK(b.value == doctest::Approx(2 * std::sqrt(251.0)).epsilon(0.01));
  CHECK(theorem3_diagonal_regime(2, 1000000, 251));
  CHECK_FALSE(theorem3_diagonal_regime(2, 1000000, 252));

  const auto t4 = theorem4_bound(1000, 10);
  CHECK(t4.terms[0].q_exponent_at(Rational(1, 7)) == t4.terms[1].q_exponent_at(Rational(1, 7)));
  CHECK(t4.terms[1].q_exponent_at(Rational(1, 7)) == Rational(1, 21));
  CHECK(minkowski_first_threshold(3, 1000).exponent == Rational(1, 7));
  CHECK(theorem4_diagonal_regime(128, 2));
  CHECK_FALSE(theorem4_diagonal_regime(127, 2));
  double last = 0;
  for (std::int64_t H = 1; H < 200; ++H) {
    const double v = theorem4_bound(1000003, H).value;
    CHECK(v > last);
    last = v;
  }
}

TEST_CASE("hyperelliptic lattice") {
  SplitMix64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const std::int64_t q = rng.between(3, 2000000000);
    const ModPoly f = random_poly(rng, q, 3);
    const std::int64_t c0 = rng.between(0, q - 1);
    const IntegerLattice L = build_hyperelliptic_lattice(f.coeff(1), f.coeff(2), f.coeff(3), c0, q);
    CHECK(L.covolume() == q);
    for (const auto& v : L.basis()) {
      const i128 acc = static_cast<i128>(f.coeff(1)) * v[0] + static_cast<i128>(f.coeff(2)) * v[1] +
                       static_cast<i128>(f.coeff(3)) * v[2] + static_cast<i128>(c0) * v[3] + v[4];
      CHECK(oracle::mod(acc, q) == 0);
    }
    const DualLattice dual = dual_lattice(L);
    CHECK(dual.denominator == q);
    for (const auto& v : dual.scaled.basis()) {
      const std::int64_t n = oracle::mod(v[4], q);
      CHECK(oracle::mod(static_cast<i128>(f.coeff(1)) * n - v[0], q) == 0);
      CHECK(oracle::mod(static_cast<i128>(f.coeff(2)) * n - v[1], q) == 0);
      CHECK(oracle::mod(static_cast<i128>(f.coeff(3)) * n - v[2], q) == 0);
      CHECK(oracle::mod(static_cast<i128>(c0) * n - v[3], q) == 0);
    }
  }
  CHECK_THROWS_AS(build_hyperelliptic_lattice(1, 1, 3, 0, 9), Error);

  const WeightedBody one = build_hyperelliptic_body(1);
  CHECK(one.weights == std::vector<Rational>(5, Rational(6)));
  // Vol = 2^5 6^5 H^9
  CHECK(build_hyperelliptic_body(3).volume() == Rational(32 * 7776) * 19683);
  CHECK(dual_body(build_hyperelliptic_body(2)).weights ==
        std::vector<Rational>{Rational(1, 12), Rational(1, 24), Rational(1, 48), Rational(1, 12),
                              Rational(1, 24)});
}

TEST_CASE("hyperelliptic short vector and lift") {
  SplitMix64 rng(6);
  for (int t = 0; t < 30; ++t) {
    const std::int64_t q = rng.between(3, 1500);
    const ModPoly f = random_poly(rng, q, 3);
    const std::int64_t c0 = rng.between(0, q - 1);
    const HyperellipticCurve c(f, c0);
    const std::int64_t H = rng.between(1, 8);
    const auto sv = find_short_hyperelliptic_dual_vector(c, H);
    REQUIRE(sv);
    CHECK(congruence_recheck(c, *sv));
    const std::vector<mpz_class> W{6 * H, 6 * H * H, 6 * H * H * H, 6 * H, 6 * H * H};
    CHECK(sv->norm ==
          oracle::best_dual_gauge({f.coeff(1), f.coeff(2), f.coeff(3), c0, 1}, W, q));
  }

  for (int t = 0; t < 40; ++t) {
    const std::int64_t q = random_prime(rng, 1000, 2000000000);
    const std::int64_t H = rng.between(2, 15);
    const HyperellipticCurve c(random_poly(rng, q, 3), rng.between(0, q - 1));
    const auto sv = find_short_hyperelliptic_dual_vector(c, H);
    REQUIRE(sv);
    const LiftedHyperellipticCurve lc = lift_hyperelliptic(c, H, *sv);
    std::uint64_t N = 0;
    for (std::int64_t x = 1; x <= H; ++x) {
      const std::int64_t fx = oracle::naive_eval(coeffs_of(c.poly()), x, q);
      for (std::int64_t y = 1; y <= H; ++y) {
        if (oracle::mod(static_cast<i128>(y) * y - static_cast<i128>(c.c0()) * y, q) != fx) continue;
        ++N;
        i128 v = static_cast<i128>(sv->n) * y * y - static_cast<i128>(sv->z1) * y - sv->w0, xp = 1;
        for (int i = 1; i <= 3; ++i) {
          xp *= x;
          v -= static_cast<i128>(sv->w[i - 1]) * xp;
        }
        CHECK(v % q == 0);
        CHECK(v / q >= lc.t_lo);
        CHECK(v / q <= lc.t_hi);
      }
    }
    CHECK(N <= count_lifted_points(lc, BoxRegion::origin(H)).total);
  }

  // Large q and H = 2: the box is tiny, so the last minimum exceeds 1.
  const HyperellipticCurve c(random_poly(rng, 2147483647, 3), 5);
  const auto rep = classify_hyperelliptic_case(c, 2);
  CHECK(rep.kind == CaseKind::Lift);
  CHECK(rep.short_vector.has_value());
}

TEST_CASE("reference bounds") {
  const std::int64_t p = 1000000007;
  // p^(1/8) ~ 13.3, p^(5/23) ~ 90.6, p^(1/3) ~ 1000.
  CHECK(reference_bounds(p, 13).branch == 0);
  CHECK(reference_bounds(p, 13).three_branch->h_exp == Rational(1, 3));
  CHECK(reference_bounds(p, 14).branch == 1);
  CHECK(reference_bounds(p, 90).branch == 1);
  CHECK(reference_bounds(p, 91).branch == 2);
  // p^(1/3) = 1000.0000023...
  CHECK(reference_bounds(p, 1000).branch == 2);
  CHECK(reference_bounds(p, 1001).branch == 3);
  CHECK_FALSE(reference_bounds(p, 1001).three_branch.has_value());
  CHECK(reference_bounds(256, 1).branch == 0);
  CHECK(reference_bounds(256, 2).branch == 1);

  // The sharpened second term meets the middle-branch term exactly at H = p^(1/5),
  // and meets H^(1/3) at H = p^(1/11).
  const auto r = reference_bounds(p, 50);
  const PowerTerm middle = *r.three_branch;
  CHECK(r.sharpened[1].q_exponent_at(Rational(1, 5)) == middle.q_exponent_at(Rational(1, 5)));
  CHECK(r.sharpened[1].q_exponent_at(Rational(1, 5)) == Rational(1, 6));
  CHECK(r.sharpened[1].q_exponent_at(Rational(1, 11)) ==
        r.sharpened[0].q_exponent_at(Rational(1, 11)));
  CHECK(r.sharpened[1].q_exponent_at(Rational(1, 5)) != r.sharpened[0].q_exponent_at(Rational(1, 5)));
  CHECK(r.sharpened_value == doctest::Approx(std::cbrt(50.0) + std::pow(50.0, 1.25) / std::pow(1e9 + 7, 1.0 / 12)));
}
