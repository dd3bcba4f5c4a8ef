#include <doctest.h>

#include <algorithm>
#include <set>

#include "curvebox/gon.hpp"
#include "curvebox/reduction.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace curvebox;

namespace {

BigMatrix to_big_matrix(const std::vector<IntVector>& rows) {
  BigMatrix m;
  for (const auto& r : rows) {
    std::vector<BigInt> row;
    for (auto x : r) row.emplace_back(static_cast<long>(x));
    m.push_back(std::move(row));
  }
  return m;
}

// Exact Gram-Schmidt on the rows: returns (mu, |b*_i|^2).
std::pair<std::vector<std::vector<Rational>>, std::vector<Rational>> gram_schmidt(
    const std::vector<IntVector>& b) {
  const std::size_t n = b.size();
  std::vector<std::vector<Rational>> star(n), mu(n, std::vector<Rational>(n));
  std::vector<Rational> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    star[i].assign(b[i].begin(), b[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      Rational dot = 0;
      for (std::size_t k = 0; k < n; ++k) dot += static_cast<long>(b[i][k]) * star[j][k];
      mu[i][j] = dot / norms[j];
      for (std::size_t k = 0; k < n; ++k) star[i][k] -= mu[i][j] * star[j][k];
    }
    norms[i] = 0;
    for (const auto& x : star[i]) norms[i] += x * x;
  }
  return {mu, norms};
}

std::vector<std::vector<std::int64_t>> rows_of(const IntegerLattice& lat) { return lat.basis(); }

IntegerLattice scrambled(SplitMix64& rng, const IntegerLattice& lat) {
  // Random elementary row operations keep the lattice.
  std::vector<IntVector> b = lat.basis();
  const int n = lat.dimension();
  for (int step = 0; step < 6 * n; ++step) {
    const int i = static_cast<int>(rng.below(n));
    const int j = static_cast<int>(rng.below(n));
    if (i == j) continue;
    const std::int64_t c = rng.between(-3, 3);
    for (int k = 0; k < n; ++k) b[i][k] += c * b[j][k];
  }
  return IntegerLattice(b);
}

}  // namespace

TEST_CASE("covolume is the exact determinant") {
  SplitMix64 rng(1);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 5;
    const IntegerLattice lat = random_lattice(rng, n, 20);
    const auto inv = oracle::inverse(lat.basis());
    // det * det(B^-1) = 1 gives an independent check through the inverse.
    BigMatrix m = to_big_matrix(lat.basis());
    CHECK(abs(exact_determinant(m)) == lat.covolume());
    Rational det_inv = 1;
    auto a = inv;
    for (std::size_t c = 0; c < a.size(); ++c) {
      std::size_t p = c;
      while (a[p][c] == 0) ++p;
      if (p != c) {
        std::swap(a[p], a[c]);
        det_inv = -det_inv;
      }
      det_inv *= a[c][c];
      for (std::size_t r = c + 1; r < a.size(); ++r) {
        const Rational f = a[r][c] / a[c][c];
        for (std::size_t k = c; k < a.size(); ++k) a[r][k] -= f * a[c][k];
      }
    }
    CHECK(abs(det_inv) * Rational(lat.covolume()) == 1);
  }
  CHECK_THROWS_AS(IntegerLattice({{1, 2}, {2, 4}}), Error);
  CHECK_THROWS_AS(IntegerLattice({{1, 2, 3}, {2, 4, 5}}), Error);
}

TEST_CASE("LLL") {
  const IntegerLattice id({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(same_lattice(lll_reduce(id), id));
  const IntegerLattice id_red = lll_reduce(id);
  for (const auto& r : id_red.basis()) {
    CHECK(std::count_if(r.begin(), r.end(), [](auto x) { return x != 0; }) == 1);
  }

  const IntegerLattice diag({{4, 0}, {0, 3}});
  const auto red = lll_reduce(diag).basis();
  std::set<IntVector> got;
  for (auto r : red) {
    if (r[0] < 0 || (r[0] == 0 && r[1] < 0)) {
      for (auto& x : r) x = -x;
    }
    got.insert(r);
  }
  CHECK(got == std::set<IntVector>{{0, 3}, {4, 0}});

  SplitMix64 rng(2);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 5;
    const IntegerLattice lat = random_lattice(rng, n, 30);
    const IntegerLattice mixed = scrambled(rng, lat);
    const IntegerLattice out = lll_reduce(mixed);
    CHECK(hermite_normal_form(out.big_basis()) == hermite_normal_form(lat.big_basis()));
    CHECK(out.covolume() == lat.covolume());
    const auto [mu, norms] = gram_schmidt(out.basis());
    bool size_reduced = true, lovasz = true;
    for (int i = 1; i < n; ++i) {
      for (int j = 0; j < i; ++j) size_reduced &= abs(mu[i][j]) <= Rational(1, 2);
      lovasz &= norms[i] >= (Rational(99, 100) - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1];
    }
    CHECK(size_reduced);
    CHECK(lovasz);
  }
}

TEST_CASE("Hermite normal form") {
  const BigMatrix h = hermite_normal_form(to_big_matrix({{2, 4}, {1, 3}}));
  CHECK(h == BigMatrix{{BigInt(1), BigInt(1)}, {BigInt(0), BigInt(2)}});
  CHECK(same_lattice(IntegerLattice({{2, 4}, {1, 3}}), IntegerLattice({{1, 1}, {0, 2}})));
  CHECK_FALSE(same_lattice(IntegerLattice({{2, 0}, {0, 1}}), IntegerLattice({{1, 0}, {0, 2}})));
}

TEST_CASE("body_norm") {
  const auto box = WeightedBody::make(BodyKind::SupBox, {Rational(2), Rational(3)});
  CHECK(body_norm(IntVector{0, 0}, box) == 0);
  CHECK(body_norm(IntVector{2, 3}, box) == 1);
  CHECK(body_norm(IntVector{1, -3}, box) == 1);
  CHECK(body_norm(IntVector{-1, 1}, box) == Rational(1, 2));
  const auto l1 = WeightedBody::make(BodyKind::L1CrossPolytope, {Rational(2), Rational(3)});
  CHECK(body_norm(IntVector{2, 3}, l1) == 2);

  SplitMix64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto body = t % 2 ? random_box(rng, 4)
                            : WeightedBody::make(BodyKind::L1CrossPolytope, random_box(rng, 4).weights);
    IntVector v(4);
    for (auto& x : v) x = rng.between(-1000, 1000);
    const std::int64_t c = rng.between(-50, 50);
    IntVector cv = v;
    for (auto& x : cv) x *= c;
    CHECK(body_norm(cv, body) == std::abs(c) * body_norm(v, body));
  }
  CHECK_THROWS_AS(WeightedBody::make(BodyKind::SupBox, {Rational(1), Rational(0)}), Error);
}

TEST_CASE("enumeration") {
  const IntegerLattice z2({{1, 0}, {0, 1}});
  const auto unit = WeightedBody::unit(BodyKind::SupBox, 2);
  CHECK(count_lattice_points(z2, unit, Rational(1)) == 9);
  CHECK(count_lattice_points(z2, unit, Rational(0)) == 1);
  CHECK(count_lattice_points(z2, unit, Rational(99, 100)) == 1);
  CHECK(count_lattice_points(z2, WeightedBody::unit(BodyKind::L1CrossPolytope, 2), Rational(1)) == 5);

  SplitMix64 rng(4);
  for (int t = 0; t < 25; ++t) {
    const IntegerLattice lat = random_lattice(rng, 3, 50);
    std::vector<Rational> w;
    for (int i = 0; i < 3; ++i) w.emplace_back(rng.between(1, 80), rng.between(1, 3));
    for (auto& x : w) x.canonicalize();
    const auto body = WeightedBody::make(BodyKind::SupBox, w);
    const Rational scale(static_cast<long>(rng.between(1, 4)), 2);
    auto pts = enumerate_lattice_points(lat, body, scale);
    std::set<IntVector> mine(pts.begin(), pts.end());
    CHECK(mine.size() == pts.size());

    std::set<IntVector> expect;
    const oracle::Membership m(lat.basis());
    oracle::scan_box(w, scale, [&](const std::vector<std::int64_t>& v) {
      if (m.contains(v)) expect.insert(v);
    });
    CHECK(mine == expect);
  }

  // L1 bodies against a scan of the enclosing box.
  for (int t = 0; t < 15; ++t) {
    const IntegerLattice lat = random_lattice(rng, 3, 10);
    std::vector<Rational> w;
    for (int i = 0; i < 3; ++i) w.emplace_back(rng.between(1, 30));
    const auto body = WeightedBody::make(BodyKind::L1CrossPolytope, w);
    std::uint64_t expect = 0;
    const oracle::Membership m(lat.basis());
    oracle::scan_box(w, Rational(1), [&](const std::vector<std::int64_t>& v) {
      Rational g = 0;
      for (int i = 0; i < 3; ++i) g += Rational(std::labs(v[i])) / w[i];
      expect += g <= 1 && m.contains(v);
    });
    CHECK(count_lattice_points(lat, body, Rational(1)) == expect);
  }

  EnumerationOptions tiny;
  tiny.max_visits = 10;
  CHECK_THROWS_AS(count_lattice_points(z2, unit, Rational(100), tiny), Error);
  try {
    count_lattice_points(z2, unit, Rational(100), tiny);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("successive minima") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<IntVector> rows(n, IntVector(n, 0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1;
    const auto p = successive_minima(IntegerLattice(rows), WeightedBody::unit(BodyKind::SupBox, n));
    CHECK(p.lambdas == std::vector<Rational>(n, Rational(1)));
  }

  const auto d23 = successive_minima(IntegerLattice({{2, 0}, {0, 3}}),
                                     WeightedBody::unit(BodyKind::SupBox, 2));
  CHECK(d23.lambdas == std::vector<Rational>{Rational(2), Rational(3)});
  CHECK(d23.witnesses == std::vector<IntVector>{{2, 0}, {0, 3}});

  // Congruence lattice q = 101, d = 2, H = 4 against exhaustive search.
  SplitMix64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const ModPoly f = random_poly(rng, 101, 2);
    const IntegerLattice lat = build_congruence_lattice(f);
    const WeightedBody body = build_body(2, 4, Rational(3));
    const auto p = successive_minima(lat, body);
    Rational radius = 0;
    for (const auto& r : lat.basis()) radius = std::max(radius, body_norm(r, body));
    CHECK(p.lambdas == oracle::minima_by_scan(lat.basis(), body.weights, radius));
  }

  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 3;
    const IntegerLattice lat = random_lattice(rng, n, 6);
    const WeightedBody body = t % 2 ? random_box(rng, n) : WeightedBody::unit(BodyKind::SupBox, n);
    const auto p = successive_minima(lat, body);
    Rational radius = 0;
    for (const auto& r : lat.basis()) radius = std::max(radius, body_norm(r, body));
    CHECK(p.lambdas == oracle::minima_by_scan(lat.basis(), body.weights, radius));

    CHECK(std::is_sorted(p.lambdas.begin(), p.lambdas.end()));
    std::vector<std::vector<Rational>> w;
    for (int i = 0; i < n; ++i) {
      CHECK(body_norm(p.witnesses[i], body) == p.lambdas[i]);
      CHECK(oracle::Membership(lat.basis()).contains(p.witnesses[i]));
      w.emplace_back(p.witnesses[i].begin(), p.witnesses[i].end());
    }
    CHECK(oracle::rank(w) == n);
  }
}

TEST_CASE("successive minima on skewed congruence lattices") {
  // Large q makes the minima span many orders of magnitude; a small node
  // budget guards against searches that sweep the whole box slice.
  SplitMix64 rng(11);
  EnumerationOptions opts;
  opts.max_visits = 5000;
  for (int t = 0; t < 40; ++t) {
    const std::int64_t q = rng.between(100000000, 2000000000);
    const int d = 2 + t % 3;
    const int n = d + 1;
    const ModPoly f = random_poly(rng, q, d);
    const IntegerLattice lat = build_congruence_lattice(f);
    const WeightedBody body = build_body(d, rng.between(2, 50), Rational(1));
    const auto p = successive_minima(lat, body, opts);

    REQUIRE(p.lambdas.size() == static_cast<std::size_t>(n));
    CHECK(std::is_sorted(p.lambdas.begin(), p.lambdas.end()));
    std::vector<std::vector<Rational>> w;
    for (int i = 0; i < n; ++i) {
      CHECK(body_norm(p.witnesses[i], body) == p.lambdas[i]);
      CHECK(oracle::Membership(lat.basis()).contains(p.witnesses[i]));
      w.emplace_back(p.witnesses[i].begin(), p.witnesses[i].end());
    }
    CHECK(oracle::rank(w) == n);

    // Minkowski's second theorem with the box volume prod 2 w_i.
    Rational prod = 1, vol = 1, fact = 1;
    for (int i = 0; i < n; ++i) {
      prod *= p.lambdas[i];
      vol *= 2 * body.weights[i];
      fact *= i + 1;
    }
    const Rational lhs = prod * vol, pow2 = Rational(BigInt(1) << n);
    CHECK(lhs <= pow2 * q);
    CHECK(lhs * fact >= pow2 * q);
  }
}

TEST_CASE("dual lattice") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<IntVector> rows(n, IntVector(n, 0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1;
    const DualLattice d = dual_lattice(IntegerLattice(rows));
    CHECK(d.denominator == 1);
    CHECK(same_lattice(d.scaled, IntegerLattice(rows)));
  }
  const DualLattice d = dual_lattice(IntegerLattice({{2, 0}, {0, 5}}));
  CHECK(d.denominator == 10);
  CHECK(same_lattice(d.scaled, IntegerLattice({{5, 0}, {0, 2}})));
  CHECK(d.covolume() == Rational(1, 10));

  SplitMix64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const std::int64_t q = rng.between(2, 5000);
    const ModPoly f = random_poly(rng, q, static_cast<int>(rng.between(2, 5)));
    const DualLattice dual = dual_lattice(build_congruence_lattice(f));
    CHECK(dual.denominator == q);
    for (const auto& v : dual.scaled.basis()) {
      // q * dual vector = (n + q k_0, a_1 n + q k_1, ...) with n = its first entry.
      const std::int64_t n = oracle::mod(v[0], q);
      for (int i = 1; i <= f.degree(); ++i) {
        CHECK(oracle::mod(static_cast<oracle::i128>(f.coeff(i)) * n - v[i], q) == 0);
      }
    }
  }

  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 4;
    const IntegerLattice lat = random_lattice(rng, n, 12);
    const DualLattice dual = dual_lattice(lat);
    // Pairings of primal and dual bases are integers; the pairing matrix is unimodular.
    for (const auto& u : lat.basis()) {
      for (const auto& v : dual.scaled.basis()) {
        BigInt dot = 0;
        for (int k = 0; k < n; ++k) dot += BigInt(static_cast<long>(u[k])) * static_cast<long>(v[k]);
        CHECK(dot % dual.denominator == 0);
      }
    }
    CHECK(dual.covolume() * Rational(lat.covolume()) == 1);
    const DualLattice back = dual_lattice(dual);
    CHECK(back.denominator == 1);
    CHECK(same_lattice(back.scaled, lat));
  }
}

TEST_CASE("dual body") {
  const auto cube = WeightedBody::unit(BodyKind::SupBox, 3);
  CHECK(dual_body(cube) == WeightedBody::unit(BodyKind::L1CrossPolytope, 3));
  SplitMix64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto b = random_box(rng, 4);
    CHECK(dual_body(dual_body(b)) == b);
  }
  // sH|h_0| + sum sH^i |h_i| <= 1
  const auto D = dual_body(build_body(3, 5, Rational(6)));
  CHECK(D.kind == BodyKind::L1CrossPolytope);
  CHECK(D.weights == std::vector<Rational>{Rational(1, 30), Rational(1, 30), Rational(1, 150),
                                          Rational(1, 750)});
}

TEST_CASE("Minkowski second theorem ratio") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<IntVector> rows(n, IntVector(n, 0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1;
    const IntegerLattice zn(rows);
    Rational two_n = 1, fact = 1;
    for (int i = 1; i <= n; ++i) {
      two_n *= 2;
      fact *= i;
    }
    CHECK(minkowski_second_ratio(zn, WeightedBody::unit(BodyKind::SupBox, n)) == two_n);
    CHECK(minkowski_second_ratio(zn, WeightedBody::unit(BodyKind::L1CrossPolytope, n)) ==
          two_n / fact);
  }
  SplitMix64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 5;
    const IntegerLattice lat = random_lattice(rng, n, 9);
    const auto body = t % 2 ? random_box(rng, n) : WeightedBody::unit(BodyKind::SupBox, n);
    const Rational r = minkowski_second_ratio(lat, body);
    Rational two_n = 1, fact = 1;
    for (int i = 1; i <= n; ++i) {
      two_n *= 2;
      fact *= i;
    }
    CHECK(r >= two_n / fact);
    CHECK(r <= two_n);
  }
}

TEST_CASE("dimension guard") {
  std::vector<IntVector> rows(9, IntVector(9, 0));
  for (int i = 0; i < 9; ++i) rows[i][i] = 1;
  try {
    successive_minima(IntegerLattice(rows), WeightedBody::unit(BodyKind::SupBox, 9));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionTooLarge);
  }
}
