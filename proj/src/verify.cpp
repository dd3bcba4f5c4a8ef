#include "curvebox/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "curvebox/random.hpp"
#include "curvebox/reduction.hpp"

namespace curvebox {

namespace {

// Accumulates pass/fail counts and an empirical maximum for one named check.
class Tally {
 public:
  explicit Tally(std::string name) { r_.name = std::move(name); }

  void record(bool ok) { ok ? ++r_.passed : ++r_.failed; }
  void observe(double v) { max_ = std::max(max_, v); seen_ = true; }

  CheckResult finish(const char* what = "max") {
    if (seen_) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s %.6g", what, max_);
      r_.note = buf;
    }
    return r_;
  }

 private:
  CheckResult r_;
  double max_ = 0.0;
  bool seen_ = false;
};

Rational big_rational(std::uint64_t v) {
  BigInt b;
  mpz_set_ui(b.get_mpz_t(), v);
  return Rational(b);
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational power(const Rational& b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

IntegerLattice random_lattice(SplitMix64& rng, int n, std::int64_t bound) {
  while (true) {
    std::vector<IntVector> rows(static_cast<std::size_t>(n), IntVector(static_cast<std::size_t>(n)));
    for (auto& r : rows) {
      for (auto& x : r) x = rng.between(-bound, bound);
    }
    BigMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (auto x : rows[i]) m[i].emplace_back(static_cast<long>(x));
    }
    if (exact_determinant(m) != 0) return IntegerLattice(std::move(rows));
  }
}

WeightedBody random_box(SplitMix64& rng, int n) {
  std::vector<Rational> w;
  for (int i = 0; i < n; ++i) {
    Rational r(static_cast<long>(rng.between(1, 5)), static_cast<long>(rng.between(1, 5)));
    r.canonicalize();
    w.push_back(r);
  }
  return WeightedBody::make(BodyKind::SupBox, std::move(w));
}

bool VerifyReport::ok() const { return failures() == 0; }

std::uint64_t VerifyReport::failures() const {
  std::uint64_t f = 0;
  for (const auto& c : checks) f += c.failed;
  return f;
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.failed ? "FAIL " : "PASS ") << c.name << ' ' << c.passed << '/'
        << c.passed + c.failed;
    if (!c.note.empty()) out << " (" << c.note << ')';
    out << '\n';
  }
  out << (ok() ? "ok" : "FAILED") << ": " << checks.size() << " checks, " << failures()
      << " failures\n";
  return out.str();
}

std::string VerifyReport::json() const {
  nlohmann::ordered_json j;
  j["ok"] = ok();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"failed", c.failed}, {"note", c.note}});
  }
  return j.dump(2) + "\n";
}

VerifyReport verify_gon(std::uint64_t seed, std::uint64_t budget) {
  SplitMix64 rng(seed ^ 0x676f6e);
  EnumerationOptions opts;
  opts.max_visits = budget;

  Tally mink("gon.minkowski_second"), lower("gon.transference_lower"),
      upper("gon.transference_upper"), points("gon.lattice_point_bound"),
      witness("gon.witness_norms"), involution("gon.dual_involution");

  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const IntegerLattice lat = random_lattice(rng, n, 9);
    const WeightedBody body =
        trial % 2 == 0 ? WeightedBody::unit(BodyKind::SupBox, n) : random_box(rng, n);

    const MinimaProfile m = successive_minima(lat, body, opts);
    const Rational ratio = minkowski_second_ratio(m, body, Rational(lat.covolume()));
    const Rational two_n = power(Rational(2), n);
    mink.record(ratio >= two_n / factorial(n) && ratio <= two_n);

    bool norms_ok = std::is_sorted(m.lambdas.begin(), m.lambdas.end());
    for (int i = 0; i < n; ++i) norms_ok &= body_norm(m.witnesses[i], body) == m.lambdas[i];
    witness.record(norms_ok);

    const DualLattice dual = dual_lattice(lat);
    const MinimaProfile md = successive_minima(dual, dual_body(body), opts);
    const Rational cap = factorial(n) * n;
    for (int j = 0; j < n; ++j) {
      const Rational prod = m.lambdas[j] * md.lambdas[n - 1 - j];
      lower.record(prod >= 1);
      upper.record(prod <= cap);
      upper.observe(prod.get_d());
    }

    const DualLattice back = dual_lattice(dual);
    involution.record(back.denominator == 1 && same_lattice(back.scaled, lat));

    const std::uint64_t count = count_lattice_points(lat, body, Rational(1), opts);
    Rational bound = power(Rational(6), n);
    for (const auto& l : m.lambdas) {
      if (l < 1) bound /= l;
    }
    const Rational r = big_rational(count) / (bound / power(Rational(6), n));
    points.record(big_rational(count) <= bound);
    points.observe(r.get_d());
  }

  VerifyReport rep;
  rep.checks = {mink.finish(), lower.finish(), upper.finish("max product"),
                points.finish("max |L&D| / prod max(1,1/lambda)"), witness.finish(),
                involution.finish()};
  return rep;
}

VerifyReport verify_n2din(std::uint64_t seed, std::uint64_t budget) {
  SplitMix64 rng(seed ^ 0x6e32);
  EnumerationOptions opts;
  opts.max_visits = budget;
  Tally central("n2din.central_inequality");
  const int d = 2;
  const int s = tuple_length(d);
  for (const std::int64_t q : {101, 127, 169, 200}) {
    for (std::int64_t H = 2; H <= 8; ++H) {
      for (int i = 0; i < 5; ++i) {
        const ModPoly f = random_poly(rng, q, d);
        const CurveCount cc = count_points_curve(f, BoxRegion::origin(H));
        const std::uint64_t lattice =
            count_lattice_points(build_congruence_lattice(f), build_body(d, H, Rational(s)),
                                 Rational(1), opts);
        std::uint64_t J = 0;
        if (cc.X.size() > 0) {
          J = vinogradov_count(VinogradovInstance::make(cc.X.elements, d, s), budget);
        }
        BigInt lhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), cc.N, 2 * s);
        const Rational rhs = big_rational(lattice) * big_rational(J);
        central.record(Rational(lhs) <= rhs);
        if (rhs > 0) central.observe(Rational(Rational(lhs) / rhs).get_d());
      }
    }
  }
  VerifyReport rep;
  rep.checks = {central.finish("max N^6 / (|L&D| J)")};
  return rep;
}

VerifyReport verify_lift(std::uint64_t seed, std::uint64_t budget) {
  SplitMix64 rng(seed ^ 0x6c696674);
  ClassifyOptions copts;
  copts.count_lattice_points = false;
  copts.enumeration.max_visits = budget;

  Tally poly_dom("lift.poly.domination"), poly_map("lift.poly.solutions_in_range"),
      poly_recheck("lift.poly.recheck"), hyp_dom("lift.hyperelliptic.domination"),
      hyp_map("lift.hyperelliptic.solutions_in_range"), hyp_recheck("lift.hyperelliptic.recheck");

  // Large q and small H make Lift the typical outcome; Spread draws are skipped.
  int lifts = 0;
  for (int trial = 0; trial < 400 && lifts < 100; ++trial) {
    const int d = 2 + trial % 2;
    const std::int64_t q = random_prime(rng, 100000000, 2000000000);
    const std::int64_t H = d == 2 ? rng.between(3, 20) : rng.between(2, 6);
    const ModPoly base = random_poly(rng, q, d);
    std::vector<std::int64_t> a(base.coeffs().begin(), base.coeffs().end());
    // Plant (x0, y0): choose a_0 with f(x0) = y0.
    const std::int64_t x0 = rng.between(1, H), y0 = rng.between(1, H);
    a[0] = 0;
    a[0] = mod_reduce(static_cast<i128>(y0) - eval_poly_mod(ModPoly(q, a), x0), q);
    const ModPoly f(q, a);
    const CaseReport rep = classify_case(f, H, copts);
    if (rep.kind != CaseKind::Lift) continue;
    ++lifts;
    const ShortDualVector& sv = *rep.short_vector;
    poly_recheck.record(congruence_recheck(f, sv));
    const LiftedCurve lc = lift_curve(f, H, sv);
    const CurveCount cc = count_points_curve(f, BoxRegion::origin(H));
    poly_dom.record(cc.N <= count_lifted_points(lc, BoxRegion::origin(H)).total);
    bool mapped = true;
    for (std::int64_t x = 1; x <= H; ++x) {
      for (std::int64_t y = 1; y <= H; ++y) {
        if (eval_poly_mod(f, x) != mod_reduce(y, q)) continue;
        i128 v = static_cast<i128>(sv.z) * y - sv.w0, xp = 1;
        for (int i = 1; i <= d; ++i) {
          xp *= x;
          v -= static_cast<i128>(sv.w[i - 1]) * xp;
        }
        const bool ok = v % q == 0 && v / q >= lc.t_lo && v / q <= lc.t_hi;
        mapped &= ok;
      }
    }
    poly_map.record(mapped);
  }

  lifts = 0;
  for (int trial = 0; trial < 200 && lifts < 40; ++trial) {
    const std::int64_t q = random_prime(rng, 1000000000, 2000000000);
    const std::int64_t H = rng.between(2, 3);
    const ModPoly base = random_poly(rng, q, 3);
    std::vector<std::int64_t> a(base.coeffs().begin(), base.coeffs().end());
    const auto c0 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q)));
    const std::int64_t x0 = rng.between(1, H), y0 = rng.between(1, H);
    a[0] = 0;
    const i128 lhs = static_cast<i128>(y0) * y0 - static_cast<i128>(c0) * y0;
    a[0] = mod_reduce(lhs - eval_poly_mod(ModPoly(q, a), x0), q);
    const HyperellipticCurve c(ModPoly(q, a), c0);
    const HyperellipticCaseReport rep = classify_hyperelliptic_case(c, H, copts);
    if (rep.kind != CaseKind::Lift) continue;
    ++lifts;
    const HyperellipticDualVector& sv = *rep.short_vector;
    hyp_recheck.record(congruence_recheck(c, sv));
    const LiftedHyperellipticCurve lc = lift_hyperelliptic(c, H, sv);
    const CurveCount cc = count_points_hyperelliptic_double_loop(c, BoxRegion::origin(H));
    hyp_dom.record(cc.N <= count_lifted_points(lc, BoxRegion::origin(H)).total);
    bool mapped = true;
    for (std::int64_t x = 1; x <= H; ++x) {
      const std::int64_t fx = eval_poly_mod(c.poly(), x);
      for (std::int64_t y = 1; y <= H; ++y) {
        if (mod_reduce(static_cast<i128>(y) * y - static_cast<i128>(c.c0()) * y, q) != fx) continue;
        i128 v = static_cast<i128>(sv.n) * y * y - static_cast<i128>(sv.z1) * y - sv.w0, xp = 1;
        for (int i = 1; i <= 3; ++i) {
          xp *= x;
          v -= static_cast<i128>(sv.w[i - 1]) * xp;
        }
        mapped &= v % q == 0 && v / q >= lc.t_lo && v / q <= lc.t_hi;
      }
    }
    hyp_map.record(mapped);
  }

  VerifyReport rep;
  rep.checks = {poly_recheck.finish(), poly_dom.finish(), poly_map.finish(),
                hyp_recheck.finish(), hyp_dom.finish(), hyp_map.finish()};
  return rep;
}

VerifyReport verify_vino(std::uint64_t seed, std::uint64_t budget) {
  SplitMix64 rng(seed ^ 0x76696e6f);
  Tally diag("vino.diagonal_lower_bound"), shift("vino.shift_invariance"),
      mono("vino.superset_monotone"), trivial("vino.trivial_upper_bound");
  const std::pair<int, int> shapes[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 6}};
  for (int trial = 0; trial < 60; ++trial) {
    const auto [k, s] = shapes[trial % 6];
    const int size = static_cast<int>(rng.between(1, s >= 6 ? 5 : 9));
    std::vector<std::int64_t> X;
    while (static_cast<int>(X.size()) < size) {
      const std::int64_t v = rng.between(-30, 30);
      if (std::find(X.begin(), X.end(), v) == X.end()) X.push_back(v);
    }
    const auto inst = VinogradovInstance::make(X, k, s);
    const std::uint64_t J = vinogradov_count(inst, budget);
    BigInt xs, x2s;
    mpz_ui_pow_ui(xs.get_mpz_t(), X.size(), s);
    mpz_ui_pow_ui(x2s.get_mpz_t(), X.size(), 2 * s - 1);
    diag.record(big_rational(J) >= Rational(xs));
    trivial.record(big_rational(J) <= Rational(x2s));
    shift.record(vinogradov_shift_invariance_check(inst, rng.between(-50, 50), budget));

    std::vector<std::int64_t> Y = X;
    const std::int64_t extra = 31 + static_cast<std::int64_t>(rng.below(20));
    Y.push_back(extra);
    if (static_cast<std::uint64_t>(std::pow(static_cast<double>(Y.size()), s)) <= budget) {
      mono.record(vinogradov_count(VinogradovInstance::make(Y, k, s), budget) >= J);
    }
  }
  VerifyReport rep;
  rep.checks = {diag.finish(), trivial.finish(), shift.finish(), mono.finish()};
  return rep;
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed, std::uint64_t budget) {
  if (suite == "gon") return verify_gon(seed, budget);
  if (suite == "n2din") return verify_n2din(seed, budget);
  if (suite == "lift") return verify_lift(seed, budget);
  if (suite == "vino") return verify_vino(seed, budget);
  if (suite == "all") {
    VerifyReport all;
    for (auto* fn : {verify_gon, verify_n2din, verify_lift, verify_vino}) {
      auto r = fn(seed, budget);
      all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
    }
    return all;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown suite '" + std::string(suite) + "' (expected gon, n2din, lift, vino, all)");
}

}  // namespace curvebox
