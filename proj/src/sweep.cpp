#include "curvebox/sweep.hpp"

#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "curvebox/reduction.hpp"

namespace curvebox {

namespace {

using Json = nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::InvalidArgument, "sweep config " + field + ": " + why);
}

std::int64_t get_int(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) bad(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::string lambda_field(const std::vector<Rational>& ls) {
  std::string s;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) s += ';';
    s += ls[i].get_num().get_str() + "/" + ls[i].get_den().get_str();
  }
  return s;
}

BigInt pow_big(std::int64_t b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), BigInt(static_cast<long>(b)).get_mpz_t(), e);
  return r;
}

SweepRow poly_row(const ModPoly& f, std::int64_t H, const EnumerationOptions& opts) {
  const int d = f.degree();
  SweepRow row;
  row.q = f.modulus();
  row.d = d;
  row.H = H;
  row.N = count_points_curve(f, BoxRegion::origin(H)).N;
  row.bound = theorem3_bound(d, row.q, H).value;
  const MinimaProfile m = successive_minima(build_congruence_lattice(f),
                                            build_body(d, H, Rational(tuple_length(d))), opts);
  row.case_name = to_string(m.lambdas.back() < 1 ? CaseKind::Spread : CaseKind::Lift);
  row.lambdas = m.lambdas;
  return row;
}

SweepRow hyperelliptic_row(const HyperellipticCurve& c, std::int64_t H,
                           const EnumerationOptions& opts) {
  const ModPoly& f = c.poly();
  SweepRow row;
  row.q = c.modulus();
  row.d = 3;
  row.H = H;
  row.N = count_points_hyperelliptic(c, BoxRegion::origin(H)).N;
  row.bound = theorem4_bound(row.q, H).value;
  const MinimaProfile m = successive_minima(
      build_hyperelliptic_lattice(f.coeff(1), f.coeff(2), f.coeff(3), c.c0(), row.q),
      build_hyperelliptic_body(H), opts);
  row.case_name = to_string(m.lambdas.back() <= 1 ? CaseKind::Spread : CaseKind::Lift);
  row.lambdas = m.lambdas;
  return row;
}

}  // namespace

ModPoly random_poly(SplitMix64& rng, std::int64_t q, int d) {
  std::vector<std::int64_t> a(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i < d; ++i) a[i] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q)));
  do {
    a[d] = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q)));
  } while (std::gcd(a[d], q) != 1);
  return ModPoly(q, std::move(a));
}

std::int64_t random_prime(SplitMix64& rng, std::int64_t lo, std::int64_t hi) {
  const std::int64_t u = rng.between(lo, hi);
  const auto up = static_cast<std::int64_t>(next_prime(static_cast<std::uint64_t>(u)));
  if (up <= hi) return up;
  return static_cast<std::int64_t>(prev_prime(static_cast<std::uint64_t>(u)));
}

SweepConfig parse_sweep_config(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("document", "expected a JSON object");

  SweepConfig cfg;
  if (doc.contains("curve")) {
    const Json& c = doc.at("curve");
    if (c == "poly") {
      cfg.curve = CurveKind::Poly;
    } else if (c == "hyperelliptic") {
      cfg.curve = CurveKind::Hyperelliptic;
      cfg.d = 3;
    } else {
      bad("curve", "expected \"poly\" or \"hyperelliptic\"");
    }
  }
  if (doc.contains("d")) cfg.d = static_cast<int>(get_int(doc.at("d"), "d"));
  if (cfg.d < 2 || cfg.d > 5) bad("d", "degree must lie in [2, 5]");
  if (cfg.curve == CurveKind::Hyperelliptic && cfg.d != 3) bad("d", "hyperelliptic sweeps use d = 3");

  if (doc.contains("q")) {
    const Json& qs = doc.at("q");
    if (!qs.is_array()) bad("q", "expected an array of integers");
    for (const auto& v : qs) {
      const std::int64_t q = get_int(v, "q");
      if (q < 2 || q > kMaxModulus) bad("q", "modulus out of range: " + std::to_string(q));
      cfg.q_values.push_back(q);
    }
  }
  if (doc.contains("random_primes")) {
    const Json& r = doc.at("random_primes");
    if (!r.is_object()) bad("random_primes", "expected {count, min, max}");
    SweepConfig::PrimeRange pr;
    pr.count = get_int(r.value("count", Json()), "random_primes.count");
    pr.min = get_int(r.value("min", Json()), "random_primes.min");
    pr.max = get_int(r.value("max", Json()), "random_primes.max");
    if (pr.count < 0) bad("random_primes.count", "must be non-negative");
    if (pr.min < 3 || pr.max < pr.min || pr.max > kMaxModulus) {
      bad("random_primes", "need 3 <= min <= max <= 2^31");
    }
    cfg.random_primes = pr;
  }

  if (!doc.contains("H")) bad("H", "missing rule {\"fixed\": n} or {\"exponent\": \"a/b\"}");
  const Json& h = doc.at("H");
  if (h.is_object() && h.contains("fixed")) {
    cfg.fixed_H = get_int(h.at("fixed"), "H.fixed");
    if (*cfg.fixed_H < 1) bad("H.fixed", "must be positive");
  } else if (h.is_object() && h.contains("exponent")) {
    const Json& e = h.at("exponent");
    try {
      cfg.H_exponent = e.is_string() ? parse_rational(e.get<std::string>())
                                     : Rational(BigInt(static_cast<long>(get_int(e, "H.exponent"))));
    } catch (const Error& err) {
      bad("H.exponent", err.what());
    }
    if (*cfg.H_exponent <= 0 || *cfg.H_exponent > 1) bad("H.exponent", "must lie in (0, 1]");
  } else {
    bad("H", "expected {\"fixed\": n} or {\"exponent\": \"a/b\"}");
  }

  if (doc.contains("instances")) {
    cfg.instances = static_cast<int>(get_int(doc.at("instances"), "instances"));
    if (cfg.instances < 1) bad("instances", "must be positive");
  }
  if (doc.contains("seed")) {
    const Json& s = doc.at("seed");
    if (!s.is_number_unsigned() && !s.is_number_integer()) bad("seed", "expected an integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  return cfg;
}

std::int64_t floor_power(std::int64_t q, const Rational& e) {
  if (q < 1 || e < 0) throw Error(ErrorCode::InvalidArgument, "floor_power domain");
  const unsigned long a = e.get_num().get_ui();
  const unsigned long b = e.get_den().get_ui();
  BigInt r;
  mpz_root(r.get_mpz_t(), pow_big(q, a).get_mpz_t(), b);
  return to_i64(r);
}

std::pair<double, std::string> root_ratio(std::uint64_t N, std::int64_t H, int d) {
  // R = floor(H^(1/d) * 10^6), so N * 10^6 / R >= N / H^(1/d) and is within 1e-6 relative.
  BigInt scaled = BigInt(static_cast<long>(H)) * pow_big(10, 6UL * static_cast<unsigned long>(d));
  BigInt R;
  mpz_root(R.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(d));
  BigInt n;
  mpz_set_ui(n.get_mpz_t(), N);
  BigInt micro = n * pow_big(10, 12) / R;  // floor(ratio * 10^6)
  BigInt whole = micro / 1000000;
  BigInt frac = micro % 1000000;
  std::string fs = frac.get_str();
  std::string text = whole.get_str() + "." + std::string(6 - fs.size(), '0') + fs;
  Rational exact(n * 1000000, R);
  return {exact.get_d(), text};
}

std::vector<std::int64_t> sweep_moduli(const SweepConfig& cfg, SplitMix64& rng) {
  std::vector<std::int64_t> qs = cfg.q_values;
  if (cfg.random_primes) {
    for (std::int64_t i = 0; i < cfg.random_primes->count; ++i) {
      qs.push_back(random_prime(rng, cfg.random_primes->min, cfg.random_primes->max));
    }
  }
  return qs;
}

std::string format_row(const SweepRow& row) {
  char bound[64];
  std::snprintf(bound, sizeof bound, "%.6f", row.bound);
  std::ostringstream out;
  out << row.q << ',' << row.d << ',' << row.H << ',' << row.N << ',' << bound << ','
      << row.case_name << ',' << row.ratio_text << ',' << lambda_field(row.lambdas);
  return out.str();
}

SweepOutcome run_sweep(const SweepConfig& cfg, std::uint64_t budget) {
  SplitMix64 rng(cfg.seed);
  const std::vector<std::int64_t> qs = sweep_moduli(cfg, rng);
  EnumerationOptions opts;
  opts.max_visits = budget;

  SweepOutcome out;
  out.csv = std::string(kSweepHeader) + "\n";
  for (const std::int64_t q : qs) {
    std::int64_t H = cfg.fixed_H ? *cfg.fixed_H : floor_power(q, *cfg.H_exponent);
    if (H < 1) H = 1;
    for (int i = 0; i < cfg.instances; ++i) {
      SweepRow row;
      try {
        if (cfg.curve == CurveKind::Poly) {
          row = poly_row(random_poly(rng, q, cfg.d), H, opts);
        } else {
          ModPoly f = random_poly(rng, q, 3);
          const auto c0 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(q)));
          row = hyperelliptic_row(HyperellipticCurve(std::move(f), c0), H, opts);
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        out.budget_exceeded = true;
        out.csv += "# budget exceeded at q=" + std::to_string(q) + " H=" + std::to_string(H) +
                   " instance=" + std::to_string(i) + "\n";
        return out;
      }
      std::tie(row.ratio, row.ratio_text) = root_ratio(row.N, H, row.d);
      out.csv += format_row(row) + "\n";
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace curvebox
