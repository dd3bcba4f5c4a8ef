#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvebox/common.hpp"
#include "curvebox/instance.hpp"
#include "curvebox/random.hpp"

namespace curvebox {

inline constexpr const char* kSweepHeader = "q,d,H,N,bound,case,ratio,lambdas";

struct SweepConfig {
  std::vector<std::int64_t> q_values;  // explicit samples, used first
  struct PrimeRange {
    std::int64_t count = 0;
    std::int64_t min = 0;
    std::int64_t max = 0;
  };
  std::optional<PrimeRange> random_primes;
  int d = 2;
  CurveKind curve = CurveKind::Poly;
  std::optional<std::int64_t> fixed_H;
  std::optional<Rational> H_exponent;  // H = floor(q^e)
  int instances = 1;
  std::uint64_t seed = 1;
};

/// Sweep config JSON:
///   {"q": [int...], "random_primes": {"count", "min", "max"}, "d": int,
///    "curve": "poly"|"hyperelliptic", "H": {"fixed": int} | {"exponent": "a/b"},
///    "instances": int, "seed": int}
SweepConfig parse_sweep_config(std::string_view json_text);

struct SweepRow {
  std::int64_t q = 0;
  int d = 0;
  std::int64_t H = 0;
  std::uint64_t N = 0;
  double bound = 0.0;
  std::string case_name;
  double ratio = 0.0;
  std::string ratio_text;  // exact 6-decimal truncation
  std::vector<Rational> lambdas;
};

/// floor(q^e) by integer root extraction.
std::int64_t floor_power(std::int64_t q, const Rational& e);

/// N / H^(1/d) from floor(H^(1/d) * 10^6); returns (value, six-decimal text).
std::pair<double, std::string> root_ratio(std::uint64_t N, std::int64_t H, int d);

/// The moduli of the sweep in input order (explicit values then random primes).
std::vector<std::int64_t> sweep_moduli(const SweepConfig& cfg, SplitMix64& rng);

struct SweepOutcome {
  std::vector<SweepRow> rows;
  std::string csv;
  bool budget_exceeded = false;
};

SweepOutcome run_sweep(const SweepConfig& cfg, std::uint64_t budget = kDefaultBudget);

std::string format_row(const SweepRow& row);

}  // namespace curvebox
