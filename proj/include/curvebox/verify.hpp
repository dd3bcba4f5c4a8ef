#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "curvebox/common.hpp"

namespace curvebox {

struct CheckResult {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::string note;  // empirical maxima and similar
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  std::uint64_t failures() const;
  std::string text() const;
  std::string json() const;
};

/// Suites: gon, n2din, lift, vino, all. Unknown names throw InvalidArgument.
VerifyReport run_verify(std::string_view suite, std::uint64_t seed,
                        std::uint64_t budget = kDefaultBudget);

VerifyReport verify_gon(std::uint64_t seed, std::uint64_t budget);
VerifyReport verify_n2din(std::uint64_t seed, std::uint64_t budget);
VerifyReport verify_lift(std::uint64_t seed, std::uint64_t budget);
VerifyReport verify_vino(std::uint64_t seed, std::uint64_t budget);

}  // namespace curvebox
