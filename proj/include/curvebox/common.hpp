#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvebox {

using BigInt = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<std::int64_t>;
using i128 = __int128;

enum class ErrorCode {
  InvalidArgument,
  InvalidInstance,
  DimensionTooLarge,
  BudgetExceeded,
  Overflow,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Default work budget: s-tuples for the Vinogradov counter, visited points for
// lattice enumeration.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

inline BigInt to_big(i128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x)
                            : static_cast<unsigned __int128>(x);
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

inline bool fits_i64(const BigInt& x) { return x.fits_slong_p(); }

inline std::int64_t to_i64(const BigInt& x) {
  if (!x.fits_slong_p()) {
    throw Error(ErrorCode::Overflow, "integer does not fit in 64 bits: " + x.get_str());
  }
  return x.get_si();
}

inline i128 to_i128(const BigInt& x) {
  BigInt a = abs(x);
  if (mpz_sizeinbase(a.get_mpz_t(), 2) > 126) {
    throw Error(ErrorCode::Overflow, "integer does not fit in 128 bits");
  }
  BigInt hi = a >> 64;
  BigInt lo = a - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                        mpz_get_ui(lo.get_mpz_t());
  i128 r = static_cast<i128>(u);
  return x < 0 ? -r : r;
}

inline std::string to_string(i128 x) { return to_big(x).get_str(); }

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// Text form "p/q", or "p" when the denominator is 1.
inline std::string rational_str(const Rational& r) { return r.get_str(); }

}  // namespace curvebox
