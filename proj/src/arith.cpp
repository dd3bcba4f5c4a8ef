#include "curvebox/arith.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace curvebox {

ModPoly::ModPoly(std::int64_t q, std::vector<std::int64_t> coeffs)
    : q_(q), coeffs_(std::move(coeffs)) {
  if (q_ < 2 || q_ > kMaxModulus) {
    throw Error(ErrorCode::InvalidInstance,
                "modulus q must lie in [2, 2^31], got " + std::to_string(q_));
  }
  if (coeffs_.size() < 3) {
    throw Error(ErrorCode::InvalidInstance, "degree must be at least 2");
  }
  for (auto& a : coeffs_) a = mod_reduce(a, q_);
  if (std::gcd(coeffs_.back(), q_) != 1) {
    throw Error(ErrorCode::InvalidInstance, "leading coefficient not coprime to q");
  }
}

BoxRegion BoxRegion::make(std::int64_t K, std::int64_t L, std::int64_t H) {
  if (H < 1) {
    throw Error(ErrorCode::InvalidInstance,
                "box side H must be positive, got " + std::to_string(H));
  }
  return BoxRegion{K, L, H};
}

std::int64_t least_absolute_residue(i128 x, std::int64_t q) {
  std::int64_t r = mod_reduce(x, q);
  // (-q/2, q/2]: r > q/2 maps down; for even q, q/2 itself stays positive.
  if (2 * static_cast<i128>(r) > q) r -= q;
  return r;
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t q) {
  std::int64_t result = 1 % q;
  base = mod_reduce(base, q);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return result;
}

std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t q) {
  i128 old_r = mod_reduce(a, q), r = q;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 quot = old_r / r;
    std::swap(old_r, r);
    r -= quot * old_r;
    std::swap(old_s, s);
    s -= quot * old_s;
  }
  if (old_r != 1) return std::nullopt;
  return mod_reduce(old_s, q);
}

namespace {

std::uint64_t mul_mod_u(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod_u(r, b, m);
    b = mul_mod_u(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod_u(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod_u(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  while (!is_prime(n)) ++n;
  return n;
}

std::uint64_t prev_prime(std::uint64_t n) {
  while (n >= 2 && !is_prime(n)) --n;
  return n;
}

std::vector<std::int64_t> sqrt_mod_prime(std::int64_t a, std::int64_t p) {
  a = mod_reduce(a, p);
  if (a == 0) return {0};
  if (p == 2) return {a};
  if (pow_mod(a, static_cast<std::uint64_t>(p - 1) / 2, p) != 1) return {};

  std::int64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::int64_t z = 2;
  while (pow_mod(z, static_cast<std::uint64_t>(p - 1) / 2, p) != p - 1) ++z;

  std::int64_t m = s;
  std::int64_t c = pow_mod(z, static_cast<std::uint64_t>(q), p);
  std::int64_t t = pow_mod(a, static_cast<std::uint64_t>(q), p);
  std::int64_t r = pow_mod(a, static_cast<std::uint64_t>(q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0;
    std::int64_t t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  std::int64_t other = p - r;
  return {std::min(r, other), std::max(r, other)};
}

std::int64_t eval_poly_mod(const ModPoly& f, std::int64_t x) {
  const std::int64_t q = f.modulus();
  const std::int64_t xr = mod_reduce(x, q);
  auto c = f.coeffs();
  i128 acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = (acc * xr + *it) % q;
  }
  return static_cast<std::int64_t>(acc);
}

std::int64_t interval_residue_count(std::int64_t lo, std::int64_t H, std::int64_t r,
                                    std::int64_t q) {
  // #{y <= b : y = r (mod q)} = floor((b - r) / q) + const; take the difference.
  const i128 hi = static_cast<i128>(lo) + H;
  return static_cast<std::int64_t>(floor_div(hi - r, static_cast<i128>(q)) -
                                   floor_div(static_cast<i128>(lo) - r, static_cast<i128>(q)));
}

std::vector<std::int64_t> taylor_shift(std::span<const std::int64_t> coeffs,
                                       std::int64_t shift, std::int64_t q) {
  std::vector<std::int64_t> g(coeffs.begin(), coeffs.end());
  const std::int64_t k = mod_reduce(shift, q);
  const std::size_t n = g.size();
  // Repeated synthetic division by (X - k).
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) {
      g[j - 1] = mod_reduce(static_cast<i128>(g[j - 1]) + static_cast<i128>(g[j]) * k, q);
    }
  }
  for (auto& a : g) a = mod_reduce(a, q);
  return g;
}

ShiftedInstance shift_normalize(const ModPoly& f, const BoxRegion& box) {
  const std::int64_t q = f.modulus();
  auto g = taylor_shift(f.coeffs(), box.K, q);
  g[0] = mod_reduce(static_cast<i128>(g[0]) - box.L, q);
  return {ModPoly(q, std::move(g)), BoxRegion::origin(box.H)};
}

std::int64_t integer_root(std::int64_t x, int k) {
  if (x < 0 || k < 1) throw Error(ErrorCode::InvalidArgument, "integer_root domain");
  if (x < 2 || k == 1) return x;
  BigInt r;
  mpz_root(r.get_mpz_t(), BigInt(static_cast<long>(x)).get_mpz_t(), static_cast<unsigned long>(k));
  return r.get_si();
}

}  // namespace curvebox
