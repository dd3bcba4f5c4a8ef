#include <algorithm>
#include <numeric>
#include <set>

#include "curvebox/curvecount.hpp"

namespace curvebox {

namespace {

constexpr int kMaxPowers = 10;

template <typename Key>
std::uint64_t count_mitm(const VinogradovInstance& inst, std::uint64_t tuples) {
  const int k = inst.k;
  const int s = inst.s;
  const std::size_t m = inst.X.size();

  std::vector<std::vector<Key>> pw(m, std::vector<Key>(static_cast<std::size_t>(k)));
  for (std::size_t i = 0; i < m; ++i) {
    Key p = 1;
    for (int e = 0; e < k; ++e) {
      p *= static_cast<Key>(inst.X[i]);
      pw[i][e] = p;
    }
  }

  // Power-sum keys of every ordered s-tuple, flattened with stride k.
  std::vector<Key> keys(tuples * static_cast<std::uint64_t>(k));
  std::vector<std::size_t> idx(static_cast<std::size_t>(s), 0);
  for (std::uint64_t t = 0; t < tuples; ++t) {
    Key* key = &keys[t * k];
    std::fill(key, key + k, Key{0});
    for (int j = 0; j < s; ++j) {
      const auto& row = pw[idx[j]];
      for (int e = 0; e < k; ++e) key[e] += row[e];
    }
    for (int j = 0; j < s; ++j) {
      if (++idx[j] < m) break;
      idx[j] = 0;
    }
  }

  std::vector<std::uint32_t> order(tuples);
  std::iota(order.begin(), order.end(), 0u);
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(&keys[a * k], &keys[a * k] + k, &keys[b * k],
                                        &keys[b * k] + k);
  };
  std::sort(order.begin(), order.end(), less);

  std::uint64_t J = 0;
  std::uint64_t run = 0;
  for (std::uint64_t i = 0; i < tuples; ++i) {
    if (i > 0 && !std::equal(&keys[order[i] * k], &keys[order[i] * k] + k,
                             &keys[order[i - 1] * k])) {
      J += run * run;
      run = 0;
    }
    ++run;
  }
  J += run * run;
  return J;
}

}  // namespace

VinogradovInstance VinogradovInstance::make(std::vector<std::int64_t> X, int k, int s) {
  if (k < 1 || s < 1) throw Error(ErrorCode::InvalidArgument, "Vinogradov k and s must be >= 1");
  if (k > kMaxPowers) throw Error(ErrorCode::InvalidArgument, "Vinogradov k too large");
  std::set<std::int64_t> seen(X.begin(), X.end());
  if (seen.size() != X.size()) {
    throw Error(ErrorCode::InvalidArgument, "Vinogradov set has repeated elements");
  }
  return VinogradovInstance{std::move(X), k, s};
}

std::uint64_t vinogradov_count(const VinogradovInstance& inst, std::uint64_t budget) {
  const std::uint64_t m = inst.X.size();
  if (m == 0) return 0;
  std::uint64_t tuples = 1;
  for (int j = 0; j < inst.s; ++j) {
    if (tuples > budget / m) {
      throw Error(ErrorCode::BudgetExceeded, "Vinogradov count exceeds the work budget");
    }
    tuples *= m;
  }
  if (tuples > budget || tuples > UINT32_MAX) {
    throw Error(ErrorCode::BudgetExceeded, "Vinogradov count exceeds the work budget");
  }

  // Largest |power sum| is s * max|x|^k; pick the narrowest exact key type.
  std::int64_t mx = 0;
  for (auto x : inst.X) mx = std::max(mx, x < 0 ? -x : x);
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), BigInt(static_cast<long>(mx)).get_mpz_t(),
             static_cast<unsigned long>(inst.k));
  const BigInt bound = BigInt(inst.s) * p;
  if (mpz_sizeinbase(bound.get_mpz_t(), 2) <= 62) return count_mitm<std::int64_t>(inst, tuples);
  if (mpz_sizeinbase(bound.get_mpz_t(), 2) <= 125) return count_mitm<i128>(inst, tuples);
  throw Error(ErrorCode::Overflow, "Vinogradov power sums exceed 128 bits");
}

bool vinogradov_shift_invariance_check(const VinogradovInstance& inst, std::int64_t c,
                                       std::uint64_t budget) {
  VinogradovInstance shifted = inst;
  for (auto& x : shifted.X) x += c;
  return vinogradov_count(inst, budget) == vinogradov_count(shifted, budget);
}

}  // namespace curvebox
