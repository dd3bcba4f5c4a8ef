// Integral LLL (de Weger / Cohen 2.6.7): all Gram-Schmidt data is kept as the
// integers d_i = prod ||b_j*||^2 and lambda_ij = d_j * mu_ij, so no rational
// arithmetic appears in the inner loop.

#include "curvebox/gon.hpp"

namespace curvebox {

namespace {

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class IntegralLll {
 public:
  IntegralLll(BigMatrix& b, const Rational& delta)
      : b_(b),
        n_(b.size()),
        delta_num_(delta.get_num()),
        delta_den_(delta.get_den()),
        d_(n_ + 1),
        lam_(n_, std::vector<BigInt>(n_)) {}

  void run() {
    if (n_ <= 1) return;
    // 1-based k as in the textbook; d_[0] = 1.
    d_[0] = 1;
    d_[1] = dot(b_[0], b_[0]);
    std::size_t k = 2;
    std::size_t kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        incorporate(k);
      }
      while (true) {
        reduce(k, k - 1);
        if (lovasz_fails(k)) {
          swap(k, kmax);
          k = std::max<std::size_t>(2, k - 1);
          continue;
        }
        for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
        ++k;
        break;
      }
    }
  }

 private:
  BigInt& lam(std::size_t k, std::size_t j) { return lam_[k - 1][j - 1]; }

  void incorporate(std::size_t k) {
    for (std::size_t j = 1; j <= k; ++j) {
      BigInt u = dot(b_[k - 1], b_[j - 1]);
      for (std::size_t i = 1; i < j; ++i) {
        u = (d_[i] * u - lam(k, i) * lam(j, i)) / d_[i - 1];
      }
      if (j < k) {
        lam(k, j) = u;
      } else {
        if (u == 0) throw Error(ErrorCode::InvalidArgument, "LLL: basis vectors are dependent");
        d_[k] = u;
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    BigInt& lkl = lam(k, l);
    if (2 * abs(lkl) <= d_[l]) return;
    // nearest integer to lkl / d_l
    BigInt num = 2 * lkl + d_[l];
    BigInt den = 2 * d_[l];
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (std::size_t c = 0; c < b_[k - 1].size(); ++c) b_[k - 1][c] -= q * b_[l - 1][c];
    lkl -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lam(k, i) -= q * lam(l, i);
  }

  bool lovasz_fails(std::size_t k) {
    // d_k d_{k-2} < delta d_{k-1}^2 - lambda_{k,k-1}^2
    const BigInt& lk = lam(k, k - 1);
    BigInt lhs = delta_den_ * (d_[k] * d_[k - 2] + lk * lk);
    BigInt rhs = delta_num_ * d_[k - 1] * d_[k - 1];
    return lhs < rhs;
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(b_[k - 1], b_[k - 2]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam(k, j), lam(k - 1, j));
    const BigInt l = lam(k, k - 1);
    const BigInt bb = (d_[k - 2] * d_[k] + l * l) / d_[k - 1];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const BigInt t = lam(i, k);
      lam(i, k) = (d_[k] * lam(i, k - 1) - l * t) / d_[k - 1];
      lam(i, k - 1) = (bb * t + l * lam(i, k)) / d_[k];
    }
    d_[k - 1] = bb;
  }

  BigMatrix& b_;
  std::size_t n_;
  BigInt delta_num_;
  BigInt delta_den_;
  std::vector<BigInt> d_;
  std::vector<std::vector<BigInt>> lam_;
};

}  // namespace

void lll_reduce_rows(BigMatrix& rows, const Rational& delta) {
  if (delta <= Rational(1, 4) || delta >= 1) {
    throw Error(ErrorCode::InvalidArgument, "LLL parameter must lie in (1/4, 1)");
  }
  IntegralLll(rows, delta).run();
}

IntegerLattice lll_reduce(const IntegerLattice& lat, const Rational& delta) {
  BigMatrix rows = lat.big_basis();
  lll_reduce_rows(rows, delta);
  std::vector<IntVector> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    IntVector v;
    v.reserve(r.size());
    for (const auto& x : r) v.push_back(to_i64(x));
    out.push_back(std::move(v));
  }
  return IntegerLattice(std::move(out));
}

}  // namespace curvebox
