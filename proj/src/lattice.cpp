#include <algorithm>
#include <string>

#include "curvebox/gon.hpp"

namespace curvebox {

namespace {

BigMatrix to_big_matrix(const std::vector<IntVector>& rows) {
  BigMatrix m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<BigInt> br;
    br.reserve(r.size());
    for (auto x : r) br.emplace_back(static_cast<long>(x));
    m.push_back(std::move(br));
  }
  return m;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Inverse transpose of a rational matrix, returned as (integer matrix, lcm of
// denominators).
DualLattice inverse_transpose(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::InvalidArgument, "singular basis");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }

  BigInt den = 1;
  for (const auto& row : inv) {
    for (const auto& x : row) den = lcm(den, BigInt(x.get_den()));
  }
  std::vector<IntVector> rows(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // transpose: dual row i = column i of the inverse
      Rational v = inv[j][i] * den;
      rows[i][j] = to_i64(BigInt(v.get_num()));
    }
  }
  return DualLattice{IntegerLattice(std::move(rows)), den};
}

}  // namespace

void require_dimension(int n) {
  if (n > kMaxDimension) {
    throw Error(ErrorCode::DimensionTooLarge,
                "dimension " + std::to_string(n) + " exceeds the supported maximum of " +
                    std::to_string(kMaxDimension));
  }
}

IntegerLattice::IntegerLattice(std::vector<IntVector> rows) : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty basis");
  for (const auto& r : rows_) {
    if (r.size() != n) throw Error(ErrorCode::InvalidArgument, "basis must be square");
  }
  covolume_ = abs(exact_determinant(to_big_matrix(rows_)));
  if (covolume_ == 0) throw Error(ErrorCode::InvalidArgument, "basis is not full rank");
}

BigMatrix IntegerLattice::big_basis() const { return to_big_matrix(rows_); }

Rational DualLattice::covolume() const {
  Rational c(BigInt(scaled.covolume()), 1);
  BigInt den_pow;
  mpz_pow_ui(den_pow.get_mpz_t(), denominator.get_mpz_t(),
             static_cast<unsigned long>(scaled.dimension()));
  c /= Rational(den_pow);
  c.canonicalize();
  return c;
}

WeightedBody WeightedBody::make(BodyKind kind, std::vector<Rational> weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "body needs weights");
  for (auto& w : weights) {
    w.canonicalize();
    if (w <= 0) throw Error(ErrorCode::InvalidArgument, "body weights must be positive");
  }
  return WeightedBody{kind, std::move(weights)};
}

WeightedBody WeightedBody::unit(BodyKind kind, int n) {
  return make(kind, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
}

Rational WeightedBody::volume() const {
  const int n = dimension();
  Rational v(BigInt(1) << n, 1);
  for (const auto& w : weights) v *= w;
  if (kind == BodyKind::L1CrossPolytope) v /= Rational(factorial(n));
  v.canonicalize();
  return v;
}

BigInt exact_determinant(const BigMatrix& input) {
  // Bareiss fraction-free elimination.
  BigMatrix m = input;
  const std::size_t n = m.size();
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigMatrix hermite_normal_form(const BigMatrix& input) {
  BigMatrix a = input;
  const std::size_t n = a.size();
  const std::size_t cols = n ? a[0].size() : 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < n; ++col) {
    // Euclid on the column below `row` until a single nonzero entry remains.
    while (true) {
      std::size_t best = n;
      for (std::size_t r = row; r < n; ++r) {
        if (a[r][col] != 0 && (best == n || abs(a[r][col]) < abs(a[best][col]))) best = r;
      }
      if (best == n) break;
      std::swap(a[row], a[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < n; ++r) {
        if (a[r][col] == 0) continue;
        BigInt f;
        mpz_fdiv_q(f.get_mpz_t(), a[r][col].get_mpz_t(), a[row][col].get_mpz_t());
        for (std::size_t j = col; j < cols; ++j) a[r][j] -= f * a[row][j];
        if (a[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (a[row][col] == 0) continue;
    if (a[row][col] < 0) {
      for (std::size_t j = col; j < cols; ++j) a[row][j] = -a[row][j];
    }
    for (std::size_t r = 0; r < row; ++r) {
      BigInt f;
      mpz_fdiv_q(f.get_mpz_t(), a[r][col].get_mpz_t(), a[row][col].get_mpz_t());
      if (f == 0) continue;
      for (std::size_t j = col; j < cols; ++j) a[r][j] -= f * a[row][j];
    }
    ++row;
  }
  return a;
}

bool same_lattice(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.dimension() != b.dimension()) return false;
  return hermite_normal_form(a.big_basis()) == hermite_normal_form(b.big_basis());
}

Rational body_norm(std::span<const std::int64_t> v, const WeightedBody& body) {
  if (static_cast<int>(v.size()) != body.dimension()) {
    throw Error(ErrorCode::InvalidArgument, "vector and body dimensions differ");
  }
  Rational acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rational t(BigInt(static_cast<long>(v[i] < 0 ? -v[i] : v[i])), 1);
    t /= body.weights[i];
    if (body.kind == BodyKind::SupBox) {
      if (t > acc) acc = t;
    } else {
      acc += t;
    }
  }
  acc.canonicalize();
  return acc;
}

DualLattice dual_lattice(const IntegerLattice& lat) {
  std::vector<std::vector<Rational>> a;
  for (const auto& r : lat.basis()) {
    std::vector<Rational> row;
    for (auto x : r) row.emplace_back(BigInt(static_cast<long>(x)), 1);
    a.push_back(std::move(row));
  }
  return inverse_transpose(std::move(a));
}

DualLattice dual_lattice(const DualLattice& lat) {
  std::vector<std::vector<Rational>> a;
  for (const auto& r : lat.scaled.basis()) {
    std::vector<Rational> row;
    for (auto x : r) {
      Rational v(BigInt(static_cast<long>(x)), lat.denominator);
      v.canonicalize();
      row.push_back(v);
    }
    a.push_back(std::move(row));
  }
  return inverse_transpose(std::move(a));
}

WeightedBody dual_body(const WeightedBody& body) {
  WeightedBody out;
  out.kind = body.kind == BodyKind::SupBox ? BodyKind::L1CrossPolytope : BodyKind::SupBox;
  for (const auto& w : body.weights) {
    Rational inv = 1 / w;
    inv.canonicalize();
    out.weights.push_back(inv);
  }
  return out;
}

Rational minkowski_second_ratio(const MinimaProfile& minima, const WeightedBody& body,
                                const Rational& covolume) {
  Rational r = body.volume();
  for (const auto& l : minima.lambdas) r *= l;
  r /= covolume;
  r.canonicalize();
  return r;
}

Rational minkowski_second_ratio(const IntegerLattice& lat, const WeightedBody& body,
                                const EnumerationOptions& opts) {
  const auto minima = successive_minima(lat, body, opts);
  return minkowski_second_ratio(minima, body, Rational(lat.covolume()));
}

}  // namespace curvebox
