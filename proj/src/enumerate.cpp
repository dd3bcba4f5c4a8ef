#include <algorithm>
#include <cmath>

#include "enum_context.hpp"

namespace curvebox {
namespace detail {

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

i128 abs128(i128 x) { return x < 0 ? -x : x; }

BigMatrix big_rows(const std::vector<IntVector>& rows) {
  BigMatrix m;
  for (const auto& r : rows) {
    std::vector<BigInt> br;
    for (auto x : r) br.emplace_back(static_cast<long>(x));
    m.push_back(std::move(br));
  }
  return m;
}

long double ratio(const BigInt& num, const BigInt& den) {
  return static_cast<long double>(Rational(num, den).get_d());
}

// g * (S S^T)^-1 with g = det(S S^T), an integer matrix.
BigMatrix scaled_gram_inverse(const BigMatrix& S, BigInt& g) {
  const std::size_t r = S.size();
  BigMatrix G(r, std::vector<BigInt>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) G[i][j] = dot(S[i], S[j]);
  }
  g = exact_determinant(G);
  // Gauss-Jordan over Q on [G | I].
  std::vector<std::vector<Rational>> a(r, std::vector<Rational>(2 * r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) a[i][j] = Rational(G[i][j]);
    a[i][r + i] = 1;
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& v : a[c]) v *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < 2 * r; ++j) a[i][j] -= f * a[c][j];
    }
  }
  BigMatrix adj(r, std::vector<BigInt>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) adj[i][j] = BigInt(Rational(a[i][r + j] * g));
  }
  return adj;
}

// Basis of the lattice spanned by rows whose first span.size() vectors span
// rows & span_Q(span). LLL on [v | N P(v)], with P the integral projection
// away from span, ranks any vector with P(v) != 0 after the span vectors once
// N exceeds the LLL approximation factor times their lengths.
void reduce_with_span(BigMatrix& rows, const BigMatrix& span) {
  const std::size_t n = rows.size();
  const std::size_t r = span.size();
  BigInt g;
  const BigMatrix adj = scaled_gram_inverse(span, g);

  auto project = [&](const std::vector<BigInt>& v) {
    std::vector<BigInt> sv(r), t(r, BigInt(0));
    for (std::size_t i = 0; i < r; ++i) sv[i] = dot(span[i], v);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) t[i] += adj[i][j] * sv[j];
    }
    std::vector<BigInt> p(n);
    for (std::size_t c = 0; c < n; ++c) {
      p[c] = g * v[c];
      for (std::size_t i = 0; i < r; ++i) p[c] -= span[i][c] * t[i];
    }
    return p;
  };

  BigInt N = 1;
  for (const auto& s : span) {
    for (const auto& x : s) N += abs(x);
  }
  N <<= static_cast<unsigned>(n + 1);

  for (int attempt = 0; attempt < 8; ++attempt, N <<= 64) {
    BigMatrix aug(n);
    for (std::size_t i = 0; i < n; ++i) {
      aug[i] = rows[i];
      for (auto& x : project(rows[i])) aug[i].push_back(N * x);
    }
    lll_reduce_rows(aug);
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      for (std::size_t c = n; c < 2 * n; ++c) ok &= aug[i][c] == 0;
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < n; ++i) rows[i].assign(aug[i].begin(), aug[i].begin() + n);
    return;
  }
  throw Error(ErrorCode::InvalidArgument, "could not separate the span sublattice");
}

}  // namespace

EnumerationContext::EnumerationContext(const IntegerLattice& lat, const WeightedBody& body,
                                       const std::vector<IntVector>& span)
    : n_(lat.dimension()), span_rank_(static_cast<int>(span.size())), body_(body) {
  require_dimension(n_);
  if (body.dimension() != n_) {
    throw Error(ErrorCode::InvalidArgument, "lattice and body dimensions differ");
  }
  if (span_rank_ >= n_ && n_ > 0) {
    throw Error(ErrorCode::InvalidArgument, "span must have rank below the dimension");
  }

  unit_ = 1;
  for (const auto& w : body_.weights) unit_ = lcm(unit_, BigInt(w.get_num()));
  for (const auto& w : body_.weights) {
    BigInt c = unit_ / BigInt(w.get_num()) * BigInt(w.get_den());
    col_scale_.push_back(c);
    col_scale_small_.push_back(to_i128(c));
  }

  auto normalize = [&](BigMatrix m) {
    for (auto& r : m) {
      for (int j = 0; j < n_; ++j) r[j] *= col_scale_[j];
    }
    return m;
  };
  BigMatrix rows = normalize(lat.big_basis());
  if (span.empty()) {
    lll_reduce_rows(rows);
  } else {
    reduce_with_span(rows, normalize(big_rows(span)));
  }

  for (const auto& r : rows) {
    IntVector v(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) v[j] = to_i64(BigInt(r[j] / col_scale_[j]));
    reduced_.push_back(std::move(v));
  }

  // Exact Gram-Schmidt of the normalized reduced basis.
  std::vector<std::vector<Rational>> b(n_), bs(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) b[i].emplace_back(rows[i][j]);
  }
  std::vector<Rational> norms(n_);
  mu_.assign(n_, std::vector<long double>(n_, 0.0L));
  bstar_.assign(n_, 0.0L);
  for (int i = 0; i < n_; ++i) {
    bs[i] = b[i];
    for (int j = 0; j < i; ++j) {
      Rational m = dot(b[i], bs[j]) / norms[j];
      mu_[i][j] = static_cast<long double>(m.get_d());
      for (int c = 0; c < n_; ++c) bs[i][c] -= m * bs[j][c];
    }
    norms[i] = dot(bs[i], bs[i]);
    bstar_[i] = static_cast<long double>(norms[i].get_d());
  }

  if (body_.kind == BodyKind::SupBox) build_functionals(rows);
}

// For level k the vertices of {y perp b_0..b_{k-1} : |y|_1 <= 1} have support
// T of size k+1, and on T they are the generalized cross product of the k
// rows: y_t = (-1)^pos(t) det(B[:, T \ t]). Integer minors keep y exactly
// orthogonal; only the final scaling is rounded.
void EnumerationContext::build_functionals(const BigMatrix& rows) {
  functionals_.assign(static_cast<std::size_t>(n_), {});
  for (int k = 0; k < n_; ++k) {
    std::vector<int> T;
    std::function<void(int)> choose = [&](int from) {
      if (static_cast<int>(T.size()) == k + 1) {
        std::vector<BigInt> y(T.size());
        for (std::size_t pos = 0; pos < T.size(); ++pos) {
          BigMatrix minor(static_cast<std::size_t>(k));
          for (int r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < T.size(); ++c) {
              if (c != pos) minor[r].push_back(rows[r][T[c]]);
            }
          }
          const BigInt det = k == 0 ? BigInt(1) : exact_determinant(minor);
          y[pos] = pos % 2 == 0 ? det : BigInt(-det);
        }
        BigInt l1 = 0, along = 0;
        for (std::size_t pos = 0; pos < T.size(); ++pos) {
          l1 += abs(y[pos]);
          along += y[pos] * rows[k][T[pos]];
        }
        if (l1 == 0) return;
        Functional f;
        for (std::size_t pos = 0; pos < T.size(); ++pos) {
          if (y[pos] == 0) continue;
          f.index.push_back(T[pos]);
          f.value.push_back(ratio(y[pos], l1));
        }
        f.along = ratio(along, l1);
        functionals_[k].push_back(std::move(f));
        return;
      }
      for (int c = from; c < n_; ++c) {
        T.push_back(c);
        choose(c + 1);
        T.pop_back();
      }
    };
    choose(0);
  }
}

void EnumerationContext::enumerate(const Rational& scale,
                                   const std::function<void(const IntVector&)>& visit,
                                   const EnumerationOptions& opts) const {
  if (scale < 0) return;
  // Without a span nothing is skipped, so this visits every point.
  if (span_rank_ != 0) throw Error(ErrorCode::InvalidArgument, "enumerate needs an unrestricted context");
  SearchBound bound{scale};
  search(bound, visit, opts);
}

void EnumerationContext::search(SearchBound& bound,
                                const std::function<void(const IntVector&)>& visit,
                                const EnumerationOptions& opts) const {
  if (bound.value < 0) return;
  const int n = n_;
  const bool sup = body_.kind == BodyKind::SupBox;

  // Exact membership data and floating search radii for the current bound.
  std::vector<i128> sup_bound(static_cast<std::size_t>(n));
  i128 l1_bound = 0;
  long double R = 0.0L, r2 = 0.0L;
  auto refresh = [&] {
    if (sup) {
      for (int i = 0; i < n; ++i) {
        Rational t = bound.value * body_.weights[i];
        BigInt f;
        mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
        sup_bound[i] = to_i128(f);
      }
    } else {
      Rational t = bound.value * Rational(unit_);
      BigInt f;
      mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
      l1_bound = to_i128(f);
    }
    R = static_cast<long double>(Rational(bound.value * Rational(unit_)).get_d());
    r2 = R * R;
    if (sup) r2 *= n;
    r2 = r2 * (1.0L + 1e-9L) + 1e-9L;
    bound.changed = false;
  };
  refresh();

  std::vector<std::int64_t> x(n, 0);
  std::vector<std::vector<i128>> acc(n + 1, std::vector<i128>(n, 0));
  std::vector<long double> p(n);
  std::uint64_t visits = 0;
  IntVector out(static_cast<std::size_t>(n));

  auto accept = [&](const std::vector<i128>& v) {
    if (sup) {
      for (int i = 0; i < n; ++i) {
        if (abs128(v[i]) > sup_bound[i]) return false;
      }
      return true;
    }
    i128 s = 0;
    for (int i = 0; i < n; ++i) {
      i128 term;
      if (__builtin_mul_overflow(abs128(v[i]), col_scale_small_[i], &term) ||
          __builtin_add_overflow(s, term, &s)) {
        return false;
      }
    }
    return s <= l1_bound;
  };

  // Per level: y . p for each functional, where p is the fixed part of the
  // point. gauge(k, x) is then the sup radius the box needs to reach the
  // affine subspace through p + x b_k spanned by b_0..b_{k-1}.
  std::vector<std::vector<long double>> yp(static_cast<std::size_t>(n));
  std::vector<long double> tol(static_cast<std::size_t>(n), 0.0L);
  auto gauge = [&](int k, long double xv) {
    long double g = 0.0L;
    const auto& fs = functionals_[k];
    for (std::size_t i = 0; i < fs.size(); ++i) g = std::max(g, std::fabs(yp[k][i] + xv * fs[i].along));
    return g;
  };

  // Range of x_k allowed by the box projection, given x_{k+1..n-1}.
  auto box_range = [&](int k, long double& lo, long double& hi) {
    long double pmax = 0.0L;
    for (int j = 0; j < n; ++j) {
      p[j] = static_cast<long double>(acc[k + 1][j]) * static_cast<long double>(col_scale_small_[j]);
      pmax = std::max(pmax, std::fabs(p[j]));
    }
    tol[k] = 1e-9L * (R + pmax) + 1e-9L;
    const long double t = tol[k];
    yp[k].clear();
    for (const auto& f : functionals_[k]) {
      long double v = 0.0L;
      for (std::size_t i = 0; i < f.index.size(); ++i) v += f.value[i] * p[f.index[i]];
      yp[k].push_back(v);
      // |v + x * along| <= R
      if (std::fabs(f.along) < 1e-30L) {
        if (std::fabs(v) > R + t) return false;
        continue;
      }
      long double a = (-R - t - v) / f.along, b = (R + t - v) / f.along;
      if (a > b) std::swap(a, b);
      lo = std::max(lo, a);
      hi = std::min(hi, b);
    }
    return lo <= hi;
  };

  // Integer minimizer of the convex gauge on [lo, hi].
  auto gauge_argmin = [&](int k, std::int64_t lo, std::int64_t hi) {
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (gauge(k, static_cast<long double>(mid + 1)) < gauge(k, static_cast<long double>(mid))) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo;
  };

  std::function<void(int, long double)> descend = [&](int k, long double partial) {
    if (span_rank_ > 0 && k == span_rank_ - 1) {
      bool top_zero = true;
      for (int j = span_rank_; j < n && top_zero; ++j) top_zero = x[j] == 0;
      if (top_zero) return;
    }
    long double c = 0.0L;
    for (int j = k + 1; j < n; ++j) c -= static_cast<long double>(x[j]) * mu_[j][k];
    const long double rem = r2 - partial;
    if (rem < 0) return;
    const long double hw = std::sqrt(rem / bstar_[k]);
    long double flo = c - hw, fhi = c + hw;
    if (sup && !box_range(k, flo, fhi)) return;
    const long double eps = 1e-7L * (1.0L + std::fabs(flo) + std::fabs(fhi));
    const auto lo = static_cast<std::int64_t>(std::ceil(flo - eps));
    const auto hi = static_cast<std::int64_t>(std::floor(fhi + eps));
    if (lo > hi) return;

    // Candidates in order of increasing cost, walking outward from the
    // cheapest one, so a shrinking bound takes effect early. The cost is the
    // box gauge for SupBox (convex in x) and the distance to the Euclidean
    // center otherwise (Schnorr-Euchner order).
    auto cost = [&](std::int64_t v) {
      const auto xv = static_cast<long double>(v);
      return sup ? gauge(k, xv) : std::fabs(xv - c);
    };
    std::int64_t start = sup ? gauge_argmin(k, lo, hi) : std::clamp<std::int64_t>(std::llround(c), lo, hi);
    std::int64_t up = start, down = start - 1;
    while (up <= hi || down >= lo) {
      std::int64_t xi;
      if (up <= hi && (down < lo || cost(up) <= cost(down))) {
        xi = up++;
      } else {
        xi = down--;
      }
      // Each side is walked away from the gauge minimum, so once the gauge
      // exceeds the (possibly lowered) radius the rest of that side does too.
      if (sup && gauge(k, static_cast<long double>(xi)) > R + tol[k]) {
        if (xi >= start) {
          up = hi + 1;
        } else {
          down = lo - 1;
        }
        continue;
      }
      const long double diff = static_cast<long double>(xi) - c;
      const long double next = partial + diff * diff * bstar_[k];
      if (next > r2) {
        // Past the center the ellipsoid term only grows on this side.
        const auto xv = static_cast<long double>(xi);
        if (xi >= start && xv >= c) {
          up = hi + 1;
        } else if (xi < start && xv <= c) {
          down = lo - 1;
        }
        continue;
      }
      if (++visits > opts.max_visits) {
        throw Error(ErrorCode::BudgetExceeded, "lattice enumeration budget exceeded");
      }
      x[k] = xi;
      for (int j = 0; j < n; ++j) acc[k][j] = acc[k + 1][j] + static_cast<i128>(xi) * reduced_[k][j];
      if (k == 0) {
        if (accept(acc[0])) {
          for (int j = 0; j < n; ++j) {
            if (acc[0][j] > INT64_MAX || acc[0][j] < INT64_MIN) {
              throw Error(ErrorCode::Overflow, "lattice point exceeds 64-bit range");
            }
            out[j] = static_cast<std::int64_t>(acc[0][j]);
          }
          visit(out);
          if (bound.changed) refresh();
        }
      } else {
        descend(k - 1, next);
      }
    }
    x[k] = 0;
  };
  descend(n - 1, 0.0L);
}

}  // namespace detail

void for_each_lattice_point(const IntegerLattice& lat, const WeightedBody& body,
                            const Rational& scale,
                            const std::function<void(const IntVector&)>& visit,
                            const EnumerationOptions& opts) {
  detail::EnumerationContext(lat, body).enumerate(scale, visit, opts);
}

std::vector<IntVector> enumerate_lattice_points(const IntegerLattice& lat,
                                                const WeightedBody& body,
                                                const Rational& scale,
                                                const EnumerationOptions& opts) {
  std::vector<IntVector> pts;
  for_each_lattice_point(lat, body, scale, [&](const IntVector& v) { pts.push_back(v); }, opts);
  return pts;
}

std::uint64_t count_lattice_points(const IntegerLattice& lat, const WeightedBody& body,
                                   const Rational& scale, const EnumerationOptions& opts) {
  std::uint64_t count = 0;
  for_each_lattice_point(lat, body, scale, [&](const IntVector&) { ++count; }, opts);
  return count;
}

}  // namespace curvebox
