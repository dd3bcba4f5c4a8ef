#include <cmath>

#include "curvebox/curvecount.hpp"

namespace curvebox {

namespace {

// w0 + w1 x + ... + wd x^d for every x in [1, H].
std::vector<i128> tabulate(std::int64_t w0, const std::vector<std::int64_t>& w, std::int64_t H) {
  const double magnitude = std::log2(static_cast<double>(H)) * static_cast<double>(w.size()) + 33.0;
  if (magnitude > 120.0) throw Error(ErrorCode::Overflow, "lifted curve values exceed 128 bits");
  std::vector<i128> vals(static_cast<std::size_t>(H));
  for (std::int64_t x = 1; x <= H; ++x) {
    i128 acc = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) acc = (acc + *it) * x;
    vals[x - 1] = acc + w0;
  }
  return vals;
}

void require_normalized(const BoxRegion& box) {
  if (!box.normalized()) {
    throw Error(ErrorCode::InvalidArgument, "box must be normalized to K = L = 0");
  }
}

}  // namespace

i128 isqrt128(i128 x) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "isqrt of a negative number");
  if (x < 2) return x;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

LiftedCount count_lifted_points(const LiftedCurve& curve, const BoxRegion& box) {
  require_normalized(box);
  LiftedCount out;
  if (curve.empty_range()) return out;
  const auto vals = tabulate(curve.w0, curve.w, box.H);
  const i128 z = curve.z;
  for (i128 t = curve.t_lo; t <= curve.t_hi; ++t) {
    const i128 shift = t * curve.q;
    std::uint64_t c = 0;
    for (const i128 v : vals) {
      const i128 rhs = v + shift;
      if (z == 0) {
        // The equation constrains x only; every y in the box pairs with it.
        if (rhs == 0) c += static_cast<std::uint64_t>(box.H);
      } else if (rhs % z == 0) {
        const i128 y = rhs / z;
        if (y >= 1 && y <= box.H) ++c;
      }
    }
    if (c) {
      out.per_t.emplace_back(t, c);
      out.total += c;
    }
  }
  return out;
}

LiftedCount count_lifted_points(const LiftedHyperellipticCurve& curve, const BoxRegion& box) {
  require_normalized(box);
  LiftedCount out;
  if (curve.empty_range()) return out;
  if (curve.n == 0) throw Error(ErrorCode::InvalidArgument, "lifted quadratic needs n != 0");
  const auto vals = tabulate(curve.w0, curve.w, box.H);
  const i128 a = curve.n;
  const i128 b = curve.z1;
  for (i128 t = curve.t_lo; t <= curve.t_hi; ++t) {
    const i128 shift = t * curve.q;
    std::uint64_t c = 0;
    for (const i128 v : vals) {
      // a y^2 - b y - R = 0, R = v + t q
      const i128 R = v + shift;
      const i128 disc = b * b + 4 * a * R;
      if (disc < 0) continue;
      const i128 root = isqrt128(disc);
      if (root * root != disc) continue;
      for (const i128 num : {b + root, b - root}) {
        if (num % (2 * a) != 0) continue;
        const i128 y = num / (2 * a);
        if (y >= 1 && y <= box.H) ++c;
        if (root == 0) break;
      }
    }
    if (c) {
      out.per_t.emplace_back(t, c);
      out.total += c;
    }
  }
  return out;
}

}  // namespace curvebox
