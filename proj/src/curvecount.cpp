#include "curvebox/curvecount.hpp"

#include <string>

namespace curvebox {

namespace {

void require_normalized(const BoxRegion& box) {
  if (!box.normalized()) {
    throw Error(ErrorCode::InvalidArgument, "box must be normalized to K = L = 0");
  }
}

// Right-hand side y^2 - c0 y evaluated mod q.
std::int64_t quad_lhs(std::int64_t y, std::int64_t c0, std::int64_t q) {
  const std::int64_t yr = mod_reduce(y, q);
  return mod_reduce(static_cast<i128>(yr) * yr - static_cast<i128>(c0) * yr, q);
}

}  // namespace

CurveCount count_points_curve(const ModPoly& f, const BoxRegion& box) {
  require_normalized(box);
  const std::int64_t q = f.modulus();
  CurveCount out;
  out.X.H = box.H;
  for (std::int64_t x = 1; x <= box.H; ++x) {
    const std::int64_t r = eval_poly_mod(f, x);
    const auto c = interval_residue_count(0, box.H, r, q);
    if (c > 0) {
      out.N += static_cast<std::uint64_t>(c);
      out.X.elements.push_back(x);
    }
  }
  return out;
}

HyperellipticCurve::HyperellipticCurve(ModPoly f, std::int64_t c0) : f_(std::move(f)) {
  if (f_.degree() != 3) {
    throw Error(ErrorCode::InvalidInstance,
                "hyperelliptic curve needs a cubic, got degree " + std::to_string(f_.degree()));
  }
  c0_ = mod_reduce(c0, f_.modulus());
}

ShiftedHyperelliptic shift_normalize(const HyperellipticCurve& c, const BoxRegion& box) {
  // (y+L)^2 - c0 (y+L) = y^2 - (c0 - 2L) y + L^2 - c0 L
  const std::int64_t q = c.modulus();
  auto g = taylor_shift(c.poly().coeffs(), box.K, q);
  const std::int64_t L = mod_reduce(box.L, q);
  const std::int64_t constant = mod_reduce(static_cast<i128>(L) * L - static_cast<i128>(c.c0()) * L, q);
  g[0] = mod_reduce(static_cast<i128>(g[0]) - constant, q);
  const std::int64_t c0 = mod_reduce(static_cast<i128>(c.c0()) - 2 * static_cast<i128>(L), q);
  return {HyperellipticCurve(ModPoly(q, std::move(g)), c0), BoxRegion::origin(box.H)};
}

bool hyperelliptic_fast_path_applies(std::int64_t q, std::int64_t H) {
  return q > 2 && static_cast<i128>(H) * H > q && is_prime(static_cast<std::uint64_t>(q));
}

CurveCount count_points_hyperelliptic(const HyperellipticCurve& c, const BoxRegion& box) {
  if (hyperelliptic_fast_path_applies(c.modulus(), box.H)) {
    return count_points_hyperelliptic_fast(c, box);
  }
  return count_points_hyperelliptic_double_loop(c, box);
}

CurveCount count_points_hyperelliptic_double_loop(const HyperellipticCurve& c,
                                                  const BoxRegion& box) {
  require_normalized(box);
  const std::int64_t q = c.modulus();
  // Tabulate y^2 - c0 y once; it does not depend on x.
  std::vector<std::int64_t> lhs(static_cast<std::size_t>(box.H));
  for (std::int64_t y = 1; y <= box.H; ++y) lhs[y - 1] = quad_lhs(y, c.c0(), q);

  CurveCount out;
  out.X.H = box.H;
  for (std::int64_t x = 1; x <= box.H; ++x) {
    const std::int64_t r = eval_poly_mod(c.poly(), x);
    std::uint64_t hits = 0;
    for (auto v : lhs) hits += (v == r);
    if (hits) {
      out.N += hits;
      out.X.elements.push_back(x);
    }
  }
  return out;
}

CurveCount count_points_hyperelliptic_fast(const HyperellipticCurve& c, const BoxRegion& box) {
  require_normalized(box);
  const std::int64_t p = c.modulus();
  if (p == 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorCode::InvalidArgument, "fast hyperelliptic path needs an odd prime modulus");
  }
  // (2y - c0)^2 = 4 f(x) + c0^2 (mod p)
  const std::int64_t inv2 = (p + 1) / 2;
  const std::int64_t c0sq = mul_mod(c.c0(), c.c0(), p);
  CurveCount out;
  out.X.H = box.H;
  for (std::int64_t x = 1; x <= box.H; ++x) {
    const std::int64_t fx = eval_poly_mod(c.poly(), x);
    const std::int64_t disc = mod_reduce(4 * static_cast<i128>(fx) + c0sq, p);
    std::uint64_t hits = 0;
    for (auto u : sqrt_mod_prime(disc, p)) {
      const std::int64_t y = mul_mod(mod_reduce(static_cast<i128>(u) + c.c0(), p), inv2, p);
      hits += static_cast<std::uint64_t>(interval_residue_count(0, box.H, y, p));
    }
    if (hits) {
      out.N += hits;
      out.X.elements.push_back(x);
    }
  }
  return out;
}

}  // namespace curvebox
