#pragma once

// Congruence lattices and boxes, the Spread/Lift dichotomy on the last
// successive minimum, short dual vectors, lifting to integer curves, and the
// closed-form bounds the experiments compare against.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvebox/arith.hpp"
#include "curvebox/curvecount.hpp"
#include "curvebox/gon.hpp"

namespace curvebox {

/// s = d(d+1)/2, the tuple half-length paired with degree d.
inline int tuple_length(int d) { return d * (d + 1) / 2; }

/// {(z, w_1..w_d) : z + a_1 w_1 + ... + a_d w_d = 0 (mod q)}, covolume q.
IntegerLattice build_congruence_lattice(const ModPoly& f);

/// SupBox with weights (cH, cH, cH^2, ..., cH^d).
WeightedBody build_body(int d, std::int64_t H, const Rational& c);

/// x^exponent as an exact predicate: admits(H) iff H <= q^exponent.
struct PowerThreshold {
  Rational exponent;
  std::int64_t q = 1;

  bool admits(std::int64_t H) const;
  double value() const;
};

/// True iff H <= q^e, decided by integer powering.
bool power_le(std::int64_t H, const Rational& e, std::int64_t q);
/// True iff H < q^e.
bool power_lt(std::int64_t H, const Rational& e, std::int64_t q);

/// H <= q^(2/(d^2+d+2)): the body of side q/H^i has a nonzero lattice point.
PowerThreshold minkowski_first_threshold(int d, std::int64_t q);

struct ShortDualVector {
  std::int64_t n = 0;  // witness in [1, q-1]
  std::int64_t z = 0;
  std::vector<std::int64_t> w;  // w_1 .. w_d
  std::int64_t w0 = 0;          // least absolute residue of a_0 n
  Rational norm;                // dual-body gauge of the dual vector (z, w) / q
  Rational size_constant;       // max(|z| H / q, |w_i| H^i / q)
};

/// Minimizer of the dual-body gauge over dual vectors with w_d != 0
/// (equivalently n != 0 mod q). nullopt when the enumeration budget runs out.
std::optional<ShortDualVector> find_short_dual_vector(const ModPoly& f, std::int64_t H,
                                                      const EnumerationOptions& opts = {});

/// Integer model z y = w0 + sum w_i x^i + t q with t ranging over every value
/// reachable from (x, y) in (0, H]^2.
LiftedCurve lift_curve(const ModPoly& f, std::int64_t H, const ShortDualVector& sv);

/// True when sv satisfies n = z, a_i n = w_i (mod q), w_0 = a_0 n and w_d != 0.
bool congruence_recheck(const ModPoly& f, const ShortDualVector& sv);

enum class CaseKind { Spread, Lift };
std::string to_string(CaseKind k);

/// c * H^h_exp * q^q_exp with exact rational exponents.
struct PowerTerm {
  Rational h_exp;
  Rational q_exp;
  double coefficient = 1.0;

  double eval(std::int64_t q, std::int64_t H) const;
  /// Exponent of q after substituting H = q^e.
  Rational q_exponent_at(const Rational& e) const;
};

struct BoundEvaluation {
  std::vector<PowerTerm> terms;
  double value = 0.0;
};

/// H^(1+2/(d(d+1))) / q^(2/(d(d+1))) + H^(1/d).
BoundEvaluation theorem3_bound(int d, std::int64_t q, std::int64_t H);
/// H <= q^(2/(d^2+1)).
bool theorem3_diagonal_regime(int d, std::int64_t q, std::int64_t H);
/// H^(3/2) / q^(1/6) + H^(1/3).
BoundEvaluation theorem4_bound(std::int64_t q, std::int64_t H);
/// H^7 <= q.
bool theorem4_diagonal_regime(std::int64_t q, std::int64_t H);

struct CaseReport {
  CaseKind kind = CaseKind::Spread;
  MinimaProfile minima;
  std::optional<std::uint64_t> lattice_point_count;  // Spread only
  std::optional<ShortDualVector> short_vector;       // Lift only
  double predicted_bound = 0.0;
};

struct ClassifyOptions {
  bool count_lattice_points = true;
  EnumerationOptions enumeration;
};

/// Successive minima of the congruence lattice in build_body(d, H, s);
/// Spread when lambda_{d+1} < 1, else Lift with a short dual vector.
CaseReport classify_case(const ModPoly& f, std::int64_t H, const ClassifyOptions& opts = {});

// Hyperelliptic pipeline: y^2 - c0 y = a3 x^3 + a2 x^2 + a1 x + a0 (mod q).

/// {(x1, x2, x3, y1, y2) : a1 x1 + a2 x2 + a3 x3 + c0 y1 + y2 = 0 (mod q)}.
IntegerLattice build_hyperelliptic_lattice(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                                           std::int64_t c0, std::int64_t q);
/// SupBox with weights (6H, 6H^2, 6H^3, 6H, 6H^2).
WeightedBody build_hyperelliptic_body(std::int64_t H);

struct HyperellipticDualVector {
  std::int64_t n = 0;  // = z2, nonzero mod q
  std::vector<std::int64_t> w;  // w_1 .. w_3
  std::int64_t z1 = 0;
  std::int64_t w0 = 0;
  Rational norm;
  Rational size_constant;  // max(|w_i| H^i, |z1| H, |n| H^2) / q
};

std::optional<HyperellipticDualVector> find_short_hyperelliptic_dual_vector(
    const HyperellipticCurve& c, std::int64_t H, const EnumerationOptions& opts = {});

bool congruence_recheck(const HyperellipticCurve& c, const HyperellipticDualVector& sv);

LiftedHyperellipticCurve lift_hyperelliptic(const HyperellipticCurve& c, std::int64_t H,
                                            const HyperellipticDualVector& sv);

struct HyperellipticCaseReport {
  CaseKind kind = CaseKind::Spread;
  MinimaProfile minima;
  std::optional<std::uint64_t> lattice_point_count;
  std::optional<HyperellipticDualVector> short_vector;
  double predicted_bound = 0.0;
};

/// Spread when lambda_5 <= 1, else Lift.
HyperellipticCaseReport classify_hyperelliptic_case(const HyperellipticCurve& c, std::int64_t H,
                                                    const ClassifyOptions& opts = {});

/// Prior-work comparison bounds for y^2 = f(x) mod a prime p.
struct ReferenceBounds {
  /// 0: H < p^(1/8); 1: p^(1/8) <= H < p^(5/23); 2: p^(5/23) <= H < p^(1/3);
  /// 3: H >= p^(1/3), where the three-branch bound says nothing.
  int branch = 0;
  std::optional<PowerTerm> three_branch;
  /// H^(1/3) + (H^3/p)^(1/12) H
  std::vector<PowerTerm> sharpened;
  double three_branch_value = 0.0;
  double sharpened_value = 0.0;
};

ReferenceBounds reference_bounds(std::int64_t p, std::int64_t H);

}  // namespace curvebox
