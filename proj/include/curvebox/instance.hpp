#pragma once

// Instance files and the human/JSON reports printed by the command line.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvebox/arith.hpp"
#include "curvebox/curvecount.hpp"
#include "curvebox/gon.hpp"

namespace curvebox {

enum class CurveKind { Poly, Hyperelliptic };

/// {"q": int, "coeffs": [int...], "box": {"K": int, "L": int, "H": int},
///  "curve": "poly" | "hyperelliptic", "c0": int?}
struct InstanceSpec {
  std::int64_t q = 0;
  std::vector<std::int64_t> coeffs;
  BoxRegion box;
  CurveKind curve = CurveKind::Poly;
  std::int64_t c0 = 0;

  ModPoly poly() const { return ModPoly(q, coeffs); }
  HyperellipticCurve hyperelliptic() const { return HyperellipticCurve(poly(), c0); }
};

/// Throws Error(InvalidInstance) with a message that starts with the offending
/// field name.
InstanceSpec parse_instance(std::string_view json_text);

struct CountSummary {
  std::uint64_t N = 0;
  std::uint64_t X = 0;
  double bound = 0.0;
  bool diagonal_regime = false;
};

CountSummary count_instance(const InstanceSpec& spec);

std::string count_report(const InstanceSpec& spec, bool json);
std::string lift_report(const InstanceSpec& spec, bool json,
                        const EnumerationOptions& opts = {});
std::string minima_report(const IntegerLattice& lat, const WeightedBody& body, bool dual,
                          bool json, const EnumerationOptions& opts = {});

/// Parses "p/q" or "p".
Rational parse_rational(std::string_view text);

}  // namespace curvebox
