#include "curvebox/instance.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "curvebox/reduction.hpp"

namespace curvebox {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::InvalidInstance, field + ": " + why);
}

std::int64_t int_field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) reject(path, "missing");
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) reject(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += rational_str(v[i]);
  }
  return s;
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(rational_str(r));
  return a;
}

const char* curve_name(CurveKind k) { return k == CurveKind::Poly ? "poly" : "hyperelliptic"; }

}  // namespace

Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0) {
    throw Error(ErrorCode::InvalidArgument, "not a rational: '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  r.canonicalize();
  return r;
}

InstanceSpec parse_instance(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidInstance, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) reject("instance", "expected a JSON object");

  InstanceSpec spec;
  spec.q = int_field(doc, "q", "q");

  if (!doc.contains("coeffs")) reject("coeffs", "missing");
  const Json& cs = doc.at("coeffs");
  if (!cs.is_array()) reject("coeffs", "expected an array of integers");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!cs[i].is_number_integer()) reject("coeffs[" + std::to_string(i) + "]", "expected an integer");
    spec.coeffs.push_back(cs[i].get<std::int64_t>());
  }

  if (!doc.contains("box")) reject("box", "missing");
  const Json& box = doc.at("box");
  if (!box.is_object()) reject("box", "expected an object with K, L, H");
  const std::int64_t K = int_field(box, "K", "box.K");
  const std::int64_t L = int_field(box, "L", "box.L");
  const std::int64_t H = int_field(box, "H", "box.H");
  if (H < 1) reject("box.H", "must be positive, got " + std::to_string(H));
  spec.box = BoxRegion::make(K, L, H);

  if (doc.contains("curve")) {
    const Json& c = doc.at("curve");
    if (!c.is_string()) reject("curve", "expected \"poly\" or \"hyperelliptic\"");
    const auto name = c.get<std::string>();
    if (name == "poly") {
      spec.curve = CurveKind::Poly;
    } else if (name == "hyperelliptic") {
      spec.curve = CurveKind::Hyperelliptic;
    } else {
      reject("curve", "expected \"poly\" or \"hyperelliptic\", got \"" + name + "\"");
    }
  }
  if (doc.contains("c0")) {
    if (spec.curve != CurveKind::Hyperelliptic) reject("c0", "only valid for hyperelliptic curves");
    spec.c0 = int_field(doc, "c0", "c0");
  }

  if (spec.q < 2 || spec.q > kMaxModulus) {
    reject("q", "modulus must lie in [2, 2^31], got " + std::to_string(spec.q));
  }
  try {
    if (spec.curve == CurveKind::Poly) {
      (void)spec.poly();
    } else {
      (void)spec.hyperelliptic();
    }
  } catch (const Error& e) {
    reject("coeffs", e.what());
  }
  return spec;
}

CountSummary count_instance(const InstanceSpec& spec) {
  CountSummary s;
  const std::int64_t H = spec.box.H;
  CurveCount cc;
  if (spec.curve == CurveKind::Poly) {
    const ModPoly f = spec.poly();
    const auto shifted = shift_normalize(f, spec.box);
    cc = count_points_curve(shifted.poly, shifted.box);
    s.bound = theorem3_bound(f.degree(), spec.q, H).value;
    s.diagonal_regime = theorem3_diagonal_regime(f.degree(), spec.q, H);
  } else {
    const auto shifted = shift_normalize(spec.hyperelliptic(), spec.box);
    cc = count_points_hyperelliptic(shifted.curve, shifted.box);
    s.bound = theorem4_bound(spec.q, H).value;
    s.diagonal_regime = theorem4_diagonal_regime(spec.q, H);
  }
  s.N = cc.N;
  s.X = cc.X.size();
  return s;
}

std::string count_report(const InstanceSpec& spec, bool json) {
  const CountSummary s = count_instance(spec);
  const int d = static_cast<int>(spec.coeffs.size()) - 1;
  if (json) {
    Json j;
    j["curve"] = curve_name(spec.curve);
    j["q"] = spec.q;
    j["d"] = d;
    j["H"] = spec.box.H;
    j["N"] = s.N;
    j["X"] = s.X;
    j["bound"] = s.bound;
    j["diagonal_regime"] = s.diagonal_regime;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "curve: " << curve_name(spec.curve) << '\n'
      << "q: " << spec.q << '\n'
      << "d: " << d << '\n'
      << "H: " << spec.box.H << '\n'
      << "N: " << s.N << '\n'
      << "X: " << s.X << '\n'
      << "bound: " << fixed(s.bound) << '\n'
      << "diagonal_regime: " << (s.diagonal_regime ? "yes" : "no") << '\n';
  return out.str();
}

std::string lift_report(const InstanceSpec& spec, bool json, const EnumerationOptions& opts) {
  const CountSummary count = count_instance(spec);
  const std::int64_t H = spec.box.H;
  const BoxRegion origin = BoxRegion::origin(H);
  ClassifyOptions copts;
  copts.count_lattice_points = false;
  copts.enumeration = opts;

  Json j;
  j["curve"] = curve_name(spec.curve);
  j["q"] = spec.q;
  j["H"] = H;
  j["N"] = count.N;

  auto budget_fail = [] {
    throw Error(ErrorCode::BudgetExceeded, "short dual vector search exceeded the budget");
  };

  if (spec.curve == CurveKind::Poly) {
    const auto shifted = shift_normalize(spec.poly(), spec.box);
    const CaseReport rep = classify_case(shifted.poly, H, copts);
    const auto sv = rep.short_vector ? rep.short_vector
                                     : find_short_dual_vector(shifted.poly, H, opts);
    if (!sv) budget_fail();
    const LiftedCurve lc = lift_curve(shifted.poly, H, *sv);
    const LiftedCount lifted = count_lifted_points(lc, origin);
    j["case"] = to_string(rep.kind);
    j["lambdas"] = rationals(rep.minima.lambdas);
    j["n"] = sv->n;
    j["z"] = sv->z;
    j["w0"] = sv->w0;
    j["w"] = sv->w;
    j["size_constant"] = rational_str(sv->size_constant);
    j["t_lo"] = to_string(lc.t_lo);
    j["t_hi"] = to_string(lc.t_hi);
    j["lifted_points"] = lifted.total;
    j["recheck"] = congruence_recheck(shifted.poly, *sv);
  } else {
    const auto shifted = shift_normalize(spec.hyperelliptic(), spec.box);
    const HyperellipticCaseReport rep = classify_hyperelliptic_case(shifted.curve, H, copts);
    const auto sv = rep.short_vector ? rep.short_vector
                                     : find_short_hyperelliptic_dual_vector(shifted.curve, H, opts);
    if (!sv) budget_fail();
    const LiftedHyperellipticCurve lc = lift_hyperelliptic(shifted.curve, H, *sv);
    const LiftedCount lifted = count_lifted_points(lc, origin);
    j["case"] = to_string(rep.kind);
    j["lambdas"] = rationals(rep.minima.lambdas);
    j["n"] = sv->n;
    j["z1"] = sv->z1;
    j["w0"] = sv->w0;
    j["w"] = sv->w;
    j["size_constant"] = rational_str(sv->size_constant);
    j["t_lo"] = to_string(lc.t_lo);
    j["t_hi"] = to_string(lc.t_hi);
    j["lifted_points"] = lifted.total;
    j["recheck"] = congruence_recheck(shifted.curve, *sv);
  }
  if (json) return j.dump(2) + "\n";

  std::ostringstream out;
  for (const auto& [key, v] : j.items()) {
    out << key << ": ";
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ' ';
        out << (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
      }
    } else if (v.is_string()) {
      out << v.get<std::string>();
    } else if (v.is_boolean()) {
      out << (v.get<bool>() ? "yes" : "no");
    } else {
      out << v.dump();
    }
    out << '\n';
  }
  return out.str();
}

std::string minima_report(const IntegerLattice& lat, const WeightedBody& body, bool dual,
                          bool json, const EnumerationOptions& opts) {
  const MinimaProfile p =
      dual ? successive_minima(dual_lattice(lat), body, opts) : successive_minima(lat, body, opts);
  if (json) {
    Json j;
    j["lambdas"] = rationals(p.lambdas);
    j["witnesses"] = p.witnesses;
    j["denominator"] = p.denominator.get_str();
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << join(p.lambdas) << '\n';
  for (std::size_t i = 0; i < p.witnesses.size(); ++i) {
    out << "witness " << i + 1 << ": " << join(p.witnesses[i]);
    if (p.denominator != 1) out << " / " << p.denominator.get_str();
    out << '\n';
  }
  return out.str();
}

}  // namespace curvebox
