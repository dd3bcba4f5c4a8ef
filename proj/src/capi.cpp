#include "curvebox/curvebox.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "curvebox/instance.hpp"
#include "curvebox/reduction.hpp"
#include "curvebox/sweep.hpp"
#include "curvebox/verify.hpp"

struct cbx_instance {
  curvebox::InstanceSpec spec;
};

struct cbx_lattice {
  curvebox::IntegerLattice lat;
};

struct cbx_body {
  curvebox::WeightedBody body;
};

namespace {

using namespace curvebox;

thread_local std::string g_last_error;

cbx_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return CBX_INVALID_ARGUMENT;
    case ErrorCode::InvalidInstance: return CBX_INVALID_INSTANCE;
    case ErrorCode::BudgetExceeded: return CBX_BUDGET_EXCEEDED;
    case ErrorCode::DimensionTooLarge: return CBX_DIMENSION_TOO_LARGE;
    case ErrorCode::Overflow: return CBX_OVERFLOW;
  }
  return CBX_INTERNAL;
}

template <class F>
cbx_status guard(F&& body) {
  g_last_error.clear();
  try {
    body();
    return CBX_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  }
  return CBX_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

EnumerationOptions budget_opts(std::uint64_t budget) {
  EnumerationOptions o;
  o.max_visits = budget ? budget : kDefaultBudget;
  return o;
}

}  // namespace

extern "C" {

const char* cbx_version(void) { return "0.1.0"; }

const char* cbx_last_error(void) { return g_last_error.c_str(); }

void cbx_string_free(char* s) { std::free(s); }

cbx_status cbx_instance_parse(const char* json, cbx_instance** out) {
  return guard([&] {
    require(json && out, "null argument");
    *out = new cbx_instance{parse_instance(json)};
  });
}

void cbx_instance_destroy(cbx_instance* inst) { delete inst; }

cbx_status cbx_instance_count(const cbx_instance* inst, uint64_t* n, uint64_t* x_size,
                              double* bound) {
  return guard([&] {
    require(inst, "null instance");
    const CountSummary s = count_instance(inst->spec);
    if (n) *n = s.N;
    if (x_size) *x_size = s.X;
    if (bound) *bound = s.bound;
  });
}

cbx_status cbx_instance_count_report(const cbx_instance* inst, int json, char** out) {
  return guard([&] {
    require(inst && out, "null argument");
    *out = dup(count_report(inst->spec, json != 0));
  });
}

cbx_status cbx_instance_lattice(const cbx_instance* inst, cbx_lattice** lat, cbx_body** body) {
  return guard([&] {
    require(inst && lat && body, "null argument");
    const InstanceSpec& spec = inst->spec;
    const std::int64_t H = spec.box.H;
    if (spec.curve == CurveKind::Poly) {
      const ModPoly f = shift_normalize(spec.poly(), spec.box).poly;
      *lat = new cbx_lattice{build_congruence_lattice(f)};
      *body = new cbx_body{build_body(f.degree(), H, Rational(tuple_length(f.degree())))};
    } else {
      const HyperellipticCurve c = shift_normalize(spec.hyperelliptic(), spec.box).curve;
      const ModPoly& f = c.poly();
      *lat = new cbx_lattice{
          build_hyperelliptic_lattice(f.coeff(1), f.coeff(2), f.coeff(3), c.c0(), c.modulus())};
      *body = new cbx_body{build_hyperelliptic_body(H)};
    }
  });
}

cbx_status cbx_instance_lift_report(const cbx_instance* inst, uint64_t budget, int json,
                                    char** out) {
  return guard([&] {
    require(inst && out, "null argument");
    *out = dup(lift_report(inst->spec, json != 0, budget_opts(budget)));
  });
}

cbx_status cbx_count_points(int64_t q, const int64_t* coeffs, size_t degree, int64_t K, int64_t L,
                            int64_t H, uint64_t* n, uint64_t* x_size) {
  return guard([&] {
    require(coeffs, "null coefficients");
    const ModPoly f(q, std::vector<std::int64_t>(coeffs, coeffs + degree + 1));
    const auto shifted = shift_normalize(f, BoxRegion::make(K, L, H));
    const CurveCount c = count_points_curve(shifted.poly, shifted.box);
    if (n) *n = c.N;
    if (x_size) *x_size = c.X.size();
  });
}

cbx_status cbx_count_points_hyperelliptic(int64_t q, const int64_t* coeffs, int64_t c0, int64_t K,
                                          int64_t L, int64_t H, uint64_t* n) {
  return guard([&] {
    require(coeffs, "null coefficients");
    const HyperellipticCurve c(ModPoly(q, std::vector<std::int64_t>(coeffs, coeffs + 4)), c0);
    const auto shifted = shift_normalize(c, BoxRegion::make(K, L, H));
    const CurveCount r = count_points_hyperelliptic(shifted.curve, shifted.box);
    if (n) *n = r.N;
  });
}

cbx_status cbx_lattice_create(size_t n, const int64_t* rows, cbx_lattice** out) {
  return guard([&] {
    require(rows && out && n > 0, "null argument");
    require_dimension(static_cast<int>(n));
    std::vector<IntVector> b(n);
    for (size_t i = 0; i < n; ++i) b[i].assign(rows + i * n, rows + (i + 1) * n);
    *out = new cbx_lattice{IntegerLattice(std::move(b))};
  });
}

cbx_status cbx_lattice_congruence(int64_t q, const int64_t* coeffs, size_t degree,
                                  cbx_lattice** out) {
  return guard([&] {
    require(coeffs && out, "null argument");
    const ModPoly f(q, std::vector<std::int64_t>(coeffs, coeffs + degree + 1));
    *out = new cbx_lattice{build_congruence_lattice(f)};
  });
}

void cbx_lattice_destroy(cbx_lattice* lat) { delete lat; }

size_t cbx_lattice_dimension(const cbx_lattice* lat) {
  return lat ? static_cast<size_t>(lat->lat.dimension()) : 0;
}

cbx_status cbx_lattice_covolume(const cbx_lattice* lat, char** out) {
  return guard([&] {
    require(lat && out, "null argument");
    *out = dup(lat->lat.covolume().get_str());
  });
}

cbx_status cbx_body_create(cbx_body_kind kind, size_t n, const int64_t* num, const int64_t* den,
                           cbx_body** out) {
  return guard([&] {
    require(num && den && out, "null argument");
    std::vector<Rational> w;
    for (size_t i = 0; i < n; ++i) {
      require(den[i] != 0, "zero weight denominator");
      Rational r(BigInt(static_cast<long>(num[i])), BigInt(static_cast<long>(den[i])));
      r.canonicalize();
      w.push_back(r);
    }
    const BodyKind k = kind == CBX_BODY_L1 ? BodyKind::L1CrossPolytope : BodyKind::SupBox;
    *out = new cbx_body{WeightedBody::make(k, std::move(w))};
  });
}

void cbx_body_destroy(cbx_body* body) { delete body; }

cbx_status cbx_minima_report(const cbx_lattice* lat, const cbx_body* body, int dual,
                             uint64_t budget, int json, char** out) {
  return guard([&] {
    require(lat && body && out, "null argument");
    require(lat->lat.dimension() == body->body.dimension(), "body dimension differs from lattice");
    *out = dup(minima_report(lat->lat, body->body, dual != 0, json != 0, budget_opts(budget)));
  });
}

cbx_status cbx_successive_minima(const cbx_lattice* lat, const cbx_body* body, uint64_t budget,
                                 char** out) {
  return guard([&] {
    require(lat && body && out, "null argument");
    require(lat->lat.dimension() == body->body.dimension(), "body dimension differs from lattice");
    const MinimaProfile p = successive_minima(lat->lat, body->body, budget_opts(budget));
    std::string s;
    for (const auto& l : p.lambdas) {
      if (!s.empty()) s += ' ';
      s += l.get_num().get_str() + "/" + l.get_den().get_str();
    }
    *out = dup(s);
  });
}

cbx_status cbx_count_lattice_points(const cbx_lattice* lat, const cbx_body* body,
                                    int64_t scale_num, int64_t scale_den, uint64_t budget,
                                    uint64_t* count) {
  return guard([&] {
    require(lat && body && count, "null argument");
    require(scale_num >= 0 && scale_den > 0, "scale must be a non-negative fraction");
    Rational scale(BigInt(static_cast<long>(scale_num)), BigInt(static_cast<long>(scale_den)));
    scale.canonicalize();
    *count = count_lattice_points(lat->lat, body->body, scale, budget_opts(budget));
  });
}

cbx_status cbx_vinogradov_count(const int64_t* set, size_t size, int k, int s, uint64_t budget,
                                uint64_t* count) {
  return guard([&] {
    require(set && count, "null argument");
    const auto inst = VinogradovInstance::make(std::vector<std::int64_t>(set, set + size), k, s);
    *count = vinogradov_count(inst, budget ? budget : kDefaultBudget);
  });
}

cbx_status cbx_sweep_csv(const char* config_json, int seed_override, uint64_t seed,
                         uint64_t budget, char** csv) {
  bool exceeded = false;
  const cbx_status st = guard([&] {
    require(config_json && csv, "null argument");
    SweepConfig cfg = parse_sweep_config(config_json);
    if (seed_override) cfg.seed = seed;
    const SweepOutcome out = run_sweep(cfg, budget ? budget : kDefaultBudget);
    *csv = dup(out.csv);
    exceeded = out.budget_exceeded;
  });
  if (st == CBX_OK && exceeded) {
    g_last_error = "sweep budget exceeded; partial CSV returned";
    return CBX_BUDGET_EXCEEDED;
  }
  return st;
}

cbx_status cbx_verify(const char* suite, uint64_t seed, uint64_t budget, int json, char** report,
                      uint64_t* failures) {
  return guard([&] {
    require(suite && report, "null argument");
    const VerifyReport r = run_verify(suite, seed, budget ? budget : kDefaultBudget);
    *report = dup(json ? r.json() : r.text());
    if (failures) *failures = r.failures();
  });
}

}  // extern "C"
