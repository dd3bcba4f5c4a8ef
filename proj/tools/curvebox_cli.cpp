// curvebox command line. Exit codes: 0 success, 1 verification failure or
// internal error, 2 invalid input, 3 budget exceeded.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvebox/curvebox.h"

namespace {

struct Globals {
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 100000000;
};

// Thrown after a diagnostic has been printed.
struct Exit {
  int code;
};

int exit_code(cbx_status st) {
  switch (st) {
    case CBX_OK: return 0;
    case CBX_INVALID_ARGUMENT:
    case CBX_INVALID_INSTANCE:
    case CBX_DIMENSION_TOO_LARGE: return 2;
    case CBX_BUDGET_EXCEEDED: return 3;
    default: return 1;
  }
}

void check(cbx_status st) {
  if (st == CBX_OK) return;
  std::cerr << "error: " << cbx_last_error() << '\n';
  throw Exit{exit_code(st)};
}

[[noreturn]] void usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  throw Exit{2};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Prints and frees a library-owned string.
void emit(char* s) {
  std::fputs(s, stdout);
  cbx_string_free(s);
}

using InstancePtr = std::unique_ptr<cbx_instance, decltype(&cbx_instance_destroy)>;
using LatticePtr = std::unique_ptr<cbx_lattice, decltype(&cbx_lattice_destroy)>;
using BodyPtr = std::unique_ptr<cbx_body, decltype(&cbx_body_destroy)>;

InstancePtr load_instance(const std::string& path) {
  cbx_instance* raw = nullptr;
  check(cbx_instance_parse(read_file(path).c_str(), &raw));
  return InstancePtr(raw, cbx_instance_destroy);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    usage_error("not an integer: '" + s + "'");
  }
}

std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() == 1) return {parse_int(parts[0]), 1};
  if (parts.size() != 2) usage_error("not a fraction: '" + s + "'");
  return {parse_int(parts[0]), parse_int(parts[1])};
}

int run_count(const Globals& g, const std::string& file) {
  auto inst = load_instance(file);
  char* out = nullptr;
  check(cbx_instance_count_report(inst.get(), g.json, &out));
  emit(out);
  return 0;
}

int run_lift(const Globals& g, const std::string& file) {
  auto inst = load_instance(file);
  char* out = nullptr;
  check(cbx_instance_lift_report(inst.get(), g.budget, g.json, &out));
  emit(out);
  return 0;
}

struct MinimaArgs {
  std::string basis;
  std::string instance;
  std::string weights;
  std::string body = "sup";
  bool dual = false;
};

int run_minima(const Globals& g, const MinimaArgs& a) {
  if (a.basis.empty() == a.instance.empty()) usage_error("give exactly one of --basis, --instance");
  cbx_lattice* lat_raw = nullptr;
  cbx_body* body_raw = nullptr;
  if (!a.instance.empty()) {
    auto inst = load_instance(a.instance);
    check(cbx_instance_lattice(inst.get(), &lat_raw, &body_raw));
  } else {
    const auto rows = split(a.basis, ';');
    std::vector<std::int64_t> flat;
    for (const auto& r : rows) {
      const auto entries = split(r, ',');
      if (entries.size() != rows.size()) usage_error("--basis must be a square matrix");
      for (const auto& e : entries) flat.push_back(parse_int(e));
    }
    check(cbx_lattice_create(rows.size(), flat.data(), &lat_raw));
  }
  LatticePtr lat(lat_raw, cbx_lattice_destroy);
  BodyPtr body(body_raw, cbx_body_destroy);

  const std::size_t n = cbx_lattice_dimension(lat.get());
  if (!body || !a.weights.empty() || a.body != "sup") {
    cbx_body_kind kind = CBX_BODY_SUPBOX;
    if (a.body == "l1") {
      kind = CBX_BODY_L1;
    } else if (a.body != "sup") {
      usage_error("--body must be sup or l1");
    }
    std::vector<std::int64_t> num(n, 1), den(n, 1);
    if (!a.weights.empty()) {
      const auto ws = split(a.weights, ',');
      if (ws.size() != n) usage_error("--weights needs one entry per coordinate");
      for (std::size_t i = 0; i < n; ++i) std::tie(num[i], den[i]) = parse_fraction(ws[i]);
    }
    cbx_body* b = nullptr;
    check(cbx_body_create(kind, n, num.data(), den.data(), &b));
    body.reset(b);
  }

  char* out = nullptr;
  check(cbx_minima_report(lat.get(), body.get(), a.dual, g.budget, g.json, &out));
  emit(out);
  return 0;
}

int run_vinogradov(const Globals& g, const std::string& set, int k, int s) {
  std::vector<std::int64_t> xs;
  for (const auto& e : split(set, ',')) xs.push_back(parse_int(e));
  std::uint64_t J = 0;
  check(cbx_vinogradov_count(xs.data(), xs.size(), k, s, g.budget, &J));
  if (g.json) {
    std::printf("{\n  \"k\": %d,\n  \"s\": %d,\n  \"J\": %llu\n}\n", k, s,
                static_cast<unsigned long long>(J));
  } else {
    std::printf("%llu\n", static_cast<unsigned long long>(J));
  }
  return 0;
}

int run_sweep(const Globals& g, const std::string& config, const std::string& output) {
  char* csv = nullptr;
  const cbx_status st = cbx_sweep_csv(read_file(config).c_str(), g.seed.has_value(),
                                      g.seed.value_or(0), g.budget, &csv);
  if (csv) {
    if (output.empty()) {
      std::fputs(csv, stdout);
    } else {
      std::ofstream out(output, std::ios::binary);
      out << csv;
    }
    cbx_string_free(csv);
  }
  check(st);
  return 0;
}

int run_verify(const Globals& g, const std::string& suite) {
  char* report = nullptr;
  std::uint64_t failures = 0;
  check(cbx_verify(suite.c_str(), g.seed.value_or(1), g.budget, g.json, &report, &failures));
  emit(report);
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Points on curves modulo q in small boxes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--seed", g.seed, "RNG seed for sweep and verify");
  app.add_option("--budget", g.budget, "work budget (enumeration visits, Vinogradov tuples)");

  std::string file;
  auto* count = app.add_subcommand("count", "count points of an instance");
  count->add_option("instance", file, "instance JSON file")->required();

  auto* lift = app.add_subcommand("lift", "classify, lift and recount an instance");
  lift->add_option("instance", file, "instance JSON file")->required();

  MinimaArgs margs;
  auto* minima = app.add_subcommand("minima", "successive minima of a lattice in a box");
  minima->add_option("--basis", margs.basis, "rows separated by ';', entries by ','");
  minima->add_option("--instance", margs.instance, "use the instance's congruence lattice and box");
  minima->add_option("--weights", margs.weights, "comma-separated weights, each p or p/q");
  minima->add_option("--body", margs.body, "sup or l1");
  minima->add_flag("--dual", margs.dual, "measure the dual lattice");

  std::string set;
  int k = 1, s = 1;
  auto* vino = app.add_subcommand("vinogradov", "count solutions of the Vinogradov system");
  vino->add_option("--set", set, "comma-separated distinct integers")->required();
  vino->add_option("--k", k, "degree");
  vino->add_option("--s", s, "half the number of variables");

  std::string output;
  auto* sweep = app.add_subcommand("sweep", "run a seeded parameter sweep to CSV");
  sweep->add_option("config", file, "sweep config JSON file")->required();
  sweep->add_option("-o,--output", output, "write CSV here instead of stdout");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite, "gon, n2din, lift, vino or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*count) return run_count(g, file);
    if (*lift) return run_lift(g, file);
    if (*minima) return run_minima(g, margs);
    if (*vino) return run_vinogradov(g, set, k, s);
    if (*sweep) return run_sweep(g, file, output);
    if (*verify) return run_verify(g, suite);
  } catch (const Exit& e) {
    return e.code;
  }
  return 2;
}
