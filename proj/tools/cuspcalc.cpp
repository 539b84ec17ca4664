#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/indexcore.hpp"
#include "cuspcalc/io.hpp"
#include "cuspcalc/oracle.hpp"
#include "cuspcalc/random.hpp"
#include "cuspcalc/suites.hpp"

using namespace cuspcalc;

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCalibration = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  unsigned long seed = 20240611;
  std::string trunc;
  int dim = 1;
  std::string oracle;
  std::string format = "json";
  std::string out = "-";
};

Trunc parse_trunc(const std::string& text, Trunc fallback) {
  if (text.empty()) return fallback;
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("--trunc expects jmin,K");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("--trunc expects two integers, got " + text);
  }
}

DiscretizationSpec parse_oracle(const std::string& text) {
  DiscretizationSpec spec;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--oracle expects key=value pairs, got " + item);
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    try {
      if (key == "grid") spec.grid = std::stoi(value);
      else if (key == "domain") spec.half_width = std::stod(value);
      else if (key == "threshold") spec.threshold = std::stod(value);
      else if (key == "recheck") spec.recheck = value != "0" && value != "false";
      else if (key == "cutoff") spec.cutoff_outer = std::stod(value);
      else throw ConfigError("unknown oracle key " + key);
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad value for oracle key " + key + ": " + value);
    }
  }
  if (spec.grid < 128 || (spec.grid & (spec.grid - 1)) != 0) throw ConfigError("oracle grid must be a power of two >= 128");
  if (spec.half_width <= 0 || spec.threshold <= 0) throw ConfigError("oracle domain and threshold must be positive");
  return spec;
}

ordered_json calibration_json(const CalibrationConstants& k, const SuspendedConventions& c) {
  ordered_json j;
  j["kappa_r"] = k.kappa_r.str();
  j["kappa_d"] = k.kappa_d.str();
  j["kappa_i"] = k.kappa_i.str();
  j["readout_sign"] = k.readout_sign;
  j["index_sign"] = k.index_sign;
  j["t_sign"] = c.t_sign;
  j["eta_sign"] = c.eta_sign;
  j["provenance"] = k.provenance;
  return j;
}

int sign_field(const ordered_json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const int v = j.at(key).get<int>();
  if (v != 1 && v != -1) throw ConfigError(std::string("calibration: ") + key + " must be +1 or -1");
  return v;
}

// CUSPCALC_CALIBRATION pins a calibration file; otherwise the built-in constants are used.
std::pair<CalibrationConstants, SuspendedConventions> load_calibration() {
  CalibrationConstants k = CalibrationConstants::defaults();
  SuspendedConventions c;
  const char* path = std::getenv("CUSPCALC_CALIBRATION");
  if (path == nullptr || *path == '\0') return {k, c};
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot read calibration file ") + path);
  try {
    const ordered_json j = ordered_json::parse(in);
    if (j.contains("kappa_r")) k.kappa_r = ExactScalar::parse(j.at("kappa_r").get<std::string>());
    if (j.contains("kappa_d")) k.kappa_d = ExactScalar::parse(j.at("kappa_d").get<std::string>());
    if (j.contains("kappa_i")) k.kappa_i = ExactScalar::parse(j.at("kappa_i").get<std::string>());
    k.readout_sign = sign_field(j, "readout_sign", k.readout_sign);
    k.index_sign = sign_field(j, "index_sign", k.index_sign);
    c.t_sign = sign_field(j, "t_sign", c.t_sign);
    c.eta_sign = sign_field(j, "eta_sign", c.eta_sign);
    k.provenance = std::string("file ") + path;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad calibration file ") + path + ": " + e.what());
  }
  return {k, c};
}

void write_text(const std::string& text, const std::string& path) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// An element from a file, or a random one drawn from --seed, --trunc, --dim.
CuspElement input_element(const std::string& path, const Common& o, int which = 0) {
  if (!path.empty()) return parse_element(path);
  Rng g(o.seed + static_cast<unsigned long>(which));
  return random_element(g, o.dim, parse_trunc(o.trunc, {-6, 6}), 1, -2, 1, -2, 2);
}

CuspElement input_elliptic(const std::string& path, const Common& o) {
  if (!path.empty()) return parse_element(path);
  Rng g(o.seed);
  return random_wall_element(g, o.dim, parse_trunc(o.trunc, {-6, 6})).first;
}

ordered_json functional(const ExactScalar& v, const std::string& flag) {
  return {{"value", v.str()}, {"flag", flag}};
}

const char* mode_name(IndexMode m) {
  switch (m) {
    case IndexMode::General:
      return "general";
    case IndexMode::TranslationInvariant:
      return "translation_invariant";
    case IndexMode::Reduced:
      return "reduced";
  }
  return "general";
}

ordered_json report_json(const IndexReport& r) {
  ordered_json j;
  j["mode"] = mode_name(r.mode);
  j["components"] = {{"ASb", r.asb.str()}, {"etab", r.etab.str()}, {"iF", r.i_f.str()}, {"sF", r.s_f.str()}};
  j["If"] = r.if_value.str();
  j["Bif"] = r.bif.str();
  j["assembled"] = r.assembled.str();
  j["integer"] = r.integer;
  j["flags"] = {{"translation_invariant", r.translation_invariant},
                {"normal_indicial", r.normal_indicial},
                {"corner_elliptic", r.corner_elliptic},
                {"asb_strict", r.asb_strict}};
  j["stability_radius"] = {{"P", r.radius.P}, {"M", r.radius.M}};
  ordered_json oracles = ordered_json::array();
  for (const auto& o : r.oracles)
    oracles.push_back({{"name", o.name}, {"index", o.index ? ordered_json(*o.index) : ordered_json(nullptr)},
                       {"diagnostics", o.diagnostics}});
  j["oracles"] = oracles;
  return j;
}

int cmd_calibrate(const Common& o, const std::string& anchor_path) {
  const DiscretizationSpec spec = parse_oracle(o.oracle);
  const CuspElement anchor = anchor_path.empty() ? calibration_anchor(parse_trunc(o.trunc, {-6, 6})) : parse_element(anchor_path);
  const Calibration cal = calibrate(anchor, spec);
  ordered_json j = calibration_json(cal.constants, cal.conventions);
  j["alternatives"] = cal.alternatives;
  j["report"] = cal.report;
  write_text(j.dump(2) + "\n", o.out);
  return 0;
}

int cmd_verify(const Common& o, const std::vector<std::string>& suites, const std::vector<std::string>& counts,
               const std::vector<std::string>& only) {
  SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.trunc = parse_trunc(o.trunc, cfg.trunc);
  cfg.dim_max = o.dim;
  if (!suites.empty()) cfg.suites = suites;
  if (!o.oracle.empty()) cfg.oracle = parse_oracle(o.oracle);
  std::tie(cfg.constants, cfg.conventions) = load_calibration();
  for (const auto& c : counts) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) throw ConfigError("--count expects name=n, got " + c);
    try {
      cfg.counts[c.substr(0, eq)] = std::stol(c.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad count " + c);
    }
  }
  try {
    cfg.validate();
    for (const auto& name : only) find_identity(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Report rep;
  if (only.empty()) {
    rep = run_suite(cfg);
  } else {
    rep.seed = cfg.seed;
    rep.suite = "selected";
    for (const auto& name : only) rep.results.push_back(run_identity(find_identity(name), cfg));
  }
  emit_report(rep, o.format, o.out);
  return rep.failures() == 0 ? 0 : kExitFailures;
}

int cmd_star(const Common& o, const std::string& a_path, const std::string& b_path) {
  const CuspElement a = input_element(a_path, o, 0), b = input_element(b_path, o, 1);
  if (a.dim() != b.dim() || !(a.trunc() == b.trunc())) throw ConfigError("factors differ in dimension or truncation");
  write_text(emit_element(star(a, b)) + "\n", o.out);
  return 0;
}

int cmd_trace(const Common& o, const std::string& path) {
  const CuspElement a = input_element(path, o);
  const auto [k, conv] = load_calibration();
  ordered_json j;
  j["rTr"] = functional(rTr(a, k), "regularized");
  const HadamardResult h = hdTr_full(a, {}, k);
  j["dTr"] = h.strict ? functional(h.value, "strict") : ordered_json{{"value", nullptr}, {"flag", "divergent"}};
  j["hdTr"] = functional(h.value, h.strict ? "strict" : "regularized");
  bool integrable = true;
  for (End e : {End::Plus, End::Minus}) {
    auto it = a.ends(e).find(1);
    if (it != a.ends(e).end() && it->second.top_degree() >= -1) integrable = false;
  }
  try {
    const ExactScalar i = iTr(a, k);
    j["iTr"] = functional(i, integrable ? "strict" : "regularized");
    j["hiTr"] = functional(hiTr(a, RegularizerQ::standard(), k), integrable ? "strict" : "regularized");
  } catch (const TruncationLoss& e) {
    j["iTr"] = {{"value", nullptr}, {"flag", std::string("truncated: ") + e.what()}};
    j["hiTr"] = j["iTr"];
  }
  write_text(j.dump(2) + "\n", o.out);
  return 0;
}

int cmd_eta(const Common& o, const std::string& path) {
  const CuspElement a = input_elliptic(path, o);
  const auto [k, conv] = load_calibration();
  ordered_json j;
  ExactScalar total;
  for (End e : {End::Plus, End::Minus}) {
    const ExactScalar v = eta_suspended(indicial_family(a, e), conv);
    j[e == End::Plus ? "plus" : "minus"] = v.str();
    total += v;
  }
  j["total"] = total.str();
  write_text(j.dump(2) + "\n", o.out);
  return 0;
}

int cmd_index(const Common& o, const std::string& path, const std::string& mode, bool oracles) {
  const CuspElement a = input_elliptic(path, o);
  const auto [k, conv] = load_calibration();
  IndexMode m = IndexMode::General;
  if (mode == "translation_invariant") m = IndexMode::TranslationInvariant;
  else if (mode == "reduced") m = IndexMode::Reduced;
  else if (mode != "general") throw ConfigError("unknown mode " + mode);
  IndexReport rep = assemble_index(a, RegularizerQ::standard(), m, k);
  if (oracles) {
    const DiscretizationSpec spec = parse_oracle(o.oracle);
    OracleResult svd{"svd", std::nullopt, ""};
    try {
      const SvdIndex s = svd_index(a, spec);
      svd.index = s.index;
      svd.diagnostics = s.diagnostics;
    } catch (const GapTooSmall& e) {
      svd.diagnostics = e.what();
    }
    rep.oracles.push_back(svd);
    OracleResult wind{"winding", std::nullopt, ""};
    try {
      const WindingResult w = winding_index(a, spec.half_width, spec.half_width, spec);
      wind.index = w.index;
      wind.diagnostics = "raw " + std::to_string(w.raw) + ", " + std::to_string(w.samples) + " samples";
    } catch (const HypothesisViolation& e) {
      wind.diagnostics = e.what();
    }
    rep.oracles.push_back(wind);
  }
  write_text(report_json(rep).dump(2) + "\n", o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cusp symbol calculus: traces, index cocycle and numerical index oracles"};
  app.require_subcommand(1);
  Common o;
  auto common = [&o](CLI::App* c) {
    c->add_option("--seed", o.seed, "random seed");
    c->add_option("--trunc", o.trunc, "truncation jmin,K");
    c->add_option("--dim", o.dim, "matrix dimension (maximum dimension for verify)")->check(CLI::Range(1, 4));
    c->add_option("--oracle", o.oracle, "oracle settings, e.g. grid=1024,domain=8");
    c->add_option("-o,--out", o.out, "output path, - for stdout");
  };

  std::string anchor;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "solve for the trace normalizations and sign conventions");
  common(calibrate_cmd);
  calibrate_cmd->add_option("--anchor", anchor, "element file used as the index anchor");

  std::vector<std::string> suites, counts, only;
  auto* verify_cmd = app.add_subcommand("verify", "run the identity suites");
  common(verify_cmd);
  verify_cmd->add_option("--suite", suites, "algebra, traces, hochschild, index")->delimiter(',');
  verify_cmd->add_option("--count", counts, "per-identity sample count, name=n")->delimiter(',');
  verify_cmd->add_option("--only", only, "run only these identities")->delimiter(',');
  verify_cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string a_path, b_path;
  auto* star_cmd = app.add_subcommand("star", "compose two elements");
  common(star_cmd);
  star_cmd->add_option("a", a_path, "first factor (random when omitted)");
  star_cmd->add_option("b", b_path, "second factor (random when omitted)");

  auto* trace_cmd = app.add_subcommand("trace", "the five trace functionals of an element");
  common(trace_cmd);
  trace_cmd->add_option("element", a_path, "element file (random when omitted)");

  auto* eta_cmd = app.add_subcommand("eta", "eta invariants of the indicial families");
  common(eta_cmd);
  eta_cmd->add_option("element", a_path, "element file (random domain wall when omitted)");

  std::string mode = "general";
  bool no_oracle = false;
  auto* index_cmd = app.add_subcommand("index", "assembled index with oracle comparisons");
  common(index_cmd);
  index_cmd->add_option("element", a_path, "element file (random domain wall when omitted)");
  index_cmd->add_option("--mode", mode, "general, translation_invariant or reduced");
  index_cmd->add_flag("--no-oracle", no_oracle, "skip the numerical oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*calibrate_cmd) return cmd_calibrate(o, anchor);
    if (*verify_cmd) return cmd_verify(o, suites, counts, only);
    if (*star_cmd) return cmd_star(o, a_path, b_path);
    if (*trace_cmd) return cmd_trace(o, a_path);
    if (*eta_cmd) return cmd_eta(o, a_path);
    if (*index_cmd) return cmd_index(o, a_path, mode, !no_oracle);
  } catch (const CalibrationInconsistent& e) {
    std::cerr << "calibration inconsistent: " << e.what() << "\n";
    return kExitCalibration;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const CompatibilityError& e) {
    std::cerr << "compatibility error at (j, k, e) = (" << e.j << ", " << e.k << ", " << e.end << "): " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailures;
  }
  return 0;
}
