#include "dlab/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dlab/constructions.hpp"
#include "dlab/error.hpp"
#include "dlab/form.hpp"
#include "dlab/heat.hpp"
#include "dlab/spectrum.hpp"
#include "json.hpp"

namespace dlab::cli {

using ordered_json = nlohmann::ordered_json;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.3.0";

[[noreturn]] void config_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::ConfigError, pointer + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& at) {
  if (!obj.contains(key)) config_error(at + "/" + key, "missing");
  return obj[key];
}

int int_field(const json& obj, const std::string& key, const std::string& at, int min_value) {
  const json& v = require(obj, key, at);
  if (!v.is_number_integer() || v.get<std::int64_t>() < min_value) {
    config_error(at + "/" + key, "expected an integer >= " + std::to_string(min_value));
  }
  return v.get<int>();
}

double number_field(const json& obj, const std::string& key, const std::string& at, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) config_error(at + "/" + key, "expected a number");
  return obj[key].get<double>();
}

std::string string_field(const json& obj, const std::string& key, const std::string& at, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) config_error(at + "/" + key, "expected a string");
  return obj[key].get<std::string>();
}

std::optional<BoundaryMode> boundary_field(const json& obj, const std::string& at) {
  const std::string b = string_field(obj, "boundary", at, "dirichlet");
  if (b == "dirichlet") return BoundaryMode::Dirichlet;
  if (b == "neumann") return BoundaryMode::Neumann;
  if (b == "none") return std::nullopt;
  config_error(at + "/boundary", "expected dirichlet, neumann or none");
}

Sequence sequence_field(const json& measure, const std::string& at) {
  const json& s = require(measure, "sequence", at);
  const std::string here = at + "/sequence";
  if (s.is_array()) {
    std::vector<double> values;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_number()) config_error(here + "/" + std::to_string(i), "expected a number");
      values.push_back(s[i].get<double>());
    }
    return Sequence::explicit_values(std::move(values));
  }
  if (!s.is_object()) config_error(here, "expected an object or an array");
  const std::string kind = string_field(s, "kind", here, "linear");
  const double parameter = number_field(s, "parameter", here, 1.0);
  if (kind == "linear") return Sequence::linear(parameter);
  if (kind == "geometric") return Sequence::geometric(parameter);
  if (kind == "polynomial") return Sequence::polynomial(parameter);
  config_error(here + "/kind", "expected linear, geometric or polynomial");
}

void write_text(const std::filesystem::path& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
  file << text;
}

int report_error(const Error& e, std::ostream& err) {
  err << "dlab: " << e.what() << '\n';
  switch (e.code()) {
    case ErrorCode::ConvergenceFailure:
      return kSolverFailure;
    default:
      return kBadInput;
  }
}

ordered_json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

ordered_json estimate_json(const SobolevEstimate& s) {
  ordered_json j;
  j["p"] = number_or_inf(s.p);
  j["alpha"] = s.alpha;
  j["o"] = s.anchor ? ordered_json(*s.anchor) : ordered_json(nullptr);
  j["value"] = s.value;
  j["kind"] = std::string(to_string(s.kind));
  j["residual"] = s.stationarity_residual;
  j["seed"] = s.seed;
  if (s.kind == EstimateKind::Lower) {
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
  }
  if (s.kind == EstimateKind::Exact && s.maximizer >= 0) j["maximizer"] = s.maximizer;
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

ordered_json report_json(const BoundReport& r) {
  ordered_json j;
  j["bound"] = std::string(to_string(r.name));
  j["direction"] = r.lower_bound ? "lower" : "upper";
  j["pass"] = r.pass;
  j["tolerance"] = r.tolerance;
  ordered_json in;
  in["sobolev_kind"] = r.inputs.sobolev_kind;
  in["sobolev_value"] = r.inputs.sobolev_value;
  in["p"] = number_or_inf(r.inputs.p);
  in["alpha"] = r.inputs.alpha;
  in["o"] = r.inputs.anchor ? ordered_json(*r.inputs.anchor) : ordered_json(nullptr);
  in["measure_total"] = r.inputs.measure_total;
  in["measure_min"] = r.inputs.measure_min;
  in["measure_max"] = r.inputs.measure_max;
  in["vertices"] = r.inputs.vertices;
  in["enumeration"] = r.inputs.enumeration;
  j["inputs"] = in;
  j["note"] = r.note;
  const Index tight = r.tightest();
  ordered_json records = ordered_json::array();
  for (const BoundRecord& rec : r.records) {
    ordered_json e;
    if (r.name == BoundName::HeatDecay) {
      e["t"] = rec.t;
      e["x"] = rec.k;
    } else {
      e["k"] = rec.k;
    }
    e["bound"] = rec.bound;
    e["observed"] = rec.observed;
    e["margin"] = rec.margin;
    records.push_back(e);
  }
  j["tightest"] = tight >= 0 ? records[static_cast<std::size_t>(tight)] : ordered_json(nullptr);
  j["records"] = records;
  return j;
}

std::vector<Index> choose_enumeration(const VerifyArgs& args, const Graph& g, std::optional<Index> anchor,
                                      ordered_json& meta) {
  if (args.enumeration == "bfs") {
    const Index root = anchor.value_or(0);
    meta["kind"] = "bfs";
    meta["root"] = root;
    return bfs_order(g, root);
  }
  if (args.enumeration == "file") {
    if (args.enumeration_file.empty()) throw Error(ErrorCode::ConfigError, "--enumeration file needs --enumeration-file");
    const std::string text = read_text_file(args.enumeration_file);
    meta["kind"] = "file";
    meta["path"] = args.enumeration_file.string();
    meta["fnv1a64"] = fnv1a64_hex(text);
    return parse_enumeration(text);
  }
  throw Error(ErrorCode::ConfigError, "--enumeration must be bfs or file");
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::string token;
  std::stringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    token = token.substr(b, token.find_last_not_of(" \t") - b + 1);
    if (token == "inf" || token == "infinity" || token == "Inf") {
      out.push_back(kInfinity);
      continue;
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "'" + token + "' is not a number");
    }
  }
  return out;
}

BoundaryMode parse_mode(std::string_view text) {
  if (text == "dirichlet") return BoundaryMode::Dirichlet;
  if (text == "neumann") return BoundaryMode::Neumann;
  throw Error(ErrorCode::ConfigError, "--mode must be dirichlet or neumann");
}

unsigned threads_from_env() {
  const char* v = std::getenv("DLAB_THREADS");
  if (v == nullptr) return 1;
  try {
    const long n = std::stol(v);
    return n >= 1 ? static_cast<unsigned>(n) : 1u;
  } catch (const std::exception&) {
    return 1;
  }
}

GraphDocument generate_from_config(std::string_view config_text, const std::filesystem::path& base_dir) {
  json cfg;
  try {
    cfg = json::parse(config_text.begin(), config_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                describe_position(config_text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  if (!cfg.is_object()) config_error("/", "expected an object");
  const json& gen = require(cfg, "generator", "");
  const json& mea = require(cfg, "measure", "");
  if (!gen.is_object()) config_error("/generator", "expected an object");
  if (!mea.is_object()) config_error("/measure", "expected an object");
  for (const auto& [key, _] : cfg.items()) {
    if (key != "generator" && key != "measure" && key != "root") config_error("/" + key, "unknown key");
  }

  const std::string name = string_field(gen, "name", "/generator", "");
  GraphDocument doc;
  std::optional<GraphDocument> source;
  if (name == "lattice_ball") {
    const int d = int_field(gen, "d", "/generator", 1);
    const int r = int_field(gen, "r", "/generator", 0);
    const auto boundary = boundary_field(gen, "/generator");
    doc.graph = boundary ? lattice_section(d, r, *boundary).graph : lattice_ball(d, r).graph;
  } else if (name == "binary_tree") {
    const int depth = int_field(gen, "depth", "/generator", 0);
    const auto boundary = boundary_field(gen, "/generator");
    doc.graph = boundary ? binary_tree_section(depth, *boundary) : binary_tree(depth);
  } else if (name == "file") {
    const std::string path = string_field(gen, "path", "/generator", "");
    if (path.empty()) config_error("/generator/path", "missing");
    std::filesystem::path full(path);
    if (full.is_relative()) full = base_dir / full;
    source = read_graph_document(full);
    doc = *source;
  } else {
    config_error("/generator/name", "expected lattice_ball, binary_tree or file");
  }

  const Index n = doc.graph.size();
  Index root = 0;
  if (cfg.contains("root")) {
    if (!cfg["root"].is_number_integer()) config_error("/root", "expected an integer");
    root = cfg["root"].get<Index>();
    if (root < 0 || root >= n) config_error("/root", "vertex outside the graph");
  }

  const std::string measure = string_field(mea, "name", "/measure", "");
  if (measure == "uniform") {
    const double total = number_field(mea, "total", "/measure", 1.0);
    if (!(total > 0.0)) config_error("/measure/total", "expected a positive number");
    doc.measure = MeasureSpace::uniform(n, total);
  } else if (measure == "normalizing") {
    doc.measure = normalizing_measure(doc.graph);
  } else if (measure == "telescoping") {
    const Sequence a = sequence_field(mea, "/measure");
    const auto order = bfs_order(doc.graph, root);
    const MeasureSpace along_order = telescoping_measure(a, n);
    doc.measure = MeasureSpace::along(order, along_order.values());
  } else if (measure == "power") {
    const double eps = number_field(mea, "eps", "/measure", 0.0);
    if (!(eps > 0.0)) config_error("/measure/eps", "expected a positive number");
    const auto order = bfs_order(doc.graph, root);
    doc.measure = MeasureSpace::along(order, power_measure(n, eps).values());
  } else if (measure == "file") {
    if (!source || !source->measure) config_error("/measure", "name 'file' needs a file generator carrying a measure");
  } else {
    config_error("/measure/name", "expected uniform, normalizing, telescoping, power or file");
  }

  // passthrough keeps the source document untouched
  if (!(source && measure == "file")) {
    ordered_json prov;
    prov["generator"] = gen;
    prov["measure"] = mea;
    prov["root"] = root;
    doc.provenance = prov.dump();
  }
  return doc;
}

int cmd_generate(const std::filesystem::path& config, const std::filesystem::path& output, std::ostream& out,
                 std::ostream& err) {
  try {
    const std::string text = read_text_file(config);
    GraphDocument doc;
    try {
      doc = generate_from_config(text, config.parent_path());
    } catch (const Error& e) {
      throw Error(e.code(), config.string() + ": " + e.what());
    }
    write_text(output, format_graph_document(doc), out);
    std::ostream& log = output.empty() ? err : out;
    log << "vertices " << doc.graph.size() << ", edges " << doc.graph.edge_count() << ", m(X) "
        << format_double(doc.measure->total()) << '\n';
    return kOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto inst = resolve(read_graph_document(args.input), args.mode);
    const FormMatrix fm(inst.graph, inst.measure);
    const Spectrum spec = eigensolve(fm, args.k, args.eigen);
    std::ostringstream csv;
    write_spectrum_csv(csv, spec);
    write_text(args.output, csv.str(), out);
    return kOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

VerifyOutcome run_verify(const VerifyArgs& args) {
  const std::string input_text = read_text_file(args.input);
  GraphDocument doc;
  try {
    doc = parse_graph_document(input_text);
  } catch (const Error& e) {
    throw Error(e.code(), args.input.string() + ": " + e.what());
  }
  const auto inst = resolve(doc, args.mode);
  const Graph& g = inst.graph;
  const MeasureSpace& ms = inst.measure;
  for (double p : args.p) {
    if (!(p > 2.0)) throw Error(ErrorCode::ConfigError, "--p values must lie in (2, inf]");
  }
  if (args.alpha < 0.0) throw Error(ErrorCode::ConfigError, "--alpha must be >= 0");
  std::optional<Index> anchor = args.anchor;
  if (args.alpha > 0.0 && !anchor) anchor = 0;
  if (anchor && (*anchor < 0 || *anchor >= g.size())) throw Error(ErrorCode::ConfigError, "--anchor outside the graph");

  const FormMatrix fm(g, ms);
  Spectrum spec = eigensolve(fm, kAllEigenpairs, args.eigen);
  if (args.spectrum_hook) args.spectrum_hook(spec);

  VerifyOutcome outcome;
  outcome.s_infty = sobolev_infty(fm, args.alpha, anchor);
  if (args.alpha == 0.0) {
    outcome.s_infty_plain = outcome.s_infty;
  } else {
    try {
      outcome.s_infty_plain = sobolev_infty(fm, 0.0, {});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularForm) throw;
      outcome.notes.push_back("form without anchor term is singular; heat-kernel checks skipped");
    }
  }

  ordered_json enumeration_meta;
  VerifyInputs inputs;
  inputs.s_infty = outcome.s_infty;
  inputs.enumeration = choose_enumeration(args, g, anchor, enumeration_meta);
  inputs.enumeration_label = enumeration_meta["kind"].get<std::string>();
  inputs.degree_bound = g.degree_bound();

  SobolevOptions sob;
  sob.restarts = args.restarts;
  sob.seed = args.seed;
  sob.threads = std::max(1u, args.threads);
  if (outcome.s_infty_plain) {
    inputs.requested_p = args.p;
    for (double p : args.p) {
      SandwichEntry entry;
      entry.p = p;
      entry.upper = sobolev_upper(*outcome.s_infty_plain, ms, p);
      if (std::isinf(p)) {
        entry.lower = *outcome.s_infty_plain;
      } else {
        entry.lower = sobolev_p(fm, p, 0.0, {}, sob);
      }
      entry.pass = entry.lower.value <= entry.upper.value + args.tolerance;
      inputs.s_p_upper.push_back(entry.upper);
      outcome.sandwich.push_back(std::move(entry));
    }
  }

  Tolerances tol;
  tol.margin = args.tolerance;
  tol.decay = args.decay_tolerance;
  outcome.reports = verify_all(spec, inputs, ms, tol);

  outcome.pass = true;
  for (const auto& r : outcome.reports) outcome.pass = outcome.pass && r.pass;
  for (const auto& s : outcome.sandwich) outcome.pass = outcome.pass && s.pass;

  ordered_json j;
  j["tool"] = "dlab";
  j["version"] = kVersion;
  j["command"] = "verify";
  j["input"] = {{"path", args.input.string()}, {"fnv1a64", fnv1a64_hex(input_text)}};
  j["enumeration"] = enumeration_meta;
  ordered_json params;
  params["mode"] = args.mode == BoundaryMode::Dirichlet ? "dirichlet" : "neumann";
  ordered_json plist = ordered_json::array();
  for (double p : args.p) plist.push_back(number_or_inf(p));
  params["p"] = plist;
  params["alpha"] = args.alpha;
  params["anchor"] = anchor ? ordered_json(*anchor) : ordered_json(nullptr);
  params["tolerance"] = args.tolerance;
  params["decay_tolerance"] = args.decay_tolerance;
  params["restarts"] = args.restarts;
  params["seed"] = args.seed;
  j["parameters"] = params;
  j["instance"] = {{"vertices", g.size()},
                   {"edges", g.edge_count()},
                   {"measure_total", ms.total()},
                   {"degree_bound", g.degree_bound()}};
  j["spectrum"] = {{"method", spec.method}, {"count", spec.count()}, {"max_residual", spec.max_residual}};
  ordered_json sobolev = ordered_json::array();
  sobolev.push_back(estimate_json(*outcome.s_infty));
  if (outcome.s_infty_plain && args.alpha != 0.0) sobolev.push_back(estimate_json(*outcome.s_infty_plain));
  ordered_json sandwich = ordered_json::array();
  for (const auto& s : outcome.sandwich) {
    if (!std::isinf(s.p)) sobolev.push_back(estimate_json(s.lower));
    sobolev.push_back(estimate_json(s.upper));
    sandwich.push_back({{"p", number_or_inf(s.p)},
                        {"lower", s.lower.value},
                        {"upper", s.upper.value},
                        {"gap", s.upper.value - s.lower.value},
                        {"pass", s.pass}});
  }
  j["sobolev"] = sobolev;
  j["sandwich"] = sandwich;
  ordered_json reports = ordered_json::array();
  for (const auto& r : outcome.reports) reports.push_back(report_json(r));
  j["reports"] = reports;
  j["notes"] = outcome.notes;
  j["pass"] = outcome.pass;
  outcome.json = j.dump(2) + "\n";
  return outcome;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const VerifyOutcome outcome = run_verify(args);
    write_text(args.output, outcome.json, out);
    if (outcome.pass) return kOk;
    for (const auto& r : outcome.reports) {
      for (const auto& f : r.failures()) {
        err << "FAIL " << to_string(r.name) << " p=" << format_double(r.inputs.p) << " k=" << f.k
            << " bound=" << format_double(f.bound) << " observed=" << format_double(f.observed)
            << " margin=" << format_double(f.margin) << '\n';
      }
      if (!r.pass && r.failures().empty()) err << "FAIL " << to_string(r.name) << ": " << r.note << '\n';
    }
    for (const auto& s : outcome.sandwich) {
      if (!s.pass) {
        err << "FAIL SANDWICH p=" << format_double(s.p) << " lower=" << format_double(s.lower.value)
            << " upper=" << format_double(s.upper.value) << '\n';
      }
    }
    return kCheckFailed;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_heat(const HeatArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (!(args.p > 2.0) || std::isinf(args.p)) throw Error(ErrorCode::ConfigError, "--p must lie in (2, inf)");
    for (double t : args.times) {
      if (!(t > 0.0)) throw Error(ErrorCode::ConfigError, "--times must be positive");
    }
    const auto inst = resolve(read_graph_document(args.input), args.mode);
    if (args.vertex < 0 || args.vertex >= inst.graph.size()) {
      throw Error(ErrorCode::ConfigError, "--vertex outside the graph");
    }
    std::ostringstream csv;
    csv << "t,p_2t_xx,c1_bound,margin\n";
    if (!args.times.empty()) {
      const FormMatrix fm(inst.graph, inst.measure);
      const Spectrum spec = eigensolve(fm);
      const SobolevEstimate upper = sobolev_upper(sobolev_infty(fm), inst.measure, args.p);
      for (double t : args.times) {
        const double value = heat_diagonal(spec, 2.0 * t)[args.vertex];
        const double bound = heat_decay_bound(upper.value, args.p, t);
        csv << format_double(t) << ',' << format_double(value) << ',' << format_double(bound) << ','
            << format_double(bound - value) << '\n';
      }
    }
    write_text(args.output, csv.str(), out);
    return kOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

}  // namespace dlab::cli
