#include "dlab/io.hpp"

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "dlab/error.hpp"
#include "json.hpp"

namespace dlab {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::ConfigError, pointer + ": " + what);
}

Index as_index(const json& v, const std::string& pointer) {
  if (!v.is_number_integer()) field_error(pointer, "expected an integer");
  return static_cast<Index>(v.get<std::int64_t>());
}

double as_number(const json& v, const std::string& pointer) {
  if (!v.is_number()) field_error(pointer, "expected a number");
  return v.get<double>();
}

std::vector<double> as_numbers(const json& v, const std::string& pointer) {
  if (!v.is_array()) field_error(pointer, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], pointer + "/" + std::to_string(i)));
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, describe_position(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
}

}  // namespace

std::string describe_position(std::string_view text, std::size_t byte_offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte_offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

GraphDocument parse_graph_document(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) field_error("/", "expected an object");
  if (!doc.contains("n")) field_error("/n", "missing vertex count");
  const Index n = as_index(doc["n"], "/n");
  if (n < 1) field_error("/n", "need at least one vertex");

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    const json& list = doc["edges"];
    if (!list.is_array()) field_error("/edges", "expected an array of [x, y, w]");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string at = "/edges/" + std::to_string(i);
      const json& e = list[i];
      if (!e.is_array() || e.size() != 3) field_error(at, "expected [x, y, w]");
      edges.push_back({as_index(e[0], at + "/0"), as_index(e[1], at + "/1"), as_number(e[2], at + "/2")});
    }
  }
  std::vector<double> killing;
  if (doc.contains("killing")) killing = as_numbers(doc["killing"], "/killing");

  GraphDocument out;
  try {
    out.graph = Graph::build(n, edges, killing);
  } catch (const Error& e) {
    field_error("/edges", e.what());
  }
  if (doc.contains("measure")) {
    const auto mass = as_numbers(doc["measure"], "/measure");
    if (static_cast<Index>(mass.size()) != n) field_error("/measure", "expected " + std::to_string(n) + " entries");
    try {
      out.measure = MeasureSpace(mass);
    } catch (const Error& e) {
      field_error("/measure", e.what());
    }
  }
  if (doc.contains("inside")) {
    const json& list = doc["inside"];
    if (!list.is_array()) field_error("/inside", "expected an array of vertices");
    std::vector<Index> inside;
    for (std::size_t i = 0; i < list.size(); ++i) inside.push_back(as_index(list[i], "/inside/" + std::to_string(i)));
    out.inside = std::move(inside);
  }
  if (doc.contains("degree_bound")) {
    out.degree_bound = as_number(doc["degree_bound"], "/degree_bound");
    try {
      out.graph = out.graph.with_degree_bound(*out.degree_bound);
    } catch (const Error& e) {
      field_error("/degree_bound", e.what());
    }
  }
  if (doc.contains("provenance")) out.provenance = doc["provenance"].dump();
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "edges" && key != "killing" && key != "measure" && key != "inside" &&
        key != "degree_bound" && key != "provenance") {
      field_error("/" + key, "unknown key");
    }
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GraphDocument read_graph_document(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_graph_document(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string format_graph_document(const GraphDocument& doc) {
  const Graph& g = doc.graph;
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(g.size()) + ",\n";
  out += "  \"edges\": [";
  bool first = true;
  for (const Edge& e : g.edges()) {
    out += first ? "\n    " : ",\n    ";
    out += json::array({e.x, e.y, e.weight}).dump();
    first = false;
  }
  out += first ? "],\n" : "\n  ],\n";
  out += "  \"killing\": " + json(g.killings()).dump();
  if (doc.measure) out += ",\n  \"measure\": " + json(doc.measure->values()).dump();
  if (doc.inside) out += ",\n  \"inside\": " + json(*doc.inside).dump();
  if (g.has_parent_bound()) out += ",\n  \"degree_bound\": " + json(g.degree_bound()).dump();
  if (!doc.provenance.empty()) out += ",\n  \"provenance\": " + json::parse(doc.provenance).dump();
  out += "\n}\n";
  return out;
}

LoadedInstance resolve(const GraphDocument& doc, BoundaryMode mode) {
  if (!doc.measure) throw Error(ErrorCode::ConfigError, "/measure: the instance has no measure");
  if (!doc.inside) return {doc.graph, *doc.measure};
  return {truncate(doc.graph, *doc.inside, mode), doc.measure->restrict_to(*doc.inside)};
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_spectrum_csv(std::ostream& out, const Spectrum& spec) {
  out << "k,lambda,mean_prefix\n";
  const auto means = spec.mean_prefixes();
  for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
    out << (i + 1) << ',' << format_double(spec.lambdas[i]) << ',' << format_double(means[i]) << '\n';
  }
}

void write_heat_kernel_csv(std::ostream& out, std::span<const HeatKernel> kernels) {
  out << "t,x,y,value\n";
  for (const HeatKernel& hk : kernels) {
    for (Index x = 0; x < hk.values.rows(); ++x) {
      for (Index y = x; y < hk.values.cols(); ++y) {
        out << format_double(hk.t) << ',' << x << ',' << y << ',' << format_double(hk.values(x, y)) << '\n';
      }
    }
  }
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::vector<Index> parse_enumeration(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  std::vector<Index> order;
  if (first < text.size() && text[first] == '[') {
    const json list = parse_json(text);
    for (std::size_t i = 0; i < list.size(); ++i) order.push_back(as_index(list[i], "/" + std::to_string(i)));
    return order;
  }
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      order.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "enumeration entry '" + token + "' is not an integer");
    }
  }
  return order;
}

}  // namespace dlab
