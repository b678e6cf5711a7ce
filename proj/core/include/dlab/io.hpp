#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dlab/graph.hpp"
#include "dlab/heat.hpp"
#include "dlab/measure.hpp"
#include "dlab/spectrum.hpp"

namespace dlab {

/// Graph/measure interchange document:
///
///   { "n": int, "edges": [[x, y, w], ...], "killing": [c0, ...],
///     "measure": [m0, ...], "inside": [...]?, "degree_bound": D?,
///     "provenance": {...}? }
///
/// `inside` marks a subset for truncation at load time; `degree_bound`
/// carries the parent's max deg + c for sections written by generators.
struct GraphDocument {
  Graph graph;
  std::optional<MeasureSpace> measure;
  std::optional<std::vector<Index>> inside;
  std::optional<double> degree_bound;
  std::string provenance;  // compact JSON, empty when absent
};

GraphDocument parse_graph_document(std::string_view text);
GraphDocument read_graph_document(const std::filesystem::path& path);

/// Canonical text form: fixed key order, one key per line, shortest
/// round-trip number formatting. parse followed by format is byte-stable.
std::string format_graph_document(const GraphDocument& doc);

/// Graph and measure after applying `inside` with `mode`, if present.
struct LoadedInstance {
  Graph graph;
  MeasureSpace measure;
};
LoadedInstance resolve(const GraphDocument& doc, BoundaryMode mode);

/// 17 significant digits.
std::string format_double(double v);

/// Header "k,lambda,mean_prefix".
void write_spectrum_csv(std::ostream& out, const Spectrum& spec);

/// Header "t,x,y,value", one row per pair x <= y for each kernel.
void write_heat_kernel_csv(std::ostream& out, std::span<const HeatKernel> kernels);

/// FNV-1a 64-bit hash as 16 hex digits.
std::string fnv1a64_hex(std::string_view bytes);

std::string read_text_file(const std::filesystem::path& path);

/// Vertex order from a JSON array or whitespace separated integers.
std::vector<Index> parse_enumeration(std::string_view text);

/// 1-based line and column of a byte offset, for diagnostics.
std::string describe_position(std::string_view text, std::size_t byte_offset);

}  // namespace dlab
