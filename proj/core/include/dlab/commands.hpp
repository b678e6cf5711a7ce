#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlab/bounds.hpp"
#include "dlab/io.hpp"
#include "dlab/sobolev.hpp"

namespace dlab::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadInput = 2,
  kSolverFailure = 3,
};

/// Builds an instance from a generator config:
///
///   { "generator": { "name": "lattice_ball" | "binary_tree" | "file", ... },
///     "measure":   { "name": "uniform" | "normalizing" | "telescoping" | "power" | "file", ... },
///     "root": 0 }
///
/// `base_dir` resolves relative "path" entries.
GraphDocument generate_from_config(std::string_view config_text, const std::filesystem::path& base_dir);

int cmd_generate(const std::filesystem::path& config, const std::filesystem::path& output, std::ostream& out,
                 std::ostream& err);

struct SpectrumArgs {
  std::filesystem::path input;
  BoundaryMode mode = BoundaryMode::Dirichlet;
  Index k = kAllEigenpairs;
  std::filesystem::path output;  // empty: write to `out`
  EigenOptions eigen;
};

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out, std::ostream& err);

struct VerifyArgs {
  std::filesystem::path input;
  BoundaryMode mode = BoundaryMode::Dirichlet;
  std::vector<double> p{4.0};
  double alpha = 0.0;
  std::optional<Index> anchor;
  std::string enumeration = "bfs";  // "bfs" or "file"
  std::filesystem::path enumeration_file;
  double tolerance = 1e-9;
  double decay_tolerance = 1e-10;
  std::uint64_t seed = 1;
  int restarts = 8;
  unsigned threads = 1;
  std::filesystem::path output;  // empty: write to `out`
  EigenOptions eigen;
  /// Applied to the spectrum before any check; used to inject faults in tests.
  std::function<void(Spectrum&)> spectrum_hook;
};

struct SandwichEntry {
  double p = 0.0;
  SobolevEstimate lower;
  SobolevEstimate upper;
  bool pass = true;
};

struct VerifyOutcome {
  std::vector<BoundReport> reports;
  std::optional<SobolevEstimate> s_infty;        // anchored constant used by ENUMERATION/LINEAR
  std::optional<SobolevEstimate> s_infty_plain;  // alpha = 0, when the form is positive definite
  std::vector<SandwichEntry> sandwich;
  std::vector<std::string> notes;
  bool pass = false;
  std::string json;
};

/// Runs every check; throws dlab::Error on bad input or solver failure.
VerifyOutcome run_verify(const VerifyArgs& args);

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

struct HeatArgs {
  std::filesystem::path input;
  BoundaryMode mode = BoundaryMode::Dirichlet;
  std::vector<double> times;
  Index vertex = 0;
  double p = 4.0;
  std::filesystem::path output;
};

/// CSV columns t,p_2t_xx,c1_bound,margin.
int cmd_heat(const HeatArgs& args, std::ostream& out, std::ostream& err);

/// "3,4,6,inf" -> {3, 4, 6, inf}. Empty text gives an empty list.
std::vector<double> parse_number_list(std::string_view text);

BoundaryMode parse_mode(std::string_view text);

/// DLAB_THREADS, defaulting to 1.
unsigned threads_from_env();

}  // namespace dlab::cli
