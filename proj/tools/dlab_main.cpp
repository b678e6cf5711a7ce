#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dlab/commands.hpp"
#include "dlab/error.hpp"

namespace {

using namespace dlab::cli;
using dlab::BoundaryMode;

std::optional<BoundaryMode> mode_or_report(const std::string& text) {
  try {
    return parse_mode(text);
  } catch (const dlab::Error& e) {
    std::cerr << "dlab: " << e.what() << '\n';
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral bounds for Dirichlet forms on weighted graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dlab 0.3.0");

  std::string config_path, generate_out;
  auto* generate = app.add_subcommand("generate", "Build an instance file from a generator config");
  generate->add_option("--config", config_path, "Generator config (JSON)")->required()->check(CLI::ExistingFile);
  generate->add_option("--output,-o", generate_out, "Instance file; stdout when omitted");

  SpectrumArgs spectrum_args;
  std::string spectrum_in, spectrum_out, spectrum_mode = "dirichlet";
  std::string spectrum_k = "all";
  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the truncated form as CSV");
  spectrum->add_option("--input,-i", spectrum_in, "Instance file")->required()->check(CLI::ExistingFile);
  spectrum->add_option("--k", spectrum_k, "Number of eigenvalues, or all");
  spectrum->add_option("--mode", spectrum_mode, "dirichlet or neumann");
  spectrum->add_option("--output,-o", spectrum_out, "CSV file; stdout when omitted");
  spectrum->add_flag("--krylov", spectrum_args.eigen.force_krylov, "Use the sparse solver regardless of size");

  VerifyArgs verify_args;
  verify_args.threads = threads_from_env();
  std::string verify_in, verify_out, verify_mode = "dirichlet", p_list = "4", enum_file;
  long long anchor = -1;
  auto* verify = app.add_subcommand("verify", "Check every eigenvalue and heat-kernel bound");
  verify->add_option("--input,-i", verify_in, "Instance file")->required()->check(CLI::ExistingFile);
  verify->add_option("--p", p_list, "Comma separated exponents in (2, inf], e.g. 3,4,inf");
  verify->add_option("--alpha", verify_args.alpha, "Anchor coefficient");
  verify->add_option("--anchor", anchor, "Anchor vertex (default 0 when alpha > 0)");
  verify->add_option("--enumeration", verify_args.enumeration, "bfs or file")
      ->check(CLI::IsMember({"bfs", "file"}));
  verify->add_option("--enumeration-file", enum_file, "Vertex order for --enumeration file");
  verify->add_option("--tol", verify_args.tolerance, "Margin tolerance");
  verify->add_option("--decay-tol", verify_args.decay_tolerance, "Relative tolerance for heat decay");
  verify->add_option("--seed", verify_args.seed, "Seed for the Sobolev search");
  verify->add_option("--restarts", verify_args.restarts, "Random restarts for the Sobolev search");
  verify->add_option("--threads", verify_args.threads, "Worker threads (default $DLAB_THREADS or 1)");
  verify->add_option("--mode", verify_mode, "dirichlet or neumann");
  verify->add_option("--output,-o", verify_out, "JSON report; stdout when omitted");

  HeatArgs heat_args;
  std::string heat_in, heat_out, heat_mode = "dirichlet", times = "0.1,0.5,1,2,5";
  long long vertex = 0;
  auto* heat = app.add_subcommand("heat", "Heat kernel diagonal against the decay bound");
  heat->add_option("--input,-i", heat_in, "Instance file")->required()->check(CLI::ExistingFile);
  heat->add_option("--times", times, "Comma separated times t; p_2t(x, x) is reported");
  heat->add_option("--vertex", vertex, "Vertex x");
  heat->add_option("--p", heat_args.p, "Exponent in (2, inf)");
  heat->add_option("--mode", heat_mode, "dirichlet or neumann");
  heat->add_option("--output,-o", heat_out, "CSV file; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*generate) return cmd_generate(config_path, generate_out, std::cout, std::cerr);

    if (*spectrum) {
      const auto mode = mode_or_report(spectrum_mode);
      if (!mode) return kBadInput;
      spectrum_args.input = spectrum_in;
      spectrum_args.output = spectrum_out;
      spectrum_args.mode = *mode;
      if (spectrum_k != "all") {
        try {
          std::size_t used = 0;
          spectrum_args.k = std::stoll(spectrum_k, &used);
          if (used != spectrum_k.size() || spectrum_args.k < 1) throw std::invalid_argument(spectrum_k);
        } catch (const std::exception&) {
          std::cerr << "dlab: --k must be a positive integer or all\n";
          return kBadInput;
        }
      }
      return cmd_spectrum(spectrum_args, std::cout, std::cerr);
    }

    if (*verify) {
      const auto mode = mode_or_report(verify_mode);
      if (!mode) return kBadInput;
      verify_args.input = verify_in;
      verify_args.output = verify_out;
      verify_args.mode = *mode;
      verify_args.p = parse_number_list(p_list);
      if (anchor >= 0) verify_args.anchor = anchor;
      verify_args.enumeration_file = enum_file;
      return cmd_verify(verify_args, std::cout, std::cerr);
    }

    if (*heat) {
      const auto mode = mode_or_report(heat_mode);
      if (!mode) return kBadInput;
      heat_args.input = heat_in;
      heat_args.output = heat_out;
      heat_args.mode = *mode;
      heat_args.times = parse_number_list(times);
      heat_args.vertex = vertex;
      return cmd_heat(heat_args, std::cout, std::cerr);
    }
  } catch (const dlab::Error& e) {
    std::cerr << "dlab: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
