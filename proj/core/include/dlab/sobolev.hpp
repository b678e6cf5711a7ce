#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "dlab/form.hpp"

namespace dlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class EstimateKind { Exact, Lower, Upper };
std::string_view to_string(EstimateKind kind) noexcept;

/// A value for the minimal S in ||u||_p^2 <= S (Q(u) + alpha |u(o)|^2).
struct SobolevEstimate {
  double p = kInfinity;
  double alpha = 0.0;
  std::optional<Index> anchor;
  double value = 0.0;
  EstimateKind kind = EstimateKind::Exact;
  VertexFunction witness;            // Exact / Lower: a function attaining `value`
  Index maximizer = -1;              // Exact at p = inf: vertex of the largest inverse diagonal
  std::string note;                  // Upper: how the bound was derived
  double stationarity_residual = 0.0;
  std::uint64_t seed = 0;
  bool converged = true;
  int iterations = 0;
};

struct SobolevOptions {
  int restarts = 8;
  std::uint64_t seed = 1;
  int max_steps = 10000;
  double improvement_tolerance = 1e-12;  // stop when the ratio gains less than this, relatively
  unsigned threads = 1;
};

/// ||u||_p in l^p(X, m); p = inf gives max |u|.
double lp_norm(const MeasureSpace& ms, const VertexFunction& u, double p);

/// ||u||_p^2 / (Q(u) + alpha |u(o)|^2).
double sobolev_ratio(const FormMatrix& fm, const VertexFunction& u, double p, double alpha,
                     std::optional<Index> anchor);

/// Exact S_{inf,alpha,o}: the largest diagonal entry of (K + alpha e_o e_o^T)^{-1}.
/// Never reads the measure.
SobolevEstimate sobolev_infty(const FormMatrix& fm, double alpha = 0.0, std::optional<Index> anchor = {});

/// Certified lower bound on S_{p,alpha,o} from the fixed-point iteration
/// u <- (K + alpha e_o e_o^T)^{-1} (m |u|^{p-2} u), started from the
/// l^inf witness, the best indicator function and `restarts` random vectors.
SobolevEstimate sobolev_p(const FormMatrix& fm, double p, double alpha = 0.0, std::optional<Index> anchor = {},
                          const SobolevOptions& options = {});

/// S_p <= S_inf m(X)^{2/p} for a finite measure.
SobolevEstimate sobolev_upper(const SobolevEstimate& s_inf, const MeasureSpace& ms, double p);

}  // namespace dlab
