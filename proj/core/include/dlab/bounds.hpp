#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dlab/constructions.hpp"
#include "dlab/heat.hpp"
#include "dlab/measure.hpp"
#include "dlab/sobolev.hpp"
#include "dlab/spectrum.hpp"

namespace dlab {

// ---------------------------------------------------------------------------
// Closed-form bounds

/// 1 / (S m(X \ {x_1..x_{k-1}})), the tail taken along `enumeration`.
/// With an anchor, the enumeration must start there.
double bound_enumeration(double s_infty, const MeasureSpace& ms, std::span<const Index> enumeration, Index k,
                         std::optional<Index> anchor = {});

/// Same bound from a precomputed tail mass.
double bound_enumeration_from_tail(double s_infty, double tail_mass);

/// k / (S m(X)) - alpha / m(o).
double bound_linear(double s_infty, double total_mass, double alpha, double anchor_mass, Index k);

/// (1 / (e S_p)) (k / m(X))^{1 - 2/p}; p may be infinite.
double bound_heat_trace(double s_p, double total_mass, double p, Index k);

/// (S_p / (2 (1 - 2/p)))^{p/(p-2)} for p in (2, inf).
double c1_constant(double s_p, double p);

/// C_1 t^{-p/(p-2)}, the on-diagonal bound for p_{2t}(x, x).
double heat_decay_bound(double s_p, double p, double t);

/// Suffix masses along an enumeration: tails[i] = m({x_{i+1}, x_{i+2}, ...}).
std::vector<double> enumeration_tails(const MeasureSpace& ms, std::span<const Index> enumeration);

// ---------------------------------------------------------------------------
// Reports

enum class BoundName { Enumeration, Linear, HeatTrace, MuUpper, HeatDecay };
std::string_view to_string(BoundName name) noexcept;

struct BoundRecord {
  Index k = 0;          // eigenvalue index (1-based); for HEAT_DECAY the vertex
  double t = 0.0;       // HEAT_DECAY: the t in p_{2t}; zero otherwise
  double bound = 0.0;
  double observed = 0.0;
  double margin = 0.0;  // observed - bound for lower bounds, bound - observed for upper
};

struct BoundInputs {
  std::string sobolev_kind;
  double sobolev_value = 0.0;
  double p = kInfinity;
  double alpha = 0.0;
  std::optional<Index> anchor;
  double measure_total = 0.0;
  double measure_min = 0.0;
  double measure_max = 0.0;
  Index vertices = 0;
  std::string enumeration;
};

struct BoundReport {
  BoundName name = BoundName::Enumeration;
  bool lower_bound = true;
  double tolerance = 1e-9;
  std::vector<BoundRecord> records;
  bool pass = true;
  BoundInputs inputs;
  std::string note;

  /// Index into `records` of the smallest margin, or -1 when empty.
  [[nodiscard]] Index tightest() const noexcept;
  [[nodiscard]] std::vector<BoundRecord> failures() const;
};

struct Tolerances {
  double margin = 1e-9;
  double decay = 1e-10;
};

BoundReport check_enumeration(const Spectrum& spec, const SobolevEstimate& s_infty, const MeasureSpace& ms,
                              std::span<const Index> enumeration, const std::string& label, double tolerance);

BoundReport check_linear(const Spectrum& spec, const SobolevEstimate& s_infty, const MeasureSpace& ms,
                         double tolerance);

/// Mean-eigenvalue version against lambda-bar_k; also requires lambda_k >= lambda-bar_k.
BoundReport check_heat_trace(const Spectrum& spec, const SobolevEstimate& s_p, const MeasureSpace& ms,
                             double tolerance);

/// lambda_k <= mu_k = k-th smallest of 2D/m(x).
BoundReport check_mu_upper(const Spectrum& spec, double degree_bound, const MeasureSpace& ms, double tolerance);

/// p_{2t}(x,x) <= C_1 t^{-p/(p-2)} at one vertex. `kernels_at_2t[i].t` is 2t.
BoundReport verify_heat_decay(std::span<const HeatKernel> kernels_at_2t, Index x, double s_p, double p,
                              double tolerance = 1e-10);
BoundReport verify_heat_decay(std::span<const HeatKernel> kernels_at_2t, Index x, const SobolevEstimate& s_p,
                              double tolerance = 1e-10);

/// Decay check at every vertex; one record per time holding the tightest vertex.
BoundReport check_heat_decay(const Spectrum& spec, const SobolevEstimate& s_p, const MeasureSpace& ms,
                             std::span<const double> times, double tolerance);

struct VerifyInputs {
  std::optional<SobolevEstimate> s_infty;   // EXACT S_{inf,alpha,o}
  std::vector<SobolevEstimate> s_p_upper;   // UPPER S_p, one per exponent
  std::vector<double> requested_p;          // exponents that must have an UPPER estimate
  std::optional<double> degree_bound;       // enables MU_UPPER
  std::vector<double> decay_times{0.1, 0.5, 1.0, 2.0, 5.0};
  std::vector<Index> enumeration;
  std::string enumeration_label = "bfs";
};

/// ENUMERATION and LINEAR with the exact l^inf constant, HEAT_TRACE for each p,
/// HEAT_DECAY for each finite p, MU_UPPER when a degree bound is given.
std::vector<BoundReport> verify_all(const Spectrum& spec, const VerifyInputs& inputs, const MeasureSpace& ms,
                                    const Tolerances& tolerances = {});

/// lambda_k / a_k over k = 1..kmax; a finite-range trend check, not an asymptotic claim.
struct TrendCheck {
  std::vector<double> ratios;
  bool strictly_increasing = true;
  Index first_violation = -1;  // 1-based k with ratio_k <= ratio_{k-1}
};

TrendCheck ratio_trend(const Spectrum& spec, const Sequence& a, Index kmax);

}  // namespace dlab
