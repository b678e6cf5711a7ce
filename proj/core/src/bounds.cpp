#include "dlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dlab/error.hpp"

namespace dlab {

namespace {

void check_permutation(std::span<const Index> enumeration, Index n) {
  if (static_cast<Index>(enumeration.size()) != n) {
    throw Error(ErrorCode::BadEnumeration, "enumeration lists " + std::to_string(enumeration.size()) +
                                               " of " + std::to_string(n) + " vertices");
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Index x : enumeration) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) {
      throw Error(ErrorCode::BadEnumeration, "enumeration is not a permutation (at vertex " + std::to_string(x) + ")");
    }
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

BoundInputs describe(const SobolevEstimate& s, const MeasureSpace& ms) {
  BoundInputs in;
  in.sobolev_kind = std::string(to_string(s.kind));
  in.sobolev_value = s.value;
  in.p = s.p;
  in.alpha = s.alpha;
  in.anchor = s.anchor;
  in.measure_total = ms.total();
  in.measure_min = *std::min_element(ms.values().begin(), ms.values().end());
  in.measure_max = *std::max_element(ms.values().begin(), ms.values().end());
  in.vertices = ms.size();
  return in;
}

void settle(BoundReport& report) {
  report.pass = std::all_of(report.records.begin(), report.records.end(),
                            [&](const BoundRecord& r) { return r.margin >= -report.tolerance; }) &&
                report.pass;
}

void require_kind(const SobolevEstimate& s, EstimateKind kind, const char* what) {
  if (s.kind != kind) {
    throw Error(ErrorCode::WrongKind, std::string(what) + " needs a " + std::string(to_string(kind)) +
                                          " Sobolev estimate, got " + std::string(to_string(s.kind)));
  }
}

void require_sizes(const Spectrum& spec, const MeasureSpace& ms) {
  if (spec.dimension != ms.size()) throw Error(ErrorCode::SizeMismatch, "spectrum and measure sizes differ");
}

}  // namespace

std::string_view to_string(BoundName name) noexcept {
  switch (name) {
    case BoundName::Enumeration: return "ENUMERATION";
    case BoundName::Linear: return "LINEAR";
    case BoundName::HeatTrace: return "HEAT_TRACE";
    case BoundName::MuUpper: return "MU_UPPER";
    case BoundName::HeatDecay: return "HEAT_DECAY";
  }
  return "UNKNOWN";
}

std::vector<double> enumeration_tails(const MeasureSpace& ms, std::span<const Index> enumeration) {
  check_permutation(enumeration, ms.size());
  std::vector<double> tails(enumeration.size());
  double sum = 0.0;
  for (std::size_t i = enumeration.size(); i-- > 0;) {
    sum += ms[enumeration[i]];
    tails[i] = sum;
  }
  return tails;
}

double bound_enumeration_from_tail(double s_infty, double tail_mass) { return 1.0 / (s_infty * tail_mass); }

double bound_enumeration(double s_infty, const MeasureSpace& ms, std::span<const Index> enumeration, Index k,
                         std::optional<Index> anchor) {
  check_permutation(enumeration, ms.size());
  if (anchor && enumeration.front() != *anchor) {
    throw Error(ErrorCode::BadEnumeration, "enumeration must start at the anchor vertex");
  }
  if (k < 1 || k > ms.size()) throw Error(ErrorCode::IndexOutOfRange, "k = " + std::to_string(k));
  double tail = 0.0;
  for (std::size_t i = enumeration.size(); i-- > static_cast<std::size_t>(k - 1);) tail += ms[enumeration[i]];
  return bound_enumeration_from_tail(s_infty, tail);
}

double bound_linear(double s_infty, double total_mass, double alpha, double anchor_mass, Index k) {
  const double base = static_cast<double>(k) / (s_infty * total_mass);
  return alpha == 0.0 ? base : base - alpha / anchor_mass;
}

double bound_heat_trace(double s_p, double total_mass, double p, Index k) {
  const double exponent = std::isinf(p) ? 1.0 : 1.0 - 2.0 / p;
  return std::pow(static_cast<double>(k) / total_mass, exponent) / (std::numbers::e * s_p);
}

double c1_constant(double s_p, double p) {
  if (!(p > 2.0) || std::isinf(p)) throw Error(ErrorCode::InvalidArgument, "C_1 needs p in (2, inf)");
  return std::pow(s_p / (2.0 * (1.0 - 2.0 / p)), p / (p - 2.0));
}

double heat_decay_bound(double s_p, double p, double t) {
  return c1_constant(s_p, p) * std::pow(t, -p / (p - 2.0));
}

Index BoundReport::tightest() const noexcept {
  if (records.empty()) return -1;
  const auto it = std::min_element(records.begin(), records.end(),
                                   [](const BoundRecord& a, const BoundRecord& b) { return a.margin < b.margin; });
  return static_cast<Index>(it - records.begin());
}

std::vector<BoundRecord> BoundReport::failures() const {
  std::vector<BoundRecord> out;
  for (const auto& r : records) {
    if (r.margin < -tolerance) out.push_back(r);
  }
  return out;
}

BoundReport check_enumeration(const Spectrum& spec, const SobolevEstimate& s_infty, const MeasureSpace& ms,
                              std::span<const Index> enumeration, const std::string& label, double tolerance) {
  require_kind(s_infty, EstimateKind::Exact, "ENUMERATION");
  require_sizes(spec, ms);
  const auto tails = enumeration_tails(ms, enumeration);
  if (s_infty.alpha > 0.0 && s_infty.anchor && enumeration.front() != *s_infty.anchor) {
    throw Error(ErrorCode::BadEnumeration, "with alpha > 0 the enumeration must start at the anchor");
  }
  BoundReport report;
  report.name = BoundName::Enumeration;
  report.lower_bound = true;
  report.tolerance = tolerance;
  report.inputs = describe(s_infty, ms);
  report.inputs.enumeration = label;
  if (s_infty.alpha == 0.0) report.note = "alpha = 0: enumeration unconstrained";
  for (Index k = 1; k <= spec.count(); ++k) {
    BoundRecord r;
    r.k = k;
    r.bound = bound_enumeration_from_tail(s_infty.value, tails[static_cast<std::size_t>(k - 1)]);
    r.observed = spec.lambda(k);
    r.margin = r.observed - r.bound;
    report.records.push_back(r);
  }
  settle(report);
  if (s_infty.alpha > 0.0 && report.records.front().margin < -tolerance) {
    report.note = "k = 1 fails with alpha > 0: no vertex is pinned, so the anchor term cannot be dropped";
  }
  return report;
}

BoundReport check_linear(const Spectrum& spec, const SobolevEstimate& s_infty, const MeasureSpace& ms,
                         double tolerance) {
  require_kind(s_infty, EstimateKind::Exact, "LINEAR");
  require_sizes(spec, ms);
  const double anchor_mass = s_infty.anchor ? ms[*s_infty.anchor] : 1.0;
  BoundReport report;
  report.name = BoundName::Linear;
  report.lower_bound = true;
  report.tolerance = tolerance;
  report.inputs = describe(s_infty, ms);
  for (Index k = 1; k <= spec.count(); ++k) {
    BoundRecord r;
    r.k = k;
    r.bound = bound_linear(s_infty.value, ms.total(), s_infty.alpha, anchor_mass, k);
    r.observed = spec.lambda(k);
    r.margin = r.observed - r.bound;
    report.records.push_back(r);
  }
  settle(report);
  return report;
}

BoundReport check_heat_trace(const Spectrum& spec, const SobolevEstimate& s_p, const MeasureSpace& ms,
                             double tolerance) {
  require_kind(s_p, EstimateKind::Upper, "HEAT_TRACE");
  require_sizes(spec, ms);
  BoundReport report;
  report.name = BoundName::HeatTrace;
  report.lower_bound = true;
  report.tolerance = tolerance;
  report.inputs = describe(s_p, ms);
  report.note = "observed is the mean of the first k eigenvalues";
  const auto means = spec.mean_prefixes();
  for (Index k = 1; k <= spec.count(); ++k) {
    BoundRecord r;
    r.k = k;
    r.bound = bound_heat_trace(s_p.value, ms.total(), s_p.p, k);
    r.observed = means[static_cast<std::size_t>(k - 1)];
    r.margin = r.observed - r.bound;
    report.records.push_back(r);
    if (spec.lambda(k) < r.observed) {
      report.pass = false;
      report.note += "; lambda_k < mean at k = " + std::to_string(k);
    }
  }
  settle(report);
  return report;
}

BoundReport check_mu_upper(const Spectrum& spec, double degree_bound, const MeasureSpace& ms, double tolerance) {
  require_sizes(spec, ms);
  std::vector<double> mu(static_cast<std::size_t>(ms.size()));
  for (Index x = 0; x < ms.size(); ++x) mu[static_cast<std::size_t>(x)] = 2.0 * degree_bound / ms[x];
  std::sort(mu.begin(), mu.end());
  BoundReport report;
  report.name = BoundName::MuUpper;
  report.lower_bound = false;
  report.tolerance = tolerance;
  report.inputs.measure_total = ms.total();
  report.inputs.vertices = ms.size();
  report.inputs.measure_min = *std::min_element(ms.values().begin(), ms.values().end());
  report.inputs.measure_max = *std::max_element(ms.values().begin(), ms.values().end());
  report.note = "mu_k = 2D/m sorted, D = " + std::to_string(degree_bound);
  for (Index k = 1; k <= spec.count(); ++k) {
    BoundRecord r;
    r.k = k;
    r.bound = mu[static_cast<std::size_t>(k - 1)];
    r.observed = spec.lambda(k);
    r.margin = r.bound - r.observed;
    report.records.push_back(r);
  }
  settle(report);
  return report;
}

BoundReport verify_heat_decay(std::span<const HeatKernel> kernels_at_2t, Index x, double s_p, double p,
                              double tolerance) {
  const double c1 = c1_constant(s_p, p);
  BoundReport report;
  report.name = BoundName::HeatDecay;
  report.lower_bound = false;
  report.tolerance = tolerance;
  report.inputs.sobolev_value = s_p;
  report.inputs.p = p;
  report.note = "vertex " + std::to_string(x) + ", C_1 = " + std::to_string(c1);
  for (const HeatKernel& hk : kernels_at_2t) {
    if (x < 0 || x >= hk.values.rows()) throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(x));
    BoundRecord r;
    r.k = x;
    r.t = hk.t / 2.0;
    r.bound = c1 * std::pow(r.t, -p / (p - 2.0));
    r.observed = hk(x, x);
    r.margin = r.bound - r.observed;
    report.records.push_back(r);
  }
  settle(report);
  return report;
}

BoundReport verify_heat_decay(std::span<const HeatKernel> kernels_at_2t, Index x, const SobolevEstimate& s_p,
                              double tolerance) {
  require_kind(s_p, EstimateKind::Upper, "HEAT_DECAY");
  return verify_heat_decay(kernels_at_2t, x, s_p.value, s_p.p, tolerance);
}

BoundReport check_heat_decay(const Spectrum& spec, const SobolevEstimate& s_p, const MeasureSpace& ms,
                             std::span<const double> times, double tolerance) {
  require_kind(s_p, EstimateKind::Upper, "HEAT_DECAY");
  require_sizes(spec, ms);
  const double c1 = c1_constant(s_p.value, s_p.p);
  BoundReport report;
  report.name = BoundName::HeatDecay;
  report.lower_bound = false;
  report.tolerance = tolerance;
  report.inputs = describe(s_p, ms);
  report.note = "per time, the vertex with the largest p_2t(x,x); C_1 = " + std::to_string(c1);
  for (double t : times) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay times must be positive");
    const Eigen::VectorXd diag = heat_diagonal(spec, 2.0 * t);
    Index worst = 0;
    diag.maxCoeff(&worst);
    BoundRecord r;
    r.k = worst;
    r.t = t;
    r.bound = c1 * std::pow(t, -s_p.p / (s_p.p - 2.0));
    r.observed = diag[worst];
    r.margin = r.bound - r.observed;
    report.records.push_back(r);
  }
  settle(report);
  return report;
}

std::vector<BoundReport> verify_all(const Spectrum& spec, const VerifyInputs& inputs, const MeasureSpace& ms,
                                    const Tolerances& tolerances) {
  if (!inputs.s_infty) throw Error(ErrorCode::MissingEstimate, "no l^inf Sobolev constant supplied");
  std::vector<BoundReport> reports;
  reports.push_back(check_enumeration(spec, *inputs.s_infty, ms, inputs.enumeration, inputs.enumeration_label,
                                      tolerances.margin));
  reports.push_back(check_linear(spec, *inputs.s_infty, ms, tolerances.margin));

  for (double p : inputs.requested_p) {
    const auto it = std::find_if(inputs.s_p_upper.begin(), inputs.s_p_upper.end(),
                                 [p](const SobolevEstimate& s) { return s.p == p; });
    if (it == inputs.s_p_upper.end()) {
      throw Error(ErrorCode::MissingEstimate, "no UPPER Sobolev estimate for p = " + std::to_string(p));
    }
    reports.push_back(check_heat_trace(spec, *it, ms, tolerances.margin));
    if (!std::isinf(p)) {
      if (!spec.complete()) throw Error(ErrorCode::IncompleteSpectrum, "heat decay needs the full spectrum");
      reports.push_back(check_heat_decay(spec, *it, ms, inputs.decay_times, tolerances.decay));
    }
  }

  if (inputs.degree_bound) reports.push_back(check_mu_upper(spec, *inputs.degree_bound, ms, tolerances.margin));
  return reports;
}

TrendCheck ratio_trend(const Spectrum& spec, const Sequence& a, Index kmax) {
  if (kmax < 1 || kmax > spec.count()) throw Error(ErrorCode::IndexOutOfRange, "kmax = " + std::to_string(kmax));
  TrendCheck out;
  for (Index k = 1; k <= kmax; ++k) {
    out.ratios.push_back(spec.lambda(k) / a.at(k));
    if (k > 1 && !(out.ratios.back() > out.ratios[out.ratios.size() - 2]) && out.first_violation < 0) {
      out.strictly_increasing = false;
      out.first_violation = k;
    }
  }
  return out;
}

}  // namespace dlab
