#pragma once

#include <Eigen/Core>

#include "dlab/measure.hpp"
#include "dlab/spectrum.hpp"

namespace dlab {

/// p_t(x, y) = (1/m(y)) (e^{-tL} 1_y)(x), symmetric in x and y.
struct HeatKernel {
  double t = 0.0;
  Eigen::MatrixXd values;

  [[nodiscard]] double operator()(Index x, Index y) const { return values(x, y); }
};

/// Eigenfunction expansion sum_j e^{-lambda_j t} phi_j(x) phi_j(y).
HeatKernel heat_kernel(const Spectrum& spec, const MeasureSpace& ms, double t);

/// p_t(x, x) for every x without forming the full kernel.
Eigen::VectorXd heat_diagonal(const Spectrum& spec, double t);

/// sum_i e^{-lambda_i t}; equals sum_x p_t(x,x) m(x).
double heat_trace(const Spectrum& spec, double t);

/// e^{-tL} f; returns f unchanged at t = 0.
VertexFunction semigroup_apply(const Spectrum& spec, const MeasureSpace& ms, double t, const VertexFunction& f);

}  // namespace dlab
