#include "dlab/heat.hpp"

#include <cmath>
#include <string>

#include "dlab/error.hpp"

namespace dlab {

namespace {

void require_complete(const Spectrum& spec) {
  if (!spec.complete()) {
    throw Error(ErrorCode::IncompleteSpectrum, "have " + std::to_string(spec.count()) + " of " +
                                                   std::to_string(spec.dimension) + " eigenpairs");
  }
}

Eigen::VectorXd decay(const Spectrum& spec, double t) {
  Eigen::VectorXd w(spec.count());
  for (Index j = 0; j < spec.count(); ++j) w[j] = std::exp(-spec.lambdas[static_cast<std::size_t>(j)] * t);
  return w;
}

}  // namespace

HeatKernel heat_kernel(const Spectrum& spec, const MeasureSpace& ms, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "heat kernel needs t > 0");
  require_complete(spec);
  if (ms.size() != spec.dimension) throw Error(ErrorCode::SizeMismatch, "measure size differs from spectrum");
  const Eigen::VectorXd w = decay(spec, t);
  HeatKernel hk;
  hk.t = t;
  hk.values = spec.vectors * w.asDiagonal() * spec.vectors.transpose();
  // symmetric by construction up to the order of summation
  hk.values = (0.5 * (hk.values + hk.values.transpose())).eval();
  return hk;
}

Eigen::VectorXd heat_diagonal(const Spectrum& spec, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "heat kernel needs t > 0");
  require_complete(spec);
  const Eigen::VectorXd w = decay(spec, t);
  return spec.vectors.cwiseAbs2() * w;
}

double heat_trace(const Spectrum& spec, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "heat trace needs t >= 0");
  require_complete(spec);
  double sum = 0.0;
  // smallest terms first
  for (auto it = spec.lambdas.rbegin(); it != spec.lambdas.rend(); ++it) sum += std::exp(-*it * t);
  return sum;
}

VertexFunction semigroup_apply(const Spectrum& spec, const MeasureSpace& ms, double t, const VertexFunction& f) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "semigroup needs t >= 0");
  if (f.size() != spec.dimension || ms.size() != spec.dimension) {
    throw Error(ErrorCode::SizeMismatch, "function or measure size differs from spectrum");
  }
  if (t == 0.0) return f;
  require_complete(spec);
  const Eigen::VectorXd coeff = spec.vectors.transpose() * ms.vector().cwiseProduct(f);
  return spec.vectors * decay(spec, t).cwiseProduct(coeff);
}

}  // namespace dlab
