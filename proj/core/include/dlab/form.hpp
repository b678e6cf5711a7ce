#pragma once

#include <memory>
#include <optional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "dlab/graph.hpp"
#include "dlab/measure.hpp"

namespace dlab {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Matrix form of the energy Q(f) = f^T K f together with the measure
/// diagonal M of the pencil (K, M).
///
/// K(x,x) = deg(x) + c(x), K(x,y) = -b(x,y).
class FormMatrix {
 public:
  FormMatrix(Graph graph, MeasureSpace measure);

  [[nodiscard]] Index size() const noexcept { return graph_->size(); }
  [[nodiscard]] const Graph& graph() const noexcept { return *graph_; }
  [[nodiscard]] const MeasureSpace& measure() const noexcept { return *measure_; }
  [[nodiscard]] const SparseMatrix& stiffness() const noexcept { return stiffness_; }
  [[nodiscard]] Eigen::Map<const Eigen::VectorXd> mass() const { return measure_->vector(); }
  [[nodiscard]] Eigen::MatrixXd dense_stiffness() const { return Eigen::MatrixXd(stiffness_); }

  /// K + alpha e_o e_o^T.
  [[nodiscard]] SparseMatrix augmented(double alpha, std::optional<Index> anchor) const;

  /// Max absolute row sum of K, an upper bound on its spectral norm.
  [[nodiscard]] double norm_bound() const noexcept { return norm_bound_; }

  /// Same form with a different measure; K is shared.
  [[nodiscard]] FormMatrix with_measure(MeasureSpace measure) const;

 private:
  FormMatrix() = default;

  std::shared_ptr<const Graph> graph_;
  std::shared_ptr<const MeasureSpace> measure_;
  SparseMatrix stiffness_;
  double norm_bound_ = 0.0;
};

FormMatrix assemble(const Graph& g, const MeasureSpace& ms);

/// Q(f) summed edge by edge: sum_{x<y} b(x,y)|f(x)-f(y)|^2 + sum_x c(x)|f(x)|^2.
double eval_form(const FormMatrix& fm, const VertexFunction& f);
double eval_form(const Graph& g, const VertexFunction& f);

/// ||f||_2^2 in l^2(X, m).
double mass_norm_squared(const MeasureSpace& ms, const VertexFunction& f);

}  // namespace dlab
