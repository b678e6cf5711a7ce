#pragma once

#include <span>
#include <vector>

#include "dlab/graph.hpp"

namespace dlab {

/// Strictly positive vertex measure m with cached total m(X).
class MeasureSpace {
 public:
  MeasureSpace() = default;
  explicit MeasureSpace(std::vector<double> mass);

  static MeasureSpace uniform(Index n, double total = 1.0);

  [[nodiscard]] Index size() const noexcept { return static_cast<Index>(mass_.size()); }
  [[nodiscard]] double operator[](Index x) const { return mass_[static_cast<std::size_t>(x)]; }
  [[nodiscard]] double total() const noexcept { return total_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return mass_; }
  [[nodiscard]] Eigen::Map<const Eigen::VectorXd> vector() const {
    return {mass_.data(), size()};
  }

  /// Sum of m over `subset`.
  [[nodiscard]] double mass_of(std::span<const Index> subset) const;

  /// Measure on `inside`, in subset order.
  [[nodiscard]] MeasureSpace restrict_to(std::span<const Index> inside) const;

  /// Measure of the vertices placed at positions order[i] = x_{i+1}.
  /// m_new(order[i]) = values[i]; this attaches a sequence-defined measure to
  /// an enumeration.
  static MeasureSpace along(std::span<const Index> order, std::span<const double> values);

 private:
  std::vector<double> mass_;
  double total_ = 0.0;
};

}  // namespace dlab
