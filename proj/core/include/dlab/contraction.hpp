#pragma once

#include "dlab/graph.hpp"

namespace dlab {

/// Normal contractions: C(0) = 0 and |C(s) - C(t)| <= |s - t|.
struct NormalContraction {
  enum class Kind { Identity, Clamp01, Abs, TruncateAtLevel };

  Kind kind = Kind::Identity;
  double level = 1.0;  // TruncateAtLevel: s -> sign(s) min(|s|, level), level >= 0

  static NormalContraction identity() { return {Kind::Identity, 0.0}; }
  static NormalContraction clamp01() { return {Kind::Clamp01, 0.0}; }
  static NormalContraction abs() { return {Kind::Abs, 0.0}; }
  static NormalContraction truncate_at(double level);

  [[nodiscard]] double operator()(double s) const noexcept;
};

VertexFunction markov_contract(const VertexFunction& f, const NormalContraction& c);

}  // namespace dlab
