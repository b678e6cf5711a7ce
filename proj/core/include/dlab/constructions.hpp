#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dlab/graph.hpp"
#include "dlab/measure.hpp"

namespace dlab {

inline constexpr std::int64_t kDefaultVertexCap = std::int64_t{1} << 22;

struct LatticeBall {
  Graph graph;
  std::vector<std::vector<int>> coords;           // index -> lattice point
  std::map<std::vector<int>, Index> index_of;     // lattice point -> index
};

/// Points of Z^d with sup-norm <= r, unit weights between nearest neighbors,
/// c = 0. Indices are lexicographic in the coordinates, last one fastest.
LatticeBall lattice_ball(int d, int r, std::int64_t vertex_cap = kDefaultVertexCap);

/// The same ball seen as a finite section of the infinite lattice: Dirichlet
/// mode adds 2d - deg(x) to the killing term of each vertex.
LatticeBall lattice_section(int d, int r, BoundaryMode mode,
                            std::int64_t vertex_cap = kDefaultVertexCap);

/// Rooted full binary tree with 2^(depth+1) - 1 vertices in breadth-first
/// order; children of i are 2i+1 and 2i+2. Unit weights, c = 0.
Graph binary_tree(int depth, std::int64_t vertex_cap = kDefaultVertexCap);

/// First depth+1 levels of the infinite rooted binary tree. In Dirichlet mode
/// each leaf carries killing 2 for its two missing children.
Graph binary_tree_section(int depth, BoundaryMode mode,
                          std::int64_t vertex_cap = kDefaultVertexCap);

/// m(x) = deg(x).
MeasureSpace normalizing_measure(const Graph& g);

/// Closed-form positive sequences a_1, a_2, ...
struct Sequence {
  enum class Kind { Explicit, Linear, Geometric, Polynomial };

  Kind kind = Kind::Linear;
  double parameter = 1.0;       // Linear: slope; Geometric: ratio; Polynomial: exponent
  std::vector<double> values;   // Explicit

  static Sequence linear(double slope = 1.0) { return {Kind::Linear, slope, {}}; }
  static Sequence geometric(double ratio) { return {Kind::Geometric, ratio, {}}; }
  static Sequence polynomial(double exponent) { return {Kind::Polynomial, exponent, {}}; }
  static Sequence explicit_values(std::vector<double> v) { return {Kind::Explicit, 0.0, std::move(v)}; }

  /// a_k for 1-based k.
  [[nodiscard]] double at(std::int64_t k) const;
  /// a_1 .. a_count.
  [[nodiscard]] std::vector<double> take(std::int64_t count) const;
};

/// m(x_j) = a_1^2 (1/a_j^2 - 1/a_{j+1}^2) for j = 1..n; consumes a_1..a_{n+1}.
/// Storage index j-1 holds x_j.
MeasureSpace telescoping_measure(std::span<const double> a, Index n);
MeasureSpace telescoping_measure(const Sequence& a, Index n);

/// m(X \ {x_1..x_k}) for the infinite telescoping measure: a_1^2 / a_{k+1}^2.
double telescoping_tail(const Sequence& a, std::int64_t k);

/// m(x_j) = j^-(1 + eps/2), j = 1..n.
MeasureSpace power_measure(Index n, double eps);

/// Sorted values 2D / m(x), D = g.degree_bound(). These are the eigenvalues of
/// multiplication by 2D/m, which dominates the form on every finite section.
std::vector<double> mu_comparison(const Graph& g, const MeasureSpace& ms);

}  // namespace dlab
