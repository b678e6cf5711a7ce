#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace dlab {

using Index = Eigen::Index;
using VertexFunction = Eigen::VectorXd;

struct Edge {
  Index x;
  Index y;
  double weight;
};

enum class BoundaryMode { Dirichlet, Neumann };

struct Neighbor {
  Index vertex;
  double weight;
};

/// Weighted graph (b, c) on vertices 0..n-1.
///
/// Edge weights are held in compressed rows sorted by neighbor index and
/// are stored for both orientations with bit-identical values. Instances
/// are immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Symmetrizes `edges` (duplicates are summed in listing order) and
  /// validates them. An empty `killing` means c = 0.
  static Graph build(Index n, std::span<const Edge> edges, std::vector<double> killing = {});

  [[nodiscard]] Index size() const noexcept { return static_cast<Index>(degree_.size()); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  [[nodiscard]] std::span<const Neighbor> neighbors(Index x) const;
  [[nodiscard]] double weight(Index x, Index y) const;
  [[nodiscard]] double degree(Index x) const { return degree_[static_cast<std::size_t>(x)]; }
  [[nodiscard]] double killing(Index x) const { return killing_[static_cast<std::size_t>(x)]; }
  [[nodiscard]] const std::vector<double>& degrees() const noexcept { return degree_; }
  [[nodiscard]] const std::vector<double>& killings() const noexcept { return killing_; }

  /// Undirected edge list with x < y, ordered by (x, y).
  [[nodiscard]] std::vector<Edge> edges() const;

  /// max_x deg(x) + c(x). For a truncation this is inherited from the parent.
  [[nodiscard]] double degree_bound() const noexcept;
  [[nodiscard]] bool has_parent_bound() const noexcept { return parent_bound_.has_value(); }
  [[nodiscard]] double own_degree_bound() const noexcept;

  [[nodiscard]] bool killing_free() const noexcept;

  /// Copy that reports `bound` as its degree bound (a section of a larger
  /// graph whose max deg + c is known). Must dominate the own bound.
  [[nodiscard]] Graph with_degree_bound(double bound) const;

 private:
  friend Graph truncate(const Graph&, std::span<const Index>, BoundaryMode);

  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> neighbors_;
  std::vector<double> degree_;
  std::vector<double> killing_;
  std::optional<double> parent_bound_;
};

/// Restriction of `g` to `inside` (result vertex i is inside[i]).
/// Dirichlet mode folds edges leaving `inside` into the killing term,
/// Neumann mode drops them.
Graph truncate(const Graph& g, std::span<const Index> inside, BoundaryMode mode);

/// Extends a function on `inside` by zero to all of `parent_size` vertices.
VertexFunction extend_by_zero(const VertexFunction& f, std::span<const Index> inside, Index parent_size);

/// Breadth-first order from `root`, neighbors visited by index. Vertices not
/// reachable from `root` follow in index order.
std::vector<Index> bfs_order(const Graph& g, Index root = 0);

}  // namespace dlab
