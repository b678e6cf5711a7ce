#include "dlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "dlab/error.hpp"

namespace dlab {

namespace {

struct Directed {
  Index from;
  Index to;
  double weight;
};

void check_vertex(Index v, Index n) {
  if (v < 0 || v >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                "vertex " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
  }
}

// Builds compressed rows from a directed entry list. Entries with equal
// (from, to) are summed in their original order, so both orientations of an
// undirected edge accumulate identical sequences.
void compress(Index n, std::vector<Directed>& entries, std::vector<std::size_t>& offsets,
              std::vector<Neighbor>& neighbors, std::vector<double>& degree) {
  std::stable_sort(entries.begin(), entries.end(), [](const Directed& a, const Directed& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  neighbors.clear();
  degree.assign(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < entries.size();) {
    const Directed& head = entries[i];
    double w = 0.0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].from == head.from && entries[j].to == head.to; ++j) {
      w += entries[j].weight;
    }
    neighbors.push_back({head.to, w});
    ++offsets[static_cast<std::size_t>(head.from) + 1];
    i = j;
  }
  for (std::size_t x = 0; x < static_cast<std::size_t>(n); ++x) {
    offsets[x + 1] += offsets[x];
  }
  for (std::size_t x = 0; x < static_cast<std::size_t>(n); ++x) {
    double d = 0.0;
    for (std::size_t e = offsets[x]; e < offsets[x + 1]; ++e) d += neighbors[e].weight;
    degree[x] = d;
  }
}

}  // namespace

Graph Graph::build(Index n, std::span<const Edge> edges, std::vector<double> killing) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  if (killing.empty()) killing.assign(static_cast<std::size_t>(n), 0.0);
  if (static_cast<Index>(killing.size()) != n) {
    throw Error(ErrorCode::SizeMismatch, "killing has " + std::to_string(killing.size()) +
                                             " entries for " + std::to_string(n) + " vertices");
  }
  for (std::size_t x = 0; x < killing.size(); ++x) {
    if (!(killing[x] >= 0.0) || !std::isfinite(killing[x])) {
      throw Error(ErrorCode::NegativeWeight, "killing term at vertex " + std::to_string(x) +
                                                 " must be finite and nonnegative");
    }
  }

  std::vector<Directed> entries;
  entries.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    check_vertex(e.x, n);
    check_vertex(e.y, n);
    if (e.x == e.y) throw Error(ErrorCode::SelfLoop, "edge at vertex " + std::to_string(e.x));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NegativeWeight, "edge (" + std::to_string(e.x) + ", " +
                                                 std::to_string(e.y) +
                                                 ") needs a finite positive weight");
    }
    entries.push_back({e.x, e.y, e.weight});
    entries.push_back({e.y, e.x, e.weight});
  }

  Graph g;
  compress(n, entries, g.offsets_, g.neighbors_, g.degree_);
  g.killing_ = std::move(killing);
  return g;
}

std::span<const Neighbor> Graph::neighbors(Index x) const {
  check_vertex(x, size());
  const auto i = static_cast<std::size_t>(x);
  return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

double Graph::weight(Index x, Index y) const {
  check_vertex(y, size());
  const auto row = neighbors(x);
  const auto it = std::lower_bound(row.begin(), row.end(), y,
                                   [](const Neighbor& nb, Index v) { return nb.vertex < v; });
  return (it != row.end() && it->vertex == y) ? it->weight : 0.0;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Index x = 0; x < size(); ++x) {
    for (const Neighbor& nb : neighbors(x)) {
      if (x < nb.vertex) out.push_back({x, nb.vertex, nb.weight});
    }
  }
  return out;
}

double Graph::own_degree_bound() const noexcept {
  double bound = 0.0;
  for (std::size_t x = 0; x < degree_.size(); ++x) bound = std::max(bound, degree_[x] + killing_[x]);
  return bound;
}

double Graph::degree_bound() const noexcept {
  return parent_bound_ ? *parent_bound_ : own_degree_bound();
}

bool Graph::killing_free() const noexcept {
  return std::all_of(killing_.begin(), killing_.end(), [](double c) { return c == 0.0; });
}

Graph Graph::with_degree_bound(double bound) const {
  if (!(bound >= own_degree_bound()) || !std::isfinite(bound)) {
    throw Error(ErrorCode::InvalidArgument, "degree bound " + std::to_string(bound) +
                                                " is below max deg + c = " + std::to_string(own_degree_bound()));
  }
  Graph out = *this;
  out.parent_bound_ = bound;
  return out;
}

Graph truncate(const Graph& g, std::span<const Index> inside, BoundaryMode mode) {
  if (inside.empty()) throw Error(ErrorCode::EmptySubset, "truncation needs at least one vertex");
  const Index n = g.size();
  std::vector<Index> local(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < inside.size(); ++i) {
    check_vertex(inside[i], n);
    auto& slot = local[static_cast<std::size_t>(inside[i])];
    if (slot >= 0) {
      throw Error(ErrorCode::DuplicateVertex, "vertex " + std::to_string(inside[i]) +
                                                  " listed twice in truncation subset");
    }
    slot = static_cast<Index>(i);
  }

  const auto m = static_cast<Index>(inside.size());
  std::vector<Directed> entries;
  std::vector<double> killing(inside.size());
  for (Index i = 0; i < m; ++i) {
    const Index x = inside[static_cast<std::size_t>(i)];
    double boundary = 0.0;
    for (const Neighbor& nb : g.neighbors(x)) {
      const Index j = local[static_cast<std::size_t>(nb.vertex)];
      if (j >= 0) {
        entries.push_back({i, j, nb.weight});
      } else {
        boundary += nb.weight;
      }
    }
    killing[static_cast<std::size_t>(i)] =
        mode == BoundaryMode::Dirichlet ? g.killing(x) + boundary : g.killing(x);
  }

  Graph out;
  compress(m, entries, out.offsets_, out.neighbors_, out.degree_);
  out.killing_ = std::move(killing);
  out.parent_bound_ = g.degree_bound();
  return out;
}

VertexFunction extend_by_zero(const VertexFunction& f, std::span<const Index> inside, Index parent_size) {
  if (f.size() != static_cast<Index>(inside.size())) {
    throw Error(ErrorCode::SizeMismatch, "function length differs from subset size");
  }
  VertexFunction out = VertexFunction::Zero(parent_size);
  for (std::size_t i = 0; i < inside.size(); ++i) {
    check_vertex(inside[i], parent_size);
    out[inside[i]] = f[static_cast<Index>(i)];
  }
  return out;
}

std::vector<Index> bfs_order(const Graph& g, Index root) {
  const Index n = g.size();
  if (n == 0) return {};
  check_vertex(root, n);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Index> order;
  order.reserve(static_cast<std::size_t>(n));
  auto sweep = [&](Index start) {
    std::deque<Index> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!queue.empty()) {
      const Index x = queue.front();
      queue.pop_front();
      order.push_back(x);
      for (const Neighbor& nb : g.neighbors(x)) {
        if (!seen[static_cast<std::size_t>(nb.vertex)]) {
          seen[static_cast<std::size_t>(nb.vertex)] = 1;
          queue.push_back(nb.vertex);
        }
      }
    }
  };
  sweep(root);
  for (Index x = 0; x < n; ++x) {
    if (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = 1;
      order.push_back(x);
    }
  }
  return order;
}

}  // namespace dlab
