#include "dlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dlab/error.hpp"

namespace dlab {

namespace {

std::int64_t checked_power(std::int64_t base, int exponent, std::int64_t cap) {
  std::int64_t v = 1;
  for (int i = 0; i < exponent; ++i) {
    if (v > cap / base) {
      throw Error(ErrorCode::SizeOverflow, std::to_string(base) + "^" + std::to_string(exponent) +
                                               " vertices exceed cap " + std::to_string(cap));
    }
    v *= base;
  }
  if (v > cap) throw Error(ErrorCode::SizeOverflow, "vertex count exceeds cap " + std::to_string(cap));
  return v;
}

std::vector<Index> first_indices(Index count) {
  std::vector<Index> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

}  // namespace

LatticeBall lattice_ball(int d, int r, std::int64_t vertex_cap) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "lattice dimension must be >= 1");
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "lattice radius must be >= 0");
  const std::int64_t side = 2 * static_cast<std::int64_t>(r) + 1;
  const std::int64_t n = checked_power(side, d, vertex_cap);

  LatticeBall ball;
  ball.coords.reserve(static_cast<std::size_t>(n));
  std::vector<int> point(static_cast<std::size_t>(d), -r);
  for (std::int64_t i = 0; i < n; ++i) {
    ball.coords.push_back(point);
    ball.index_of.emplace(point, static_cast<Index>(i));
    for (int axis = d - 1; axis >= 0; --axis) {
      auto& c = point[static_cast<std::size_t>(axis)];
      if (c < r) {
        ++c;
        break;
      }
      c = -r;
    }
  }

  // stride of axis a is side^(d-1-a)
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  for (int axis = d - 2; axis >= 0; --axis) {
    stride[static_cast<std::size_t>(axis)] = stride[static_cast<std::size_t>(axis) + 1] * side;
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& p = ball.coords[static_cast<std::size_t>(i)];
    for (int axis = 0; axis < d; ++axis) {
      if (p[static_cast<std::size_t>(axis)] < r) {
        edges.push_back({static_cast<Index>(i), static_cast<Index>(i + stride[static_cast<std::size_t>(axis)]), 1.0});
      }
    }
  }
  ball.graph = Graph::build(static_cast<Index>(n), edges);
  return ball;
}

LatticeBall lattice_section(int d, int r, BoundaryMode mode, std::int64_t vertex_cap) {
  LatticeBall inner = lattice_ball(d, r, vertex_cap);
  const LatticeBall outer = lattice_ball(d, r + 1, std::numeric_limits<std::int64_t>::max());
  std::vector<Index> inside;
  inside.reserve(inner.coords.size());
  for (const auto& p : inner.coords) inside.push_back(outer.index_of.at(p));
  inner.graph = truncate(outer.graph, inside, mode);
  return inner;
}

Graph binary_tree(int depth, std::int64_t vertex_cap) {
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "tree depth must be >= 0");
  if (depth > 61) throw Error(ErrorCode::SizeOverflow, "tree depth too large");
  const std::int64_t n = (std::int64_t{1} << (depth + 1)) - 1;
  if (n > vertex_cap) {
    throw Error(ErrorCode::SizeOverflow, std::to_string(n) + " vertices exceed cap " + std::to_string(vertex_cap));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (std::int64_t child = 1; child < n; ++child) {
    edges.push_back({static_cast<Index>((child - 1) / 2), static_cast<Index>(child), 1.0});
  }
  return Graph::build(static_cast<Index>(n), edges);
}

Graph binary_tree_section(int depth, BoundaryMode mode, std::int64_t vertex_cap) {
  const Index inner = binary_tree(depth, vertex_cap).size();
  const Graph outer = binary_tree(depth + 1, std::numeric_limits<std::int64_t>::max());
  return truncate(outer, first_indices(inner), mode);
}

MeasureSpace normalizing_measure(const Graph& g) {
  for (Index x = 0; x < g.size(); ++x) {
    if (!(g.degree(x) > 0.0)) {
      throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(x) + " has no edges");
    }
  }
  return MeasureSpace(g.degrees());
}

double Sequence::at(std::int64_t k) const {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "sequences are 1-based");
  const auto kd = static_cast<double>(k);
  switch (kind) {
    case Kind::Explicit:
      if (k > static_cast<std::int64_t>(values.size())) {
        throw Error(ErrorCode::SizeMismatch, "explicit sequence has only " +
                                                 std::to_string(values.size()) + " entries");
      }
      return values[static_cast<std::size_t>(k - 1)];
    case Kind::Linear: return parameter * kd;
    case Kind::Geometric: return std::pow(parameter, kd);
    case Kind::Polynomial: return std::pow(kd, parameter);
  }
  return 0.0;
}

std::vector<double> Sequence::take(std::int64_t count) const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t k = 1; k <= count; ++k) out.push_back(at(k));
  return out;
}

MeasureSpace telescoping_measure(std::span<const double> a, Index n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "telescoping measure needs n >= 1");
  if (static_cast<Index>(a.size()) < n + 1) {
    throw Error(ErrorCode::SizeMismatch, "telescoping measure of length " + std::to_string(n) +
                                             " needs " + std::to_string(n + 1) + " sequence entries");
  }
  for (Index j = 0; j <= n; ++j) {
    const double aj = a[static_cast<std::size_t>(j)];
    if (!(aj > 0.0) || !std::isfinite(aj)) {
      throw Error(ErrorCode::NonIncreasingSequence, "a_" + std::to_string(j + 1) + " must be positive");
    }
    if (j > 0 && !(aj > a[static_cast<std::size_t>(j) - 1])) {
      throw Error(ErrorCode::NonIncreasingSequence,
                  "a_" + std::to_string(j + 1) + " <= a_" + std::to_string(j) + " gives m <= 0");
    }
  }
  const double a1 = a[0];
  std::vector<double> m(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < m.size(); ++j) {
    // a1^2 (1/a_j^2 - 1/a_{j+1}^2) without the cancellation of the difference form
    const double lo = a[j];
    const double hi = a[j + 1];
    const double ratio = (a1 / lo) * (a1 / hi);
    m[j] = ratio * ((hi - lo) / lo) * ((hi + lo) / hi);
  }
  return MeasureSpace(std::move(m));
}

MeasureSpace telescoping_measure(const Sequence& a, Index n) {
  const auto values = a.take(n + 1);
  return telescoping_measure(values, n);
}

double telescoping_tail(const Sequence& a, std::int64_t k) {
  const double a1 = a.at(1);
  const double ak1 = a.at(k + 1);
  return (a1 / ak1) * (a1 / ak1);
}

MeasureSpace power_measure(Index n, double eps) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "power measure needs n >= 1");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "power measure needs eps > 0");
  std::vector<double> m(static_cast<std::size_t>(n));
  const double exponent = -(1.0 + eps / 2.0);
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = std::pow(static_cast<double>(j + 1), exponent);
  return MeasureSpace(std::move(m));
}

std::vector<double> mu_comparison(const Graph& g, const MeasureSpace& ms) {
  if (g.size() != ms.size()) throw Error(ErrorCode::SizeMismatch, "graph and measure sizes differ");
  const double twice_bound = 2.0 * g.degree_bound();
  std::vector<double> mu(static_cast<std::size_t>(g.size()));
  for (Index x = 0; x < g.size(); ++x) mu[static_cast<std::size_t>(x)] = twice_bound / ms[x];
  std::sort(mu.begin(), mu.end());
  return mu;
}

}  // namespace dlab
