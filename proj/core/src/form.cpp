#include "dlab/form.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dlab/error.hpp"

namespace dlab {

namespace {

void check_anchor(std::optional<Index> anchor, Index n) {
  if (anchor && (*anchor < 0 || *anchor >= n)) {
    throw Error(ErrorCode::IndexOutOfRange, "anchor vertex " + std::to_string(*anchor));
  }
}

}  // namespace

FormMatrix::FormMatrix(Graph graph, MeasureSpace measure)
    : graph_(std::make_shared<const Graph>(std::move(graph))),
      measure_(std::make_shared<const MeasureSpace>(std::move(measure))) {
  const Graph& g = *graph_;
  if (g.size() != measure_->size()) {
    throw Error(ErrorCode::SizeMismatch, "graph has " + std::to_string(g.size()) +
                                             " vertices, measure has " + std::to_string(measure_->size()));
  }
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * g.edge_count() + static_cast<std::size_t>(g.size()));
  for (Index x = 0; x < g.size(); ++x) {
    entries.emplace_back(x, x, g.degree(x) + g.killing(x));
    double row = g.degree(x) + g.killing(x);
    for (const Neighbor& nb : g.neighbors(x)) {
      entries.emplace_back(x, nb.vertex, -nb.weight);
      row += nb.weight;
    }
    norm_bound_ = std::max(norm_bound_, row);
  }
  stiffness_.resize(g.size(), g.size());
  stiffness_.setFromTriplets(entries.begin(), entries.end());
  stiffness_.makeCompressed();
}

SparseMatrix FormMatrix::augmented(double alpha, std::optional<Index> anchor) const {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
  check_anchor(anchor, size());
  SparseMatrix a = stiffness_;
  if (alpha > 0.0) {
    if (!anchor) throw Error(ErrorCode::InvalidArgument, "alpha > 0 needs an anchor vertex");
    a.coeffRef(*anchor, *anchor) += alpha;
  }
  return a;
}

FormMatrix FormMatrix::with_measure(MeasureSpace measure) const {
  if (measure.size() != size()) throw Error(ErrorCode::SizeMismatch, "measure size differs from graph");
  FormMatrix out;
  out.graph_ = graph_;
  out.measure_ = std::make_shared<const MeasureSpace>(std::move(measure));
  out.stiffness_ = stiffness_;
  out.norm_bound_ = norm_bound_;
  return out;
}

FormMatrix assemble(const Graph& g, const MeasureSpace& ms) { return FormMatrix(g, ms); }

double eval_form(const Graph& g, const VertexFunction& f) {
  if (f.size() != g.size()) throw Error(ErrorCode::SizeMismatch, "function length differs from graph size");
  double energy = 0.0;
  for (Index x = 0; x < g.size(); ++x) {
    for (const Neighbor& nb : g.neighbors(x)) {
      if (nb.vertex > x) {
        const double diff = f[x] - f[nb.vertex];
        energy += nb.weight * diff * diff;
      }
    }
    energy += g.killing(x) * f[x] * f[x];
  }
  return energy;
}

double eval_form(const FormMatrix& fm, const VertexFunction& f) { return eval_form(fm.graph(), f); }

double mass_norm_squared(const MeasureSpace& ms, const VertexFunction& f) {
  if (f.size() != ms.size()) throw Error(ErrorCode::SizeMismatch, "function length differs from measure size");
  double sum = 0.0;
  for (Index x = 0; x < f.size(); ++x) sum += ms[x] * f[x] * f[x];
  return sum;
}

}  // namespace dlab
