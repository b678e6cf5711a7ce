#include "dlab/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <vector>

#include <Eigen/SparseCholesky>

#include "dlab/error.hpp"

namespace dlab {

std::string_view to_string(EstimateKind kind) noexcept {
  switch (kind) {
    case EstimateKind::Exact: return "EXACT";
    case EstimateKind::Lower: return "LOWER";
    case EstimateKind::Upper: return "UPPER";
  }
  return "UNKNOWN";
}

namespace {

using Factor = Eigen::SimplicialLDLT<SparseMatrix>;

// Pivots below this fraction of the largest one mean the augmented form has
// a (numerical) null vector.
constexpr double kPivotFloor = 1e-12;

std::unique_ptr<Factor> factorize(const SparseMatrix& a) {
  auto f = std::make_unique<Factor>(a);
  if (f->info() != Eigen::Success) {
    throw Error(ErrorCode::SingularForm, "factorization of the augmented form failed");
  }
  const Eigen::VectorXd d = f->vectorD();
  const double top = d.cwiseAbs().maxCoeff();
  if (!(d.minCoeff() > kPivotFloor * top)) {
    throw Error(ErrorCode::SingularForm,
                "augmented form is not positive definite; add killing, a Dirichlet boundary or alpha > 0");
  }
  return f;
}

double augmented_energy(const FormMatrix& fm, const VertexFunction& u, double alpha, std::optional<Index> anchor) {
  double e = eval_form(fm, u);
  if (alpha > 0.0 && anchor) e += alpha * u[*anchor] * u[*anchor];
  return e;
}

void check_exponent(double p) {
  if (!(p > 2.0)) throw Error(ErrorCode::InvalidArgument, "Sobolev exponent must lie in (2, inf]");
}

struct RunResult {
  double ratio = 0.0;
  VertexFunction u;
  bool converged = false;
  int steps = 0;
};

// One fixed-point run from a nonnegative start. Replacing u by |u| never
// lowers the ratio (normal contraction), so iterates are kept nonnegative.
RunResult climb(const FormMatrix& fm, const Factor& factor, VertexFunction u, double p, double alpha,
                std::optional<Index> anchor, const SobolevOptions& options) {
  const Eigen::VectorXd mass = fm.mass();
  RunResult best;
  best.u = u.cwiseAbs();
  best.ratio = sobolev_ratio(fm, best.u, p, alpha, anchor);
  VertexFunction current = best.u;
  double previous = best.ratio;
  for (int step = 1; step <= options.max_steps; ++step) {
    const double scale = current.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) break;
    const Eigen::VectorXd drive = mass.cwiseProduct((current.cwiseAbs() / scale).array().pow(p - 1.0).matrix());
    VertexFunction next = factor.solve(drive);
    next = next.cwiseAbs();
    const double top = next.maxCoeff();
    if (!(top > 0.0) || !std::isfinite(top)) break;
    next /= top;
    const double r = sobolev_ratio(fm, next, p, alpha, anchor);
    best.steps = step;
    if (r > best.ratio) {
      best.ratio = r;
      best.u = next;
    }
    if (r - previous < options.improvement_tolerance * std::abs(previous)) {
      best.converged = true;
      break;
    }
    previous = r;
    current = std::move(next);
  }
  return best;
}

// Relative residual of the first-order condition
// R (K + alpha e_o e_o^T) u = ||u||_p^{2-p} m |u|^{p-2} u.
double stationarity(const FormMatrix& fm, const SparseMatrix& a, const VertexFunction& u, double p, double ratio) {
  const double norm = lp_norm(fm.measure(), u, p);
  if (!(norm > 0.0)) return 0.0;
  const Eigen::VectorXd lhs = ratio * (a * u);
  const Eigen::VectorXd scaled = u / norm;
  const Eigen::VectorXd rhs =
      norm * fm.mass().cwiseProduct((scaled.cwiseAbs().array().pow(p - 2.0) * scaled.array()).matrix());
  const double denom = std::max(lhs.norm(), rhs.norm());
  return denom > 0.0 ? (lhs - rhs).norm() / denom : 0.0;
}

}  // namespace

double lp_norm(const MeasureSpace& ms, const VertexFunction& u, double p) {
  if (u.size() != ms.size()) throw Error(ErrorCode::SizeMismatch, "function length differs from measure size");
  if (u.size() == 0) return 0.0;
  const double top = u.cwiseAbs().maxCoeff();
  if (std::isinf(p) || top == 0.0) return top;
  double sum = 0.0;
  for (Index x = 0; x < u.size(); ++x) sum += ms[x] * std::pow(std::abs(u[x]) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double sobolev_ratio(const FormMatrix& fm, const VertexFunction& u, double p, double alpha,
                     std::optional<Index> anchor) {
  const double norm = lp_norm(fm.measure(), u, p);
  return norm * norm / augmented_energy(fm, u, alpha, anchor);
}

SobolevEstimate sobolev_infty(const FormMatrix& fm, double alpha, std::optional<Index> anchor) {
  const SparseMatrix a = fm.augmented(alpha, anchor);
  const auto factor = factorize(a);
  const Index n = fm.size();

  constexpr Index kBlock = 64;
  double best = -1.0;
  Index argmax = -1;
  for (Index start = 0; start < n; start += kBlock) {
    const Index width = std::min(kBlock, n - start);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, width);
    for (Index j = 0; j < width; ++j) rhs(start + j, j) = 1.0;
    const Eigen::MatrixXd green = factor->solve(rhs);
    for (Index j = 0; j < width; ++j) {
      const double g = green(start + j, j);
      if (g > best) {
        best = g;
        argmax = start + j;
      }
    }
  }

  Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
  unit[argmax] = 1.0;
  SobolevEstimate est;
  est.p = kInfinity;
  est.alpha = alpha;
  est.anchor = anchor;
  est.kind = EstimateKind::Exact;
  est.value = best;
  est.maximizer = argmax;
  est.witness = factor->solve(unit);
  return est;
}

SobolevEstimate sobolev_p(const FormMatrix& fm, double p, double alpha, std::optional<Index> anchor,
                          const SobolevOptions& options) {
  check_exponent(p);
  if (std::isinf(p)) throw Error(ErrorCode::InvalidArgument, "use sobolev_infty for p = inf");
  if (options.restarts < 1) throw Error(ErrorCode::InvalidArgument, "sobolev_p needs restarts >= 1");
  const SparseMatrix a = fm.augmented(alpha, anchor);
  const auto factor = factorize(a);
  const Index n = fm.size();

  std::vector<VertexFunction> starts;
  starts.push_back(sobolev_infty(fm, alpha, anchor).witness);
  {
    Index hot = 0;
    double hot_ratio = -1.0;
    for (Index x = 0; x < n; ++x) {
      const double r = std::pow(fm.measure()[x], 2.0 / p) / a.coeff(x, x);
      if (r > hot_ratio) {
        hot_ratio = r;
        hot = x;
      }
    }
    starts.push_back(VertexFunction::Unit(n, hot));
  }
  for (int r = 0; r < options.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    VertexFunction u(n);
    for (Index x = 0; x < n; ++x) u[x] = uniform(rng) + 1e-3;
    starts.push_back(std::move(u));
  }

  std::vector<RunResult> runs(starts.size());
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) runs[i] = climb(fm, *factor, starts[i], p, alpha, anchor, options);
  } else {
    std::vector<std::future<void>> pending;
    for (unsigned t = 0; t < threads; ++t) {
      pending.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < starts.size(); i += threads) {
          runs[i] = climb(fm, *factor, starts[i], p, alpha, anchor, options);
        }
      }));
    }
    for (auto& f : pending) f.get();
  }

  // merge by maximum; ties keep the earliest start
  std::size_t winner = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].ratio > runs[winner].ratio) winner = i;
  }

  SobolevEstimate est;
  est.p = p;
  est.alpha = alpha;
  est.anchor = anchor;
  est.kind = EstimateKind::Lower;
  est.witness = runs[winner].u;
  est.value = sobolev_ratio(fm, est.witness, p, alpha, anchor);
  est.converged = runs[winner].converged;
  est.iterations = runs[winner].steps;
  est.seed = options.seed;
  est.stationarity_residual = stationarity(fm, a, est.witness, p, est.value);
  est.note = est.converged ? "fixed point reached" : "step limit reached; best value so far";
  return est;
}

SobolevEstimate sobolev_upper(const SobolevEstimate& s_inf, const MeasureSpace& ms, double p) {
  if (s_inf.kind != EstimateKind::Exact || !std::isinf(s_inf.p) || s_inf.alpha != 0.0) {
    throw Error(ErrorCode::WrongKind, "upper bound needs an EXACT l^inf constant with alpha = 0");
  }
  check_exponent(p);
  SobolevEstimate est;
  est.p = p;
  est.alpha = 0.0;
  est.kind = EstimateKind::Upper;
  est.value = std::isinf(p) ? s_inf.value : s_inf.value * std::pow(ms.total(), 2.0 / p);
  est.note = "S_inf * m(X)^(2/p)";
  return est;
}

}  // namespace dlab
