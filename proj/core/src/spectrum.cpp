#include "dlab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include "dlab/error.hpp"

namespace dlab {

double Spectrum::mean_prefix(Index k) const {
  if (k < 1 || k > count()) throw Error(ErrorCode::IndexOutOfRange, "mean prefix index " + std::to_string(k));
  double sum = 0.0;
  for (Index i = 0; i < k; ++i) sum += lambdas[static_cast<std::size_t>(i)];
  // the exact mean of k ascending values never exceeds the k-th one
  return std::min(sum / static_cast<double>(k), lambdas[static_cast<std::size_t>(k - 1)]);
}

std::vector<double> Spectrum::mean_prefixes() const {
  std::vector<double> out(lambdas.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    sum += lambdas[i];
    out[i] = std::min(sum / static_cast<double>(i + 1), lambdas[i]);
  }
  return out;
}

double pencil_residual(const FormMatrix& fm, double lambda, const Eigen::VectorXd& phi) {
  const Eigen::VectorXd r = fm.stiffness() * phi - lambda * fm.mass().cwiseProduct(phi);
  return r.norm();
}

namespace {

void finish(const FormMatrix& fm, Spectrum& spec) {
  spec.max_residual = 0.0;
  for (Index j = 0; j < spec.count(); ++j) {
    spec.max_residual = std::max(spec.max_residual,
                                 pencil_residual(fm, spec.lambdas[static_cast<std::size_t>(j)], spec.vectors.col(j)));
  }
}

Spectrum dense_solve(const FormMatrix& fm, Index k) {
  const Index n = fm.size();
  const Eigen::VectorXd inv_sqrt = fm.mass().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd a = fm.dense_stiffness();
  for (Index y = 0; y < n; ++y) {
    for (Index x = 0; x < n; ++x) a(x, y) *= inv_sqrt[x] * inv_sqrt[y];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "dense symmetric eigensolver did not converge");
  }
  Spectrum spec;
  spec.dimension = n;
  spec.method = "dense";
  spec.lambdas.resize(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) {
    // K is positive semidefinite; negative values are roundoff
    spec.lambdas[static_cast<std::size_t>(j)] = std::max(solver.eigenvalues()[j], 0.0);
  }
  spec.vectors = inv_sqrt.asDiagonal() * solver.eigenvectors().leftCols(k);
  finish(fm, spec);
  return spec;
}

/// Block Lanczos with full reorthogonalization for the largest eigenvalues of
/// a symmetric operator given as a callback on blocks.
class BlockLanczos {
 public:
  template <class Apply>
  BlockLanczos(Index n, Index wanted, const EigenOptions& options, Apply&& apply)
      : n_(n), wanted_(wanted), options_(options), rng_(options.seed) {
    const Index block = std::clamp<Index>(options.block_size, 1, n);
    const Index cap = std::min<Index>(n, std::max<Index>(options.max_basis, wanted + block));
    basis_.resize(n, cap);
    image_.resize(n, cap);
    projected_.setZero(cap, cap);

    Eigen::MatrixXd next = random_block(block);
    while (true) {
      next = orthonormal_complement(next);
      if (next.cols() == 0) {
        if (used_ >= n_) break;
        next = orthonormal_complement(random_block(std::min<Index>(block, n_ - used_)));
        if (next.cols() == 0) break;
      }
      const Index take = std::min<Index>(next.cols(), cap - used_);
      if (take <= 0) break;
      const Index start = used_;
      basis_.middleCols(start, take) = next.leftCols(take);
      image_.middleCols(start, take) = apply(basis_.middleCols(start, take));
      used_ += take;
      // new columns of V^T B V
      projected_.block(0, start, used_, take) = basis_.leftCols(used_).transpose() * image_.middleCols(start, take);
      projected_.block(start, 0, take, start) = projected_.block(0, start, start, take).transpose();

      if (used_ >= wanted_ && converged()) return;
      if (used_ >= cap) break;
      next = image_.middleCols(start, take);
    }
    ritz();
    converged_ = used_ >= n_ || max_relative_residual_ <= options_.ritz_tolerance;
  }

  [[nodiscard]] bool converged() {
    ritz();
    converged_ = max_relative_residual_ <= options_.ritz_tolerance || used_ >= n_;
    return converged_;
  }

  [[nodiscard]] bool ok() const noexcept { return converged_; }
  [[nodiscard]] double achieved() const noexcept { return max_relative_residual_; }
  [[nodiscard]] const Eigen::VectorXd& values() const noexcept { return values_; }
  [[nodiscard]] const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }

 private:
  Eigen::MatrixXd random_block(Index cols) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd m(n_, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < n_; ++i) m(i, j) = normal(rng_);
    }
    return m;
  }

  // Orthonormal basis of the part of `w` orthogonal to the current basis;
  // numerically dependent directions are dropped.
  Eigen::MatrixXd orthonormal_complement(Eigen::MatrixXd w) const {
    if (w.cols() == 0) return w;
    const double scale = std::max(w.norm(), 1e-300);
    for (int pass = 0; pass < 2 && used_ > 0; ++pass) {
      w -= basis_.leftCols(used_) * (basis_.leftCols(used_).transpose() * w);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(w);
    qr.setThreshold(1e-10 * scale / std::max(w.norm(), 1e-300));
    const Index rank = std::min<Index>(qr.rank(), n_ - used_);
    if (rank == 0 || w.norm() <= 1e-10 * scale) return Eigen::MatrixXd(n_, 0);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n_, rank);
    for (int pass = 0; pass < 2 && used_ > 0; ++pass) {
      q -= basis_.leftCols(used_) * (basis_.leftCols(used_).transpose() * q);
      Eigen::HouseholderQR<Eigen::MatrixXd> again(q);
      q = again.householderQ() * Eigen::MatrixXd::Identity(n_, rank);
    }
    return q;
  }

  void ritz() {
    const Index m = used_;
    Eigen::MatrixXd h = projected_.topLeftCorner(m, m);
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Index k = std::min(wanted_, m);
    // largest first
    values_.resize(k);
    Eigen::MatrixXd s(m, k);
    for (Index j = 0; j < k; ++j) {
      values_[j] = es.eigenvalues()[m - 1 - j];
      s.col(j) = es.eigenvectors().col(m - 1 - j);
    }
    vectors_ = basis_.leftCols(m) * s;
    const Eigen::MatrixXd images = image_.leftCols(m) * s;
    const double top = values_.size() > 0 ? std::abs(values_[0]) : 1.0;
    max_relative_residual_ = 0.0;
    for (Index j = 0; j < k; ++j) {
      const double r = (images.col(j) - values_[j] * vectors_.col(j)).norm();
      max_relative_residual_ = std::max(max_relative_residual_, r / std::max(top, 1e-300));
    }
    if (k < wanted_) max_relative_residual_ = std::numeric_limits<double>::infinity();
  }

  Index n_;
  Index wanted_;
  EigenOptions options_;
  std::mt19937_64 rng_;
  Index used_ = 0;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd image_;
  Eigen::MatrixXd projected_;
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
  double max_relative_residual_ = std::numeric_limits<double>::infinity();
  bool converged_ = false;
};

Spectrum krylov_solve(const FormMatrix& fm, Index k, const EigenOptions& options) {
  const Index n = fm.size();
  const Eigen::VectorXd mass = fm.mass();
  const Eigen::VectorXd sqrt_mass = mass.cwiseSqrt();
  const SparseMatrix& stiffness = fm.stiffness();

  double scale = 0.0;
  for (Index x = 0; x < n; ++x) scale += stiffness.coeff(x, x) / mass[x];
  scale /= static_cast<double>(n);
  const double shift = -1e-4 * (scale > 0.0 ? scale : 1.0);

  SparseMatrix shifted = stiffness;
  for (Index x = 0; x < n; ++x) shifted.coeffRef(x, x) -= shift * mass[x];
  Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
  if (factor.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "factorization of the shifted pencil failed");
  }

  auto apply = [&](const Eigen::MatrixXd& block) -> Eigen::MatrixXd {
    Eigen::MatrixXd rhs = sqrt_mass.asDiagonal() * block;
    Eigen::MatrixXd sol = factor.solve(rhs);
    return sqrt_mass.asDiagonal() * sol;
  };

  BlockLanczos lanczos(n, k, options, apply);
  if (!lanczos.ok()) {
    throw Error(ErrorCode::ConvergenceFailure,
                "block Lanczos stopped with relative Ritz residual " + std::to_string(lanczos.achieved()));
  }

  Spectrum spec;
  spec.dimension = n;
  spec.method = "krylov";
  spec.vectors.resize(n, k);
  spec.lambdas.resize(static_cast<std::size_t>(k));
  const Eigen::VectorXd inv_sqrt = sqrt_mass.cwiseInverse();
  for (Index j = 0; j < k; ++j) {
    Eigen::VectorXd phi = inv_sqrt.cwiseProduct(lanczos.vectors().col(j));
    phi /= std::sqrt(mass.dot(phi.cwiseProduct(phi)));
    // Rayleigh quotient on the pencil; phi is m-normalized
    const double rq = phi.dot(stiffness * phi);
    spec.lambdas[static_cast<std::size_t>(j)] = std::max(rq, 0.0);
    spec.vectors.col(j) = phi;
  }
  // Rayleigh quotients can reorder nearly equal values
  std::vector<Index> order(static_cast<std::size_t>(k));
  for (Index j = 0; j < k; ++j) order[static_cast<std::size_t>(j)] = j;
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return spec.lambdas[static_cast<std::size_t>(a)] < spec.lambdas[static_cast<std::size_t>(b)];
  });
  Spectrum sorted = spec;
  for (Index j = 0; j < k; ++j) {
    sorted.lambdas[static_cast<std::size_t>(j)] = spec.lambdas[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    sorted.vectors.col(j) = spec.vectors.col(order[static_cast<std::size_t>(j)]);
  }
  finish(fm, sorted);
  if (sorted.max_residual > 1e-8 * fm.norm_bound()) {
    throw Error(ErrorCode::ConvergenceFailure,
                "Krylov eigenpairs reached residual " + std::to_string(sorted.max_residual) +
                    " above 1e-8 ||K|| = " + std::to_string(1e-8 * fm.norm_bound()));
  }
  return sorted;
}

}  // namespace

Spectrum eigensolve(const FormMatrix& fm, Index k, const EigenOptions& options) {
  const Index n = fm.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty graph");
  if (k == kAllEigenpairs) k = n;
  if (k < 1 || k > n) {
    throw Error(ErrorCode::InvalidArgument, "requested " + std::to_string(k) + " eigenpairs of " + std::to_string(n));
  }
  const bool krylov = options.force_krylov || (n > options.dense_threshold && k < n);
  return krylov ? krylov_solve(fm, k, options) : dense_solve(fm, k);
}

}  // namespace dlab
