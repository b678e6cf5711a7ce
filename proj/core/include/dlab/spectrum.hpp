#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dlab/form.hpp"

namespace dlab {

inline constexpr Index kAllEigenpairs = -1;

struct EigenOptions {
  Index dense_threshold = 3000;  // n above this uses the Krylov path
  Index block_size = 32;
  double ritz_tolerance = 1e-12;  // relative residual of shift-inverted Ritz pairs
  Index max_basis = 4000;         // cap on Krylov basis columns
  std::uint64_t seed = 20170907;
  bool force_krylov = false;
};

/// Ascending eigenvalues of the pencil (K, M) with m-orthonormal eigenvectors.
struct Spectrum {
  Index dimension = 0;
  std::vector<double> lambdas;
  Eigen::MatrixXd vectors;  // column j is phi_{j+1}
  double max_residual = 0.0;  // max_j ||K phi_j - lambda_j M phi_j||
  std::string method;

  [[nodiscard]] Index count() const noexcept { return static_cast<Index>(lambdas.size()); }
  [[nodiscard]] bool complete() const noexcept { return count() == dimension; }
  [[nodiscard]] double lambda(Index k) const { return lambdas.at(static_cast<std::size_t>(k - 1)); }

  /// (1/k) sum_{i<=k} lambda_i for 1-based k.
  [[nodiscard]] double mean_prefix(Index k) const;
  [[nodiscard]] std::vector<double> mean_prefixes() const;
};

/// Lowest k eigenpairs (all when k == kAllEigenpairs).
///
/// Dense path: symmetric eigensolver on M^{-1/2} K M^{-1/2}, scaled entry by
/// entry. Krylov path: block Lanczos with full reorthogonalization on the
/// shift-inverted operator M^{1/2} (K - sigma M)^{-1} M^{1/2}, sigma < 0.
Spectrum eigensolve(const FormMatrix& fm, Index k = kAllEigenpairs, const EigenOptions& options = {});

/// ||K phi - lambda M phi|| for one pair.
double pencil_residual(const FormMatrix& fm, double lambda, const Eigen::VectorXd& phi);

}  // namespace dlab
