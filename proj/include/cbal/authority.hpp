#pragma once

#include <eigen3/Eigen/Dense>

namespace cbal {

enum class SolveMethod { direct, power_iteration };

struct AuthorityOptions {
  SolveMethod method = SolveMethod::direct;
  /// Successive-change stopping tolerance for power iteration.
  double tol = 1e-14;
  int max_iterations = 100000;
};

/// Long-run authority shares: the row vector fixed under x = xP,
/// nonnegative with unit sum.
struct AuthorityVector {
  Eigen::VectorXd pi;
  double residual = 0.0;  // ||x P - x||_inf of the returned vector
  int iterations = 0;     // 0 for the direct method
};

/// Raises unless P is square with entries in [0, 1] and every row sums to 1
/// within 1e-12.
void validate_exposure_matrix(const Eigen::MatrixXd& P);

/// Solves x = xP, sum(x) = 1. The direct method replaces the last equation
/// of the transposed system with the normalization constraint; power
/// iteration repeats x <- xP with renormalization. Raises singular_system
/// when the fixed point is not unique (e.g. several closed trade blocs)
/// and no_convergence when iteration stalls.
AuthorityVector authority_distribution(const Eigen::MatrixXd& P,
                                       const AuthorityOptions& options = {});

struct RatioPair {
  double authority_ratio;  // pi_j / pi_i
  double gdp_ratio;        // gdp_j / gdp_i
};

/// Pairwise standing of partner j relative to actor i. Raises same_country
/// when i == j.
RatioPair ratios(const Eigen::VectorXd& pi, const Eigen::VectorXd& gdp, int i,
                 int j);

}  // namespace cbal
