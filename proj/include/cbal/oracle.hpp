#pragma once

#include <eigen3/Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "cbal/sensitivity.hpp"

namespace cbal::oracle {

/// Tolerances for analytic-vs-numeric agreement. Entries whose analytic
/// magnitude exceeds kRelFloor compare relatively, the rest absolutely.
constexpr double kRelTol = 1e-6;
constexpr double kAbsTol = 1e-12;
constexpr double kRelFloor = 1e-9;
constexpr double kDefaultStep = 1e-7;

/// Equilibrium computed independently of the production solver: extended
/// precision elimination on the transposed system with the first equation
/// replaced by the normalization constraint.
Eigen::VectorXd reference_equilibrium(const Eigen::MatrixXd& P);

/// Four-entry trade war update at signed step h: P(j,i) += h, P(j,j) -= h,
/// P(i,j) += lambda h, P(i,i) -= lambda h. Row sums are untouched. Raises
/// step_too_large if a touched entry leaves [0, 1].
Eigen::MatrixXd perturb_tradewar(const Eigen::MatrixXd& P, int i, int j,
                                 double lambda, double h);

/// P + h * direction, raising step_too_large if any entry leaves [0, 1].
Eigen::MatrixXd perturb_direction(const Eigen::MatrixXd& P,
                                  const Eigen::MatrixXd& direction, double h);

/// Self-exposure perturbation for actor i: P + h * M(lambdas).
Eigen::MatrixXd perturb_globalization(const Eigen::MatrixXd& P, int i,
                                      const Eigen::VectorXd& lambdas,
                                      double h);

/// Largest step <= h0 keeping every touched entry at least ten steps away
/// from the [0, 1] boundary; 0 when an entry already sits on it.
double pick_step_tradewar(const Eigen::MatrixXd& P, int i, int j,
                          double lambda, double h0 = kDefaultStep);
double pick_step_direction(const Eigen::MatrixXd& P,
                           const Eigen::MatrixXd& direction,
                           double h0 = kDefaultStep);

/// Central difference (pi(P + hD) - pi(P - hD)) / (2h). Both equilibria
/// and their difference are evaluated in extended precision so the result
/// is limited by truncation, not cancellation.
Eigen::VectorXd fd_derivative(const Eigen::MatrixXd& P,
                              const Eigen::MatrixXd& direction, double h);

struct Comparison {
  double max_rel_err = 0.0;
  double max_abs_err = 0.0;
  int worst_entry = -1;
  bool pass = true;
};

/// Entrywise hybrid comparison of an analytic against a numeric vector.
Comparison compare(const Eigen::VectorXd& analytic,
                   const Eigen::VectorXd& numeric);

struct OracleCase {
  std::string description;
  bool skipped = false;
  std::string reason;  // skip reason or refinement note
  double h = 0.0;
  Comparison cmp;
  bool pass = true;
};

struct OracleReport {
  std::vector<OracleCase> cases;
  int checked = 0;
  int failures = 0;
  int skipped = 0;
  bool pass = true;
  double worst_rel = 0.0;
  double worst_abs = 0.0;
};

struct VerifyOptions {
  std::vector<ReactionRule> rules;  // empty -> {0, gdp, authority, 2.5}
  std::uint64_t seed = 91;
  int random_instances = 12;
  std::vector<int> random_sizes = {3, 5, 10};
  int max_pairs = 48;    // trade-war pairs sampled per matrix
  int max_actors = 16;   // globalization actors sampled per matrix
  double h0 = kDefaultStep;
  /// Retry a failing case once with Richardson extrapolation before
  /// reporting it; covers steep third derivatives at large lambda.
  bool refine = true;
  std::vector<std::string> labels;  // country names for case descriptions
};

/// Sweeps trade-war and self-exposure derivatives on the given matrix plus
/// seeded random instances, comparing the analytic formulas against the
/// reference finite differences. Matrices that are not strongly connected
/// are skipped with a reason rather than failed.
OracleReport verify_all(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi,
                        const Eigen::VectorXd& gdp,
                        const VerifyOptions& options = {});

/// Random strongly connected exposure matrix: positive diagonal in
/// [0.3, 0.85], dense positive off-diagonal entries.
Eigen::MatrixXd random_exposure_matrix(std::mt19937_64& rng, int n);

/// Random GDP vector with ratios bounded by 4.
Eigen::VectorXd random_gdp(std::mt19937_64& rng, int n);

}  // namespace cbal::oracle
