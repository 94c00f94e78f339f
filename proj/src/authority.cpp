#include "cbal/authority.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "cbal/errors.hpp"
#include "cbal/trade_matrix.hpp"

namespace cbal {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kNegativeClamp = 1e-13;

double fixed_point_residual(const Eigen::MatrixXd& P,
                            const Eigen::VectorXd& x) {
  return (P.transpose() * x - x).lpNorm<Eigen::Infinity>();
}

// Clamps roundoff negatives and renormalizes to unit sum.
Eigen::VectorXd finalize(Eigen::VectorXd x) {
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) < 0.0) {
      if (x(i) < -kNegativeClamp)
        raise(errc::singular_system,
              "equilibrium solve produced a negative share");
      x(i) = 0.0;
    }
  }
  double sum = x.sum();
  if (!(sum > 0.0))
    raise(errc::singular_system, "equilibrium solve produced a zero vector");
  return x / sum;
}

AuthorityVector solve_direct(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-13) || lu.rcond() < 1e-14)
    raise(errc::singular_system,
          "fixed point system is numerically singular");
  Eigen::VectorXd x = lu.solve(b);
  if (!x.allFinite())
    raise(errc::singular_system, "equilibrium solve overflowed");

  AuthorityVector result;
  result.pi = finalize(std::move(x));
  result.residual = fixed_point_residual(P, result.pi);
  if (result.residual > 1e-8)
    raise(errc::singular_system, "equilibrium residual too large");
  return result;
}

AuthorityVector solve_power(const Eigen::MatrixXd& P,
                            const AuthorityOptions& options) {
  const int n = static_cast<int>(P.rows());
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    Eigen::VectorXd next = P.transpose() * x;
    next /= next.sum();
    double change = (next - x).lpNorm<Eigen::Infinity>();
    x = std::move(next);
    if (change <= options.tol) {
      AuthorityVector result;
      result.pi = finalize(std::move(x));
      result.residual = fixed_point_residual(P, result.pi);
      result.iterations = iter;
      return result;
    }
  }
  std::ostringstream msg;
  msg << "power iteration did not reach " << options.tol << " within "
      << options.max_iterations << " iterations";
  raise(errc::no_convergence, msg.str());
}

}  // namespace

void validate_exposure_matrix(const Eigen::MatrixXd& P) {
  if (P.rows() != P.cols() || P.rows() < 1)
    raise(errc::bad_argument, "exposure matrix must be square and non-empty");
  for (int i = 0; i < P.rows(); ++i) {
    for (int j = 0; j < P.cols(); ++j) {
      double v = P(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream msg;
        msg << "exposure entry (" << i << "," << j << ") = " << v
            << " outside [0, 1]";
        raise(errc::bad_argument, msg.str());
      }
    }
    double sum = P.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTol) {
      std::ostringstream msg;
      msg << "row " << i << " sums to " << sum << ", not 1";
      raise(errc::bad_argument, msg.str());
    }
  }
}

AuthorityVector authority_distribution(const Eigen::MatrixXd& P,
                                       const AuthorityOptions& options) {
  validate_exposure_matrix(P);
  if (P.rows() == 1) {
    AuthorityVector result;
    result.pi = Eigen::VectorXd::Ones(1);
    return result;
  }
  // Exactly one closed trade bloc is the structural condition for a unique
  // fixed point; without it both solvers would return an arbitrary member
  // of the solution family.
  if (check_connectivity(P).closed_components.size() != 1)
    raise(errc::singular_system,
          "fixed point is not unique: the network splits into multiple "
          "closed trade blocs");
  return options.method == SolveMethod::direct ? solve_direct(P)
                                               : solve_power(P, options);
}

RatioPair ratios(const Eigen::VectorXd& pi, const Eigen::VectorXd& gdp, int i,
                 int j) {
  if (i == j) raise(errc::same_country, "ratio of a country with itself");
  if (i < 0 || j < 0 || i >= pi.size() || j >= pi.size() ||
      pi.size() != gdp.size())
    raise(errc::bad_argument, "ratio index out of range");
  if (!(pi(i) > 0.0) || !(gdp(i) > 0.0))
    raise(errc::bad_argument, "ratios need positive authority and GDP");
  return {pi(j) / pi(i), gdp(j) / gdp(i)};
}

}  // namespace cbal
