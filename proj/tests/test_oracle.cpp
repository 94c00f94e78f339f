#include <doctest.h>

#include <cmath>
#include <random>

#include "cbal/authority.hpp"
#include "cbal/errors.hpp"
#include "cbal/oracle.hpp"
#include "helpers.hpp"

using namespace cbal;

TEST_CASE("reference equilibrium reproduces known fixed points") {
  Eigen::VectorXd pi = oracle::reference_equilibrium(fixtures::two_country());
  CHECK(std::abs(pi(0) - 2.0 / 3.0) <= 1e-15);
  CHECK(std::abs(pi(1) - 1.0 / 3.0) <= 1e-15);
}

TEST_CASE("reference and production solvers agree to 1e-13") {
  std::mt19937_64 rng(3);
  for (int n : {3, 5, 10, 25}) {
    Eigen::MatrixXd P = oracle::random_exposure_matrix(rng, n);
    Eigen::VectorXd reference = oracle::reference_equilibrium(P);
    Eigen::VectorXd production = authority_distribution(P).pi;
    CHECK((reference - production).lpNorm<Eigen::Infinity>() <= 1e-13);
  }
}

TEST_CASE("reference solver rejects non-unique fixed points") {
  CHECK_THROWS_AS(
      oracle::reference_equilibrium(Eigen::MatrixXd::Identity(3, 3)), error);
}

TEST_CASE("trade-war perturbation moves exactly four entries") {
  Eigen::MatrixXd P = fixtures::dense_four();
  const int i = 0, j = 2;
  const double lambda = 1.5, h = 1e-4;
  Eigen::MatrixXd Q = oracle::perturb_tradewar(P, i, j, lambda, h);

  CHECK(Q(j, i) == doctest::Approx(P(j, i) + h).epsilon(1e-12));
  CHECK(Q(j, j) == doctest::Approx(P(j, j) - h).epsilon(1e-12));
  CHECK(Q(i, j) == doctest::Approx(P(i, j) + lambda * h).epsilon(1e-12));
  CHECK(Q(i, i) == doctest::Approx(P(i, i) - lambda * h).epsilon(1e-12));
  for (int r = 0; r < 4; ++r) {
    CHECK(std::abs(Q.row(r).sum() - 1.0) <= 1e-15);
    for (int c = 0; c < 4; ++c)
      if ((r != i && r != j) || (c != i && c != j))
        CHECK(Q(r, c) == P(r, c));
  }

  SUBCASE("zero step leaves the matrix unchanged") {
    CHECK((oracle::perturb_tradewar(P, i, j, lambda, 0.0) - P).norm() == 0.0);
  }
  SUBCASE("zero reaction touches only the target's row") {
    Eigen::MatrixXd R = oracle::perturb_tradewar(P, i, j, 0.0, h);
    for (int c = 0; c < 4; ++c) CHECK(R(i, c) == P(i, c));
  }
  SUBCASE("a step pushing an entry past a boundary is rejected") {
    try {
      // P(j,j) = 0.6 cannot give up 0.7.
      oracle::perturb_tradewar(P, i, j, 1.0, 0.7);
      FAIL("expected step_too_large");
    } catch (const error& e) {
      CHECK(e.code() == errc::step_too_large);
    }
  }
}

TEST_CASE("self-exposure perturbation preserves row sums") {
  Eigen::MatrixXd P = fixtures::dense_four();
  Eigen::VectorXd lambdas(4);
  lambdas << 0.0, 0.9, 1.4, 0.3;
  const double h = 1e-5;
  Eigen::MatrixXd Q = oracle::perturb_globalization(P, 1, lambdas, h);
  for (int r = 0; r < 4; ++r) CHECK(std::abs(Q.row(r).sum() - 1.0) <= 1e-14);
  // The actor's own entry moves by exactly the step.
  CHECK(std::abs((Q(1, 1) - P(1, 1)) - h) <= 1e-15);
}

TEST_CASE("step picking respects the boundary margin") {
  Eigen::MatrixXd P = fixtures::dense_four();
  SUBCASE("interior entries allow the default step") {
    CHECK(oracle::pick_step_tradewar(P, 0, 1, 1.0) == 1e-7);
  }
  SUBCASE("a tiny entry shrinks the step") {
    P(1, 0) = 1e-8;
    P(1, 1) = 1.0 - (P(1, 0) + P(1, 2) + P(1, 3));
    double h = oracle::pick_step_tradewar(P, 0, 1, 1.0);
    CHECK(h == doctest::Approx(1e-9));
  }
  SUBCASE("an entry on the boundary forbids any step") {
    P(1, 0) = 0.0;
    P(1, 1) = 1.0 - (P(1, 0) + P(1, 2) + P(1, 3));
    CHECK(oracle::pick_step_tradewar(P, 0, 1, 1.0) == 0.0);
  }
  SUBCASE("direction-aware step scales with the entry headroom") {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4, 4);
    D(0, 1) = 1e6;
    D(0, 0) = -1e6;
    double h = oracle::pick_step_direction(P, D);
    // room(P(0,1)) = 0.1, ten steps of 1e6 each: 0.1 / 1e7.
    CHECK(h == doctest::Approx(1e-8));
  }
}

TEST_CASE("finite differences detect nothing along a zero direction") {
  Eigen::MatrixXd P = fixtures::dense_four();
  Eigen::VectorXd fd =
      oracle::fd_derivative(P, Eigen::MatrixXd::Zero(4, 4), 1e-6);
  CHECK(fd.norm() == 0.0);
}

TEST_CASE("finite-difference output sums to zero") {
  std::mt19937_64 rng(17);
  Eigen::MatrixXd P = oracle::random_exposure_matrix(rng, 6);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(6, 6);
  D(3, 0) = 1.0;
  D(3, 3) = -1.0;
  D(0, 3) = 2.0;
  D(0, 0) = -2.0;
  Eigen::VectorXd fd = oracle::fd_derivative(P, D, 1e-7);
  CHECK(std::abs(fd.sum()) <= 1e-10);
}

TEST_CASE("central differences converge at second order") {
  // At large steps the truncation term dominates, so halving the step must
  // shrink the error by about four.
  std::mt19937_64 rng(19);
  Eigen::MatrixXd P = oracle::random_exposure_matrix(rng, 5);
  Eigen::VectorXd pi = authority_distribution(P).pi;
  SensitivityResult analytic = tradewar_derivative(P, pi, 0, 3, 2.5);

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(5, 5);
  D(3, 0) = 1.0;
  D(3, 3) = -1.0;
  D(0, 3) = 2.5;
  D(0, 0) = -2.5;

  double err_h = (oracle::fd_derivative(P, D, 1e-3) - analytic.d_pi)
                     .lpNorm<Eigen::Infinity>();
  double err_half = (oracle::fd_derivative(P, D, 5e-4) - analytic.d_pi)
                        .lpNorm<Eigen::Infinity>();
  REQUIRE(err_half > 0.0);
  double ratio = err_h / err_half;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("hybrid comparison splits relative and absolute regimes") {
  Eigen::VectorXd analytic(3);
  Eigen::VectorXd numeric(3);

  SUBCASE("large entries compare relatively") {
    analytic << 1.0, -2.0, 1e-8;
    numeric << 1.0 + 5e-7, -2.0, 1e-8;
    oracle::Comparison cmp = oracle::compare(analytic, numeric);
    CHECK(cmp.pass);
    CHECK(cmp.max_rel_err == doctest::Approx(5e-7));

    numeric(0) = 1.0 + 5e-6;
    CHECK_FALSE(oracle::compare(analytic, numeric).pass);
  }

  SUBCASE("entries below the floor compare absolutely") {
    analytic << 1e-10, 0.0, 1.0;
    numeric << 1e-10 + 5e-13, 0.0, 1.0;
    oracle::Comparison cmp = oracle::compare(analytic, numeric);
    CHECK(cmp.pass);
    CHECK(cmp.max_abs_err == doctest::Approx(5e-13));

    numeric(1) = 5e-12;
    oracle::Comparison failed = oracle::compare(analytic, numeric);
    CHECK_FALSE(failed.pass);
    CHECK(failed.worst_entry == 1);
  }
}

TEST_CASE("random fixtures are valid strongly connected networks") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + static_cast<int>(rng() % 10);
    Eigen::MatrixXd P = oracle::random_exposure_matrix(rng, n);
    CHECK_NOTHROW(validate_exposure_matrix(P));
    for (int k = 0; k < n; ++k) {
      CHECK(P(k, k) >= 0.3);
      CHECK(P(k, k) <= 0.85);
    }
    Eigen::VectorXd gdp = oracle::random_gdp(rng, n);
    CHECK(gdp.maxCoeff() / gdp.minCoeff() <= 4.0);
  }
}

TEST_CASE("verify_all sweeps cleanly over a healthy network") {
  std::mt19937_64 rng(41);
  Eigen::MatrixXd P = oracle::random_exposure_matrix(rng, 5);
  Eigen::VectorXd pi = authority_distribution(P).pi;
  Eigen::VectorXd gdp = oracle::random_gdp(rng, 5);

  oracle::VerifyOptions options;
  options.random_instances = 2;
  options.labels = {"AAA", "BBB", "CCC", "DDD", "EEE"};
  oracle::OracleReport report = oracle::verify_all(P, pi, gdp, options);
  CHECK(report.pass);
  CHECK(report.failures == 0);
  CHECK(report.checked > 0);
  CHECK(report.worst_rel <= oracle::kRelTol);
  CHECK(report.worst_abs <= oracle::kAbsTol);
}

TEST_CASE("verify_all reports reducible inputs as skipped") {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(4, 4);
  P.topLeftCorner(2, 2) = fixtures::two_country();
  P.bottomRightCorner(2, 2) = fixtures::two_country();
  Eigen::VectorXd pi = Eigen::VectorXd::Constant(4, 0.25);
  Eigen::VectorXd gdp = Eigen::VectorXd::Ones(4);

  oracle::VerifyOptions options;
  options.random_instances = 0;
  oracle::OracleReport report = oracle::verify_all(P, pi, gdp, options);
  CHECK(report.pass);
  CHECK(report.checked == 0);
  CHECK(report.skipped == 1);
  REQUIRE(report.cases.size() == 1);
  CHECK(report.cases[0].reason == "matrix is not strongly connected");
}

TEST_CASE("verify_all flags a corrupted analytic path") {
  std::mt19937_64 rng(47);
  Eigen::MatrixXd P = oracle::random_exposure_matrix(rng, 4);
  Eigen::VectorXd pi = authority_distribution(P).pi;
  pi(0) *= 1.05;
  pi /= pi.sum();
  Eigen::VectorXd gdp = oracle::random_gdp(rng, 4);

  oracle::VerifyOptions options;
  options.random_instances = 0;
  options.refine = false;
  oracle::OracleReport report = oracle::verify_all(P, pi, gdp, options);
  CHECK_FALSE(report.pass);
  CHECK(report.failures > 0);
}
