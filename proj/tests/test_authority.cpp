#include <doctest.h>

#include <random>

#include "cbal/authority.hpp"
#include "cbal/errors.hpp"
#include "cbal/oracle.hpp"
#include "helpers.hpp"

using namespace cbal;

TEST_CASE("two-country chain has the known fixed point (2/3, 1/3)") {
  AuthorityVector result = authority_distribution(fixtures::two_country());
  CHECK(result.pi(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(result.pi(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(result.residual <= 1e-12);
}

TEST_CASE("symmetric two-country network splits authority evenly") {
  Eigen::MatrixXd P(2, 2);
  P << 0.5, 0.5,
       0.5, 0.5;
  AuthorityVector result = authority_distribution(P);
  CHECK(result.pi(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(result.pi(1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("doubly stochastic matrix yields the uniform distribution") {
  AuthorityVector result = authority_distribution(fixtures::circulant_three());
  for (int k = 0; k < 3; ++k)
    CHECK(result.pi(k) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("identity matrix has no unique fixed point") {
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(authority_distribution(P), error);
  try {
    authority_distribution(P);
  } catch (const error& e) {
    CHECK(e.code() == errc::singular_system);
    CHECK(e.category() == error_category::numerical);
  }
}

TEST_CASE("single-country network holds all authority") {
  Eigen::MatrixXd P(1, 1);
  P << 1.0;
  AuthorityVector result = authority_distribution(P);
  CHECK(result.pi(0) == 1.0);
}

TEST_CASE("invalid exposure matrices are rejected") {
  SUBCASE("non-square") {
    Eigen::MatrixXd P(2, 3);
    P.setConstant(1.0 / 3.0);
    CHECK_THROWS_AS(validate_exposure_matrix(P), error);
  }
  SUBCASE("negative entry") {
    Eigen::MatrixXd P = fixtures::two_country();
    P(0, 0) = -0.1;
    P(0, 1) = 1.1;
    CHECK_THROWS_AS(validate_exposure_matrix(P), error);
  }
  SUBCASE("row sum off by more than 1e-12") {
    Eigen::MatrixXd P = fixtures::two_country();
    P(0, 0) += 1e-9;
    try {
      validate_exposure_matrix(P);
      FAIL("expected a row-sum rejection");
    } catch (const error& e) {
      CHECK(e.code() == errc::bad_argument);
    }
  }
  SUBCASE("row sum off by less than 1e-12 is accepted") {
    Eigen::MatrixXd P = fixtures::two_country();
    P(0, 0) += 1e-14;
    CHECK_NOTHROW(validate_exposure_matrix(P));
  }
}

TEST_CASE("direct and power iteration agree on random networks") {
  std::mt19937_64 rng(7);
  for (int n : {3, 5, 10, 25}) {
    Eigen::MatrixXd P = oracle::random_exposure_matrix(rng, n);
    AuthorityVector direct = authority_distribution(P);
    AuthorityOptions power;
    power.method = SolveMethod::power_iteration;
    AuthorityVector iterated = authority_distribution(P, power);
    CHECK(iterated.iterations > 0);
    CHECK((direct.pi - iterated.pi).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("equilibrium properties hold on random networks") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng() % 12);
    Eigen::MatrixXd P = oracle::random_exposure_matrix(rng, n);
    AuthorityVector result = authority_distribution(P);
    CHECK(result.pi.minCoeff() >= 0.0);
    CHECK(result.pi.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.residual <= 1e-12);
  }
}

TEST_CASE("permuting the countries permutes the authority vector") {
  Eigen::MatrixXd P = fixtures::dense_four();
  AuthorityVector base = authority_distribution(P);

  std::vector<int> perm{2, 0, 3, 1};
  Eigen::MatrixXd Q(4, 4);
  Q.setZero();
  for (int k = 0; k < 4; ++k) Q(k, perm[k]) = 1.0;
  Eigen::MatrixXd permuted = Q * P * Q.transpose();
  AuthorityVector moved = authority_distribution(permuted);
  for (int k = 0; k < 4; ++k)
    CHECK(moved.pi(k) == doctest::Approx(base.pi(perm[k])).epsilon(1e-13));
}

TEST_CASE("power iteration reports no_convergence when starved") {
  AuthorityOptions options;
  options.method = SolveMethod::power_iteration;
  options.max_iterations = 2;
  options.tol = 1e-15;
  try {
    authority_distribution(fixtures::dense_four(), options);
    FAIL("expected no_convergence");
  } catch (const error& e) {
    CHECK(e.code() == errc::no_convergence);
  }
}

TEST_CASE("pairwise ratios reproduce the published 2018 example") {
  // Printed values: authority .0930 vs .3287, GDP 12.79T vs 20.58T.
  Eigen::VectorXd pi(2);
  pi << 0.3287, 0.0930;
  Eigen::VectorXd gdp(2);
  gdp << 20.58, 12.79;
  RatioPair pair = ratios(pi, gdp, 0, 1);
  CHECK(pair.authority_ratio == doctest::Approx(0.2829).epsilon(5e-4));
  CHECK(pair.gdp_ratio == doctest::Approx(0.6215).epsilon(5e-4));
}

TEST_CASE("ratios of a country with itself are rejected") {
  Eigen::VectorXd pi(2);
  pi << 0.5, 0.5;
  try {
    ratios(pi, pi, 1, 1);
    FAIL("expected same_country");
  } catch (const error& e) {
    CHECK(e.code() == errc::same_country);
  }
}
