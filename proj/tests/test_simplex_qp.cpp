#include <doctest.h>

#include <cmath>

#include "skclust/simplex_qp.hpp"
#include "testutil.hpp"

using namespace skclust;

TEST_CASE("project_simplex fixed points and symmetry") {
  Eigen::VectorXd v(2);
  v << 0.3, 0.7;
  CHECK((project_simplex(v) - v).cwiseAbs().maxCoeff() <= 1e-15);

  v << 0.6, 0.6;
  const Eigen::VectorXd p = project_simplex(v);
  CHECK(p(0) == doctest::Approx(0.5));
  CHECK(p(1) == doctest::Approx(0.5));
}

TEST_CASE("project_simplex clamps to a vertex and beats a dense grid") {
  Eigen::VectorXd v(2);
  v << 2.0, 0.0;
  const Eigen::VectorXd p = project_simplex(v);
  CHECK(p(0) == doctest::Approx(1.0));
  CHECK(p(1) == doctest::Approx(0.0));

  // Grid oracle: the projection minimizes ||z - v||^2 over the simplex.
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 10000; ++i) {
    const double z0 = i / 10000.0;
    const double d0 = z0 - v(0), d1 = (1.0 - z0) - v(1);
    best = std::min(best, d0 * d0 + d1 * d1);
  }
  const double achieved = (p - v).squaredNorm();
  CHECK(achieved <= best + 1e-7);
}

TEST_CASE("project_simplex output is always feasible") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Eigen::VectorXd v = testutil::random_vector(7, -3.0, 3.0, seed);
    const Eigen::VectorXd p = project_simplex(v);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("qp_objective evaluates z'Qz + b'z") {
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd z(2);
  z << 1.0, 0.0;
  CHECK(qp_objective({q, b}, z) == doctest::Approx(1.0));

  b << -2.0, 0.0;
  z << 0.5, 0.5;
  CHECK(qp_objective({q, b}, z) == doctest::Approx(-0.5));

  const Eigen::MatrixXd qr = testutil::random_pd(4, 0.5, 3.0, 31);
  const Eigen::VectorXd br = testutil::random_vector(4, -1.0, 1.0, 32);
  const Eigen::VectorXd zr = project_simplex(testutil::random_vector(4, 0.0, 1.0, 33));
  double expected = 0.0;
  for (int i = 0; i < 4; ++i) {
    expected += br(i) * zr(i);
    for (int j = 0; j < 4; ++j) expected += zr(i) * qr(i, j) * zr(j);
  }
  CHECK(qp_objective({qr, br}, zr) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("solve_column_qp reproduces the closed-form two-variable solution") {
  // Q = alpha I + K with K = I, alpha = 1; b = -2 e_0.
  Eigen::MatrixXd q = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd b(2);
  b << -2.0, 0.0;
  const QpSolution sol = solve_column_qp({q, b});
  CHECK(sol.z(0) == doctest::Approx(0.75).epsilon(1e-8));
  CHECK(sol.z(1) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("solve_column_qp returns the uniform vector under symmetry") {
  const Eigen::MatrixXd q = 3.0 * Eigen::MatrixXd::Identity(5, 5);
  const Eigen::VectorXd b = Eigen::VectorXd::Zero(5);
  const QpSolution sol = solve_column_qp({q, b});
  for (int i = 0; i < 5; ++i) CHECK(sol.z(i) == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("solver objective matches the grid-search oracle on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Eigen::MatrixXd q = testutil::random_pd(3, 0.2, 4.0, 1000 + seed);
    const Eigen::VectorXd b = testutil::random_vector(3, -2.0, 2.0, 2000 + seed);
    const QpSolution sol = solve_column_qp({q, b});
    const double oracle = testutil::grid_search_qp(q, b, 1e-3);
    CHECK(qp_objective({q, b}, sol.z) <= oracle + 1e-6);
  }
}

TEST_CASE("solver output is feasible even without convergence") {
  const Eigen::MatrixXd q = testutil::random_pd(6, 1e-4, 5.0, 63);
  const Eigen::VectorXd b = testutil::random_vector(6, -1.0, 1.0, 64);
  try {
    const QpSolution sol = solve_column_qp({q, b}, 1e-16, 3);
    CHECK(sol.z.minCoeff() >= 0.0);
    CHECK(sol.z.sum() == doctest::Approx(1.0).epsilon(1e-9));
  } catch (const NotConverged& e) {
    CHECK(e.best_iterate.minCoeff() >= 0.0);
    CHECK(e.best_iterate.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.kkt_residual > 0.0);
  }
}

TEST_CASE("objective envelope is non-increasing in the iteration budget") {
  const Eigen::MatrixXd q = testutil::random_pd(5, 0.1, 6.0, 71);
  const Eigen::VectorXd b = testutil::random_vector(5, -2.0, 2.0, 72);
  const Eigen::VectorXd start = project_simplex(testutil::random_vector(5, 0.0, 1.0, 73));
  double prev = qp_objective({q, b}, start);
  for (int budget = 1; budget <= 40; ++budget) {
    Eigen::VectorXd z;
    try {
      z = solve_column_qp({q, b}, 1e-14, budget, &start).z;
    } catch (const NotConverged& e) {
      z = e.best_iterate;
    }
    const double f = qp_objective({q, b}, z);
    CHECK(f <= prev + 1e-12);
    prev = f;
  }
}

TEST_CASE("KKT certificate holds at the returned point") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXd q = testutil::random_pd(6, 0.3, 5.0, 300 + seed);
    const Eigen::VectorXd b = testutil::random_vector(6, -2.0, 2.0, 400 + seed);
    const double tol = 1e-8;
    const QpSolution sol = solve_column_qp({q, b}, tol);
    const Eigen::VectorXd grad = 2.0 * q * sol.z + b;
    double support_max = -std::numeric_limits<double>::infinity();
    double support_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 6; ++j) {
      if (sol.z(j) > 0.0) {
        support_max = std::max(support_max, grad(j));
        support_min = std::min(support_min, grad(j));
      }
    }
    CHECK(support_max - support_min <= tol);
    for (int j = 0; j < 6; ++j) {
      if (sol.z(j) == 0.0) CHECK(grad(j) >= support_max - tol);
    }
  }
}

TEST_CASE("warm starts preserve the solution") {
  const Eigen::MatrixXd q = testutil::random_pd(5, 0.5, 2.0, 81);
  const Eigen::VectorXd b = testutil::random_vector(5, -1.0, 1.0, 82);
  const QpSolution cold = solve_column_qp({q, b});
  const QpSolution warm = solve_column_qp({q, b}, 1e-8, 1000, &cold.z);
  CHECK((warm.z - cold.z).cwiseAbs().maxCoeff() <= 1e-7);
  CHECK(warm.iterations <= cold.iterations);
}

TEST_CASE("dimension and argument validation") {
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(solve_column_qp({q, b}), DimensionMismatch);
  Eigen::VectorXd b3 = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(qp_objective({q, b3}, b), DimensionMismatch);
  CHECK_THROWS_AS(solve_column_qp({q, b3}, -1.0), InvalidConfig);
}
