#include <cmath>
#include <numbers>

#include "doctest.h"
#include "randcrit/constants.hpp"
#include "randcrit/errors.hpp"
#include "randcrit/kacrice.hpp"
#include "randcrit/sphere.hpp"
#include "support.hpp"

using namespace randcrit;
using testing_support::random_spd;

namespace {

CovarianceBlocks random_blocks(int m, Rng& rng) {
  const int n = sym_dim(m);
  const Eigen::MatrixXd full = random_spd(n + m, rng, 0.3);
  CovarianceBlocks b;
  b.hess = full.topLeftCorner(n, n);
  b.grad = full.bottomRightCorner(m, m);
  b.cross = full.topRightCorner(n, m);
  return b;
}

// Action of X -> O X O^T in hat coordinates.
Eigen::MatrixXd conjugation(const Eigen::MatrixXd& o) {
  const int m = static_cast<int>(o.rows()), n = sym_dim(m);
  Eigen::MatrixXd t(n, n);
  for (int k = 0; k < n; ++k) {
    const SymMatrix e = SymMatrix::from_hat_coordinates(m, Eigen::VectorXd::Unit(n, k));
    t.col(k) = SymMatrix::from_dense(o * e.dense() * o.transpose()).hat_coordinates();
  }
  return t;
}

}  // namespace

TEST_SUITE("kacrice") {

TEST_CASE("block validation") {
  CovarianceBlocks b = sphere_blocks(5);
  CHECK_NOTHROW(b.validate());
  b.cross = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(b.validate(), InputError);
  CHECK_THROWS_AS(limit_blocks(1, 1.0), InputError);
  CHECK_THROWS_AS(limit_blocks(3, 0.0), InputError);
}

TEST_CASE("conditioned Hessian") {
  const CovarianceBlocks s = sphere_blocks(10);
  CHECK((conditioned_hessian(s) - covariance_operator(hessian_params(10))).norm() < 1e-9 * s.hess.norm());
  Rng rng = make_stream(41, 0);
  for (int m : {2, 3}) {
    const CovarianceBlocks b = random_blocks(m, rng);
    const Eigen::MatrixXd xi = conditioned_hessian(b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xi);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
    CHECK((xi - (b.hess - b.cross * b.grad.inverse() * b.cross.transpose())).norm() < 1e-10);
  }
}

TEST_CASE("Schur complement is monotone in the cross block") {
  Rng rng = make_stream(42, 0);
  for (int rep = 0; rep < 10; ++rep) {
    // Scale a valid block down, then compare against the original.
    CovarianceBlocks b = random_blocks(2, rng);
    const CovarianceBlocks scaled = b;
    b.cross /= 1.3;
    const Eigen::MatrixXd x1 = conditioned_hessian(b);
    const Eigen::MatrixXd x2 = conditioned_hessian(scaled);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> diff(x1 - x2);
    CHECK(diff.eigenvalues().minCoeff() >= -1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(x1), e2(x2);
    for (int i = 0; i < 3; ++i) CHECK(e2.eigenvalues()(i) <= e1.eigenvalues()(i) + 1e-12);
  }
}

TEST_CASE("prefactor and degeneracy") {
  CovarianceBlocks b = sphere_blocks(4);
  const double p1 = kacrice_prefactor(b);
  CHECK(p1 == doctest::Approx(1 / (2 * std::numbers::pi * kernel_constants(4).s)));
  b.grad *= 2;
  CHECK(kacrice_prefactor(b) == doctest::Approx(p1 / 2));
  b.grad = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(kacrice_prefactor(b), DegeneracyError);
  CHECK_THROWS(kacrice_integrand(b, 5000, 1));
  CovarianceBlocks s = sphere_blocks(4);
  s.grad(1, 1) = 0;
  CHECK_THROWS_AS(conditioned_hessian(s), DegeneracyError);
}

TEST_CASE("doubling the gradient block with no cross term") {
  const CovarianceBlocks b = limit_blocks(3, 1.5);
  CovarianceBlocks d = b;
  d.grad *= 2;
  const MCEstimate e1 = kacrice_integrand(b, 20000, 8);
  const MCEstimate e2 = kacrice_integrand(d, 20000, 8);
  CHECK(e2.mean == doctest::Approx(e1.mean * std::pow(2.0, -1.5)).epsilon(1e-13));
}

TEST_CASE("frame invariance") {
  Rng rng = make_stream(43, 0);
  for (int m : {2, 3}) {
    const CovarianceBlocks b = random_blocks(m, rng);
    const Eigen::MatrixXd o = random_orthogonal(m, rng);
    const Eigen::MatrixXd t = conjugation(o);
    CovarianceBlocks r;
    r.grad = o * b.grad * o.transpose();
    r.hess = t * b.hess * t.transpose();
    r.cross = t * b.cross * o.transpose();
    r.grad = 0.5 * (r.grad + r.grad.transpose());
    r.hess = 0.5 * (r.hess + r.hess.transpose());
    const MCEstimate e1 = kacrice_integrand(b, 200000, 10 + m);
    const MCEstimate e2 = kacrice_integrand(r, 200000, 20 + m);
    CHECK(std::abs(e1.mean - e2.mean) < 4 * std::hypot(e1.std_error, e2.std_error));
  }
}

TEST_CASE("sphere blocks reproduce the predicted count") {
  for (int n : {3, 10}) {
    const MCEstimate e = kacrice_integrand(sphere_blocks(n), 400000, 50 + n);
    const double total = 4 * std::numbers::pi * e.mean;
    CHECK(std::abs(total - predicted_count(n)) < 4 * 4 * std::numbers::pi * e.std_error);
  }
}

TEST_CASE("limit blocks reproduce the density coefficient") {
  for (int m : {2, 3, 4}) {
    const double lambda = 1.7;
    const MCEstimate e = kacrice_integrand(limit_blocks(m, lambda), 400000, 60 + m);
    const double want = density_limit_coefficient(m) * std::pow(lambda, m);
    CHECK(std::abs(e.mean - want) < 4 * e.std_error);
  }
}

}
