#include <cmath>
#include <numbers>

#include "doctest.h"
#include "randcrit/ensembles.hpp"
#include "randcrit/errors.hpp"
#include "support.hpp"

using namespace randcrit;

namespace {

SymMatrix random_sym(int m, Rng& rng) {
  std::normal_distribution<double> z;
  SymMatrix x(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) x.at(i, j) = z(rng);
  return x;
}

EnsembleParams random_params(int m, Rng& rng) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  const double c = u(rng), diff = u(rng), b = u(rng) - 0.1;
  return {m, diff + b, b, c};
}

}  // namespace

TEST_SUITE("ensembles") {

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(EnsembleParams::universal(4).validate());
  CHECK_THROWS_AS((EnsembleParams{2, 1.0, 1.0, 1.0}.validate()), ParameterError);
  CHECK_THROWS_AS((EnsembleParams{2, 3.0, 1.0, 0.0}.validate()), ParameterError);
  CHECK_THROWS_AS((EnsembleParams{3, 1.0, -1.0, 1.0}.validate()), ParameterError);
  CHECK_THROWS_AS((EnsembleParams{1, 3.0, 1.0, 1.0}.validate()), ParameterError);
  CHECK_THROWS_AS(covariance_det({2, 1.0, 2.0, 1.0}), ParameterError);
}

TEST_CASE("hat coordinates") {
  Rng rng = make_stream(11, 0);
  const SymMatrix x = random_sym(4, rng);
  const Eigen::VectorXd h = x.hat_coordinates();
  CHECK(h.size() == sym_dim(4));
  CHECK(h.squaredNorm() == doctest::Approx(x.trace_of_square()));
  const SymMatrix back = SymMatrix::from_hat_coordinates(4, h);
  CHECK((back.dense() - x.dense()).norm() < 1e-14);
  CHECK(frobenius_inner(x, x) == doctest::Approx(x.trace_of_square()));
  CHECK(x.trace_of_square() == doctest::Approx((x.dense() * x.dense()).trace()));
  CHECK_THROWS_AS(SymMatrix::from_hat_coordinates(3, h), InputError);
}

TEST_CASE("covariance determinant examples") {
  CHECK(covariance_det(EnsembleParams::universal(2)) == doctest::Approx(16));
  CHECK(covariance_det(EnsembleParams::universal(3)) == doctest::Approx(160));
  const EnsembleParams p{2, 2.5, 0.7, 1.3};
  CHECK(covariance_det(p) == doctest::Approx(2 * (p.a - p.b) * (p.a + p.b) * p.c));
  for (int m = 2; m <= 10; ++m) {
    CHECK(mu_m(m) == doctest::Approx(covariance_det(EnsembleParams::universal(m))).epsilon(1e-12));
    CHECK(log_mu_m(m) == doctest::Approx(std::log(mu_m(m))));
  }
}

TEST_CASE("determinant and inverse against the assembled operator") {
  Rng rng = make_stream(12, 0);
  for (int m = 2; m <= 6; ++m) {
    const EnsembleParams p = random_params(m, rng);
    const Eigen::MatrixXd q = covariance_operator(p);
    CHECK(q.determinant() == doctest::Approx(covariance_det(p)).epsilon(1e-10));
    const EnsembleParams inv = covariance_inverse(p);
    CHECK((q * covariance_operator(inv) - Eigen::MatrixXd::Identity(q.rows(), q.cols())).norm() < 1e-10);
    CHECK(covariance_det(p) * covariance_det(inv) == doctest::Approx(1.0).epsilon(1e-12));
    // Raw covariance differs from the hat one only by the sqrt 2 scaling.
    const Eigen::MatrixXd raw = raw_covariance(p);
    CHECK(raw.diagonal().tail(sym_dim(m) - m).isApprox(Eigen::VectorXd::Constant(sym_dim(m) - m, p.c)));

    const SymMatrix x = random_sym(m, rng);
    const Eigen::VectorXd h = x.hat_coordinates();
    CHECK(quadratic_form(p, x) == doctest::Approx(h.dot(q * h)).epsilon(1e-12));
  }
}

TEST_CASE("density examples") {
  const EnsembleParams p = EnsembleParams::universal(2);
  const double norm = 1.0 / (4 * std::pow(2 * std::numbers::pi, 1.5));
  CHECK(density(p, SymMatrix(2)) == doctest::Approx(norm));
  SymMatrix x(2);
  x.at(0, 0) = 1;
  x.at(1, 1) = -1;
  CHECK(density(p, x) == doctest::Approx(std::exp(-0.5) * norm));
}

TEST_CASE("density agrees with the hat-coordinate Gaussian") {
  Rng rng = make_stream(13, 0);
  for (int m = 2; m <= 5; ++m) {
    const EnsembleParams p = random_params(m, rng);
    const Eigen::MatrixXd q = covariance_operator(p);
    const SymMatrix x = random_sym(m, rng);
    const Eigen::VectorXd h = x.hat_coordinates();
    const double want = -0.5 * h.size() * std::log(2 * std::numbers::pi) - 0.5 * std::log(q.determinant()) -
                        0.5 * h.dot(q.inverse() * h);
    CHECK(log_density(p, x) == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("universal density is conjugation invariant") {
  Rng rng = make_stream(14, 0);
  for (int m = 2; m <= 6; ++m) {
    const EnsembleParams p = EnsembleParams::universal(m, 0.8);
    const SymMatrix x = random_sym(m, rng);
    const Eigen::MatrixXd o = random_orthogonal(m, rng);
    const SymMatrix y = SymMatrix::from_dense(o * x.dense() * o.transpose());
    CHECK(std::abs(density(p, y) / density(p, x) - 1.0) < 1e-12);
  }
}

TEST_CASE("invariant norm") {
  const EnsembleParams p = EnsembleParams::universal(2);
  CHECK(invariant_norm(p, SymMatrix(2)) == 0.0);
  SymMatrix id(2);
  id.at(0, 0) = id.at(1, 1) = 1;
  CHECK(invariant_norm(p, id) == doctest::Approx(8));
  CHECK_THROWS_AS(invariant_norm({2, 3.0, 0.0, 1.0}, id), ParameterError);
  Rng rng = make_stream(15, 0);
  const SymMatrix a = random_sym(3, rng);
  CHECK(invariant_norm(EnsembleParams::universal(3), a) ==
        doctest::Approx(quadratic_form(EnsembleParams::universal(3), a)));
}

TEST_CASE("fourth moment oracle") {
  CHECK(fourth_moment_oracle(1, 0, 0, 0, 0, 3) == 3);
  CHECK(fourth_moment_oracle(1, 0, 1, 0, 2, 3) == 0);
  CHECK(fourth_moment_oracle(2, 0, 1, 0, 1, 3) == 8);
  CHECK(fourth_moment_oracle(1, 0, 0, 1, 1, 3) == 1);
  CHECK_THROWS_AS(fourth_moment_oracle(1, 1, 0, 0, 0, 3), InputError);
}

TEST_CASE("sampler second moments") {
  const EnsembleParams p{3, 2.5, 0.7, 1.3};
  Rng rng = make_stream(16, 0);
  const int n = 200000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(sym_dim(3), sym_dim(3));
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd h = sample(p, rng).hat_coordinates();
    acc += h * h.transpose();
  }
  acc /= n;
  const Eigen::MatrixXd q = covariance_operator(p);
  // sd of a sample product is at most sqrt(q_ii q_jj + q_ij^2)
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) {
      const double se = std::sqrt((q(i, i) * q(j, j) + q(i, j) * q(i, j)) / n);
      CHECK(std::abs(acc(i, j) - q(i, j)) < 5 * se);
    }
}

TEST_CASE("GOE plus scalar has the universal law") {
  Rng rng = make_stream(17, 0);
  const int m = 3, n = 200000;
  const double c = 0.6;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(sym_dim(m), sym_dim(m));
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd h = sample_goe_plus_scalar(m, c, rng).hat_coordinates();
    acc += h * h.transpose();
  }
  acc /= n;
  const Eigen::MatrixXd q = covariance_operator(EnsembleParams::universal(m, c));
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j)
      CHECK(std::abs(acc(i, j) - q(i, j)) < 5 * std::sqrt((q(i, i) * q(j, j) + q(i, j) * q(i, j)) / n));
}

}
