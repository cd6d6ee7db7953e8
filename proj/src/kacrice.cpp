#include "randcrit/kacrice.hpp"

#include <cmath>
#include <numbers>

#include "randcrit/constants.hpp"
#include "randcrit/ensembles.hpp"
#include "randcrit/errors.hpp"
#include "randcrit/gaussian_core.hpp"
#include "randcrit/sphere.hpp"

namespace randcrit {

namespace {

JointGaussian as_joint(const CovarianceBlocks& b) {
  return JointGaussian(GaussianVector(b.hess), GaussianVector(b.grad), b.cross);
}

}  // namespace

void CovarianceBlocks::validate() const {
  const Eigen::Index m = grad.rows();
  if (m < 1) throw InputError("CovarianceBlocks: empty gradient block");
  if (hess.rows() != m * (m + 1) / 2)
    throw InputError("CovarianceBlocks: Hessian block must be m(m+1)/2 square");
  if (cross.rows() != hess.rows() || cross.cols() != m)
    throw InputError("CovarianceBlocks: cross block must be m(m+1)/2 x m");
  as_joint(*this);
}

CovarianceBlocks sphere_blocks(int n) {
  const auto k = kernel_constants(n);
  CovarianceBlocks b;
  b.grad = k.s * Eigen::MatrixXd::Identity(2, 2);
  b.hess = covariance_operator(hessian_params(n));
  b.cross = Eigen::MatrixXd::Zero(3, 2);
  return b;
}

CovarianceBlocks limit_blocks(int m, double lambda) {
  if (m < 2) throw InputError("limit_blocks: m must be >= 2");
  if (!(lambda > 0)) throw InputError("limit_blocks: lambda must be positive");
  CovarianceBlocks b;
  b.grad = gradient_constant(m) * std::pow(lambda, m + 2) * Eigen::MatrixXd::Identity(m, m);
  b.hess = hessian_constant(m) * std::pow(lambda, m + 4) *
           covariance_operator(EnsembleParams::universal(m));
  b.cross = Eigen::MatrixXd::Zero(sym_dim(m), m);
  return b;
}

Eigen::MatrixXd conditioned_hessian(const CovarianceBlocks& b) {
  b.validate();
  return condition(as_joint(b)).residual.covariance();
}

double kacrice_prefactor(const CovarianceBlocks& b) {
  const int m = b.dim();
  const double det = b.grad.determinant();
  if (!(det > 0)) throw DegeneracyError("kacrice_prefactor: gradient covariance is singular");
  return std::exp(-0.5 * m * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(det));
}

MCEstimate kacrice_integrand(const CovarianceBlocks& b, std::size_t samples, std::uint64_t seed,
                             unsigned threads) {
  const Eigen::MatrixXd xi = conditioned_hessian(b);
  const double pre = kacrice_prefactor(b);
  const int m = b.dim();
  const GaussianSampler draw_hat{GaussianVector(xi)};
  MCEstimate e = monte_carlo(samples, seed, threads, [&](Rng& rng) {
    return abs_det(SymMatrix::from_hat_coordinates(m, draw_hat(rng)));
  });
  e.mean *= pre;
  e.std_error *= pre;
  return e;
}

}  // namespace randcrit
