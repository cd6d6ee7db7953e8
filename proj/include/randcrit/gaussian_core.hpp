#pragma once

#include <Eigen/Dense>

#include "randcrit/random.hpp"

namespace randcrit {

// Throws InputError unless `cov` is square, symmetric to 1e-12 relative and has
// no eigenvalue below -1e-10 times the largest.
void require_psd(const Eigen::MatrixXd& cov, const char* what);

class GaussianVector {
 public:
  GaussianVector(Eigen::VectorXd mean, Eigen::MatrixXd covariance);
  explicit GaussianVector(Eigen::MatrixXd covariance);  // centered

  Eigen::Index dim() const { return mean_.size(); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
};

// (X1, X2) with Cov(X1, X2) = cross.
class JointGaussian {
 public:
  JointGaussian(GaussianVector first, GaussianVector second, Eigen::MatrixXd cross);

  const GaussianVector& first() const { return first_; }
  const GaussianVector& second() const { return second_; }
  const Eigen::MatrixXd& cross() const { return cross_; }
  GaussianVector assembled() const;

 private:
  GaussianVector first_;
  GaussianVector second_;
  Eigen::MatrixXd cross_;
};

GaussianVector pushforward(const GaussianVector& g, const Eigen::MatrixXd& map);

struct Regression {
  Eigen::MatrixXd map;         // Cov(X1, X2) S_{X2}^{-1}
  GaussianVector residual;     // law of X1 - map X2
  bool near_singular = false;  // pseudoinverse used
};

// Conditional law of X1 given X2 = x2 is N(map x2 + residual.mean, residual.cov).
// Throws DegeneracyError when the smallest eigenvalue of S_{X2} is below
// 1e-12 of the largest; between 1e-12 and 1e-8 a pseudoinverse is used and
// the result flagged.
Regression condition(const JointGaussian& joint);

struct HomogeneousIntegrals {
  double ball = 0.0;
  double gaussian = 0.0;  // against exp(-|u|^2) / pi^{N/2}
};

// For f positively homogeneous of degree k on R^N, maps \int_{S^{N-1}} f to
// \int_{B^N} f and the Gaussian average.
HomogeneousIntegrals homogeneous_integral_transfer(int degree, int dim, double sphere_integral);

// Integral of a degree-k homogeneous f under gamma_{tA} given its value under gamma_A.
double gaussian_rescale(int degree, double t, double value_at_a);

// Draws from N(mean, cov) through a symmetric square root, so singular
// covariances are allowed.
class GaussianSampler {
 public:
  explicit GaussianSampler(const GaussianVector& g);
  Eigen::VectorXd operator()(Rng& rng) const;
  Eigen::Index dim() const { return mean_.size(); }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd factor_;
};

}  // namespace randcrit
