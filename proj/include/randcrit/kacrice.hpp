#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "randcrit/matgauss.hpp"

namespace randcrit {

// Pointwise covariance data of a random field at one point. Hessian
// quantities live in the orthonormal hat coordinates of symmetric matrices
// (diagonal entries, then sqrt(2) x_ij for i < j).
struct CovarianceBlocks {
  Eigen::MatrixXd grad;   // m x m, covariance of du(p)
  Eigen::MatrixXd hess;   // N x N with N = m(m+1)/2
  Eigen::MatrixXd cross;  // N x m, Cov(Hessian, gradient)

  int dim() const { return static_cast<int>(grad.rows()); }
  // Shapes, symmetry and positive semidefiniteness of the joint covariance.
  void validate() const;
};

// Degree-n spherical harmonic: grad = s I, hess = law of the Hessian, cross = 0.
CovarianceBlocks sphere_blocks(int n);

// High-frequency limit on an m-manifold at frequency lambda:
// grad = K_m lambda^{m+2} I, hess = c_m lambda^{m+4} Q(3,1,1), cross = 0.
CovarianceBlocks limit_blocks(int m, double lambda);

// Covariance of the Hessian conditioned on a vanishing gradient:
// hess - cross grad^{-1} cross^T. Throws DegeneracyError for singular grad.
Eigen::MatrixXd conditioned_hessian(const CovarianceBlocks& b);

// (2 pi)^{-m/2} det(grad)^{-1/2}.
double kacrice_prefactor(const CovarianceBlocks& b);

// Expected critical point density: prefactor times E|det Y| with Y the
// conditioned Hessian reassembled as a symmetric matrix. E|det Y| by MC.
MCEstimate kacrice_integrand(const CovarianceBlocks& b, std::size_t samples, std::uint64_t seed,
                             unsigned threads = 0);

}  // namespace randcrit
