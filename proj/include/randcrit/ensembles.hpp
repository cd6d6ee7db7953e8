#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "randcrit/random.hpp"

namespace randcrit {

// Centered Gaussian measure on m x m real symmetric matrices with
//   E x_ii^2 = a,  E x_ii x_jj = b (i != j),  E x_ij^2 = c (i < j),
// all other second moments zero.
struct EnsembleParams {
  int m = 2;
  double a = 3.0;
  double b = 1.0;
  double c = 1.0;

  // Throws ParameterError unless m >= 2, a - b > 0, c > 0, a + (m-1) b > 0.
  void validate() const;
  EnsembleParams scaled(double t) const { return {m, t * a, t * b, t * c}; }

  // a = 3c, b = c: the conjugation-invariant family containing the
  // limiting Hessian law.
  static EnsembleParams universal(int m, double c = 1.0) { return {m, 3.0 * c, c, c}; }
  static EnsembleParams goe(int m) { return {m, 2.0, 0.0, 1.0}; }
};

// Dense symmetric matrix stored as its upper triangle, row by row.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int m) : m_(m), entries_(static_cast<std::size_t>(m) * (m + 1) / 2, 0.0) {}

  static SymMatrix from_dense(const Eigen::MatrixXd& a);

  int size() const { return m_; }
  double operator()(int i, int j) const { return entries_[index(i, j)]; }
  double& at(int i, int j) { return entries_[index(i, j)]; }
  const std::vector<double>& packed() const { return entries_; }

  double trace() const;
  // tr(X^2) = (X, X)
  double trace_of_square() const;
  Eigen::MatrixXd dense() const;

  // Coordinates in the orthonormal basis for the trace inner product:
  // diagonal entries first, then sqrt(2) x_ij for i < j in row order.
  Eigen::VectorXd hat_coordinates() const;
  static SymMatrix from_hat_coordinates(int m, const Eigen::VectorXd& v);

 private:
  std::size_t index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i) * m_ - static_cast<std::size_t>(i) * (i - 1) / 2 +
           static_cast<std::size_t>(j - i);
  }

  int m_ = 0;
  std::vector<double> entries_;
};

double frobenius_inner(const SymMatrix& x, const SymMatrix& y);

// m(m+1)/2
int sym_dim(int m);

// Covariance operator in hat coordinates: G_m(a,b) on the diagonal block
// ((a-b) I + b 11^T) and 2c I on the off-diagonal block.
Eigen::MatrixXd covariance_operator(const EnsembleParams& p);
// Covariance of the raw entries (x_11..x_mm, x_ij for i<j): G_m(a,b) (+) c I.
Eigen::MatrixXd raw_covariance(const EnsembleParams& p);

// det of the hat-coordinate covariance: (a-b)^{m-1} (a+(m-1)b) (2c)^{m(m-1)/2}.
double covariance_det(const EnsembleParams& p);
double log_covariance_det(const EnsembleParams& p);

// Parameters (a', b', c') whose covariance operator inverts that of p:
// a'-b' = 1/(a-b), a'+(m-1)b' = 1/(a+(m-1)b), 2c' = 1/(2c).
EnsembleParams covariance_inverse(const EnsembleParams& p);

// (Q X, X) for the hat-coordinate covariance operator Q of p.
double quadratic_form(const EnsembleParams& p, const SymMatrix& x);

// Density against the volume element 2^{m(m-1)/4} prod_{i<=j} dx_ij.
double density(const EnsembleParams& p, const SymMatrix& x);
double log_density(const EnsembleParams& p, const SymMatrix& x);

SymMatrix sample(const EnsembleParams& p, Rng& rng);
// B + Y I with B having E b_ii^2 = 2c, E b_ij^2 = c and Y ~ N(0, c);
// same law as sample(EnsembleParams::universal(m, c)).
SymMatrix sample_goe_plus_scalar(int m, double c, Rng& rng);

// b (tr A)^2 + 2c tr A^2; requires a - b = 2c.
double invariant_norm(const EnsembleParams& p, const SymMatrix& a);

// c E[(E_ij x, x)(E_kl x, x)] for x standard normal in R^m, where E_ii = e_i e_i^T
// and E_ij = e_i e_j^T + e_j e_i^T.
double fourth_moment_oracle(double c, int i, int j, int k, int l, int m);

// 2^{C(m,2) + m - 1} (m + 2), the covariance determinant of the a = 3, b = c = 1 law.
double mu_m(int m);
double log_mu_m(int m);

}  // namespace randcrit
