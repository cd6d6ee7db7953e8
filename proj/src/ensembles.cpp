#include "randcrit/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "randcrit/errors.hpp"

namespace randcrit {

void EnsembleParams::validate() const {
  std::ostringstream why;
  if (m < 2) why << "matrix size m=" << m << " must be >= 2";
  else if (!(c > 0)) why << "off-diagonal variance c=" << c << " must be > 0";
  else if (!(a - b > 0)) why << "a - b = " << a - b << " must be > 0";
  else if (!(a + (m - 1) * b > 0)) why << "a + (m-1) b = " << a + (m - 1) * b << " must be > 0";
  else if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) why << "non-finite parameter";
  else return;
  throw ParameterError("ensemble parameters: " + why.str());
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InputError("SymMatrix: matrix must be square");
  SymMatrix x(static_cast<int>(a.rows()));
  for (int i = 0; i < x.m_; ++i)
    for (int j = i; j < x.m_; ++j) x.at(i, j) = 0.5 * (a(i, j) + a(j, i));
  return x;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < m_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::trace_of_square() const { return frobenius_inner(*this, *this); }

Eigen::MatrixXd SymMatrix::dense() const {
  Eigen::MatrixXd a(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j) a(i, j) = a(j, i) = (*this)(i, j);
  return a;
}

Eigen::VectorXd SymMatrix::hat_coordinates() const {
  Eigen::VectorXd v(sym_dim(m_));
  for (int i = 0; i < m_; ++i) v(i) = (*this)(i, i);
  int k = m_;
  for (int i = 0; i < m_; ++i)
    for (int j = i + 1; j < m_; ++j) v(k++) = std::numbers::sqrt2 * (*this)(i, j);
  return v;
}

SymMatrix SymMatrix::from_hat_coordinates(int m, const Eigen::VectorXd& v) {
  if (v.size() != sym_dim(m)) throw InputError("SymMatrix: coordinate vector has the wrong length");
  SymMatrix x(m);
  for (int i = 0; i < m; ++i) x.at(i, i) = v(i);
  int k = m;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) x.at(i, j) = v(k++) / std::numbers::sqrt2;
  return x;
}

double frobenius_inner(const SymMatrix& x, const SymMatrix& y) {
  if (x.size() != y.size()) throw InputError("frobenius_inner: size mismatch");
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    s += x(i, i) * y(i, i);
    for (int j = i + 1; j < x.size(); ++j) s += 2.0 * x(i, j) * y(i, j);
  }
  return s;
}

int sym_dim(int m) { return m * (m + 1) / 2; }

namespace {

Eigen::MatrixXd diagonal_block(const EnsembleParams& p) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(p.m, p.m, p.b);
  g.diagonal().array() = p.a;
  return g;
}

Eigen::MatrixXd block_operator(const EnsembleParams& p, double offdiag) {
  p.validate();
  const int n = sym_dim(p.m);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  q.topLeftCorner(p.m, p.m) = diagonal_block(p);
  for (int k = p.m; k < n; ++k) q(k, k) = offdiag;
  return q;
}

}  // namespace

Eigen::MatrixXd covariance_operator(const EnsembleParams& p) { return block_operator(p, 2.0 * p.c); }

Eigen::MatrixXd raw_covariance(const EnsembleParams& p) { return block_operator(p, p.c); }

double log_covariance_det(const EnsembleParams& p) {
  p.validate();
  const int m = p.m;
  return (m - 1) * std::log(p.a - p.b) + std::log(p.a + (m - 1) * p.b) +
         0.5 * m * (m - 1) * std::log(2.0 * p.c);
}

double covariance_det(const EnsembleParams& p) { return std::exp(log_covariance_det(p)); }

EnsembleParams covariance_inverse(const EnsembleParams& p) {
  p.validate();
  const int m = p.m;
  const double diff = 1.0 / (p.a - p.b);
  const double top = 1.0 / (p.a + (m - 1) * p.b);
  // a' - b' = diff, a' + (m-1) b' = top
  const double b = (top - diff) / m;
  return {m, diff + b, b, 1.0 / (4.0 * p.c)};
}

double quadratic_form(const EnsembleParams& p, const SymMatrix& x) {
  p.validate();
  if (x.size() != p.m) throw InputError("quadratic_form: matrix size differs from ensemble size");
  double diag_sq = 0.0;
  for (int i = 0; i < p.m; ++i) diag_sq += x(i, i) * x(i, i);
  const double tr = x.trace();
  const double off_sq = x.trace_of_square() - diag_sq;
  return (p.a - p.b) * diag_sq + p.b * tr * tr + 2.0 * p.c * off_sq;
}

double log_density(const EnsembleParams& p, const SymMatrix& x) {
  const EnsembleParams inv = covariance_inverse(p);
  if (x.size() != p.m) throw InputError("density: matrix size differs from ensemble size");
  double diag_sq = 0.0;
  for (int i = 0; i < p.m; ++i) diag_sq += x(i, i) * x(i, i);
  const double tr = x.trace();
  const double form = (inv.a - inv.b - 1.0 / (2.0 * p.c)) * diag_sq + inv.b * tr * tr +
                      x.trace_of_square() / (2.0 * p.c);
  const int n = sym_dim(p.m);
  return -0.5 * n * std::log(2.0 * std::numbers::pi) - 0.5 * log_covariance_det(p) - 0.5 * form;
}

double density(const EnsembleParams& p, const SymMatrix& x) { return std::exp(log_density(p, x)); }

SymMatrix sample(const EnsembleParams& p, Rng& rng) {
  p.validate();
  std::normal_distribution<double> normal;
  const int m = p.m;
  SymMatrix x(m);
  double mean = 0.0;
  for (int i = 0; i < m; ++i) {
    x.at(i, i) = normal(rng);
    mean += x(i, i);
  }
  mean /= m;
  const double spread = std::sqrt(p.a - p.b);
  const double shift = (std::sqrt(p.a + (m - 1) * p.b) - spread) * mean;
  for (int i = 0; i < m; ++i) x.at(i, i) = spread * x(i, i) + shift;
  const double sc = std::sqrt(p.c);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) x.at(i, j) = sc * normal(rng);
  return x;
}

SymMatrix sample_goe_plus_scalar(int m, double c, Rng& rng) {
  EnsembleParams{m, 3.0 * c, c, c}.validate();
  std::normal_distribution<double> normal;
  SymMatrix x(m);
  const double sd = std::sqrt(c);
  for (int i = 0; i < m; ++i) x.at(i, i) = std::numbers::sqrt2 * sd * normal(rng);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) x.at(i, j) = sd * normal(rng);
  const double y = sd * normal(rng);
  for (int i = 0; i < m; ++i) x.at(i, i) += y;
  return x;
}

double invariant_norm(const EnsembleParams& p, const SymMatrix& a) {
  p.validate();
  const double scale = std::max({std::abs(p.a), std::abs(p.b), std::abs(p.c)});
  if (std::abs(p.a - p.b - 2.0 * p.c) > 1e-12 * scale)
    throw ParameterError("invariant_norm: requires a - b = 2c");
  if (a.size() != p.m) throw InputError("invariant_norm: matrix size differs from ensemble size");
  const double tr = a.trace();
  return p.b * tr * tr + 2.0 * p.c * a.trace_of_square();
}

double fourth_moment_oracle(double c, int i, int j, int k, int l, int m) {
  auto in_range = [m](int r, int s) { return r >= 0 && s >= 0 && r < m && s < m && r <= s; };
  if (!in_range(i, j) || !in_range(k, l))
    throw InputError("fourth_moment_oracle: indices must satisfy 0 <= i <= j < m");
  if (i != k || j != l) {
    if (i == j && k == l) return c;  // E x_i^2 x_k^2, i != k
    return 0.0;
  }
  return i == j ? 3.0 * c : 4.0 * c;
}

double log_mu_m(int m) {
  if (m < 2) throw InputError("mu_m: m must be >= 2");
  return (0.5 * m * (m - 1) + m - 1) * std::log(2.0) + std::log(m + 2.0);
}

double mu_m(int m) { return std::exp(log_mu_m(m)); }

}  // namespace randcrit
