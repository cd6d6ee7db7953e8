#include "randcrit/gaussian_core.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "randcrit/errors.hpp"
#include "randcrit/quadrature.hpp"

namespace randcrit {

void require_psd(const Eigen::MatrixXd& cov, const char* what) {
  if (cov.rows() != cov.cols())
    throw InputError(std::string(what) + ": covariance must be square");
  if (cov.size() == 0) return;
  if (!cov.allFinite()) throw InputError(std::string(what) + ": covariance has non-finite entries");
  const double scale = cov.cwiseAbs().maxCoeff();
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InputError(std::string(what) + ": covariance is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev(0) < -1e-10 * std::max(ev(ev.size() - 1), 0.0) || (ev(ev.size() - 1) <= 0 && ev(0) < 0))
    throw InputError(std::string(what) + ": covariance is not positive semidefinite");
}

GaussianVector::GaussianVector(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (mean_.size() != covariance_.rows())
    throw InputError("GaussianVector: mean and covariance dimensions differ");
  require_psd(covariance_, "GaussianVector");
}

GaussianVector::GaussianVector(Eigen::MatrixXd covariance)
    : mean_(Eigen::VectorXd::Zero(covariance.rows())), covariance_(std::move(covariance)) {
  require_psd(covariance_, "GaussianVector");
}

JointGaussian::JointGaussian(GaussianVector first, GaussianVector second, Eigen::MatrixXd cross)
    : first_(std::move(first)), second_(std::move(second)), cross_(std::move(cross)) {
  if (cross_.rows() != first_.dim() || cross_.cols() != second_.dim())
    throw InputError("JointGaussian: cross-covariance has the wrong shape");
  require_psd(assembled().covariance(), "JointGaussian");
}

GaussianVector JointGaussian::assembled() const {
  const Eigen::Index d1 = first_.dim(), d2 = second_.dim();
  Eigen::VectorXd mean(d1 + d2);
  mean << first_.mean(), second_.mean();
  Eigen::MatrixXd cov(d1 + d2, d1 + d2);
  cov.topLeftCorner(d1, d1) = first_.covariance();
  cov.topRightCorner(d1, d2) = cross_;
  cov.bottomLeftCorner(d2, d1) = cross_.transpose();
  cov.bottomRightCorner(d2, d2) = second_.covariance();
  return GaussianVector(std::move(mean), std::move(cov));
}

GaussianVector pushforward(const GaussianVector& g, const Eigen::MatrixXd& map) {
  if (map.cols() != g.dim())
    throw InputError("pushforward: map has " + std::to_string(map.cols()) +
                     " columns, vector has dimension " + std::to_string(g.dim()));
  Eigen::MatrixXd cov = map * g.covariance() * map.transpose();
  cov = 0.5 * (cov + cov.transpose());
  return GaussianVector(map * g.mean(), std::move(cov));
}

Regression condition(const JointGaussian& joint) {
  const Eigen::MatrixXd& s2 = joint.second().covariance();
  if (s2.size() == 0) throw InputError("condition: empty conditioning block");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s2);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  const double ratio = top > 0 ? ev(0) / top : 0.0;
  if (!(ratio > 1e-12))
    throw DegeneracyError("condition: conditioning covariance is singular (eigenvalue ratio " +
                          std::to_string(ratio) + ")");

  Regression r{Eigen::MatrixXd(), GaussianVector(Eigen::MatrixXd::Zero(0, 0)), ratio < 1e-8};
  Eigen::MatrixXd inverse;
  if (r.near_singular) {
    Eigen::VectorXd inv_ev = ev;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      inv_ev(i) = ev(i) > 1e-12 * top ? 1.0 / ev(i) : 0.0;
    inverse = es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
  } else {
    inverse = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  }
  r.map = joint.cross() * inverse;
  Eigen::MatrixXd cov = joint.first().covariance() - r.map * joint.cross().transpose();
  cov = 0.5 * (cov + cov.transpose());
  // clear roundoff below the PSD threshold (exact self-conditioning gives 0)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rs(cov);
  const double rtop = std::max(rs.eigenvalues().cwiseAbs().maxCoeff(),
                               joint.first().covariance().cwiseAbs().maxCoeff());
  Eigen::VectorXd rev = rs.eigenvalues();
  bool clipped = false;
  for (Eigen::Index i = 0; i < rev.size(); ++i)
    if (rev(i) < 0 && rev(i) > -1e-10 * rtop) {
      rev(i) = 0.0;
      clipped = true;
    }
  if (clipped) cov = rs.eigenvectors() * rev.asDiagonal() * rs.eigenvectors().transpose();
  r.residual = GaussianVector(joint.first().mean() - r.map * joint.second().mean(), std::move(cov));
  return r;
}

HomogeneousIntegrals homogeneous_integral_transfer(int degree, int dim, double sphere_integral) {
  if (degree < 0) throw InputError("homogeneous_integral_transfer: degree must be >= 0");
  if (dim < 1) throw InputError("homogeneous_integral_transfer: dimension must be >= 1");
  HomogeneousIntegrals out;
  const double total = degree + dim;
  out.ball = sphere_integral / total;
  out.gaussian = std::exp(log_gamma(1.0 + 0.5 * total) - 0.5 * dim * std::log(std::numbers::pi)) *
                 out.ball;
  return out;
}

double gaussian_rescale(int degree, double t, double value_at_a) {
  if (!(t > 0)) throw InputError("gaussian_rescale: scale must be positive");
  return std::pow(t, 0.5 * degree) * value_at_a;
}

GaussianSampler::GaussianSampler(const GaussianVector& g) : mean_(g.mean()) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.covariance());
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  factor_ = es.eigenvectors() * root.asDiagonal();
}

Eigen::VectorXd GaussianSampler::operator()(Rng& rng) const {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(factor_.cols());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  return mean_ + factor_ * z;
}

}  // namespace randcrit
