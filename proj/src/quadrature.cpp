#include "randcrit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "randcrit/errors.hpp"
#include "randcrit/goe_spectral.hpp"

namespace randcrit {

namespace {

GaussHermiteRule build_rule(std::size_t k) {
  GaussHermiteRule rule;
  if (k == 0) throw InputError("gauss_hermite: rule size must be positive");
  const int n = static_cast<int>(k);

  // Jacobi matrix of the physicists' Hermite recurrence.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int i = 1; i < n; ++i) sub(i - 1) = std::sqrt(0.5 * i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  Eigen::VectorXd x = solver.eigenvalues();

  rule.nodes.resize(k);
  rule.weights.resize(k);
  for (int i = 0; i < n; ++i) {
    double xi = x(i);
    // Polish on psi_k; the common scale cancels in the Newton ratio.
    for (int it = 0; it < 6; ++it) {
      const PsiPair p = hermite_psi_pair(n, xi);
      const double deriv = std::sqrt(2.0 * n) * p.prev - xi * p.value;
      if (deriv == 0.0) break;
      const double step = p.value / deriv;
      xi -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(xi))) break;
    }
    const PsiPair p = hermite_psi_pair(n, xi);
    const double log_prev = std::log(std::abs(p.prev)) + p.log_scale;
    rule.nodes[i] = xi;
    rule.weights[i] = std::exp(-std::log(static_cast<double>(n)) - 2.0 * log_prev - xi * xi);
  }
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(std::size_t k) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[k];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(build_rule(k));
  return *slot;
}

QuadResult integrate_adaptive_nothrow(const std::function<double(double)>& f, double a,
                                      double b, double rel_tol, unsigned max_depth) {
  QuadResult r;
  double l1 = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, max_depth, rel_tol, &r.error, &l1);
  return r;
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, unsigned max_depth) {
  QuadResult r = integrate_adaptive_nothrow(f, a, b, rel_tol, max_depth);
  const double allowed = std::max(rel_tol * std::abs(r.value), abs_tol);
  if (!std::isfinite(r.value) || r.error > 10.0 * allowed) {
    std::ostringstream msg;
    msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge: error estimate "
        << r.error << " vs requested " << allowed;
    throw NumericError(msg.str(), r.error);
  }
  return r;
}

double log_gamma(double x) { return boost::math::lgamma(x); }

}  // namespace randcrit
