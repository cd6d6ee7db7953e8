#include "randcrit/goe_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "randcrit/errors.hpp"
#include "randcrit/quadrature.hpp"

namespace randcrit {

namespace {

constexpr double kRescaleAbove = 1e100;
const double kLogRescale = std::log(kRescaleAbove);
const double kPsi0 = std::pow(std::numbers::pi, -0.25);

void require_degree(int n, int lowest, const char* what) {
  if (n < lowest)
    throw InputError(std::string(what) + ": degree must be >= " + std::to_string(lowest));
}

double unscale(double mantissa, double log_scale) {
  if (mantissa == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(mantissa)) + log_scale), mantissa);
}

// Normalized recurrence carried as (mantissa, shared log scale).
class PsiWalker {
 public:
  explicit PsiWalker(double x) : x_(x), cur_(kPsi0), log_scale_(-0.5 * x * x) {}

  int degree() const { return k_; }
  double cur() const { return cur_; }
  double prev() const { return prev_; }
  double log_scale() const { return log_scale_; }
  double actual() const { return unscale(cur_, log_scale_); }
  double actual_prev() const { return unscale(prev_, log_scale_); }

  // mantissa of psi_{k+1} without advancing
  double peek_next() const {
    const double k = k_;
    return std::sqrt(2.0 / (k + 1.0)) * x_ * cur_ - std::sqrt(k / (k + 1.0)) * prev_;
  }

  void advance() {
    const double next = peek_next();
    prev_ = cur_;
    cur_ = next;
    ++k_;
    if (std::abs(cur_) > kRescaleAbove) {
      cur_ /= kRescaleAbove;
      prev_ /= kRescaleAbove;
      log_scale_ += kLogRescale;
    }
  }

 private:
  double x_;
  int k_ = 0;
  double prev_ = 0.0;
  double cur_;
  double log_scale_;
};

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

struct PointData {
  double psi_prev = 0.0;  // psi_{n-1}
  double kernel = 0.0;    // k_n
  double antideriv = 0.0; // G_n = \int_{-inf}^x psi_n
};

PointData walk(int n, double x) {
  PsiWalker w(x);
  // G_{k-1}, G_k
  double g_prev = 0.0;
  double g_cur = std::numbers::sqrt2 * std::pow(std::numbers::pi, 0.25) * std_normal_cdf(x);
  while (w.degree() < n) {
    const double k = w.degree();
    const double g_next =
        (k > 0 ? std::sqrt(k / (k + 1.0)) * g_prev : 0.0) - std::sqrt(2.0 / (k + 1.0)) * w.actual();
    g_prev = g_cur;
    g_cur = g_next;
    w.advance();
  }
  PointData d;
  d.psi_prev = w.actual_prev();
  d.antideriv = g_cur;
  const double nn = n;
  const double m_next = w.peek_next();
  const double mantissa_kernel =
      nn * w.cur() * w.cur() - std::sqrt(nn * (nn + 1.0)) * w.prev() * m_next;
  d.kernel = unscale(mantissa_kernel, 2.0 * w.log_scale());
  return d;
}

}  // namespace

PsiPair hermite_psi_pair(int n, double x) {
  require_degree(n, 0, "hermite_psi_pair");
  PsiWalker w(x);
  while (w.degree() < n) w.advance();
  return {w.cur(), w.prev(), w.log_scale()};
}

double hermite_psi(int n, double x) {
  const PsiPair p = hermite_psi_pair(n, x);
  return unscale(p.value, p.log_scale);
}

HermiteState hermite_state(int n, double x) {
  require_degree(n, 0, "hermite_state");
  HermiteState s;
  s.n = n;
  s.x = x;
  s.hermite.resize(n + 1);
  s.psi.resize(n + 1);
  s.hermite[0] = 1.0;
  if (n >= 1) s.hermite[1] = 2.0 * x;
  for (int k = 1; k < n; ++k) s.hermite[k + 1] = 2.0 * x * s.hermite[k] - 2.0 * k * s.hermite[k - 1];
  PsiWalker w(x);
  s.psi[0] = w.actual();
  for (int k = 1; k <= n; ++k) {
    w.advance();
    s.psi[k] = w.actual();
  }
  return s;
}

double psi_total_integral(int n) {
  require_degree(n, 0, "psi_total_integral");
  if (n % 2 == 1) return 0.0;
  const double k = n / 2;
  const double log_value = 0.5 * std::log(2.0) + 0.5 * log_gamma(2.0 * k + 1.0) +
                           0.25 * std::log(std::numbers::pi) - k * std::log(2.0) -
                           log_gamma(k + 1.0);
  return std::exp(log_value);
}

double cd_kernel_direct(int n, double x) {
  require_degree(n, 1, "cd_kernel_direct");
  PsiWalker w(x);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = w.actual();
    sum += v * v;
    w.advance();
  }
  return sum;
}

double cd_kernel(int n, double x) {
  require_degree(n, 1, "cd_kernel");
  return walk(n, x).kernel;
}

double sign_convolution(int n, double x) {
  require_degree(n, 0, "sign_convolution");
  return walk(n, x).antideriv - 0.5 * psi_total_integral(n);
}

double sign_convolution_quadrature(int n, double x) {
  require_degree(n, 0, "sign_convolution_quadrature");
  const double edge = std::sqrt(2.0 * n + 1.0) + 8.0;
  auto f = [n](double t) { return hermite_psi(n, t); };
  // unit-width panels keep each piece to a few oscillations
  auto integrate = [&](double lo, double hi) {
    double total = 0.0;
    if (hi <= lo) return total;
    const int panels = std::max(1, static_cast<int>(std::ceil(hi - lo)));
    const double h = (hi - lo) / panels;
    for (int i = 0; i < panels; ++i)
      total += integrate_adaptive(f, lo + i * h, lo + (i + 1) * h, 1e-12, 1e-15).value;
    return total;
  };
  const double split = std::clamp(x, -edge, edge);
  return 0.5 * (integrate(-edge, split) - integrate(split, edge));
}

double ell_correction(int n, double x) {
  require_degree(n, 1, "ell_correction");
  return one_point(n, x).ell_n;
}

CorrelationEval one_point(int n, double x) {
  require_degree(n, 1, "one_point");
  const PointData d = walk(n, x);
  CorrelationEval e;
  e.n = n;
  e.x = x;
  e.k_n = d.kernel;
  const double f = d.antideriv - 0.5 * psi_total_integral(n);
  e.ell_n = std::sqrt(0.5 * n) * d.psi_prev * f;
  if (n % 2 == 1) e.ell_n += d.psi_prev / psi_total_integral(n - 1);
  e.R_n = e.k_n + e.ell_n;
  e.rho_n = e.R_n / n;
  return e;
}

double rescaled_density(int n, double s) {
  const double root = std::sqrt(static_cast<double>(n));
  return one_point(n, root * s).R_n / root;
}

double semicircle(double x) {
  const double r = 2.0 - x * x;
  return r > 0.0 ? std::sqrt(r) / std::numbers::pi : 0.0;
}

double wigner_limit_integral(int n, int nodes) {
  require_degree(n, 2, "wigner_limit_integral");
  const auto& rule = gauss_hermite(nodes > 0 ? nodes : 8 * (n + 1));
  const double stretch = std::sqrt(2.0 / 3.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (rule.weights[i] == 0.0) continue;
    sum += rule.weights[i] * one_point(n, stretch * rule.nodes[i]).R_n;
  }
  return sum / std::sqrt(std::numbers::pi * n);
}

double rho_gaussian_moment(int n, int nodes) {
  require_degree(n, 1, "rho_gaussian_moment");
  const auto& rule = gauss_hermite(nodes > 0 ? nodes : 8 * (n + 1));
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (rule.weights[i] == 0.0) continue;
    sum += rule.weights[i] * one_point(n, std::numbers::sqrt2 * rule.nodes[i]).rho_n;
  }
  return std::numbers::sqrt2 * sum;
}

double log_selberg_constant(int n) {
  require_degree(n, 1, "log_selberg_constant");
  double v = 0.5 * n * std::log(2.0) + log_gamma(n + 1.0);
  for (int j = 1; j <= n; ++j) v += log_gamma(0.5 * j);
  return v;
}

}  // namespace randcrit
