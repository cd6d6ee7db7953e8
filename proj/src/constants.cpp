#include "randcrit/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "randcrit/errors.hpp"
#include "randcrit/goe_spectral.hpp"
#include "randcrit/quadrature.hpp"

namespace randcrit {

namespace {

constexpr double kPi = std::numbers::pi;

void require_m(int m, int lowest, const char* what) {
  if (m < lowest)
    throw InputError(std::string(what) + ": m must be >= " + std::to_string(lowest) + ", got " +
                     std::to_string(m));
}

// E x^{2k} for x ~ N(0, 1/2): (2k-1)!! / 2^k
double half_gaussian_moment(int power) {
  double v = 1.0;
  for (int j = power - 1; j > 0; j -= 2) v *= 0.5 * j;
  return v;
}

}  // namespace

double spectral_constant(const std::vector<int>& alpha, const std::vector<int>& beta) {
  if (alpha.size() != beta.size() || alpha.empty())
    throw InputError("spectral_constant: multi-indices must have the same positive length");
  const int m = static_cast<int>(alpha.size());
  int order_a = 0, order_b = 0;
  for (int i = 0; i < m; ++i) {
    if (alpha[i] < 0 || beta[i] < 0) throw InputError("spectral_constant: negative index");
    order_a += alpha[i];
    order_b += beta[i];
  }
  if (order_a + order_b > 4)
    throw InputError("spectral_constant: only total order <= 4 is supported");
  double moment = 1.0;
  for (int i = 0; i < m; ++i) {
    if ((alpha[i] - beta[i]) % 2 != 0) return 0.0;
    moment *= half_gaussian_moment(alpha[i] + beta[i]);
  }
  const int total = order_a + order_b;
  const double sign = ((order_a - order_b) / 2) % 2 == 0 ? 1.0 : -1.0;
  const double log_scale = -log_gamma(1.0 + 0.5 * (total + m)) - 0.5 * m * std::log(4.0 * kPi);
  return sign * moment * std::exp(log_scale);
}

double gradient_constant(int m) {
  require_m(m, 1, "gradient_constant");
  return 0.5 * std::exp(-0.5 * m * std::log(4.0 * kPi) - log_gamma(2.0 + 0.5 * m));
}

double hessian_constant(int m) {
  require_m(m, 1, "hessian_constant");
  return 0.25 * std::exp(-0.5 * m * std::log(4.0 * kPi) - log_gamma(3.0 + 0.5 * m));
}

BallSphere ball_sphere_volumes(int n) {
  require_m(n, 1, "ball_sphere_volumes");
  const double ball = std::exp(0.5 * n * std::log(kPi) - log_gamma(1.0 + 0.5 * n));
  return {ball, n * ball};
}

double log_I_m_fyodorov(int m, int nodes) {
  require_m(m, 2, "I_m_fyodorov");
  const double moment = rho_gaussian_moment(m + 1, nodes > 0 ? nodes : std::max(96, 8 * (m + 2)));
  if (!(moment > 0))
    throw NumericError("I_m_fyodorov: non-positive Gaussian moment of the eigenvalue density",
                       moment);
  return 0.5 * (m + 3) * std::log(2.0) + log_gamma(0.5 * (m + 3)) - 0.5 * std::log(kPi) +
         std::log(moment);
}

double I_m_fyodorov(int m, int nodes) { return std::exp(log_I_m_fyodorov(m, nodes)); }

LogValue C_of_m(int m) {
  const double log_c = 0.5 * m * std::log(2.0 / (m + 4.0)) + log_gamma(1.0 + 0.5 * m) +
                       log_I_m_fyodorov(m);
  return {log_c, std::exp(log_c)};
}

double density_limit_coefficient(int m) {
  const double log_ball = 0.5 * m * std::log(kPi) - log_gamma(1.0 + 0.5 * m);
  return std::exp(C_of_m(m).log_value + log_ball - m * std::log(2.0 * kPi));
}

std::vector<AsymptoticRow> asymptotic_diagnostic(const std::vector<int>& m_values) {
  std::vector<AsymptoticRow> rows;
  rows.reserve(m_values.size());
  for (int m : m_values) {
    require_m(m, 2, "asymptotic_diagnostic");
    AsymptoticRow r;
    r.m = m;
    r.log_I = log_I_m_fyodorov(m);
    r.log_C = 0.5 * m * std::log(2.0 / (m + 4.0)) + log_gamma(1.0 + 0.5 * m) + r.log_I;
    const double scale = 0.5 * m * std::log(static_cast<double>(m));
    r.ratio_C = r.log_C / scale;
    r.ratio_I = r.log_I / scale;
    r.gap_ratio = std::abs(r.log_C - r.log_I) / scale;
    rows.push_back(r);
  }
  return rows;
}

ConstantsRow constants_row(int m, std::size_t samples, std::uint64_t seed, unsigned threads) {
  require_m(m, 2, "constants");
  ConstantsRow row;
  row.m = m;
  row.K_m = gradient_constant(m);
  row.c_m = hessian_constant(m);
  row.I_m_mc = expected_abs_det(EnsembleParams::universal(m), samples ? samples : default_samples(m),
                                seed, threads);
  const LogValue c = C_of_m(m);
  row.I_m_fyodorov = I_m_fyodorov(m);
  row.C_m = c.value;
  row.log_ratio = c.log_value / (0.5 * m * std::log(static_cast<double>(m)));
  return row;
}

}  // namespace randcrit
