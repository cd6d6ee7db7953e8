#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "randcrit/goe_spectral.hpp"
#include "randcrit/quadrature.hpp"
#include "support.hpp"

using namespace randcrit;

namespace {

// \int_R exp(-y^2/2) |x - y| dy, split at the kink.
double abs_gauss(double x) {
  auto f = [x](double y) { return std::exp(-y * y / 2) * std::abs(x - y); };
  return integrate_adaptive(f, -40.0, x, 1e-12).value + integrate_adaptive(f, x, 40.0, 1e-12).value;
}

const double kRho0 = std::numbers::sqrt2 / std::numbers::pi;

double total_mass(int n) {
  const double edge = std::sqrt(2.0 * n) + 10.0;
  return integrate_adaptive([n](double x) { return one_point(n, x).R_n; }, -edge, edge, 1e-11).value;
}

double rescaled_ell(int n, double s) {
  const double rn = std::sqrt(static_cast<double>(n));
  return ell_correction(n, rn * s) / rn;
}

}  // namespace

TEST_SUITE("goe_spectral") {

TEST_CASE("Hermite function values") {
  CHECK(hermite_psi(0, 0.0) == doctest::Approx(std::pow(std::numbers::pi, -0.25)));
  CHECK(hermite_psi(1, 0.0) == 0.0);
  // psi_2 = (4x^2 - 2) e^{-x^2/2} / sqrt(8 sqrt pi)
  const double x = 0.7;
  CHECK(hermite_psi(2, x) ==
        doctest::Approx((4 * x * x - 2) * std::exp(-x * x / 2) / std::sqrt(8 * std::sqrt(std::numbers::pi))));
  const HermiteState st = hermite_state(5, x);
  CHECK(st.hermite[3] == doctest::Approx(8 * x * x * x - 12 * x));
  for (int k = 0; k <= 5; ++k) CHECK(st.psi[k] == doctest::Approx(hermite_psi(k, x)).epsilon(1e-13));
  // Far beyond the turning point of a high degree the scaled recurrence stays finite.
  const PsiPair far = hermite_psi_pair(400, 40.0);
  CHECK(std::isfinite(far.value));
  CHECK(std::isfinite(hermite_psi(400, 20.0)));
}

TEST_CASE("orthonormality by Gauss-Hermite") {
  const auto& rule = gauss_hermite(40);
  for (int j : {0, 3, 10})
    for (int k : {0, 3, 10}) {
      double s = 0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double y = rule.nodes[i];
        s += rule.weights[i] * std::exp(y * y) * hermite_psi(j, y) * hermite_psi(k, y);
      }
      CHECK(std::abs(s - (j == k ? 1.0 : 0.0)) < 1e-8);
    }
}

TEST_CASE("Gauss-Hermite rule") {
  const auto& rule = gauss_hermite(20);
  double w = 0, x2 = 0, x8 = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = rule.nodes[i];
    w += rule.weights[i];
    x2 += rule.weights[i] * y * y;
    x8 += rule.weights[i] * std::pow(y, 8);
  }
  const double sp = std::sqrt(std::numbers::pi);
  CHECK(w == doctest::Approx(sp).epsilon(1e-14));
  CHECK(x2 == doctest::Approx(sp / 2).epsilon(1e-14));
  CHECK(x8 == doctest::Approx(105 * sp / 16).epsilon(1e-13));
}

TEST_CASE("integral of psi") {
  CHECK(psi_total_integral(0) == doctest::Approx(std::sqrt(2.0) * std::pow(std::numbers::pi, 0.25)));
  CHECK(psi_total_integral(2) == doctest::Approx(std::pow(std::numbers::pi, 0.25)));
  CHECK(psi_total_integral(7) == 0.0);
  for (int n : {4, 10, 31, 80}) {
    const double edge = std::sqrt(2.0 * n) + 12;
    const double q = integrate_adaptive([n](double t) { return hermite_psi(n, t); }, -edge, edge, 1e-12).value;
    CHECK(q == doctest::Approx(psi_total_integral(n)).epsilon(1e-9));
  }
}

TEST_CASE("Christoffel-Darboux kernel") {
  CHECK(cd_kernel(1, 0.0) == doctest::Approx(1 / std::sqrt(std::numbers::pi)));
  CHECK(cd_kernel(2, 0.0) == doctest::Approx(1 / std::sqrt(std::numbers::pi)));
  CHECK(cd_kernel(1, 1.3) == doctest::Approx(std::exp(-1.69) / std::sqrt(std::numbers::pi)));
  for (int n : {1, 2, 5, 17, 50, 64, 99, 120}) {
    const double span = 2 * std::sqrt(static_cast<double>(n));
    for (int k = 0; k <= 20; ++k) {
      const double x = -span + 2 * span * k / 20.0;
      const double direct = cd_kernel_direct(n, x);
      CHECK(std::abs(cd_kernel(n, x) - direct) <= 1e-8 * direct);
    }
  }
}

TEST_CASE("sign convolution routes agree") {
  for (int n : {1, 2, 7, 20, 45})
    for (double x : {-3.0, -0.4, 0.0, 1.1, 6.5}) {
      const double rec = sign_convolution(n, x);
      CHECK(std::abs(rec - sign_convolution_quadrature(n, x)) < 1e-9);
    }
  // F_0(x) = \int_{-inf}^x psi_0 - \int psi_0 / 2
  const double x = 0.3;
  const double f0 = std::sqrt(2.0) * std::pow(std::numbers::pi, 0.25) * (0.5 * std::erfc(-x / std::sqrt(2.0)) - 0.5);
  CHECK(sign_convolution(0, x) == doctest::Approx(f0));
}

TEST_CASE("correction term") {
  // Even n: alpha_n = 0, so l_n is the convolution term alone.
  const double x = 0.9;
  for (int n : {2, 8})
    CHECK(ell_correction(n, x) ==
          doctest::Approx(std::sqrt(n / 2.0) * hermite_psi(n - 1, x) * sign_convolution(n, x)));
  const int n = 9;
  CHECK(ell_correction(n, x) ==
        doctest::Approx(std::sqrt(n / 2.0) * hermite_psi(n - 1, x) * sign_convolution(n, x) +
                        hermite_psi(n - 1, x) / psi_total_integral(n - 1)));
  auto sup = [](int n) {
    double s = 0;
    for (int k = 0; k <= 300; ++k) s = std::max(s, std::abs(rescaled_ell(n, -1.5 + 3.0 * k / 300)));
    return s;
  };
  CHECK(sup(20) > sup(80));
}

TEST_CASE("one-point function normalization and positivity") {
  // n = 1: R_1 is the standard normal density.
  for (double x : {0.0, 0.8, -2.0})
    CHECK(one_point(1, x).R_n ==
          doctest::Approx(std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi)).epsilon(1e-12));
  for (int n : {1, 2, 3, 4, 7, 12, 25, 40, 60})
    CHECK(std::abs(total_mass(n) / n - 1) < 1e-4);
  for (int n : {2, 3, 10, 33, 60}) {
    const double edge = std::sqrt(2.0 * n) + 4;
    for (int k = 0; k <= 400; ++k) CHECK(one_point(n, -edge + 2 * edge * k / 400).R_n >= -1e-8);
  }
  const CorrelationEval e = one_point(11, 0.4);
  CHECK(e.R_n == doctest::Approx(e.k_n + e.ell_n));
  CHECK(e.rho_n == doctest::Approx(e.R_n / 11));
}

TEST_CASE("2 x 2 and 3 x 3 densities against direct integration") {
  // Eigenvalues of the n = 2 ensemble: density prop. to exp(-(a^2+b^2)/2) |a - b|.
  const double logz2 = log_selberg_constant(2);
  for (double x : {0.0, 0.7, -1.9}) {
    const double direct = 2 * std::exp(-x * x / 2) * abs_gauss(x) / std::exp(logz2);
    CHECK(one_point(2, x).R_n == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("Selberg constants") {
  CHECK(std::exp(log_selberg_constant(1)) == doctest::Approx(std::sqrt(2 * std::numbers::pi)));
  CHECK(std::exp(log_selberg_constant(2)) == doctest::Approx(4 * std::sqrt(std::numbers::pi)));
  const QuadResult z2 =
      integrate_adaptive([](double x) { return std::exp(-x * x / 2) * abs_gauss(x); }, -40.0, 40.0, 1e-10);
  CHECK(z2.value == doctest::Approx(std::exp(log_selberg_constant(2))).epsilon(1e-8));

  // Z_3 over the ordered chamber a < b < c, times 3!.
  auto inner = [](double a, double b) {
    return integrate_adaptive([a, b](double c) { return std::exp(-c * c / 2) * (c - a) * (c - b); }, b, 12.0,
                              1e-11)
        .value;
  };
  const double z3 =
      6 * integrate_adaptive(
              [&](double a) {
                return std::exp(-a * a / 2) *
                       integrate_adaptive([&](double b) { return std::exp(-b * b / 2) * (b - a) * inner(a, b); }, a,
                                          12.0, 1e-10)
                           .value;
              },
              -12.0, 12.0, 1e-9)
              .value;
  CHECK(std::abs(z3 / std::exp(log_selberg_constant(3)) - 1) < 1e-4);
}

TEST_CASE("semicircle") {
  CHECK(semicircle(0.0) == doctest::Approx(kRho0));
  CHECK(semicircle(std::sqrt(2.0)) == 0.0);
  CHECK(semicircle(2.0) == 0.0);
  const double r = std::sqrt(2.0);
  // x = sqrt 2 sin(theta) removes the square-root endpoints.
  const double mass = integrate_adaptive(
      [r](double th) { return semicircle(r * std::sin(th)) * r * std::cos(th); }, -std::numbers::pi / 2,
      std::numbers::pi / 2, 1e-12).value;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("rescaled density approaches the semicircle") {
  auto dev = [](int n) {
    double d = 0;
    for (double s : {0.0, 0.5, -0.5, 1.0, -1.0}) d = std::max(d, std::abs(rescaled_density(n, s) - semicircle(s)));
    return d;
  };
  CHECK(dev(100) < dev(16));
  CHECK(std::abs(rescaled_density(100, 0.0) / kRho0 - 1) < 0.05);
  for (double s : {1.6, 1.8, -2.0}) CHECK(rescaled_density(100, s) < 1e-3);
  const double mass =
      integrate_adaptive([](double s) { return rescaled_density(30, s); }, -3.0, 3.0, 1e-11).value;
  CHECK(std::abs(mass - 1) < 1e-4);
}

TEST_CASE("Wigner limit integral") {
  const double e36 = std::abs(wigner_limit_integral(36) - kRho0);
  const double e100 = std::abs(wigner_limit_integral(100) - kRho0);
  const double e144 = std::abs(wigner_limit_integral(144) - kRho0);
  CHECK(e100 / kRho0 < 0.05);
  CHECK(e144 < e36);
  CHECK(e100 < e36);
  // Resolution independence.
  CHECK(wigner_limit_integral(36, 600) == doctest::Approx(wigner_limit_integral(36)).epsilon(1e-10));
  // Gauss-Hermite moment of rho against direct quadrature.
  const double direct = integrate_adaptive(
      [](double x) { return one_point(5, x).rho_n * std::exp(-x * x / 2); }, -15.0, 15.0, 1e-12).value;
  CHECK(rho_gaussian_moment(5) == doctest::Approx(direct).epsilon(1e-10));
}

}
