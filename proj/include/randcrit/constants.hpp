#pragma once

#include <cstdint>
#include <vector>

#include "randcrit/matgauss.hpp"

namespace randcrit {

// (-1)^{(|alpha|-|beta|)/2} (2 pi)^{-m} \int_{B^m} x^{alpha+beta} dx for
// multi-indices of equal length m with |alpha| + |beta| <= 4. Zero unless
// alpha - beta has only even entries.
double spectral_constant(const std::vector<int>& alpha, const std::vector<int>& beta);

// 1 / (2 (4 pi)^{m/2} Gamma(2 + m/2)): the gradient constant.
double gradient_constant(int m);
// 1 / (4 (4 pi)^{m/2} Gamma(3 + m/2)): the mixed fourth-order constant.
double hessian_constant(int m);

struct BallSphere {
  double ball = 0.0;    // volume of the unit ball in R^n
  double sphere = 0.0;  // area of S^{n-1} = n * ball
};
BallSphere ball_sphere_volumes(int n);

// E|det X| under the a = 3, b = c = 1 law on m x m matrices, through the GOE
// one-point function of size m + 1:
//   2^{(m+3)/2} Gamma((m+3)/2) / sqrt(pi) * \int rho_{m+1}(x) e^{-x^2/2} dx.
// `nodes` = 0 picks max(96, 8 (m + 2)) Gauss-Hermite points.
double log_I_m_fyodorov(int m, int nodes = 0);
double I_m_fyodorov(int m, int nodes = 0);

struct LogValue {
  double log_value = 0.0;
  double value = 0.0;  // inf once it overflows
};

// C(m) = (2 / (m + 4))^{m/2} Gamma(1 + m/2) I_m.
LogValue C_of_m(int m);

// C(m) omega_m / (2 pi)^m: limit of L^{-m/2} times the critical point density.
double density_limit_coefficient(int m);

struct AsymptoticRow {
  int m = 0;
  double log_C = 0.0;
  double log_I = 0.0;
  double ratio_C = 0.0;    // log C / ((m/2) log m)
  double ratio_I = 0.0;    // log I_m / ((m/2) log m)
  double gap_ratio = 0.0;  // |log C - log I_m| / ((m/2) log m)
};

std::vector<AsymptoticRow> asymptotic_diagnostic(const std::vector<int>& m_values);

struct ConstantsRow {
  int m = 0;
  double K_m = 0.0;
  double c_m = 0.0;
  MCEstimate I_m_mc;
  double I_m_fyodorov = 0.0;
  double C_m = 0.0;
  double log_ratio = 0.0;  // log C(m) / ((m/2) log m)
};

// `samples` = 0 picks default_samples(m).
ConstantsRow constants_row(int m, std::size_t samples, std::uint64_t seed, unsigned threads = 0);

}  // namespace randcrit
