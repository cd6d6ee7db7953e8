#pragma once

#include <vector>

namespace randcrit {

// psi_n(x) and psi_{n-1}(x), both equal to the stored mantissa times
// exp(log_scale). For n == 0, prev is 0.
struct PsiPair {
  double value = 0.0;
  double prev = 0.0;
  double log_scale = 0.0;
};

PsiPair hermite_psi_pair(int n, double x);

// Normalized Hermite function psi_n(x) = H_n(x) e^{-x^2/2} / sqrt(2^n n! sqrt(pi)).
// Underflows to zero far outside the oscillatory region.
double hermite_psi(int n, double x);

// Values of H_0..H_n and psi_0..psi_n at one point. H_k overflows to inf for
// large k and |x|; psi_k is computed independently through the normalized
// recurrence and stays finite.
struct HermiteState {
  int n = 0;
  double x = 0.0;
  std::vector<double> hermite;
  std::vector<double> psi;
};

HermiteState hermite_state(int n, double x);

// \int_R psi_n(t) dt. Zero for odd n.
double psi_total_integral(int n);

// k_n(x) = sum_{k<n} psi_k(x)^2.
double cd_kernel_direct(int n, double x);
// Same quantity from the Christoffel-Darboux closed form
// n psi_n^2 - sqrt(n(n+1)) psi_{n-1} psi_{n+1}.
double cd_kernel(int n, double x);

// F_n(x) = \int eps(x - t) psi_n(t) dt with eps = sign / 2.
// The recurrence path integrates psi_k exactly through
// G_{k+1} = sqrt(k/(k+1)) G_{k-1} - sqrt(2/(k+1)) psi_k(x).
double sign_convolution(int n, double x);
// Adaptive quadrature of the same integral, split at t = x.
double sign_convolution_quadrature(int n, double x);

// l_n(x) = sqrt(n/2) psi_{n-1}(x) F_n(x) + alpha_n(x), where alpha_n vanishes
// for even n and is psi_{n-1}(x) / \int psi_{n-1} for odd n.
double ell_correction(int n, double x);

struct CorrelationEval {
  int n = 0;
  double x = 0.0;
  double k_n = 0.0;
  double ell_n = 0.0;
  double R_n = 0.0;
  double rho_n = 0.0;
};

// GOE one-point function R_n = k_n + l_n (eigenvalue density of the n x n
// ensemble with density proportional to exp(-tr X^2 / 2), normalized to n).
CorrelationEval one_point(int n, double x);

// sqrt(n) rho_n(sqrt(n) s).
double rescaled_density(int n, double s);

// sqrt(2 - x^2) / pi on [-sqrt 2, sqrt 2].
double semicircle(double x);

// \int rescaled_density(n, s) w_n(s) ds with the Gaussian weight
// w_n(s) = sqrt(3n / (2 pi)) exp(-3 n s^2 / 2). `nodes` = 0 picks 8 (n + 1).
double wigner_limit_integral(int n, int nodes = 0);

// \int rho_n(x) exp(-x^2 / 2) dx by Gauss-Hermite with `nodes` points
// (0 picks 8 (n + 1)).
double rho_gaussian_moment(int n, int nodes = 0);

// log of 2^{n/2} n! prod_{j=1..n} Gamma(j/2), the normalizer of the joint
// eigenvalue density exp(-|l|^2/2) prod_{i<j} |l_i - l_j|.
double log_selberg_constant(int n);

}  // namespace randcrit
