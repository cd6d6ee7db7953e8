#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace randcrit {

// Gauss-Hermite rule for the weight e^{-x^2}:
//   \int g(x) e^{-x^2} dx ~ sum_i weights[i] * g(nodes[i]).
// Weights of the outermost nodes may underflow to zero for large rules.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per size; the returned reference stays valid for the program's life
// and may be read concurrently.
const GaussHermiteRule& gauss_hermite(std::size_t k);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive 61-point Gauss-Kronrod on [a, b] (either bound may be infinite).
// Throws NumericError when the error estimate exceeds
// max(rel_tol * |value|, abs_tol).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-10, double abs_tol = 1e-14,
                              unsigned max_depth = 18);

// Same, but reports the estimate instead of throwing.
QuadResult integrate_adaptive_nothrow(const std::function<double(double)>& f, double a,
                                      double b, double rel_tol = 1e-10, unsigned max_depth = 18);

// log Gamma for positive arguments (thread-safe).
double log_gamma(double x);

}  // namespace randcrit
