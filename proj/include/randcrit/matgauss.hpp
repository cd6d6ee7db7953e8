#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "randcrit/ensembles.hpp"
#include "randcrit/random.hpp"

namespace randcrit {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(n)
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Samples per independent sub-stream. Fixed so the estimate does not depend
// on the number of workers.
inline constexpr std::size_t kChunkSamples = 16384;

// Plain Monte Carlo mean of draw(rng). Chunk c uses make_stream(seed, c).
MCEstimate monte_carlo(std::size_t n_samples, std::uint64_t seed, unsigned threads,
                       const std::function<double(Rng&)>& draw);

// |det X| by LU for m <= 8, by symmetric eigenvalues above that and through
// a sum of logs for m > 40.
double abs_det(const SymMatrix& x);
double abs_det_lu(const SymMatrix& x);
double log_abs_det(const SymMatrix& x);

// 1e6 for m <= 6, falling geometrically to 1e5 at m = 12, then flat.
std::size_t default_samples(int m);

MCEstimate expected_abs_det(const EnsembleParams& p, std::size_t n_samples, std::uint64_t seed,
                            unsigned threads = 0);
MCEstimate expected_det(const EnsembleParams& p, std::size_t n_samples, std::uint64_t seed,
                        unsigned threads = 0);

// E det X = b - c for 2 x 2 matrices.
double expected_det_2x2(const EnsembleParams& p);

// \int_0^1 |3u^2 - 1| du from its antiderivative.
double abs_quadratic_integral();
// E|det X| for a = 3, b = c = 1, m = 2: the law of (x11+x22)/(2 sqrt 2),
// (x11-x22)/2, x12 is standard normal in R^3 and det = |w|^2 (3 cos^2 - 1),
// so the value is E|w|^2 times the mean of |3u^2 - 1| over u uniform.
double exact_abs_det_2x2_311();

// E|det X| for m = 2 by quadrature in x = (x11+x22)/2, y = (x11-x22)/2,
// z = x12 with det = x^2 - y^2 - z^2. The x-average is done in closed form;
// y and z by nested adaptive Gauss-Kronrod. Throws NumericError above `rel_tol`.
double expected_abs_det_gauss_quadrature(const EnsembleParams& p, double rel_tol = 1e-9);

}  // namespace randcrit
