#include "randcrit/matgauss.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "randcrit/errors.hpp"
#include "randcrit/quadrature.hpp"

namespace randcrit {

MCEstimate monte_carlo(std::size_t n_samples, std::uint64_t seed, unsigned threads,
                       const std::function<double(Rng&)>& draw) {
  if (n_samples == 0) throw InputError("monte_carlo: need at least one sample");
  const std::size_t chunks = (n_samples + kChunkSamples - 1) / kChunkSamples;
  auto parts = run_chunks(chunks, threads, [&](std::size_t c) {
    Rng rng = make_stream(seed, c);
    const std::size_t begin = c * kChunkSamples;
    const std::size_t end = std::min(n_samples, begin + kChunkSamples);
    Moments acc;
    for (std::size_t i = begin; i < end; ++i) acc.add(draw(rng));
    return acc;
  });
  const Moments total = reduce_pairwise(std::move(parts));
  if (!std::isfinite(total.mean))
    throw NumericError("monte_carlo: non-finite estimate", total.mean);
  return {total.mean, total.std_error(), total.n, seed};
}

double abs_det_lu(const SymMatrix& x) {
  const int m = x.size();
  if (m > 8) return std::abs(x.dense().partialPivLu().determinant());
  std::array<double, 64> a{};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i * m + j] = x(i, j);
  double det = 1.0;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    for (int i = k + 1; i < m; ++i)
      if (std::abs(a[i * m + k]) > std::abs(a[piv * m + k])) piv = i;
    const double pv = a[piv * m + k];
    if (pv == 0.0) return 0.0;
    if (piv != k)
      for (int j = k; j < m; ++j) std::swap(a[k * m + j], a[piv * m + j]);
    det *= pv;
    for (int i = k + 1; i < m; ++i) {
      const double f = a[i * m + k] / pv;
      for (int j = k + 1; j < m; ++j) a[i * m + j] -= f * a[k * m + j];
    }
  }
  return std::abs(det);
}

double log_abs_det(const SymMatrix& x) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.dense(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = std::abs(es.eigenvalues()(i));
    if (v == 0.0) return -std::numeric_limits<double>::infinity();
    s += std::log(v);
  }
  return s;
}

double abs_det(const SymMatrix& x) {
  const int m = x.size();
  if (m <= 8) return abs_det_lu(x);
  if (m > 40) return std::exp(log_abs_det(x));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.dense(), Eigen::EigenvaluesOnly);
  return std::abs(es.eigenvalues().prod());
}

std::size_t default_samples(int m) {
  if (m <= 6) return 1'000'000;
  if (m >= 12) return 100'000;
  return static_cast<std::size_t>(std::llround(1e6 * std::pow(10.0, -(m - 6) / 6.0)));
}

MCEstimate expected_abs_det(const EnsembleParams& p, std::size_t n_samples, std::uint64_t seed,
                            unsigned threads) {
  p.validate();
  if (n_samples < 1000) throw InputError("expected_abs_det: need at least 1000 samples");
  return monte_carlo(n_samples, seed, threads, [&p](Rng& rng) { return abs_det(sample(p, rng)); });
}

MCEstimate expected_det(const EnsembleParams& p, std::size_t n_samples, std::uint64_t seed,
                        unsigned threads) {
  p.validate();
  if (n_samples < 1000) throw InputError("expected_det: need at least 1000 samples");
  return monte_carlo(n_samples, seed, threads,
                     [&p](Rng& rng) { return sample(p, rng).dense().determinant(); });
}

double expected_det_2x2(const EnsembleParams& p) {
  p.validate();
  if (p.m != 2) throw InputError("expected_det_2x2: only m = 2 is supported");
  return p.b - p.c;
}

double abs_quadratic_integral() {
  // antiderivative u - u^3 changes sign at u0 = 1/sqrt 3
  const double u0 = 1.0 / std::sqrt(3.0);
  auto prim = [](double u) { return u - u * u * u; };
  return (prim(u0) - prim(0.0)) - (prim(1.0) - prim(u0));
}

double exact_abs_det_2x2_311() { return 3.0 * abs_quadratic_integral(); }

namespace {

double std_normal_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

// E|x^2 - r^2| for x ~ N(0, s^2)
double abs_gap_expectation(double r, double s) {
  const double t = r / s;
  const double inside = std::erf(t / std::numbers::sqrt2);  // P(|x| < r)
  const double second = s * s * inside - 2.0 * s * r * std_normal_pdf(t);  // E x^2 1{|x|<r}
  return (s * s - r * r) + 2.0 * (r * r * inside - second);
}

}  // namespace

double expected_abs_det_gauss_quadrature(const EnsembleParams& p, double rel_tol) {
  p.validate();
  if (p.m != 2) throw InputError("expected_abs_det_gauss_quadrature: only m = 2 is supported");
  const double sx = std::sqrt(0.5 * (p.a + p.b));
  const double sy = std::sqrt(0.5 * (p.a - p.b));
  const double sz = std::sqrt(p.c);
  double worst = 0.0;
  auto inner = [&](double y) {
    auto fz = [&](double z) {
      return abs_gap_expectation(std::hypot(y, z), sx) * 2.0 * std_normal_pdf(z / sz) / sz;
    };
    const QuadResult r = integrate_adaptive_nothrow(fz, 0.0, std::numeric_limits<double>::infinity(),
                                                    0.1 * rel_tol, 15);
    worst = std::max(worst, r.error / std::max(std::abs(r.value), 1e-300));
    return r.value * 2.0 * std_normal_pdf(y / sy) / sy;
  };
  const QuadResult outer = integrate_adaptive_nothrow(
      inner, 0.0, std::numeric_limits<double>::infinity(), 0.1 * rel_tol, 15);
  const double achieved = std::max(worst, outer.error / std::abs(outer.value));
  if (!std::isfinite(outer.value) || achieved > rel_tol)
    throw NumericError("expected_abs_det_gauss_quadrature: relative error " +
                           std::to_string(achieved) + " above tolerance",
                       achieved);
  return outer.value;
}

}  // namespace randcrit
