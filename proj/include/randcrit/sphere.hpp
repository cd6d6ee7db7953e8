#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "randcrit/ensembles.hpp"
#include "randcrit/matgauss.hpp"
#include "randcrit/random.hpp"

namespace randcrit {

struct LegendreJet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

// P_n(t), P_n'(t), P_n''(t) by the three-term recurrence.
LegendreJet legendre_eval(int n, double t);

// Covariance constants of a degree-n random harmonic with covariance kernel
// (2n+1)/(4 pi) P_n(p.q):
//   s = E (d_i u)^2 = (2n+1) n (n+1) / (8 pi),
//   t = (2n+1) (n+2) (n+1) n (n-1) / (32 pi),
// so that the Hessian has diagonal variance s+3t, diagonal covariance s+t
// and off-diagonal variance t.
struct SphereKernelParams {
  int n = 0;
  double s = 0.0;
  double t = 0.0;
};

SphereKernelParams kernel_constants(int n);

// Law of the Hessian at a point.
EnsembleParams hessian_params(int n);

// Expected number of critical points of a degree-n random harmonic:
// (2t/s) E|det X| with X ~ (a, b, c) = ((s+3t)/t, (s+t)/t, 1), by quadrature.
double predicted_count(int n);

// Random degree-n spherical harmonic: i.i.d. N(0,1) coefficients against a
// real L^2(S^2)-orthonormal basis, ordered m = 0, then (cos m phi, sin m phi)
// for m = 1..n. `rotation` is applied to the argument before evaluation.
struct HarmonicSample {
  int n = 0;
  std::vector<double> coeffs;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
};

// Largest supported degree (normalizations stay in double range).
inline constexpr int kMaxHarmonicDegree = 120;

HarmonicSample sample_harmonic(int n, Rng& rng);

// Value and Cartesian derivatives of the polynomial extension of u to R^3.
struct AmbientJet {
  double value = 0.0;
  Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
  Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
};

AmbientJet ambient_jet(const HarmonicSample& u, const Eigen::Vector3d& x);

// Orthonormal tangent frame at a unit vector p (columns), p = col0 x col1.
Eigen::Matrix<double, 3, 2> tangent_frame(const Eigen::Vector3d& p);

// Intrinsic jet at p in the given tangent frame: the Riemannian gradient
// and Hessian of u on the unit sphere.
struct SphereJet {
  double value = 0.0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
};

SphereJet sphere_jet(const HarmonicSample& u, const Eigen::Vector3d& p,
                     const Eigen::Matrix<double, 3, 2>& frame);
double evaluate(const HarmonicSample& u, const Eigen::Vector3d& p);

struct CriticalPoint {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double gradient_norm = 0.0;
  int morse_index = 0;  // number of negative Hessian eigenvalues
  double abs_det_hessian = 0.0;
};

struct CriticalPointReport {
  std::vector<CriticalPoint> points;
  int extrema = 0;  // p
  int saddles = 0;  // s
  int total = 0;    // N
  bool euler_check = false;  // p - s == 2
  bool morse = true;         // every |det Hess| above the degeneracy threshold
  int dropped_seeds = 0;     // Newton runs that did not converge
  int seeds = 0;
};

struct DetectorOptions {
  int grid_res = 0;            // 0 picks 4n (at least 8)
  double tol_g = 0.0;          // 0 picks 1e-10 sqrt(s_n)
  double merge_radius = 0.0;   // 0 picks 1e-3 / n
};

// Newton from every grid cell in which both tangent gradient components
// change sign, then deduplication and Morse classification.
CriticalPointReport count_critical_points(const HarmonicSample& u, const DetectorOptions& opt = {});

struct TrialRecord {
  int degree = 0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  int total = 0;
  int extrema = 0;
  int saddles = 0;
  bool euler_check = false;
  bool morse = true;
  int dropped_seeds = 0;
};

// Trial i uses make_stream(seed, i).
std::vector<TrialRecord> run_sphere_trials(int n, int trials, std::uint64_t seed,
                                           const DetectorOptions& opt = {}, unsigned threads = 0);

struct SphereSummary {
  int n = 0;
  int trials = 0;
  int morse_trials = 0;    // trials kept for statistics
  int euler_failures = 0;  // among Morse trials
  double mean_count = 0.0;
  double count_std_error = 0.0;
  double predicted = 0.0;  // NaN for n < 2
};

SphereSummary summarize_trials(int n, const std::vector<TrialRecord>& records);

inline constexpr double kBesselJ0FirstZero = 2.404825557695773;

struct ZonalBoundReport {
  int n = 0;
  int trials = 0;
  double mean_extrema_ratio = 0.0;  // mean of (N + 2) / (2 n^2)
  double std_error = 0.0;
  double reference_bound = 0.0;     // 1 / (2 sqrt 3)
  double bessel_bound = 0.0;        // 4 / j0^2
};

ZonalBoundReport zonal_bound_report(int n, const std::vector<TrialRecord>& records);
ZonalBoundReport zonal_bound_report(int n, int trials, std::uint64_t seed,
                                    const DetectorOptions& opt = {}, unsigned threads = 0);

// (2/s) E det X under the Hessian law: exactly 2 on the analytic path.
double gauss_bonnet_analytic(double s, double t);
MCEstimate gauss_bonnet_check(double s, double t, std::size_t samples, std::uint64_t seed,
                              unsigned threads = 0);
MCEstimate gauss_bonnet_check(int n, std::size_t samples, std::uint64_t seed, unsigned threads = 0);

}  // namespace randcrit
