#include "randcrit/sphere.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "randcrit/errors.hpp"
#include "randcrit/quadrature.hpp"

namespace randcrit {

namespace {

constexpr double kPi = std::numbers::pi;

void require_degree(int n, int lowest, const char* what) {
  if (n < lowest)
    throw InputError(std::string(what) + ": degree must be >= " + std::to_string(lowest) +
                     ", got " + std::to_string(n));
  if (n > kMaxHarmonicDegree)
    throw InputError(std::string(what) + ": degree above " + std::to_string(kMaxHarmonicDegree) +
                     " is not supported");
}

// d^j/dz^j P_n(z) for j = 0..n+2 (zero past n).
std::vector<double> legendre_derivatives(int n, double z) {
  const int width = n + 3;
  std::vector<double> prev(width, 0.0), cur(width, 0.0), next(width, 0.0);
  cur[0] = 1.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j <= k + 1 && j < width; ++j) {
      const double lower = j > 0 ? j * cur[j - 1] : 0.0;
      next[j] = ((2.0 * k + 1.0) * (z * cur[j] + lower) - k * prev[j]) / (k + 1.0);
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return cur;
}

// Normalization of P_n^{(m)}(z) Re/Im (x + i y)^m in the real orthonormal basis.
std::vector<double> basis_norms(int n) {
  std::vector<double> norms(n + 1);
  const double base = std::log(2.0 * n + 1.0) - std::log(4.0 * kPi);
  for (int m = 0; m <= n; ++m) {
    double v = 0.5 * (base + log_gamma(n - m + 1.0) - log_gamma(n + m + 1.0));
    if (m > 0) v += 0.5 * std::log(2.0);
    norms[m] = std::exp(v);
  }
  return norms;
}

Eigen::Vector3d exp_map(const Eigen::Vector3d& p, const Eigen::Vector3d& v) {
  const double len = v.norm();
  if (len == 0.0) return p;
  return (std::cos(len) * p + std::sin(len) / len * v).normalized();
}

double angle_between(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Eigen::Vector3d from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

struct NewtonResult {
  bool converged = false;
  Eigen::Vector3d position;
  SphereJet jet;
};

NewtonResult newton(const HarmonicSample& u, Eigen::Vector3d p, double tol, double max_step) {
  NewtonResult r;
  auto frame = tangent_frame(p);
  SphereJet jet = sphere_jet(u, p, frame);
  double gnorm = jet.gradient.norm();
  // Near a root the gradient can stall at its roundoff floor above tol; a
  // vanishing Newton step then counts as convergence.
  bool stalled = false;
  for (int it = 0; it < 30; ++it) {
    if (gnorm < tol) break;
    const double det = jet.hessian.determinant();
    if (det == 0.0 || !std::isfinite(det)) return r;
    Eigen::Vector2d step = -jet.hessian.inverse() * jet.gradient;
    if (step.norm() < 1e-11) {
      stalled = true;
      break;
    }
    if (step.norm() > max_step) step *= max_step / step.norm();
    bool accepted = false;
    double lambda = 1.0;
    for (int bt = 0; bt < 12; ++bt, lambda *= 0.5) {
      const Eigen::Vector3d q = exp_map(p, frame * (lambda * step));
      const auto qframe = tangent_frame(q);
      const SphereJet qjet = sphere_jet(u, q, qframe);
      const double qnorm = qjet.gradient.norm();
      if (qnorm < gnorm) {
        p = q;
        frame = qframe;
        jet = qjet;
        gnorm = qnorm;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      stalled = step.norm() < 1e-8;
      break;
    }
  }
  if (gnorm < tol || stalled) {
    r.converged = true;
    r.position = p;
    r.jet = jet;
  }
  return r;
}

Eigen::Vector3d tangential(const Eigen::Vector3d& p, const Eigen::Vector3d& g) {
  return g - p.dot(g) * p;
}

bool straddles_zero(double lo, double hi) { return lo <= 0.0 && hi >= 0.0; }

}  // namespace

LegendreJet legendre_eval(int n, double t) {
  if (n < 0) throw InputError("legendre_eval: degree must be >= 0");
  if (!(t >= -1.0 && t <= 1.0)) throw InputError("legendre_eval: argument must lie in [-1, 1]");
  LegendreJet prev{0.0, 0.0, 0.0};
  LegendreJet cur{1.0, 0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    LegendreJet next;
    next.value = ((2.0 * k + 1.0) * t * cur.value - k * prev.value) / (k + 1.0);
    next.first = prev.first + (2.0 * k + 1.0) * cur.value;
    next.second = prev.second + (2.0 * k + 1.0) * cur.first;
    prev = cur;
    cur = next;
  }
  return cur;
}

SphereKernelParams kernel_constants(int n) {
  if (n < 2) throw InputError("kernel_constants: degree must be >= 2");
  const double d = n;
  const double s = (2 * d + 1) * d * (d + 1) / (8.0 * kPi);
  const double t = (2 * d + 1) * (d + 2) * (d + 1) * d * (d - 1) / (32.0 * kPi);
  return {n, s, t};
}

EnsembleParams hessian_params(int n) {
  const auto k = kernel_constants(n);
  return {2, k.s + 3.0 * k.t, k.s + k.t, k.t};
}

double predicted_count(int n) {
  const auto k = kernel_constants(n);
  const EnsembleParams normalized{2, (k.s + 3.0 * k.t) / k.t, (k.s + k.t) / k.t, 1.0};
  return 2.0 * k.t / k.s * expected_abs_det_gauss_quadrature(normalized);
}

HarmonicSample sample_harmonic(int n, Rng& rng) {
  require_degree(n, 1, "sample_harmonic");
  HarmonicSample u;
  u.n = n;
  u.coeffs.resize(2 * n + 1);
  std::normal_distribution<double> normal;
  for (double& c : u.coeffs) c = normal(rng);
  return u;
}

AmbientJet ambient_jet(const HarmonicSample& u, const Eigen::Vector3d& x_in) {
  const int n = u.n;
  require_degree(n, 1, "ambient_jet");
  if (static_cast<int>(u.coeffs.size()) != 2 * n + 1)
    throw InputError("ambient_jet: coefficient vector must have 2n+1 entries");
  const Eigen::Vector3d x = u.rotation * x_in;
  const std::vector<double> deriv = legendre_derivatives(n, x.z());
  static thread_local int cached_n = -1;
  static thread_local std::vector<double> norms;
  if (cached_n != n) {
    norms = basis_norms(n);
    cached_n = n;
  }

  using C = std::complex<double>;
  const C w(x.x(), x.y());
  C w_m2(0.0), w_m1(0.0), w_m(1.0);  // w^{m-2}, w^{m-1}, w^m
  double f = 0, fx = 0, fy = 0, fz = 0, fxx = 0, fxy = 0, fyy = 0, fxz = 0, fyz = 0, fzz = 0;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) {
      w_m2 = w_m1;
      w_m1 = w_m;
      w_m *= w;
    }
    const C gamma = m == 0 ? C(u.coeffs[0], 0.0) : C(u.coeffs[2 * m - 1], -u.coeffs[2 * m]);
    const double q0 = norms[m] * deriv[m];
    const double q1 = norms[m] * deriv[m + 1];
    const double q2 = norms[m] * deriv[m + 2];
    const double g = (gamma * w_m).real();
    const C d1 = gamma * static_cast<double>(m) * w_m1;
    const C d2 = gamma * static_cast<double>(m) * static_cast<double>(m - 1) * w_m2;
    const double gx = d1.real(), gy = -d1.imag();
    const double gxx = d2.real(), gxy = -d2.imag();
    f += q0 * g;
    fx += q0 * gx;
    fy += q0 * gy;
    fz += q1 * g;
    fxx += q0 * gxx;
    fxy += q0 * gxy;
    fyy -= q0 * gxx;
    fxz += q1 * gx;
    fyz += q1 * gy;
    fzz += q2 * g;
  }
  AmbientJet j;
  j.value = f;
  const Eigen::Vector3d grad(fx, fy, fz);
  Eigen::Matrix3d hess;
  hess << fxx, fxy, fxz, fxy, fyy, fyz, fxz, fyz, fzz;
  j.gradient = u.rotation.transpose() * grad;
  j.hessian = u.rotation.transpose() * hess * u.rotation;
  return j;
}

Eigen::Matrix<double, 3, 2> tangent_frame(const Eigen::Vector3d& p) {
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  Eigen::Index k;
  p.cwiseAbs().minCoeff(&k);
  axis(k) = 1.0;
  const Eigen::Vector3d e1 = axis.cross(p).normalized();
  const Eigen::Vector3d e2 = p.cross(e1);
  Eigen::Matrix<double, 3, 2> f;
  f.col(0) = e1;
  f.col(1) = e2;
  return f;
}

SphereJet sphere_jet(const HarmonicSample& u, const Eigen::Vector3d& p,
                     const Eigen::Matrix<double, 3, 2>& frame) {
  const AmbientJet a = ambient_jet(u, p);
  SphereJet j;
  j.value = a.value;
  j.gradient = frame.transpose() * a.gradient;
  j.hessian = frame.transpose() * a.hessian * frame -
              p.dot(a.gradient) * Eigen::Matrix2d::Identity();
  return j;
}

double evaluate(const HarmonicSample& u, const Eigen::Vector3d& p) { return ambient_jet(u, p).value; }

namespace {

struct Cell {
  double th0, th1, ph0, ph1;
  Eigen::Vector3d center() const { return from_angles(0.5 * (th0 + th1), 0.5 * (ph0 + ph1)); }
  double radius() const {
    return 0.5 * std::max(angle_between(from_angles(th0, ph0), from_angles(th1, ph1)),
                          angle_between(from_angles(th0, ph1), from_angles(th1, ph0)));
  }
};

class Detector {
 public:
  Detector(const HarmonicSample& u, double tol, double merge, double det_floor, double max_step)
      : u_(u), tol_(tol), merge_(merge), det_floor_(det_floor), max_step_(max_step) {}

  bool straddles(const Cell& c, const std::array<Eigen::Vector3d, 4>& grads) const {
    const auto frame = tangent_frame(c.center());
    double lo0 = std::numeric_limits<double>::infinity(), hi0 = -lo0, lo1 = lo0, hi1 = hi0;
    for (const auto& g : grads) {
      const double c0 = frame.col(0).dot(g), c1 = frame.col(1).dot(g);
      lo0 = std::min(lo0, c0);
      hi0 = std::max(hi0, c0);
      lo1 = std::min(lo1, c1);
      hi1 = std::max(hi1, c1);
    }
    return straddles_zero(lo0, hi0) && straddles_zero(lo1, hi1);
  }

  // A zero curve can enter and leave a cell through one edge, so the corner
  // test misses some points; a Newton step from the center that stays in
  // the cell catches them.
  bool predicts_root(const Cell& c) const {
    const Eigen::Vector3d center = c.center();
    const SphereJet jet = sphere_jet(u_, center, tangent_frame(center));
    const double det = jet.hessian.determinant();
    if (det == 0.0 || !std::isfinite(det)) return false;
    const Eigen::Vector2d step = -jet.hessian.inverse() * jet.gradient;
    return step.norm() <= 1.5 * c.radius();
  }

  Eigen::Vector3d tangent_gradient(double th, double ph) const {
    const Eigen::Vector3d p = from_angles(th, ph);
    return tangential(p, ambient_jet(u_, p).gradient);
  }

  // Newton from the cell center; when it fails or lands outside the cell the
  // cell is split in four and each straddling quarter is retried.
  void search(const Cell& c, int depth) {
    ++report.seeds;
    const Eigen::Vector3d center = c.center();
    const NewtonResult nr = newton(u_, center, tol_, max_step_);
    if (nr.converged) {
      add(nr);
      if (angle_between(nr.position, center) <= 1.5 * c.radius()) return;
    }
    if (depth >= kMaxDepth) {
      if (!nr.converged) ++report.dropped_seeds;
      return;
    }
    const double thm = 0.5 * (c.th0 + c.th1), phm = 0.5 * (c.ph0 + c.ph1);
    const Cell quarters[4] = {{c.th0, thm, c.ph0, phm}, {c.th0, thm, phm, c.ph1},
                              {thm, c.th1, c.ph0, phm}, {thm, c.th1, phm, c.ph1}};
    for (const Cell& q : quarters) {
      const std::array<Eigen::Vector3d, 4> g = {
          tangent_gradient(q.th0, q.ph0), tangent_gradient(q.th0, q.ph1),
          tangent_gradient(q.th1, q.ph0), tangent_gradient(q.th1, q.ph1)};
      if (straddles(q, g)) search(q, depth + 1);
    }
  }

  // Close saddle/extremum pairs can share a cell; the partner of a point lies
  // along the Hessian eigenvector of smallest |eigenvalue|.
  void probe_partners(double reach) {
    for (std::size_t i = 0; i < report.points.size(); ++i) {
      const Eigen::Vector3d p = report.points[i].position;
      const auto frame = tangent_frame(p);
      const SphereJet jet = sphere_jet(u_, p, frame);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(jet.hessian);
      const int soft = std::abs(es.eigenvalues()(0)) < std::abs(es.eigenvalues()(1)) ? 0 : 1;
      const Eigen::Vector3d dir = frame * es.eigenvectors().col(soft);
      for (double frac : {0.05, 0.15, 0.4, 1.0, 1.5})
        for (double sign : {-1.0, 1.0}) {
          const NewtonResult nr = newton(u_, exp_map(p, sign * frac * reach * dir), tol_, max_step_);
          if (nr.converged) add(nr);
        }
    }
  }

  CriticalPointReport report;

 private:
  static constexpr int kMaxDepth = 3;

  void add(const NewtonResult& nr) {
    for (const auto& c : report.points)
      if (angle_between(c.position, nr.position) < merge_) return;
    CriticalPoint cp;
    cp.position = nr.position;
    cp.gradient_norm = nr.jet.gradient.norm();
    const double det = nr.jet.hessian.determinant();
    cp.abs_det_hessian = std::abs(det);
    if (det < 0) cp.morse_index = 1;
    else cp.morse_index = nr.jet.hessian.trace() > 0 ? 0 : 2;
    if (cp.abs_det_hessian < det_floor_) report.morse = false;
    report.points.push_back(cp);
  }

  const HarmonicSample& u_;
  double tol_, merge_, det_floor_, max_step_;
};

}  // namespace

CriticalPointReport count_critical_points(const HarmonicSample& u, const DetectorOptions& opt) {
  const int n = u.n;
  require_degree(n, 1, "count_critical_points");
  const double dn = n;
  const double s = (2 * dn + 1) * dn * (dn + 1) / (8.0 * kPi);
  const double t = (2 * dn + 1) * (dn + 2) * (dn + 1) * dn * (dn - 1) / (32.0 * kPi);
  const int grid = opt.grid_res > 0 ? opt.grid_res : std::max(8, 4 * n);
  if (grid < 4 * n)
    throw InputError("count_critical_points: grid_res must be at least 4n (" +
                     std::to_string(4 * n) + ")");
  if (opt.tol_g < 0 || opt.merge_radius < 0)
    throw InputError("count_critical_points: tolerances must be positive");
  const double tol = opt.tol_g > 0 ? opt.tol_g : 1e-10 * std::sqrt(s);
  const double merge = opt.merge_radius > 0 ? opt.merge_radius : 1e-3 / dn;

  Detector det(u, tol, merge, 1e-8 * std::max(s, t), kPi / (2.0 * dn));
  std::vector<Eigen::Vector3d> grad_top, grad_bottom;
  for (int band = 0; band < grid; ++band) {
    const double th0 = kPi * band / grid, th1 = kPi * (band + 1) / grid;
    const int cells = std::max(4, static_cast<int>(std::ceil(2.0 * grid * std::sin(0.5 * (th0 + th1)))));
    grad_top.resize(cells + 1);
    grad_bottom.resize(cells + 1);
    for (int j = 0; j < cells; ++j) {
      const double phi = 2.0 * kPi * j / cells;
      grad_top[j] = det.tangent_gradient(th0, phi);
      grad_bottom[j] = det.tangent_gradient(th1, phi);
    }
    grad_top[cells] = grad_top[0];
    grad_bottom[cells] = grad_bottom[0];
    for (int j = 0; j < cells; ++j) {
      const Cell cell{th0, th1, 2.0 * kPi * j / cells, 2.0 * kPi * (j + 1) / cells};
      if (det.straddles(cell, {grad_top[j], grad_top[j + 1], grad_bottom[j], grad_bottom[j + 1]}) ||
          det.predicts_root(cell))
        det.search(cell, 0);
    }
  }
  det.probe_partners(kPi / grid);
  CriticalPointReport report = std::move(det.report);
  for (const auto& cp : report.points) {
    if (cp.morse_index == 1) ++report.saddles;
    else ++report.extrema;
  }
  report.total = static_cast<int>(report.points.size());
  report.euler_check = report.extrema - report.saddles == 2;
  return report;
}

std::vector<TrialRecord> run_sphere_trials(int n, int trials, std::uint64_t seed,
                                           const DetectorOptions& opt, unsigned threads) {
  require_degree(n, 1, "run_sphere_trials");
  if (trials < 1) throw InputError("run_sphere_trials: need at least one trial");
  return run_chunks(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    const HarmonicSample u = sample_harmonic(n, rng);
    const CriticalPointReport r = count_critical_points(u, opt);
    TrialRecord rec;
    rec.degree = n;
    rec.seed = seed;
    rec.trial = i;
    rec.total = r.total;
    rec.extrema = r.extrema;
    rec.saddles = r.saddles;
    rec.euler_check = r.euler_check;
    rec.morse = r.morse;
    rec.dropped_seeds = r.dropped_seeds;
    return rec;
  });
}

SphereSummary summarize_trials(int n, const std::vector<TrialRecord>& records) {
  SphereSummary out;
  out.n = n;
  out.trials = static_cast<int>(records.size());
  Moments m;
  for (const auto& r : records) {
    if (!r.morse) continue;
    ++out.morse_trials;
    if (!r.euler_check) ++out.euler_failures;
    m.add(r.total);
  }
  out.mean_count = m.mean;
  out.count_std_error = m.std_error();
  out.predicted = n >= 2 ? predicted_count(n) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

ZonalBoundReport zonal_bound_report(int n, const std::vector<TrialRecord>& records) {
  if (n < 2) throw InputError("zonal_bound_report: degree must be >= 2");
  ZonalBoundReport z;
  z.n = n;
  Moments m;
  const double scale = 2.0 * n * n;
  for (const auto& r : records) {
    if (!r.morse) continue;
    m.add((r.total + 2.0) / scale);
  }
  z.trials = static_cast<int>(m.n);
  z.mean_extrema_ratio = m.mean;
  z.std_error = m.std_error();
  z.reference_bound = 1.0 / (2.0 * std::sqrt(3.0));
  z.bessel_bound = 4.0 / (kBesselJ0FirstZero * kBesselJ0FirstZero);
  return z;
}

ZonalBoundReport zonal_bound_report(int n, int trials, std::uint64_t seed,
                                    const DetectorOptions& opt, unsigned threads) {
  if (n < 2) throw InputError("zonal_bound_report: degree must be >= 2");
  return zonal_bound_report(n, run_sphere_trials(n, trials, seed, opt, threads));
}

double gauss_bonnet_analytic(double s, double t) {
  const EnsembleParams p{2, s + 3.0 * t, s + t, t};
  if (!(s > 0)) throw ParameterError("gauss_bonnet: s must be positive");
  return 2.0 / s * expected_det_2x2(p);
}

MCEstimate gauss_bonnet_check(double s, double t, std::size_t samples, std::uint64_t seed,
                              unsigned threads) {
  if (!(s > 0)) throw ParameterError("gauss_bonnet: s must be positive");
  MCEstimate e = expected_det({2, s + 3.0 * t, s + t, t}, samples, seed, threads);
  e.mean *= 2.0 / s;
  e.std_error *= 2.0 / s;
  return e;
}

MCEstimate gauss_bonnet_check(int n, std::size_t samples, std::uint64_t seed, unsigned threads) {
  const auto k = kernel_constants(n);
  return gauss_bonnet_check(k.s, k.t, samples, seed, threads);
}

}  // namespace randcrit
