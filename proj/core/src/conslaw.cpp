#include "aphj/conslaw.hpp"

#include "aphj/errors.hpp"
#include "aphj/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace aphj {

namespace {

// Max secant slope of the flux over [lo, hi] under three refinement levels;
// growth beyond 25% per level means the flux is not locally Lipschitz there.
double flux_lipschitz(const Hamiltonian& H, double lo, double hi) {
  double prev = 0;
  double cur = 0;
  for (int level = 0; level < 3; ++level) {
    const int P = 128 << level;
    const double h = (hi - lo) / P;
    cur = 0;
    double gprev = H.eval1(lo);
    for (int i = 1; i <= P; ++i) {
      const double g = H.eval1(lo + h * i);
      if (!std::isfinite(g))
        throw UnboundedHamiltonian("solve_cl_1d: non-finite flux value");
      cur = std::max(cur, std::abs(g - gprev) / h);
      gprev = g;
    }
    if (level > 0 && cur > 1e-9 && cur > 1.25 * prev)
      throw UnboundedHamiltonian("solve_cl_1d: flux secants keep growing "
                                 "under refinement");
    prev = cur;
  }
  return 1.1 * cur;
}

} // namespace

CLTrajectory solve_cl_1d(const CellField1D& v0, const Hamiltonian& flux,
                         const SolveConfig& cfg) {
  const int N = v0.gridN;
  if (N < 8) throw ConfigError("solve_cl_1d: gridN >= 8 required");
  if (static_cast<int>(v0.values.size()) != N)
    throw GridMismatch("solve_cl_1d: value count != gridN");
  if (!(cfg.tFinal > 0)) throw ConfigError("solve_cl_1d: tFinal must be positive");
  if (!(cfg.cflSafety > 0 && cfg.cflSafety <= 1))
    throw ConfigError("solve_cl_1d: cflSafety must lie in (0, 1]");
  if (cfg.scheme != SolveConfig::Scheme::laxFriedrichs)
    throw ConfigError("solve_cl_1d: only the laxFriedrichs scheme applies to "
                      "the conservation law");
  if (flux.dim() > 1)
    throw GridMismatch("solve_cl_1d: flux must take a scalar argument");

  double mn = v0.values[0], mx = v0.values[0];
  for (double x : v0.values) {
    if (!std::isfinite(x)) throw BlowUp("solve_cl_1d: initial data not finite");
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  const double delta = 0.1 * std::max(1.0, mx - mn);

  double alpha;
  if (!cfg.alphaOverride.empty()) {
    if (cfg.alphaOverride.size() != 1)
      throw ConfigError("solve_cl_1d: alpha override must hold one value");
    alpha = cfg.alphaOverride[0];
    if (!(alpha >= 0) || !std::isfinite(alpha))
      throw ConfigError("solve_cl_1d: alpha override must be finite and >= 0");
  } else {
    alpha = flux_lipschitz(flux, mn - delta, mx + delta);
  }

  const double dx = 1.0 / N;
  const double dtMax = alpha > 0 ? cfg.cflSafety * dx / alpha
                                 : std::numeric_limits<double>::infinity();

  int nIv = 1;
  if (cfg.snapshotCadence > 0)
    nIv = std::max(1, static_cast<int>(std::ceil(cfg.tFinal / cfg.snapshotCadence - 1e-9)));
  const double interval = cfg.tFinal / nIv;

  long long stepsPer;
  if (cfg.dtOverride > 0) {
    stepsPer = std::max<long long>(1, std::llround(interval / cfg.dtOverride));
  } else {
    if (!(dtMax > 0)) throw CFLFailure("solve_cl_1d: time step underflow");
    if (dtMax >= interval) {
      stepsPer = 1;
    } else {
      const double ratio = interval / dtMax;
      if (!std::isfinite(ratio) || ratio > 1e12)
        throw CFLFailure("solve_cl_1d: time step underflow");
      stepsPer = static_cast<long long>(std::ceil(ratio - 1e-12));
    }
  }
  if (stepsPer * nIv > (1LL << 40))
    throw CFLFailure("solve_cl_1d: step count exceeds budget");
  const double dt = interval / static_cast<double>(stepsPer);
  const double lam = dt / dx;

  std::vector<double> a = v0.values, b(v0.values.size()), F(v0.values.size());

  const double mass0 = neumaier_total(a);
  double absMass = 0;
  for (double x : a) absMass += std::abs(x);
  const double massTol = 1e-12 * std::max(1.0, absMass);
  const double sup0 = std::max(std::abs(mn), std::abs(mx));
  const double blowThresh = 10.0 * std::max(sup0, 1e-12);

  CLTrajectory out;
  out.alpha = alpha;
  out.dt = dt;
  out.steps = stepsPer * nIv;
  CellField1D snap0 = v0;
  snap0.time = 0.0;
  out.snapshots.push_back(std::move(snap0));

  for (int iv = 1; iv <= nIv; ++iv) {
    for (long long s = 0; s < stepsPer; ++s) {
      // F[j] holds the interface flux between cells j and j+1
      for (int j = 0; j < N; ++j) {
        const int jp = j == N - 1 ? 0 : j + 1;
        F[static_cast<std::size_t>(j)] =
            0.5 * (flux.eval1(a[static_cast<std::size_t>(j)]) +
                   flux.eval1(a[static_cast<std::size_t>(jp)])) -
            0.5 * alpha * (a[static_cast<std::size_t>(jp)] - a[static_cast<std::size_t>(j)]);
      }
      for (int j = 0; j < N; ++j) {
        const int jm = j == 0 ? N - 1 : j - 1;
        b[static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(j)] -
            lam * (F[static_cast<std::size_t>(j)] - F[static_cast<std::size_t>(jm)]);
      }
      std::swap(a, b);

      const double t = interval * (iv - 1) + dt * static_cast<double>(s + 1);
      const double mass = neumaier_total(a);
      if (std::abs(mass - mass0) > massTol)
        throw BlowUp("solve_cl_1d: cell sum drifted by " +
                     std::to_string(mass - mass0) + " at t = " + std::to_string(t));
      double sup = 0;
      for (double x : a) {
        if (!std::isfinite(x))
          throw BlowUp("solve_cl_1d: non-finite value at t = " + std::to_string(t));
        sup = std::max(sup, std::abs(x));
      }
      if (sup > blowThresh)
        throw BlowUp("solve_cl_1d: value exceeded 10x initial sup-norm at t = " +
                     std::to_string(t));
    }
    CellField1D snap;
    snap.gridN = N;
    snap.time = interval * iv;
    snap.values = a;
    out.snapshots.push_back(std::move(snap));
  }
  return out;
}

double discrete_mean(const CellField1D& v) {
  if (v.values.empty()) throw EmptyInput("discrete_mean: empty field");
  return neumaier_total(v.values) / static_cast<double>(v.values.size());
}

std::vector<double> duality_check(const Trajectory1D& uTraj,
                                  const CLTrajectory& vTraj) {
  if (uTraj.lines.empty() || vTraj.snapshots.empty())
    throw EmptyInput("duality_check: empty trajectory");
  if (uTraj.lines.size() != vTraj.snapshots.size())
    throw GridMismatch("duality_check: snapshot counts differ");

  std::vector<double> series;
  series.reserve(uTraj.lines.size());
  for (std::size_t k = 0; k < uTraj.lines.size(); ++k) {
    const SampledLine& u = uTraj.lines[k];
    const CellField1D& v = vTraj.snapshots[k];
    if (!u.periodic || u.length != 1.0)
      throw GridMismatch("duality_check: gradient field must live on the unit period");
    const int N = v.gridN;
    if (static_cast<int>(u.values.size()) != N)
      throw GridMismatch("duality_check: grid sizes differ");
    if (std::abs(uTraj.times[k] - v.time) > 1e-9)
      throw GridMismatch("duality_check: snapshot times differ");

    const double invTwoDx = 0.5 * N;
    NeumaierSum l1;
    for (int j = 0; j < N; ++j) {
      const int jm = j == 0 ? N - 1 : j - 1;
      const int jp = j == N - 1 ? 0 : j + 1;
      const double d = (u.values[static_cast<std::size_t>(jp)] -
                        u.values[static_cast<std::size_t>(jm)]) * invTwoDx;
      l1.add(std::abs(d - v.values[static_cast<std::size_t>(j)]));
    }
    series.push_back(l1.value() / N);
  }
  return series;
}

bool nd2_check(const Hamiltonian& H, double I, double width, double tol) {
  if (!(width > 0)) throw ConfigError("nd2_check: width must be positive");

  // chord of H across the whole probed interval
  const double x0 = I - width, x1 = I + width;
  const double g0 = H.eval1(x0), g1 = H.eval1(x1);
  const double slope = (g1 - g0) / (x1 - x0);

  // sub-intervals of length `width` containing I: starts in [I-width, I]
  const int starts = 129, pts = 257;
  for (int j = 0; j < starts; ++j) {
    const double s = x0 + width * j / (starts - 1);
    double dev = 0;
    for (int i = 0; i < pts; ++i) {
      const double x = s + width * i / (pts - 1);
      const double chord = g0 + slope * (x - x0);
      dev = std::max(dev, std::abs(H.eval1(x) - chord));
    }
    if (dev <= tol) return false;
  }
  return true;
}

} // namespace aphj
