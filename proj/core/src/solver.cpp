#include "aphj/solver.hpp"

#include "aphj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#ifdef APHJ_HAVE_OPENMP
#include <omp.h>
#endif

namespace aphj {

int solver_thread_cap() {
#ifdef APHJ_HAVE_OPENMP
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("APHJ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096)
      n = std::min<int>(n, static_cast<int>(v));
  }
  return std::max(1, n);
#else
  return 1;
#endif
}

TorusField lift_initial(const TrigPoly& u0, const SpectrumModule& M, int gridN) {
  if (!u0.real_valued())
    throw NonRealResidue("lift_initial: initial data must be real-valued");
  const int m = M.rank();
  if (gridN < 2) throw ConfigError("lift_initial: gridN >= 2 required");

  struct LiftTerm {
    std::complex<double> a;
    std::vector<long long> k;
  };
  std::vector<LiftTerm> terms;
  long long maxAbs = 0;
  for (const auto& t : u0.terms()) {
    const std::vector<Int> k = integer_coordinates(M, t.freq);
    LiftTerm lt;
    lt.a = t.a;
    lt.k.resize(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (abs(k[i]) > Int(1) << 40)
        throw ConfigError("lift_initial: module coordinate too large to sample");
      lt.k[i] = k[i].convert_to<long long>();
      maxAbs = std::max(maxAbs, std::llabs(lt.k[i]));
    }
    terms.push_back(std::move(lt));
  }
  if (static_cast<long long>(gridN) <= 2 * maxAbs)
    throw NyquistViolation("lift_initial: gridN must exceed twice the largest "
                           "module coordinate (" + std::to_string(maxAbs) + ")");

  TorusField f = TorusField::zeros(m, gridN);
  const std::size_t total = f.size();
  std::vector<double> re(total, 0.0), im(total, 0.0);
  double mass = 0;
  const int N = gridN;
  for (const auto& t : terms) {
    mass += std::abs(t.a);
    // per-axis phase tables; k*j reduced mod N before the angle so large
    // coordinates lose no precision
    std::vector<std::vector<std::complex<double>>> tab(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) {
      auto& td = tab[static_cast<std::size_t>(d)];
      td.resize(static_cast<std::size_t>(N));
      const long long kd = t.k[static_cast<std::size_t>(d)];
      for (int j = 0; j < N; ++j) {
        long long r = (kd % N) * j % N;
        if (r < 0) r += N;
        const double ang = 2 * std::numbers::pi * static_cast<double>(r) / N;
        td[static_cast<std::size_t>(j)] = {std::cos(ang), std::sin(ang)};
      }
    }
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    for (std::size_t cell = 0; cell < total; ++cell) {
      std::complex<double> p = t.a;
      for (int d = 0; d < m; ++d)
        p *= tab[static_cast<std::size_t>(d)][static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
      re[cell] += p.real();
      im[cell] += p.imag();
      for (int d = m - 1; d >= 0; --d) {
        if (++idx[static_cast<std::size_t>(d)] < N) break;
        idx[static_cast<std::size_t>(d)] = 0;
      }
    }
  }
  double residue = 0;
  for (double x : im) residue = std::max(residue, std::abs(x));
  if (residue > 1e-12 * std::max(1.0, mass))
    throw NonRealResidue("lift_initial: imaginary residue above tolerance");
  f.data = std::move(re);
  f.time = 0.0;
  return f;
}

namespace {

// G(q) = H(basis^T q) on a regular lattice over [-L, L]^m; returns the max
// per-axis adjacent secant slope.
std::vector<double> secant_pass(const Hamiltonian& H,
                                const std::vector<std::vector<double>>& basis,
                                double L, int intervals) {
  const int m = static_cast<int>(basis.size());
  const int n = static_cast<int>(basis[0].size());
  const int P = intervals + 1;
  std::size_t pts = 1;
  for (int d = 0; d < m; ++d) {
    pts *= static_cast<std::size_t>(P);
    if (pts > 50u * 1000u * 1000u)
      throw ConfigError("lipschitz_bound: basis rank too large for secant sampling");
  }
  const double h = 2 * L / intervals;

  std::vector<double> g(pts);
  std::vector<double> q(static_cast<std::size_t>(m)), p(static_cast<std::size_t>(n));
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (std::size_t f = 0; f < pts; ++f) {
    for (int d = 0; d < m; ++d)
      q[static_cast<std::size_t>(d)] = -L + h * idx[static_cast<std::size_t>(d)];
    if (n == 1) {
      double s = 0;
      for (int d = 0; d < m; ++d) s += basis[static_cast<std::size_t>(d)][0] * q[static_cast<std::size_t>(d)];
      g[f] = H.eval1(s);
    } else {
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int d = 0; d < m; ++d) s += basis[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(d)];
        p[static_cast<std::size_t>(j)] = s;
      }
      g[f] = H.eval(p);
    }
    if (!std::isfinite(g[f]))
      throw UnboundedHamiltonian("lipschitz_bound: non-finite hamiltonian value "
                                 "inside the gradient box");
    for (int d = m - 1; d >= 0; --d) {
      if (++idx[static_cast<std::size_t>(d)] < P) break;
      idx[static_cast<std::size_t>(d)] = 0;
    }
  }

  std::vector<double> sec(static_cast<std::size_t>(m), 0.0);
  std::vector<std::size_t> stride(static_cast<std::size_t>(m));
  stride[static_cast<std::size_t>(m - 1)] = 1;
  for (int d = m - 2; d >= 0; --d)
    stride[static_cast<std::size_t>(d)] = stride[static_cast<std::size_t>(d + 1)] * static_cast<std::size_t>(P);
  for (std::size_t f = 0; f < pts; ++f)
    for (int d = 0; d < m; ++d) {
      const std::size_t st = stride[static_cast<std::size_t>(d)];
      const int c = static_cast<int>((f / st) % static_cast<std::size_t>(P));
      if (c + 1 >= P) continue;
      const double s = std::abs(g[f + st] - g[f]) / h;
      if (s > sec[static_cast<std::size_t>(d)]) sec[static_cast<std::size_t>(d)] = s;
    }
  return sec;
}

} // namespace

std::vector<double> lipschitz_bound(const Hamiltonian& H,
                                    const std::vector<std::vector<double>>& basis,
                                    double L) {
  if (!(L > 0)) throw ConfigError("lipschitz_bound: gradient box must be positive");
  if (basis.empty()) throw EmptyInput("lipschitz_bound: empty basis");
  const int m = static_cast<int>(basis.size());
  const int n = static_cast<int>(basis[0].size());
  if (n < 1) throw EmptyInput("lipschitz_bound: empty basis row");
  for (const auto& row : basis)
    if (static_cast<int>(row.size()) != n)
      throw GridMismatch("lipschitz_bound: ragged basis");
  if (H.dim() != 0 && H.dim() != n)
    throw GridMismatch("lipschitz_bound: hamiltonian ambient dimension != "
                       "basis column count");

  const int base = m <= 2 ? 128 : (m == 3 ? 32 : (m == 4 ? 12 : 4));
  std::vector<double> prev, cur;
  for (int level = 0; level < 3; ++level) {
    cur = secant_pass(H, basis, L, base << level);
    if (level > 0)
      for (int d = 0; d < m; ++d)
        if (cur[static_cast<std::size_t>(d)] > 1e-9 &&
            cur[static_cast<std::size_t>(d)] > 1.25 * prev[static_cast<std::size_t>(d)])
          throw UnboundedHamiltonian(
              "lipschitz_bound: secant bound keeps growing under refinement; "
              "H is not locally Lipschitz on the requested box");
    prev = cur;
  }
  for (double& a : cur) a *= 1.1;
  return cur;
}

double default_gradient_box(const TorusField& v0) {
  const int m = v0.rank, N = v0.gridN;
  const double dy = v0.dy();
  std::vector<std::size_t> stride(static_cast<std::size_t>(m));
  stride[static_cast<std::size_t>(m - 1)] = 1;
  for (int d = m - 2; d >= 0; --d)
    stride[static_cast<std::size_t>(d)] = stride[static_cast<std::size_t>(d + 1)] * static_cast<std::size_t>(N);
  double s = 0;
  for (std::size_t f = 0; f < v0.data.size(); ++f)
    for (int d = 0; d < m; ++d) {
      const std::size_t st = stride[static_cast<std::size_t>(d)];
      const int c = static_cast<int>((f / st) % static_cast<std::size_t>(N));
      const std::size_t fp = (c == N - 1) ? f - static_cast<std::size_t>(N - 1) * st : f + st;
      s = std::max(s, std::abs(v0.data[fp] - v0.data[f]) / dy);
    }
  return 2.0 * s;
}

namespace {

template <class G1>
void step_rank1(const std::vector<double>& vo, std::vector<double>& vn, int N,
                double dt, double invTwoDy, double c0, double h0, G1 g, int nt) {
  (void)nt;
#ifdef APHJ_HAVE_OPENMP
#pragma omp parallel for num_threads(nt) schedule(static)
#endif
  for (int j = 0; j < N; ++j) {
    const double vm = vo[static_cast<std::size_t>(j == 0 ? N - 1 : j - 1)];
    const double vc = vo[static_cast<std::size_t>(j)];
    const double vp = vo[static_cast<std::size_t>(j == N - 1 ? 0 : j + 1)];
    const double q = (vp - vm) * invTwoDy;
    vn[static_cast<std::size_t>(j)] =
        vc - dt * (g(q) - h0) + c0 * (vp - 2 * vc + vm);
  }
}

template <class G2>
void step_rank2(const std::vector<double>& vo, std::vector<double>& vn, int N,
                double dt, double invTwoDy, double cx, double cy, double h0,
                G2 g, int nt) {
  (void)nt;
#ifdef APHJ_HAVE_OPENMP
#pragma omp parallel for num_threads(nt) schedule(static)
#endif
  for (int jx = 0; jx < N; ++jx) {
    const double* rowC = vo.data() + static_cast<std::size_t>(jx) * static_cast<std::size_t>(N);
    const double* rowM = vo.data() + static_cast<std::size_t>(jx == 0 ? N - 1 : jx - 1) * static_cast<std::size_t>(N);
    const double* rowP = vo.data() + static_cast<std::size_t>(jx == N - 1 ? 0 : jx + 1) * static_cast<std::size_t>(N);
    double* out = vn.data() + static_cast<std::size_t>(jx) * static_cast<std::size_t>(N);
    for (int jy = 0; jy < N; ++jy) {
      const int ym = jy == 0 ? N - 1 : jy - 1;
      const int yp = jy == N - 1 ? 0 : jy + 1;
      const double vc = rowC[jy];
      const double qx = (rowP[jy] - rowM[jy]) * invTwoDy;
      const double qy = (rowC[yp] - rowC[ym]) * invTwoDy;
      out[jy] = vc - dt * (g(qx, qy) - h0) + cx * (rowP[jy] - 2 * vc + rowM[jy]) +
                cy * (rowC[yp] - 2 * vc + rowC[ym]);
    }
  }
}

void step_generic(const std::vector<double>& vo, std::vector<double>& vn, int m,
                  int N, const Hamiltonian& H,
                  const std::vector<std::vector<double>>& basis, int n, double dt,
                  double invTwoDy, const std::vector<double>& diff, double h0,
                  int nt) {
  (void)nt;
  std::vector<std::size_t> stride(static_cast<std::size_t>(m));
  stride[static_cast<std::size_t>(m - 1)] = 1;
  for (int d = m - 2; d >= 0; --d)
    stride[static_cast<std::size_t>(d)] = stride[static_cast<std::size_t>(d + 1)] * static_cast<std::size_t>(N);
  const long long total = static_cast<long long>(vo.size());
#ifdef APHJ_HAVE_OPENMP
#pragma omp parallel num_threads(nt)
#endif
  {
    std::vector<double> q(static_cast<std::size_t>(m)), p(static_cast<std::size_t>(n));
#ifdef APHJ_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
    for (long long f = 0; f < total; ++f) {
      const std::size_t uf = static_cast<std::size_t>(f);
      const double vc = vo[uf];
      double lap = 0;
      for (int d = 0; d < m; ++d) {
        const std::size_t st = stride[static_cast<std::size_t>(d)];
        const int c = static_cast<int>((uf / st) % static_cast<std::size_t>(N));
        const std::size_t fp = (c == N - 1) ? uf - static_cast<std::size_t>(N - 1) * st : uf + st;
        const std::size_t fm = (c == 0) ? uf + static_cast<std::size_t>(N - 1) * st : uf - st;
        q[static_cast<std::size_t>(d)] = (vo[fp] - vo[fm]) * invTwoDy;
        lap += diff[static_cast<std::size_t>(d)] * (vo[fp] - 2 * vc + vo[fm]);
      }
      double gval;
      if (n == 1) {
        double s = 0;
        for (int d = 0; d < m; ++d) s += basis[static_cast<std::size_t>(d)][0] * q[static_cast<std::size_t>(d)];
        gval = H.eval1(s);
      } else {
        for (int j = 0; j < n; ++j) {
          double s = 0;
          for (int d = 0; d < m; ++d) s += basis[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(d)];
          p[static_cast<std::size_t>(j)] = s;
        }
        gval = H.eval(p);
      }
      vn[uf] = vc - dt * (gval - h0) + lap;
    }
  }
}

struct FieldStats {
  double mn, mx;
  bool finite;
};

FieldStats field_stats(const std::vector<double>& v, int nt) {
  (void)nt;
  double mn = v[0], mx = v[0];
  bool ok = true;
  const long long total = static_cast<long long>(v.size());
#ifdef APHJ_HAVE_OPENMP
#pragma omp parallel for num_threads(nt) schedule(static) \
    reduction(min : mn) reduction(max : mx) reduction(&& : ok)
#endif
  for (long long i = 0; i < total; ++i) {
    const double x = v[static_cast<std::size_t>(i)];
    ok = ok && std::isfinite(x);
    if (x < mn) mn = x;
    if (x > mx) mx = x;
  }
  return {mn, mx, ok};
}

} // namespace

LiftedStepper::LiftedStepper(const TorusField& v0, const Hamiltonian& H,
                             std::vector<std::vector<double>> basis,
                             const SolveConfig& cfg, bool viscous)
    : H_(&H), basis_(std::move(basis)), viscous_(viscous), epsilon_(cfg.epsilon) {
  if (v0.rank < 1 || v0.gridN < 8)
    throw ConfigError("solve: rank >= 1 and gridN >= 8 required");
  if (v0.data.size() != TorusField::total_cells(v0.rank, v0.gridN))
    throw GridMismatch("solve: field data size does not match rank/gridN");
  if (static_cast<int>(basis_.size()) != v0.rank)
    throw GridMismatch("solve: basis row count != field rank");
  n_ = basis_.empty() ? 0 : static_cast<int>(basis_[0].size());
  if (n_ < 1) throw EmptyInput("solve: empty basis row");
  for (const auto& row : basis_)
    if (static_cast<int>(row.size()) != n_)
      throw GridMismatch("solve: ragged basis");
  if (!(cfg.cflSafety > 0 && cfg.cflSafety <= 1))
    throw ConfigError("solve: cflSafety must lie in (0, 1]");
  if (viscous_ && !(epsilon_ > 0))
    throw ConfigError("solve_viscous: epsilon must be positive");

  m_ = v0.rank;
  N_ = v0.gridN;
  dy_ = v0.dy();
  invTwoDy_ = 1.0 / (2 * dy_);
  h0_ = H.h0();
  nt_ = solver_thread_cap();

  double L = cfg.gradientBox;
  if (!(L > 0)) {
    L = default_gradient_box(v0);
    if (!(L > 0)) L = 1.0; // constant data: any box works
  }
  alpha_ = cfg.alphaOverride.empty() ? lipschitz_bound(H, basis_, L)
                                     : cfg.alphaOverride;
  if (static_cast<int>(alpha_.size()) != m_)
    throw ConfigError("solve: alpha override length != rank");
  double sumA = 0;
  for (double a : alpha_) {
    if (!(a >= 0) || !std::isfinite(a))
      throw ConfigError("solve: stabilization coefficients must be finite and >= 0");
    sumA += a;
  }
  dtMax_ = sumA > 0 ? cfg.cflSafety * dy_ / sumA
                    : std::numeric_limits<double>::infinity();
  if (viscous_)
    dtMax_ = std::min(dtMax_, cfg.cflSafety * dy_ * dy_ / (2.0 * m_ * epsilon_));

  a_ = v0.data;
  b_.assign(a_.size(), 0.0);
  const FieldStats st = field_stats(a_, nt_);
  if (!st.finite) throw BlowUp("solve: initial data is not finite");
  const double sup0 = std::max(std::abs(st.mn), std::abs(st.mx));
  blowThresh_ = 10.0 * std::max(sup0, 1e-12);
  slack_ = 1e-12 * std::max(1.0, sup0);
  maxPrev_ = st.mx;
  minPrev_ = st.mn;

  set_dt(cfg.dtOverride > 0 ? cfg.dtOverride
                            : (std::isfinite(dtMax_) ? dtMax_ : 1.0));
}

void LiftedStepper::refresh_coupling() {
  diff_.resize(static_cast<std::size_t>(m_));
  for (int d = 0; d < m_; ++d)
    diff_[static_cast<std::size_t>(d)] =
        viscous_ ? epsilon_ * dt_ / (dy_ * dy_)
                 : alpha_[static_cast<std::size_t>(d)] * dt_ / (2 * dy_);
}

void LiftedStepper::set_dt(double dt) {
  if (!(dt > 0) || !std::isfinite(dt))
    throw CFLFailure("solve: time step must be positive and finite");
  if (dt > dtMax_ * (1 + 1e-6))
    throw CFLFailure("solve: requested time step exceeds the CFL ceiling");
  dt_ = dt;
  refresh_coupling();
}

void LiftedStepper::step() {
  if (m_ == 1 && n_ == 1) {
    const Hamiltonian& H = *H_;
    const double lam0 = basis_[0][0];
    step_rank1(a_, b_, N_, dt_, invTwoDy_, diff_[0], h0_,
               [&H, lam0](double q) { return H.eval1(lam0 * q); }, nt_);
  } else if (m_ == 2 && n_ == 1) {
    const Hamiltonian& H = *H_;
    const double lam0 = basis_[0][0], lam1 = basis_[1][0];
    step_rank2(a_, b_, N_, dt_, invTwoDy_, diff_[0], diff_[1], h0_,
               [&H, lam0, lam1](double qx, double qy) {
                 return H.eval1(lam0 * qx + lam1 * qy);
               },
               nt_);
  } else {
    step_generic(a_, b_, m_, N_, *H_, basis_, n_, dt_, invTwoDy_, diff_, h0_, nt_);
  }
  std::swap(a_, b_);
  ++steps_;
  const FieldStats st = field_stats(a_, nt_);
  if (!st.finite)
    throw BlowUp("solve: non-finite value at t = " + std::to_string(time()));
  if (st.mx > maxPrev_ + slack_ || st.mn < minPrev_ - slack_)
    throw BlowUp("solve: discrete max principle violated at t = " +
                 std::to_string(time()) + " (stabilization too weak)");
  if (std::max(std::abs(st.mn), std::abs(st.mx)) > blowThresh_)
    throw BlowUp("solve: value exceeded 10x initial sup-norm at t = " +
                 std::to_string(time()));
  maxPrev_ = st.mx;
  minPrev_ = st.mn;
}

TorusField LiftedStepper::field() const {
  TorusField snap;
  snap.rank = m_;
  snap.gridN = N_;
  snap.time = time();
  snap.data = a_;
  if (h0_ != 0.0)
    for (double& x : snap.data) x -= h0_ * snap.time;
  return snap;
}

namespace {

Trajectory run_solve(const TorusField& v0, const Hamiltonian& H,
                     const std::vector<std::vector<double>>& basis,
                     const SolveConfig& cfg, bool viscous) {
  if (!(cfg.tFinal > 0)) throw ConfigError("solve: tFinal must be positive");

  LiftedStepper st(v0, H, basis, cfg, viscous);

  int nIv = 1;
  if (cfg.snapshotCadence > 0)
    nIv = std::max(1, static_cast<int>(std::ceil(cfg.tFinal / cfg.snapshotCadence - 1e-9)));
  const double interval = cfg.tFinal / nIv;

  long long stepsPer;
  if (cfg.dtOverride > 0) {
    stepsPer = std::max<long long>(
        1, static_cast<long long>(std::ceil(interval / cfg.dtOverride - 1e-9)));
  } else {
    const double dtMax = st.dt_max();
    if (!(dtMax > 0)) throw CFLFailure("solve: time step underflow");
    if (dtMax >= interval) {
      stepsPer = 1;
    } else {
      const double ratio = interval / dtMax;
      if (!std::isfinite(ratio) || ratio > 1e12)
        throw CFLFailure("solve: time step underflow");
      stepsPer = static_cast<long long>(std::ceil(ratio - 1e-12));
    }
  }
  if (stepsPer * nIv > (1LL << 40))
    throw CFLFailure("solve: step count exceeds budget");
  const double dt = interval / static_cast<double>(stepsPer);
  st.set_dt(dt);

  Trajectory out;
  out.alpha = st.alpha();
  out.dt = dt;
  out.steps = stepsPer * nIv;
  out.h0 = st.h0();

  TorusField snap0 = v0;
  snap0.time = 0.0;
  out.snapshots.push_back(std::move(snap0));

  for (int iv = 1; iv <= nIv; ++iv) {
    for (long long s = 0; s < stepsPer; ++s) st.step();
    const double t = interval * iv;
    TorusField snap;
    snap.rank = v0.rank;
    snap.gridN = v0.gridN;
    snap.time = t;
    snap.data = st.raw();
    if (out.h0 != 0.0)
      for (double& x : snap.data) x -= out.h0 * t;
    out.snapshots.push_back(std::move(snap));
  }
  return out;
}

} // namespace

Trajectory solve_lifted(const TorusField& v0, const Hamiltonian& H,
                        const std::vector<std::vector<double>>& basis,
                        const SolveConfig& cfg) {
  return run_solve(v0, H, basis, cfg,
                   cfg.scheme == SolveConfig::Scheme::vanishingViscosity);
}

Trajectory solve_viscous(const TorusField& v0, const Hamiltonian& H,
                         const std::vector<std::vector<double>>& basis,
                         const SolveConfig& cfg) {
  SolveConfig c = cfg;
  c.scheme = SolveConfig::Scheme::vanishingViscosity;
  return run_solve(v0, H, basis, c, true);
}

SampledLine trace_back(const TorusField& v, const std::vector<double>& lambda,
                       double xRange, std::size_t xCount) {
  if (static_cast<int>(lambda.size()) != v.rank)
    throw GridMismatch("trace_back: direction length != field rank");
  if (xCount < 1 || !(xRange > 0))
    throw ConfigError("trace_back: need xRange > 0 and at least one interval");

  const int m = v.rank, N = v.gridN;
  std::vector<std::size_t> stride(static_cast<std::size_t>(m));
  stride[static_cast<std::size_t>(m - 1)] = 1;
  for (int d = m - 2; d >= 0; --d)
    stride[static_cast<std::size_t>(d)] = stride[static_cast<std::size_t>(d + 1)] * static_cast<std::size_t>(N);

  SampledLine u;
  u.length = xRange;
  u.periodic = false;
  u.values.resize(xCount + 1);

  std::vector<int> j0(static_cast<std::size_t>(m));
  std::vector<double> tfr(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i <= xCount; ++i) {
    const double x = xRange * static_cast<double>(i) / static_cast<double>(xCount);
    for (int d = 0; d < m; ++d) {
      double y = x * lambda[static_cast<std::size_t>(d)];
      y -= std::floor(y);
      double g = y * N;
      // snap to the node when within 1e-9 cells so aligned grids copy exactly
      const double r = std::round(g);
      if (std::abs(g - r) < 1e-9) g = r;
      if (g >= N) g -= N;
      int jj = static_cast<int>(std::floor(g));
      if (jj >= N) jj = N - 1;
      j0[static_cast<std::size_t>(d)] = jj;
      tfr[static_cast<std::size_t>(d)] = g - jj;
    }
    double acc = 0;
    const int corners = 1 << m;
    for (int mask = 0; mask < corners; ++mask) {
      double w = 1;
      std::size_t f = 0;
      for (int d = 0; d < m; ++d) {
        const bool hi = (mask >> d) & 1;
        w *= hi ? tfr[static_cast<std::size_t>(d)] : 1.0 - tfr[static_cast<std::size_t>(d)];
        int jj = j0[static_cast<std::size_t>(d)] + (hi ? 1 : 0);
        if (jj == N) jj = 0;
        f += static_cast<std::size_t>(jj) * stride[static_cast<std::size_t>(d)];
      }
      if (w != 0.0) acc += w * v.data[f];
    }
    u.values[i] = acc;
  }
  return u;
}

Trajectory1D solve_direct_1d(const SampledLine& u0, const Hamiltonian& H,
                             const SolveConfig& cfg) {
  if (!u0.periodic)
    throw ConfigError("solve_direct_1d: initial data must be periodic");
  if (!(u0.length > 0)) throw ConfigError("solve_direct_1d: period must be positive");
  if (u0.values.empty()) throw EmptyInput("solve_direct_1d: empty initial data");

  const int K = cfg.gridN > 0 ? cfg.gridN : static_cast<int>(u0.values.size());
  TorusField w = TorusField::zeros(1, K);
  if (K == static_cast<int>(u0.values.size())) {
    w.data = u0.values;
  } else {
    for (int j = 0; j < K; ++j)
      w.data[static_cast<std::size_t>(j)] =
          interp_periodic(u0, u0.length * j / static_cast<double>(K));
  }

  const std::vector<std::vector<double>> basis = {{1.0 / u0.length}};
  const Trajectory tr = run_solve(w, H, basis, cfg,
                                  cfg.scheme == SolveConfig::Scheme::vanishingViscosity);

  Trajectory1D out;
  out.alpha = tr.alpha;
  out.dt = tr.dt;
  out.steps = tr.steps;
  out.h0 = tr.h0;
  for (const auto& snap : tr.snapshots) {
    out.times.push_back(snap.time);
    SampledLine l;
    l.length = u0.length;
    l.periodic = true;
    l.values = snap.data;
    out.lines.push_back(std::move(l));
  }
  return out;
}

} // namespace aphj
