#include "aphj/asymptotics.hpp"
#include "aphj/solver.hpp"
#include "aphj/spectrum_module.hpp"
#include "aphj/trigpoly.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <vector>

using namespace aphj;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

TrigPoly sin1(double amp, Rat freq) {
  TrigPoly p(1);
  p.add_sin(amp, FrequencyVector::rational1(std::move(freq)));
  return p;
}

SampledLine unit_line(int K, double (*f)(double)) {
  SampledLine u;
  u.length = 1.0;
  u.periodic = true;
  u.values.resize(static_cast<std::size_t>(K));
  for (int j = 0; j < K; ++j)
    u.values[static_cast<std::size_t>(j)] = f(static_cast<double>(j) / K);
  return u;
}

SolveConfig basic_cfg(int gridN, double tFinal, double cadence) {
  SolveConfig c;
  c.gridN = gridN;
  c.tFinal = tFinal;
  c.snapshotCadence = cadence;
  return c;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

TEST_CASE("lifting initial data onto the torus") {
  SUBCASE("integer frequencies lift to the identical circle function") {
    const SpectrumModule M = module_basis_rational({FrequencyVector::rational1(Rat(1))});
    const TorusField v = lift_initial(sin1(1.0, Rat(1)), M, 32);
    REQUIRE(v.rank == 1);
    REQUIRE(v.gridN == 32);
    for (int j = 0; j < 32; ++j)
      CHECK(v.data[static_cast<std::size_t>(j)] ==
            doctest::Approx(std::sin(2 * kPi * j / 32.0)).epsilon(1e-12));
  }

  SUBCASE("declared two-element basis puts one harmonic per axis") {
    const SpectrumModule M = SpectrumModule::declared({{1.0}, {kSqrt2}}, 1);
    TrigPoly u0(1, {{1.0}, {kSqrt2}});
    u0.add_sin(1.0, FrequencyVector::lattice({Int(1), Int(0)}, 1));
    u0.add_sin(0.5, FrequencyVector::lattice({Int(0), Int(1)}, 1));
    const TorusField v = lift_initial(u0, M, 16);
    REQUIRE(v.rank == 2);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const double want =
            std::sin(2 * kPi * i / 16.0) + 0.5 * std::sin(2 * kPi * j / 16.0);
        CHECK(v.data[static_cast<std::size_t>(i * 16 + j)] ==
              doctest::Approx(want).epsilon(1e-12));
      }
  }

  SUBCASE("rational module coordinates set the wave numbers") {
    const SpectrumModule M =
        module_basis_rational({FrequencyVector::rational1(Rat(1, 2)),
                               FrequencyVector::rational1(Rat(1, 3))});
    TrigPoly u0(1);
    u0.add_cos(1.0, FrequencyVector::rational1(Rat(1, 2)));
    u0.add_cos(1.0, FrequencyVector::rational1(Rat(1, 3)));
    const TorusField v = lift_initial(u0, M, 16);
    REQUIRE(v.rank == 1);
    for (int j = 0; j < 16; ++j) {
      const double want =
          std::cos(2 * kPi * 3 * j / 16.0) + std::cos(2 * kPi * 2 * j / 16.0);
      CHECK(v.data[static_cast<std::size_t>(j)] ==
            doctest::Approx(want).epsilon(1e-12));
    }

    CHECK_THROWS_AS(lift_initial(sin1(1.0, Rat(1, 4)), M, 16), NotInModule);
    CHECK_THROWS_AS(lift_initial(u0, M, 6), NyquistViolation); // 6 <= 2*3
  }
}

TEST_CASE("stabilization coefficients from secant sampling") {
  const auto lin = lipschitz_bound(Hamiltonian::linear1(0.75), {{1.0}}, 2.0);
  REQUIRE(lin.size() == 1);
  CHECK(lin[0] == doctest::Approx(0.825).epsilon(1e-9));

  const auto quad = lipschitz_bound(Hamiltonian::quadratic(), {{1.0}}, 1.0);
  CHECK(quad[0] == doctest::Approx(1.1).epsilon(0.02));

  const auto two = lipschitz_bound(Hamiltonian::quadratic(), {{1.0}, {kSqrt2}}, 1.0);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == doctest::Approx(1.1 * (1 + kSqrt2)).epsilon(0.02));
  CHECK(two[1] == doctest::Approx(1.1 * kSqrt2 * (1 + kSqrt2)).epsilon(0.02));

  // |p|^gamma with gamma < 1 has no finite slope at 0
  CHECK_THROWS_AS(lipschitz_bound(Hamiltonian::power(0.5), {{1.0}}, 1.0),
                  UnboundedHamiltonian);
}

TEST_CASE("linear hamiltonian transports the data") {
  SampledLine u0 = unit_line(400, [](double x) { return std::sin(2 * kPi * x); });
  const Trajectory1D tr =
      solve_direct_1d(u0, Hamiltonian::linear1(0.75), basic_cfg(400, 0.5, 0.25));
  REQUIRE(tr.lines.size() == 3); // t = 0, 0.25, 0.5
  CHECK(tr.times.back() == doctest::Approx(0.5).epsilon(1e-15));
  double err = 0;
  for (int j = 0; j < 400; ++j) {
    const double x = j / 400.0;
    err = std::max(err, std::abs(tr.lines.back().values[static_cast<std::size_t>(j)] -
                                 std::sin(2 * kPi * (x - 0.375))));
  }
  CHECK(err <= 0.05);
}

TEST_CASE("constants are exact fixed points of the march") {
  TorusField v0 = TorusField::zeros(1, 64);
  for (double& x : v0.data) x = 2.5;
  const Trajectory tr =
      solve_lifted(v0, Hamiltonian::quadratic(), {{1.0}}, basic_cfg(64, 0.5, 0.25));
  for (const auto& s : tr.snapshots)
    for (double x : s.data) CHECK(x == 2.5);
}

TEST_CASE("quadratic hamiltonian matches the inf-convolution oracle") {
  SampledLine fine = unit_line(1600, [](double x) { return std::sin(2 * kPi * x) / (2 * kPi); });

  // frozen brute-force value of the t = 0.5 solution at x = 0
  CHECK(hopf_lax_oracle(fine, 0.5, 0.0) == doctest::Approx(-0.1118875239).epsilon(1e-5));

  double prev = 1e9;
  double err800 = 0;
  for (int N : {100, 200, 400, 800}) {
    SampledLine u0 = unit_line(N, [](double x) { return std::sin(2 * kPi * x) / (2 * kPi); });
    const Trajectory1D tr =
        solve_direct_1d(u0, Hamiltonian::quadratic(), basic_cfg(N, 0.5, 0.5));
    double err = 0;
    for (int j = 0; j < N; ++j)
      err = std::max(err, std::abs(tr.lines.back().values[static_cast<std::size_t>(j)] -
                                   hopf_lax_oracle(fine, 0.5, static_cast<double>(j) / N)));
    CHECK(err < prev); // first-order trend under grid doubling
    prev = err;
    err800 = err;
  }
  CHECK(err800 <= 0.02);
}

TEST_CASE("comparison, contraction and extremum monotonicity in lockstep") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> ampDist(0.05, 0.3);
  std::uniform_real_distribution<double> gapDist(0.1, 0.3);

  const Hamiltonian H = Hamiltonian::quadratic();
  const std::vector<std::vector<double>> basis{{1.0}};
  const int N = 100;

  for (int pair = 0; pair < 3; ++pair) {
    TorusField a0 = TorusField::zeros(1, N);
    const double a1 = ampDist(rng), a2 = ampDist(rng), g0 = gapDist(rng);
    for (int j = 0; j < N; ++j) {
      const double y = static_cast<double>(j) / N;
      a0.data[static_cast<std::size_t>(j)] =
          a1 * std::sin(2 * kPi * y) + a2 * std::cos(2 * kPi * 2 * y);
    }
    TorusField b0 = a0;
    for (int j = 0; j < N; ++j) {
      const double y = static_cast<double>(j) / N;
      // pointwise gap stays >= 0.05, so ordering survives roundoff exactly
      b0.data[static_cast<std::size_t>(j)] += g0 + (g0 - 0.05) * std::sin(2 * kPi * 3 * y);
    }

    SolveConfig cfg = basic_cfg(N, 0.3, 0.3);
    cfg.alphaOverride = lipschitz_bound(H, basis, 12.0);

    LiftedStepper sa(a0, H, basis, cfg, false);
    LiftedStepper sb(b0, H, basis, cfg, false);
    REQUIRE(sa.dt() == sb.dt());

    double d0 = sup_diff(a0.data, b0.data);
    const double slack = 1e-12 * std::max(1.0, d0);
    double supPrev = d0;
    double maxA = sa.current_max(), minA = sa.current_min();
    const long long steps =
        static_cast<long long>(std::ceil(0.3 / sa.dt() - 1e-12));
    for (long long s = 0; s < steps; ++s) {
      sa.step();
      sb.step();
      const auto& ra = sa.raw();
      const auto& rb = sb.raw();
      bool ordered = true;
      for (std::size_t j = 0; j < ra.size(); ++j) ordered = ordered && rb[j] >= ra[j];
      CHECK(ordered);
      const double d = sup_diff(ra, rb);
      CHECK(d <= supPrev + slack);
      supPrev = d;
      CHECK(sa.current_max() <= maxA + slack);
      CHECK(sa.current_min() >= minA - slack);
      maxA = sa.current_max();
      minA = sa.current_min();
    }
  }
}

TEST_CASE("rank-2 solve with data constant along the trailing axis") {
  const Hamiltonian H = Hamiltonian::quadratic();
  const int N = 64;

  TorusField w0 = TorusField::zeros(2, N);
  TorusField u0 = TorusField::zeros(1, N);
  for (int i = 0; i < N; ++i) {
    const double f = std::sin(2 * kPi * i / static_cast<double>(N));
    u0.data[static_cast<std::size_t>(i)] = f;
    for (int j = 0; j < N; ++j) w0.data[static_cast<std::size_t>(i * N + j)] = f;
  }

  const auto al2 = lipschitz_bound(H, {{1.0}, {kSqrt2}}, 12.6);
  SolveConfig c2 = basic_cfg(N, 0.25, 0.25);
  c2.alphaOverride = al2;
  c2.dtOverride = 0.9 * (1.0 / N) / (al2[0] + al2[1]);
  SolveConfig c1 = c2;
  c1.alphaOverride = {al2[0]};

  const Trajectory t2 = solve_lifted(w0, H, {{1.0}, {kSqrt2}}, c2);
  const Trajectory t1 = solve_lifted(u0, H, {{1.0}}, c1);
  REQUIRE(t2.snapshots.size() == t1.snapshots.size());
  CHECK(t2.dt == t1.dt);

  for (std::size_t s = 0; s < t2.snapshots.size(); ++s) {
    const auto& d2 = t2.snapshots[s].data;
    const auto& d1 = t1.snapshots[s].data;
    double worst = 0, flat = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double v = d2[static_cast<std::size_t>(i * N + j)];
        worst = std::max(worst, std::abs(v - d1[static_cast<std::size_t>(i)]));
        flat = std::max(flat, std::abs(v - d2[static_cast<std::size_t>(i * N)]));
      }
    CHECK(worst <= 1e-12);
    CHECK(flat <= 1e-12);
  }
}

TEST_CASE("integer unimodular change of torus variables") {
  // direct: v_t + H(q1 + sqrt(2) q2) = 0; substituted: y -> (z1+z2, z2),
  // giving direction (1 - sqrt(2), sqrt(2)); grids map cell-to-cell
  const Hamiltonian H = Hamiltonian::quadratic();

  auto run_pair = [&H](int N) {
    TorusField v0 = TorusField::zeros(2, N);
    TorusField w0 = TorusField::zeros(2, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double y0 = static_cast<double>(i) / N;
        const double y1 = static_cast<double>(j) / N;
        v0.data[static_cast<std::size_t>(i * N + j)] =
            0.1 * std::sin(2 * kPi * y0) + 0.05 * std::sin(2 * kPi * y1);
        const int ii = (i + j) % N;
        const double z0 = static_cast<double>(ii) / N;
        w0.data[static_cast<std::size_t>(i * N + j)] =
            0.1 * std::sin(2 * kPi * z0) + 0.05 * std::sin(2 * kPi * y1);
      }
    // each run stabilizes against its own data; the two artificial
    // diffusions act along different axes, so agreement is only O(dy)
    SolveConfig cfg;
    cfg.gridN = N;
    cfg.tFinal = 0.25;
    cfg.snapshotCadence = 0.25;
    const Trajectory tv = solve_lifted(v0, H, {{1.0}, {kSqrt2}}, cfg);
    const Trajectory tw = solve_lifted(w0, H, {{1.0 - kSqrt2}, {kSqrt2}}, cfg);
    double d = 0;
    const auto& dv = tv.snapshots.back().data;
    const auto& dw = tw.snapshots.back().data;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        d = std::max(d, std::abs(dw[static_cast<std::size_t>(i * N + j)] -
                                 dv[static_cast<std::size_t>(((i + j) % N) * N + j)]));
    return d;
  };

  const double d64 = run_pair(64);
  const double d128 = run_pair(128);
  CHECK(d128 < d64);     // both discretizations approach the same limit
  CHECK(d128 <= 0.035);  // twice the measured gap at this grid
}

TEST_CASE("explicit diffusion cross-validates the stabilized march") {
  TorusField v0 = TorusField::zeros(1, 800);
  for (int j = 0; j < 800; ++j)
    v0.data[static_cast<std::size_t>(j)] = std::sin(2 * kPi * j / 800.0) / (2 * kPi);

  SolveConfig cfg = basic_cfg(800, 0.5, 0.5);
  CHECK_THROWS_AS(solve_viscous(v0, Hamiltonian::quadratic(), {{1.0}}, cfg),
                  ConfigError); // epsilon must be positive

  SolveConfig vc = cfg;
  vc.epsilon = 0.005;
  const Trajectory visc = solve_viscous(v0, Hamiltonian::quadratic(), {{1.0}}, vc);
  const Trajectory lf = solve_lifted(v0, Hamiltonian::quadratic(), {{1.0}}, cfg);
  CHECK(sup_diff(visc.snapshots.back().data, lf.snapshots.back().data) <= 0.03);

  TorusField c0 = TorusField::zeros(1, 64);
  for (double& x : c0.data) x = 1.5;
  SolveConfig cc = basic_cfg(64, 0.2, 0.2);
  cc.epsilon = 0.01;
  const Trajectory tc = solve_viscous(c0, Hamiltonian::quadratic(), {{1.0}}, cc);
  for (double x : tc.snapshots.back().data) CHECK(x == 1.5);
}

TEST_CASE("tracing the torus solution back to the line") {
  SUBCASE("closed-form comparison on a plane wave") {
    const int N = 256;
    TorusField v = TorusField::zeros(2, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        v.data[static_cast<std::size_t>(i * N + j)] =
            std::cos(2 * kPi * i / static_cast<double>(N));
    const SampledLine u = trace_back(v, {1.0, kSqrt2}, 2.0, 512);
    REQUIRE(!u.periodic);
    REQUIRE(u.values.size() == 513);
    for (std::size_t j = 0; j < u.values.size(); ++j) {
      const double x = 2.0 * static_cast<double>(j) / 512.0;
      CHECK(std::abs(u.values[j] - std::cos(2 * kPi * x)) <= 1e-3);
    }
  }

  SUBCASE("constants trace to constants") {
    TorusField v = TorusField::zeros(2, 16);
    for (double& x : v.data) x = 0.75;
    const SampledLine u = trace_back(v, {1.0, kSqrt2}, 5.0, 100);
    // interpolation weights sum to 1 only up to rounding
    for (double x : u.values) CHECK(std::abs(x - 0.75) <= 1e-15);
  }

  SUBCASE("aligned rank-1 trace is a verbatim copy") {
    TorusField v = TorusField::zeros(1, 64);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : v.data) x = dist(rng);
    const SampledLine u = trace_back(v, {1.0}, 1.0, 64);
    for (int j = 0; j < 64; ++j)
      CHECK(u.values[static_cast<std::size_t>(j)] == v.data[static_cast<std::size_t>(j)]);
    CHECK(u.values[64] == v.data[0]);
  }

  SUBCASE("direction length must match the field rank") {
    TorusField v = TorusField::zeros(2, 16);
    CHECK_THROWS_AS(trace_back(v, {1.0}, 1.0, 16), GridMismatch);
  }
}

TEST_CASE("configuration and invariant guard rails") {
  TorusField v0 = TorusField::zeros(1, 64);
  for (int j = 0; j < 64; ++j)
    v0.data[static_cast<std::size_t>(j)] = std::sin(2 * kPi * j / 64.0);

  SUBCASE("rejected configurations") {
    SolveConfig bad = basic_cfg(64, 0.0, 0.1);
    CHECK_THROWS_AS(solve_lifted(v0, Hamiltonian::quadratic(), {{1.0}}, bad),
                    ConfigError);
    TorusField tiny = TorusField::zeros(1, 4);
    bad = basic_cfg(4, 0.5, 0.1);
    CHECK_THROWS_AS(solve_lifted(tiny, Hamiltonian::quadratic(), {{1.0}}, bad),
                    ConfigError);
    bad = basic_cfg(64, 0.5, 0.1);
    bad.cflSafety = 0.0;
    CHECK_THROWS_AS(solve_lifted(v0, Hamiltonian::quadratic(), {{1.0}}, bad),
                    ConfigError);
  }

  SUBCASE("time step above the stability ceiling") {
    SolveConfig cfg = basic_cfg(64, 0.5, 0.5);
    LiftedStepper st(v0, Hamiltonian::quadratic(), {{1.0}}, cfg, false);
    CHECK_THROWS_AS(st.set_dt(st.dt_max() * 2), CFLFailure);
    CHECK_THROWS_AS(st.set_dt(0.0), CFLFailure);
  }

  SUBCASE("destroyed stabilization trips the invariant breach guard") {
    SolveConfig cfg = basic_cfg(64, 1.0, 1.0);
    cfg.alphaOverride = {1e-8}; // far below the real slope bound
    cfg.dtOverride = 1.0;
    CHECK_THROWS_AS(solve_lifted(v0, Hamiltonian::quadratic(), {{1.0}}, cfg),
                    BlowUp);
  }

  SUBCASE("worker cap follows the environment") {
    setenv("APHJ_THREADS", "1", 1);
    CHECK(solver_thread_cap() == 1);
    unsetenv("APHJ_THREADS");
    CHECK(solver_thread_cap() >= 1);
  }
}
