#include "aphj/asymptotics.hpp"
#include "aphj/solver.hpp"
#include "aphj/spectrum_module.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace aphj;

namespace {

constexpr double kPi = std::numbers::pi;

SampledLine line_of(int K, double length, double (*f)(double)) {
  SampledLine u;
  u.length = length;
  u.periodic = true;
  u.values.resize(static_cast<std::size_t>(K));
  for (int j = 0; j < K; ++j)
    u.values[static_cast<std::size_t>(j)] = f(length * j / static_cast<double>(K));
  return u;
}

SolveConfig basic_cfg(int gridN, double tFinal, double cadence) {
  SolveConfig c;
  c.gridN = gridN;
  c.tFinal = tFinal;
  c.snapshotCadence = cadence;
  return c;
}

} // namespace

TEST_CASE("detecting the affine stretch of a flux") {
  SUBCASE("strictly convex flux has none") {
    const LinearInterval li = detect_linear_interval(Hamiltonian::quadratic(), 1.0, 1e-3);
    CHECK(li.degenerate);
    CHECK(li.a == 0.0);
    CHECK(li.b == 0.0);
  }

  SUBCASE("plateau flux reports its flat stretch and slope") {
    const LinearInterval li =
        detect_linear_interval(Hamiltonian::plateau(-1.0, 1.0, 2.0, 1.0, 2), 2.0, 1e-4);
    CHECK_FALSE(li.degenerate);
    CHECK(std::abs(li.a + 1.0) <= 0.02);
    CHECK(std::abs(li.b - 1.0) <= 0.02);
    CHECK(li.c == doctest::Approx(2.0).epsilon(1e-9));
  }

  SUBCASE("a kink at the probe point is degenerate") {
    const Hamiltonian V = Hamiltonian::kink_table({-1.0, 0.0, 1.0}, {1.0, 0.0, 1.0});
    CHECK(detect_linear_interval(V, 0.5, 1e-4).degenerate);
  }

  SUBCASE("globally affine flux fills the whole search radius") {
    const LinearInterval li = detect_linear_interval(Hamiltonian::linear1(0.75), 2.0, 1e-6);
    CHECK_FALSE(li.degenerate);
    CHECK(li.a == -2.0);
    CHECK(li.b == 2.0);
    CHECK(li.c == doctest::Approx(0.75).epsilon(1e-12));
  }

  SUBCASE("interval grows with the tolerance") {
    const Hamiltonian P = Hamiltonian::plateau(-1.0, 1.0, 2.0, 1.0, 2);
    const LinearInterval tight = detect_linear_interval(P, 2.0, 1e-5);
    const LinearInterval loose = detect_linear_interval(P, 2.0, 1e-3);
    CHECK(loose.a <= tight.a + 1e-9);
    CHECK(loose.b >= tight.b - 1e-9);
  }

  CHECK_THROWS_AS(detect_linear_interval(Hamiltonian::quadratic(), 0.0, 1e-3), ConfigError);
  CHECK_THROWS_AS(detect_linear_interval(Hamiltonian::quadratic(), 1.0, 0.0), ConfigError);
}

TEST_CASE("inf-convolution oracle") {
  SUBCASE("constants are their own value") {
    const SampledLine c = line_of(64, 1.0, [](double) { return 2.0; });
    CHECK(hopf_lax_oracle(c, 0.5, 0.7) == doctest::Approx(2.0).epsilon(1e-12));
  }

  SUBCASE("short times reproduce the data") {
    const SampledLine u0 = line_of(400, 1.0, [](double x) { return std::sin(2 * kPi * x) / (2 * kPi); });
    for (double x : {0.25, 0.5, 0.77}) {
      const double v = hopf_lax_oracle(u0, 1e-4, x);
      CHECK(std::abs(v - std::sin(2 * kPi * x) / (2 * kPi)) <= 1e-3);
    }
  }

  SUBCASE("value is non-increasing in time") {
    const SampledLine u0 = line_of(800, 1.0, [](double x) { return std::sin(2 * kPi * x) / (2 * kPi); });
    double prev = hopf_lax_oracle(u0, 0.1, 0.3);
    for (double t : {0.2, 0.4, 0.8}) {
      const double v = hopf_lax_oracle(u0, t, 0.3);
      CHECK(v <= prev + 1e-9);
      prev = v;
    }
  }

  SUBCASE("guards") {
    SampledLine open = line_of(64, 1.0, [](double) { return 0.0; });
    open.periodic = false;
    CHECK_THROWS_AS(hopf_lax_oracle(open, 0.5, 0.0), ConfigError);
    const SampledLine c = line_of(64, 1.0, [](double) { return 0.0; });
    CHECK_THROWS_AS(hopf_lax_oracle(c, 0.0, 0.0), ConfigError);
    SampledLine e;
    e.length = 1.0;
    e.periodic = true;
    CHECK_THROWS_AS(hopf_lax_oracle(e, 0.5, 0.0), EmptyInput);
  }
}

TEST_CASE("snapshot statistics") {
  SUBCASE("constant snapshots") {
    Trajectory1D tr;
    tr.times = {0.0, 0.5};
    tr.lines = {line_of(32, 1.0, [](double) { return 1.25; }),
                line_of(32, 1.0, [](double) { return 1.25; })};
    const DiagnosticsSeries s = oscillation_series(tr);
    REQUIRE(s.times.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(s.minSeries[k] == 1.25);
      CHECK(s.maxSeries[k] == 1.25);
      CHECK(s.oscillation[k] == 0.0);
    }
  }

  SUBCASE("constant torus snapshots") {
    Trajectory tr;
    TorusField f = TorusField::zeros(2, 8);
    for (double& x : f.data) x = -0.5;
    f.time = 0.0;
    tr.snapshots.push_back(f);
    f.time = 1.0;
    tr.snapshots.push_back(f);
    const DiagnosticsSeries s = oscillation_series(tr);
    CHECK(s.maxSeries[1] == -0.5);
    CHECK(s.oscillation[1] == 0.0);
  }

  SUBCASE("an exactly transported wave vanishes against its own profile") {
    Profile p;
    p.samples = line_of(256, 1.0, [](double x) { return std::sin(2 * kPi * x); });
    p.speed = 0.8;
    Trajectory1D tr;
    tr.times = {0.0, 0.5, 1.0};
    for (double t : tr.times) {
      SampledLine u;
      u.length = 1.0;
      u.periodic = true;
      u.values.resize(256);
      for (int j = 0; j < 256; ++j)
        u.values[static_cast<std::size_t>(j)] = std::sin(2 * kPi * (j / 256.0 - 0.8 * t));
      tr.lines.push_back(std::move(u));
    }
    const DiagnosticsSeries s = oscillation_series(tr, &p);
    for (double o : s.oscillation) CHECK(o <= 2e-3);
  }

  SUBCASE("profile grid must match the snapshots") {
    Trajectory1D tr;
    tr.times = {0.0};
    tr.lines = {line_of(32, 1.0, [](double) { return 0.0; })};
    Profile p;
    p.samples = line_of(32, 2.0, [](double) { return 0.0; });
    CHECK_THROWS_AS(oscillation_series(tr, &p), GridMismatch);
    p.samples = line_of(32, 1.0, [](double) { return 0.0; });
    p.samples.periodic = false;
    CHECK_THROWS_AS(oscillation_series(tr, &p), GridMismatch);
  }

  SUBCASE("empty trajectory") {
    Trajectory1D tr;
    CHECK_THROWS_AS(oscillation_series(tr), EmptyInput);
  }
}

TEST_CASE("gradient flow flattens and the statistics show it") {
  const SampledLine u0 =
      line_of(256, 1.0, [](double x) { return std::sin(2 * kPi * x) / (2 * kPi); });
  const Trajectory1D tr =
      solve_direct_1d(u0, Hamiltonian::quadratic(), basic_cfg(256, 2.0, 0.25));
  const DiagnosticsSeries s = oscillation_series(tr);
  const double slack = 1e-12;
  for (std::size_t k = 1; k < s.times.size(); ++k) {
    CHECK(s.maxSeries[k] <= s.maxSeries[k - 1] + slack);
    CHECK(s.minSeries[k] >= s.minSeries[k - 1] - slack);
  }
  CHECK(s.oscillation.back() < 0.9 * s.oscillation.front());

  const DecayReport verdict = decay_verdict(s, 0.5);
  CHECK(verdict.violations == 0);

  SUBCASE("late snapshots at rest give a flat profile") {
    const std::vector<double> times{tr.times[tr.times.size() - 2], tr.times.back()};
    const std::vector<SampledLine> lines{tr.lines[tr.lines.size() - 2], tr.lines.back()};
    const Profile p = extract_profile(times, lines, 0.0, 1.0);
    CHECK(oscillation(p.samples) <= 2.0 * oscillation(tr.lines.back()));
  }

  SUBCASE("early snapshots do not align at zero speed") {
    const std::vector<double> times{tr.times[0], tr.times[1]};
    const std::vector<SampledLine> lines{tr.lines[0], tr.lines[1]};
    CHECK_THROWS_AS(extract_profile(times, lines, 0.0, 1e-9), NotConverged);
  }
}

TEST_CASE("profile extraction from a transported wave") {
  const Hamiltonian P = Hamiltonian::plateau(-1.0, 1.0, 0.8, 1.0, 2);
  const SampledLine u0 = line_of(400, 1.0, [](double x) { return 0.1 * std::sin(2 * kPi * x); });
  const Trajectory1D tr = solve_direct_1d(u0, P, basic_cfg(400, 1.0, 0.25));

  const LinearInterval li = detect_linear_interval(P, 2.0, 1e-4);
  REQUIRE_FALSE(li.degenerate);
  CHECK(li.c == doctest::Approx(0.8).epsilon(1e-9));

  const double cert = profile_alignment_residual(tr.times, tr.lines, li.c);
  CHECK(cert <= 0.05);

  const Profile p = extract_profile(tr.times, tr.lines, li.c, 0.05);
  CHECK(p.speed == li.c);
  double worst = 0;
  for (int j = 0; j < 400; ++j)
    worst = std::max(worst, std::abs(p.samples.values[static_cast<std::size_t>(j)] -
                                     0.1 * std::sin(2 * kPi * j / 400.0)));
  CHECK(worst <= 0.02);

  // slope band of the carried shape: 0.1 sin(2 pi x) has slopes up to ~0.63
  CHECK(one_sided_lipschitz_check(p, -0.7, 0.7, 1e-3));
  CHECK_FALSE(one_sided_lipschitz_check(p, -0.3, 0.3, 1e-3));
}

TEST_CASE("profile extraction from constants is exact") {
  const std::vector<double> times{1.0, 2.0, 3.0};
  const std::vector<SampledLine> lines(3, line_of(64, 1.0, [](double) { return 0.4; }));
  CHECK(profile_alignment_residual(times, lines, 0.37) == 0.0);
  const Profile p = extract_profile(times, lines, 0.37, 1e-12);
  CHECK(p.speed == 0.37);
  CHECK(p.offset == doctest::Approx(0.4).epsilon(1e-15));
  for (double v : p.samples.values) CHECK(v == doctest::Approx(0.4).epsilon(1e-15));

  CHECK_THROWS_AS(extract_profile({1.0}, {lines[0]}, 0.0, 1.0), EmptyInput);
}

TEST_CASE("two-sided slope band check") {
  Profile flat;
  flat.samples = line_of(64, 1.0, [](double) { return 0.2; });
  CHECK(one_sided_lipschitz_check(flat, 0.0, 0.0, 0.0));

  Profile wavy;
  wavy.samples = line_of(400, 1.0, [](double x) { return 0.1 * std::sin(2 * kPi * x); });
  CHECK(one_sided_lipschitz_check(wavy, -0.7, 0.7, 1e-6));
  CHECK_FALSE(one_sided_lipschitz_check(wavy, -0.5, 0.5, 1e-6));

  // oscillation below the tolerance passes the zero band outright
  Profile faint;
  faint.samples = line_of(128, 1.0, [](double x) { return 0.004 * std::sin(2 * kPi * x); });
  CHECK(one_sided_lipschitz_check(faint, 0.0, 0.0, 0.01));
  Profile loud;
  loud.samples = line_of(128, 1.0, [](double x) { return 0.03 * std::sin(2 * kPi * x); });
  CHECK_FALSE(one_sided_lipschitz_check(loud, 0.0, 0.0, 0.01));

  CHECK_THROWS_AS(one_sided_lipschitz_check(flat, 0.1, 0.2, 0.0), ConfigError);
  Profile empty;
  CHECK_THROWS_AS(one_sided_lipschitz_check(empty, 0.0, 0.0, 0.0), EmptyInput);
}

TEST_CASE("decay verdicts") {
  DiagnosticsSeries s;
  s.times = {0.0, 1.0, 2.0};
  s.oscillation = {0.5, 0.4, 0.3};
  const DecayReport ok = decay_verdict(s, 0.7);
  CHECK(ok.pass);
  CHECK(ok.violations == 0);
  CHECK(ok.ratio == doctest::Approx(0.6).epsilon(1e-12));

  s.oscillation = {1.0, 2.0, 3.0};
  const DecayReport bad = decay_verdict(s, 0.5);
  CHECK_FALSE(bad.pass);
  CHECK(bad.violations == 2);

  s.oscillation = {0.0, 0.0};
  CHECK(decay_verdict(s, 0.1).pass); // flat stays flat: ratio 0
  s.oscillation = {0.0, 0.1};
  CHECK_FALSE(decay_verdict(s, 0.1).pass);

  DiagnosticsSeries e;
  CHECK_THROWS_AS(decay_verdict(e, 0.5), EmptyInput);
}

TEST_CASE("module containment probe over a long window") {
  const SpectrumModule M = module_basis_rational({FrequencyVector::rational1(Rat(1))});
  const std::vector<FrequencyVector> in{FrequencyVector::rational1(Rat(1))};
  const std::vector<FrequencyVector> out{FrequencyVector::rational1(Rat(1, 2))};

  SUBCASE("a pure harmonic passes with a loud in-probe") {
    const SampledLine u = line_of(4096, 32.0, [](double x) { return std::sin(2 * kPi * x); });
    const ContainmentReport r = spectrum_containment_probe(u, M, in, out, 32.0, 0.005);
    CHECK(r.pass);
    CHECK_FALSE(r.degenerate);
    REQUIRE(r.inProbes.size() == 1);
    REQUIRE(r.outProbes.size() == 1);
    CHECK(r.inProbes[0].magnitude == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(r.outProbes[0].magnitude < 0.005);
  }

  SUBCASE("a silent field passes degenerately") {
    const SampledLine u = line_of(4096, 32.0, [](double) { return 0.0; });
    const ContainmentReport r = spectrum_containment_probe(u, M, in, out, 32.0, 0.005);
    CHECK(r.pass);
    CHECK(r.degenerate);
  }

  SUBCASE("misclassified probes are rejected") {
    const SampledLine u = line_of(4096, 32.0, [](double x) { return std::sin(2 * kPi * x); });
    const std::vector<FrequencyVector> badIn{FrequencyVector::rational1(Rat(1, 3))};
    CHECK_THROWS_AS(spectrum_containment_probe(u, M, badIn, out, 32.0, 0.005), ConfigError);
    const std::vector<FrequencyVector> badOut{FrequencyVector::rational1(Rat(2))};
    CHECK_THROWS_AS(spectrum_containment_probe(u, M, in, badOut, 32.0, 0.005), ConfigError);
    CHECK_THROWS_AS(spectrum_containment_probe(u, M, in, out, 32.0, 0.0), ConfigError);
  }
}
