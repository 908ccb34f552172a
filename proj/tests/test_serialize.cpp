#include "aphj/serialize.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace aphj;

TEST_CASE("double formatting reparses to the identical bits") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-60, 60);
  std::vector<double> samples{0.0, 1.0, -1.0, 0.1, 1.0 / 3.0,
                              std::numbers::pi, 6.02e23, 5e-324};
  for (int i = 0; i < 200; ++i) samples.push_back(std::ldexp(mant(rng), expo(rng)));
  for (double x : samples) {
    const std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  // shortest form: round decimals stay short
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("trig polynomial json round trip") {
  SUBCASE("rational regime") {
    TrigPoly p(1);
    p.add_cos(0.75, FrequencyVector::rational1(Rat(1, 3)));
    p.add_sin(0.25, FrequencyVector::rational1(Rat(5, 2)));
    p.add_term({1.5, 0.0}, FrequencyVector::rational1(Rat(0)));

    const std::string text = trigpoly_to_json(p);
    const TrigPoly q = trigpoly_from_json(text);
    CHECK(trigpoly_to_json(q) == text);
    for (double x : {0.0, 0.3, 1.7})
      CHECK(evaluate(q, x) == doctest::Approx(evaluate(p, x)).epsilon(1e-14));
  }

  SUBCASE("declared-basis regime") {
    TrigPoly p(1, {{1.0}, {std::numbers::sqrt2}});
    p.add_cos(1.0, FrequencyVector::lattice({Int(1), Int(0)}, 1));
    p.add_sin(0.5, FrequencyVector::lattice({Int(0), Int(1)}, 1));
    const std::string text = trigpoly_to_json(p);
    const TrigPoly q = trigpoly_from_json(text);
    CHECK(trigpoly_to_json(q) == text);
    CHECK(evaluate(q, 0.35) == doctest::Approx(evaluate(p, 0.35)).epsilon(1e-14));
  }

  SUBCASE("malformed input is rejected") {
    CHECK_THROWS_AS(trigpoly_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(trigpoly_from_json("{\"dim\": 1}"), ConfigError);
    CHECK_THROWS_AS(trigpoly_from_json(
                        "{\"dim\": 1, \"terms\": [], \"mystery\": 3}"),
                    ConfigError);
  }
}

TEST_CASE("frequency module json round trip") {
  SUBCASE("computed rational module") {
    const SpectrumModule M = module_basis_rational(
        {FrequencyVector::rational1(Rat(1, 2)), FrequencyVector::rational1(Rat(1, 3))});
    const std::string text = module_to_json(M);
    const SpectrumModule N = module_from_json(text);
    CHECK(module_to_json(N) == text);
    CHECK(N.rank() == M.rank());
    CHECK(membership(N, FrequencyVector::rational1(Rat(5, 6))));
    CHECK_FALSE(membership(N, FrequencyVector::rational1(Rat(1, 4))));
  }

  SUBCASE("declared real basis") {
    const SpectrumModule M = SpectrumModule::declared({{1.0}, {std::numbers::sqrt2}}, 1);
    const std::string text = module_to_json(M);
    const SpectrumModule N = module_from_json(text);
    CHECK(module_to_json(N) == text);
    CHECK(N.is_declared());
    CHECK(N.rank() == 2);
  }

  CHECK_THROWS_AS(module_from_json("[]"), ConfigError);
  CHECK_THROWS_AS(module_from_json("{\"rank\": 1}"), ConfigError);
}

TEST_CASE("sampled line csv") {
  SampledLine u;
  u.length = 2.0;
  u.periodic = true;
  u.values = {0.25, -1.5, 3.0, 0.1};
  const std::string text = line_to_csv(u);
  CHECK(text.rfind("x,value\n", 0) == 0);

  const SampledLine v = line_from_csv(text);
  REQUIRE(v.values.size() == 4);
  CHECK(v.length == 2.0);
  for (std::size_t j = 0; j < 4; ++j) CHECK(v.values[j] == u.values[j]);

  const SampledLine open = line_from_csv(text, false);
  CHECK_FALSE(open.periodic);
  // one fewer interval: the last sample closes the range instead of wrapping
  CHECK(open.length == doctest::Approx(1.5).epsilon(1e-12));

  CHECK_THROWS_AS(line_from_csv("value,x\n0,1\n1,2\n"), ConfigError);
  CHECK_THROWS_AS(line_from_csv("x,value\n0,1\n"), ConfigError);
  CHECK_THROWS_AS(line_from_csv("x,value\n0,1\n0.5,2\n1.2,3\n"), ConfigError);
  CHECK_THROWS_AS(line_from_csv("x,value\n0.5,1\n1.0,2\n"), ConfigError);
}

TEST_CASE("torus field csv") {
  TorusField f = TorusField::zeros(2, 4);
  f.time = 0.75;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (double& x : f.data) x = dist(rng);

  const std::string text = field_to_csv(f);
  CHECK(text.rfind("rank,gridN,time\n", 0) == 0);
  const TorusField g = field_from_csv(text);
  CHECK(g.rank == 2);
  CHECK(g.gridN == 4);
  CHECK(g.time == 0.75);
  REQUIRE(g.data.size() == f.data.size());
  for (std::size_t j = 0; j < f.data.size(); ++j) CHECK(g.data[j] == f.data[j]);

  CHECK_THROWS_AS(field_from_csv("rank,gridN,time\n2,4,0\n1\n"), ConfigError);
  CHECK_THROWS_AS(field_from_csv("bogus\n"), ConfigError);
}

TEST_CASE("cell field csv uses the shared field header") {
  CellField1D v;
  v.gridN = 3;
  v.time = 0.5;
  v.values = {1.0, 2.0, -0.25};
  const std::string text = cellfield_to_csv(v);
  CHECK(text.rfind("rank,gridN,time\n", 0) == 0);
  const TorusField f = field_from_csv(text);
  CHECK(f.rank == 1);
  CHECK(f.gridN == 3);
  CHECK(f.data[2] == -0.25);
}

TEST_CASE("diagnostics series csv") {
  DiagnosticsSeries s;
  s.times = {0.0, 0.5};
  s.minSeries = {-1.0, -0.5};
  s.maxSeries = {1.0, 0.5};
  s.oscillation = {2.0, 1.0};
  CHECK(series_to_csv(s).rfind("t,min,max,osc\n", 0) == 0);

  s.l1ref = {0.3, 0.2};
  CHECK(series_to_csv(s).rfind("t,min,max,osc,l1ref\n", 0) == 0);

  s.probeLabels = {"1", "99/70"};
  s.probeSeries = {{0.1, 0.05}, {0.2, 0.1}};
  const std::string text = series_to_csv(s);
  CHECK(text.rfind("t,min,max,osc,l1ref,probe_1,probe_99/70\n", 0) == 0);
  // two data rows after the header
  int rows = 0;
  for (char ch : text)
    if (ch == '\n') ++rows;
  CHECK(rows == 3);
}
