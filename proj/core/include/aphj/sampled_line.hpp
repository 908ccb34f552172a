#ifndef APHJ_SAMPLED_LINE_HPP
#define APHJ_SAMPLED_LINE_HPP

#include "aphj/errors.hpp"
#include "aphj/numerics.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace aphj {

// Uniform samples of a real function on [0, length].  Periodic lines store
// K values at i*length/K, i = 0..K-1, with the right endpoint implied;
// non-periodic lines store K+1 values covering both endpoints.
struct SampledLine {
  double length = 0.0;
  std::vector<double> values;
  bool periodic = true;

  // Number of intervals K; spacing is length/K either way.
  std::size_t intervals() const {
    return periodic ? values.size() : values.size() - 1;
  }
  double dx() const { return length / static_cast<double>(intervals()); }
  double x(std::size_t i) const {
    return static_cast<double>(i) * length / static_cast<double>(intervals());
  }
  double at(std::size_t i) const {
    return periodic ? values[i % values.size()] : values[i];
  }
};

// Sup distance over the common sample grid.  Both lines must discretize the
// identical interval with identical resolution; anything else is a caller
// bug, not a quantity to interpolate around.
inline double sup_distance(const SampledLine& a, const SampledLine& b) {
  if (a.values.empty() || b.values.empty())
    throw EmptyInput("sup_distance: empty sample vector");
  if (a.length != b.length || a.values.size() != b.values.size() ||
      a.periodic != b.periodic)
    throw GridMismatch("sup_distance: sample grids differ");
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

inline double min_value(const SampledLine& a) {
  if (a.values.empty()) throw EmptyInput("min_value: empty sample vector");
  double m = a.values[0];
  for (double v : a.values) m = std::min(m, v);
  return m;
}
inline double max_value(const SampledLine& a) {
  if (a.values.empty()) throw EmptyInput("max_value: empty sample vector");
  double m = a.values[0];
  for (double v : a.values) m = std::max(m, v);
  return m;
}
inline double oscillation(const SampledLine& a) {
  return max_value(a) - min_value(a);
}

// Periodic linear interpolation.  Positions within 1e-9 cells of a node
// take the node value exactly, so aligned grids copy bitwise.
inline double interp_periodic(const SampledLine& u, double x) {
  if (!u.periodic)
    throw GridMismatch("interp_periodic: line is not periodic");
  if (u.values.empty()) throw EmptyInput("interp_periodic: empty line");
  const std::size_t K = u.values.size();
  double s = x / u.length;
  s -= std::floor(s);
  double g = s * static_cast<double>(K);
  const double r = std::round(g);
  if (std::abs(g - r) < 1e-9) g = r;
  if (g >= static_cast<double>(K)) g -= static_cast<double>(K);
  std::size_t j = static_cast<std::size_t>(g);
  if (j >= K) j = K - 1;
  const double t = g - static_cast<double>(j);
  const std::size_t jp = (j + 1 == K) ? 0 : j + 1;
  return u.values[j] * (1 - t) + u.values[jp] * t;
}

// Finite-window mean-frequency probe
//   (1/W) integral_0^W u(x) exp(-2 pi i lambda x) dx
// by trapezoid quadrature on the stored grid, window snapped to a whole
// number of sample intervals.  Compensated summation keeps the estimate
// reproducible across window sizes of order 1e4 samples.
//
// gapHint > 0 declares a minimal spacing between spectrum lines; a window
// shorter than 2/gapHint cannot separate them and is rejected rather than
// silently returning a blurred value.
inline std::complex<double> bohr_probe_sampled(const SampledLine& u,
                                               double lambda, double window,
                                               double gapHint = 0.0) {
  if (u.values.size() < 2)
    throw EmptyInput("bohr_probe_sampled: need at least two samples");
  if (!(window > 0))
    throw WindowTooShort("bohr_probe_sampled: window must be positive");
  if (window > u.length * (1 + 1e-12))
    throw WindowTooShort("bohr_probe_sampled: window exceeds sampled range");
  if (gapHint > 0 && window < 2.0 / gapHint)
    throw WindowTooShort("bohr_probe_sampled: window shorter than 2/gapHint "
                         "cannot resolve the declared line spacing");
  const double density = static_cast<double>(u.intervals()) / u.length;
  if (density < 64.0)
    throw NyquistViolation("bohr_probe_sampled: fewer than 64 samples per "
                           "unit length");

  const double h = u.dx();
  std::size_t n = static_cast<std::size_t>(std::llround(window / h));
  if (n == 0)
    throw WindowTooShort("bohr_probe_sampled: window shorter than one sample "
                         "interval");
  if (!u.periodic && n > u.intervals()) n = u.intervals();
  const double W = static_cast<double>(n) * h;

  NeumaierSum re, im;
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    const double xi = static_cast<double>(i) * h;
    const double phase = -2 * std::numbers::pi * lambda * xi;
    const double v = u.at(i);
    re.add(w * v * std::cos(phase));
    im.add(w * v * std::sin(phase));
  }
  return {re.value() * h / W, im.value() * h / W};
}

} // namespace aphj

#endif
