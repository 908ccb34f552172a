#ifndef APHJ_KRONECKER_HPP
#define APHJ_KRONECKER_HPP

#include "aphj/errors.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace aphj {

// Equidistribution certificate for the winding y = x*Lambda on the m-torus.
// Samples the line uniformly over [0, xRange] and returns the worst distance
// from a probeGrid^m cell center to its nearest sample, in the torus
// sup-metric.  Small values certify dense coverage at that resolution; for a
// rationally dependent Lambda the value stalls at the line's distance to the
// off-line cell centers no matter how many samples are taken.
inline double kronecker_fill_distance(const std::vector<double>& lambda,
                                      double xRange, long samples,
                                      int probeGrid) {
  const int m = static_cast<int>(lambda.size());
  if (m < 1) throw EmptyInput("kronecker_fill_distance: empty direction");
  if (samples < 1 || probeGrid < 1)
    throw ConfigError("kronecker_fill_distance: samples and probeGrid must be positive");

  std::vector<double> pts(static_cast<std::size_t>(samples) * m);
  for (long i = 0; i < samples; ++i) {
    const double x = samples == 1 ? 0.0
                                  : xRange * static_cast<double>(i) /
                                        static_cast<double>(samples - 1);
    for (int d = 0; d < m; ++d) {
      double y = std::fmod(x * lambda[static_cast<std::size_t>(d)], 1.0);
      if (y < 0) y += 1.0;
      pts[static_cast<std::size_t>(i) * m + d] = y;
    }
  }

  long cells = 1;
  for (int d = 0; d < m; ++d) cells *= probeGrid;

  double worst = 0.0;
  std::vector<double> center(m);
  for (long cell = 0; cell < cells; ++cell) {
    long rest = cell;
    for (int d = 0; d < m; ++d) {
      center[static_cast<std::size_t>(d)] =
          (static_cast<double>(rest % probeGrid) + 0.5) / probeGrid;
      rest /= probeGrid;
    }
    double best = 1.0;
    for (long i = 0; i < samples; ++i) {
      const double* p = &pts[static_cast<std::size_t>(i) * m];
      double dist = 0.0;
      for (int d = 0; d < m; ++d) {
        double dd = std::fabs(p[d] - center[static_cast<std::size_t>(d)]);
        if (dd > 0.5) dd = 1.0 - dd;
        if (dd > dist) dist = dd;
      }
      if (dist < best) best = dist;
      if (best <= worst) break; // this cell cannot raise the maximum
    }
    if (best > worst) worst = best;
  }
  return worst;
}

} // namespace aphj

#endif
