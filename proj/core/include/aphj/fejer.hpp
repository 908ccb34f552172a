#ifndef APHJ_FEJER_HPP
#define APHJ_FEJER_HPP

#include "aphj/errors.hpp"
#include "aphj/torus_field.hpp"
#include "aphj/trigpoly.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace aphj {

// Fejer-weighted truncation of the grid Fourier transform of a real torus
// field: per-axis weights (1 - |k_d|/(order+1)) on |k_d| <= order.  Needs
// gridN >= 2*order + 2 so the retained modes are alias-free.
//
// The transform is taken axis by axis (separable), then coefficients are
// conjugate-symmetrized so the output is exactly conjugate-paired despite
// roundoff in the sums.  Coefficients below 1e-12 * max(1, sup|v|) are
// dropped to keep the reported spectrum meaningful.
inline TrigPoly fejer_approx(const TorusField& v, int order) {
  if (order < 1) throw ConfigError("fejer_approx: order must be positive");
  if (v.gridN < 2 * order + 2)
    throw OrderTooLarge("fejer_approx: gridN < 2*order + 2");
  if (v.data.empty()) throw EmptyInput("fejer_approx: empty field");

  const int m = v.rank;
  const int N = v.gridN;
  const int K = 2 * order + 1;

  // work holds a mixed-shape array: transformed axes have extent K
  // (k = -order..order), untransformed axes keep extent N.
  std::vector<std::complex<double>> work(v.data.begin(), v.data.end());
  std::vector<int> extent(static_cast<std::size_t>(m), N);

  for (int axis = 0; axis < m; ++axis) {
    std::size_t inner = 1, outer = 1;
    for (int d = axis + 1; d < m; ++d) inner *= static_cast<std::size_t>(extent[static_cast<std::size_t>(d)]);
    for (int d = 0; d < axis; ++d) outer *= static_cast<std::size_t>(extent[static_cast<std::size_t>(d)]);

    std::vector<std::complex<double>> next(outer * static_cast<std::size_t>(K) * inner);
    for (std::size_t o = 0; o < outer; ++o)
      for (int k = -order; k <= order; ++k) {
        const std::size_t kSlot = static_cast<std::size_t>(k + order);
        for (std::size_t i = 0; i < inner; ++i) {
          std::complex<double> s{0.0, 0.0};
          for (int j = 0; j < N; ++j) {
            const double phase = -2 * std::numbers::pi * k * j / static_cast<double>(N);
            const std::size_t src = (o * static_cast<std::size_t>(N) + static_cast<std::size_t>(j)) * inner + i;
            s += work[src] * std::complex<double>(std::cos(phase), std::sin(phase));
          }
          next[(o * static_cast<std::size_t>(K) + kSlot) * inner + i] = s / static_cast<double>(N);
        }
      }
    work = std::move(next);
    extent[static_cast<std::size_t>(axis)] = K;
  }

  double supv = 0;
  for (double x : v.data) supv = std::max(supv, std::abs(x));
  const double drop = 1e-12 * std::max(1.0, supv);

  TrigPoly p(m);
  std::vector<int> k(static_cast<std::size_t>(m), -order);
  const std::size_t total = work.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t f = flat;
    for (int d = m - 1; d >= 0; --d) {
      k[static_cast<std::size_t>(d)] = static_cast<int>(f % static_cast<std::size_t>(K)) - order;
      f /= static_cast<std::size_t>(K);
    }
    // conjugate symmetrization: pair flat index of -k
    std::size_t neg = 0;
    for (int d = 0; d < m; ++d)
      neg = neg * static_cast<std::size_t>(K) + static_cast<std::size_t>(-k[static_cast<std::size_t>(d)] + order);
    std::complex<double> c = 0.5 * (work[flat] + std::conj(work[neg]));

    double w = 1.0;
    for (int d = 0; d < m; ++d)
      w *= 1.0 - std::abs(k[static_cast<std::size_t>(d)]) / static_cast<double>(order + 1);
    c *= w;
    if (std::abs(c) < drop) continue;

    std::vector<Rat> freq(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) freq[static_cast<std::size_t>(d)] = Rat(k[static_cast<std::size_t>(d)]);
    p.add_term(c, FrequencyVector::rational(freq));
  }
  return p;
}

} // namespace aphj

#endif
