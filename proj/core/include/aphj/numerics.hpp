#ifndef APHJ_NUMERICS_HPP
#define APHJ_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace aphj {

// Neumaier compensated accumulator; order-stable to ~1 ulp of the true sum.
// Used wherever a sum feeds an exact-looking invariant (conservation checks,
// quadrature, L1 norms).
class NeumaierSum {
public:
  void add(double x) {
    const double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double neumaier_total(const std::vector<double>& v) {
  NeumaierSum s;
  for (double x : v) s.add(x);
  return s.value();
}

} // namespace aphj

#endif
