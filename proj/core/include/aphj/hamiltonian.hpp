#ifndef APHJ_HAMILTONIAN_HPP
#define APHJ_HAMILTONIAN_HPP

#include "aphj/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace aphj {

enum class HamKind { quadratic, linear, power, kinkTable, plateau, sampledTable };

// Evaluation rule for H(p) plus the metadata the asymptotics layer needs
// (value at 0, declared linear interval for the plateau family).  dim() == 0
// means the family is defined for any ambient dimension (radial or 1-D
// applied to a scalar argument); a positive dim pins it.
class Hamiltonian {
public:
  // H(p) = 0.5 * s * |p|^2
  static Hamiltonian quadratic(double s = 1.0) {
    Hamiltonian h(HamKind::quadratic, 0);
    h.scale_ = s;
    return h;
  }
  // H(p) = c . p
  static Hamiltonian linear(std::vector<double> c) {
    if (c.empty()) throw ConfigError("Hamiltonian::linear: empty coefficient");
    Hamiltonian h(HamKind::linear, static_cast<int>(c.size()));
    h.c_ = std::move(c);
    return h;
  }
  static Hamiltonian linear1(double c) { return linear({c}); }
  // H(p) = s * |p|^gamma.  gamma in (0,1) is continuous but not locally
  // Lipschitz at 0; such H is accepted here and rejected later by
  // lipschitz_bound when its secants diverge under refinement.
  static Hamiltonian power(double gamma, double s = 1.0) {
    if (!(gamma > 0))
      throw ConfigError("Hamiltonian::power: gamma must be positive");
    Hamiltonian h(HamKind::power, 0);
    h.gamma_ = gamma;
    h.scale_ = s;
    return h;
  }
  // Piecewise-linear with explicit kink nodes; end segments extrapolate.
  static Hamiltonian kink_table(std::vector<double> ps, std::vector<double> Hs) {
    return table(HamKind::kinkTable, std::move(ps), std::move(Hs));
  }
  // Sampled values of a smooth H, linear interpolation between samples.
  static Hamiltonian sampled_table(std::vector<double> ps, std::vector<double> Hs) {
    return table(HamKind::sampledTable, std::move(ps), std::move(Hs));
  }
  // H(p) = c*p exactly on [a, b]; outside, c*p + k*(distance to interval)^ext
  // with ext in {2, 3}, so the extension is C^1 and strictly non-affine.
  static Hamiltonian plateau(double a, double b, double c, double k, int ext) {
    if (!(a < b)) throw ConfigError("Hamiltonian::plateau: need a < b");
    if (!(k != 0)) throw ConfigError("Hamiltonian::plateau: extension "
                                     "coefficient must be nonzero");
    if (ext != 2 && ext != 3)
      throw ConfigError("Hamiltonian::plateau: extension exponent must be 2 or 3");
    Hamiltonian h(HamKind::plateau, 1);
    h.a_ = a;
    h.b_ = b;
    h.cSlope_ = c;
    h.kExt_ = k;
    h.extExp_ = ext;
    return h;
  }

  HamKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool has_plateau() const { return kind_ == HamKind::plateau; }
  double plateau_a() const { return a_; }
  double plateau_b() const { return b_; }
  double plateau_c() const { return cSlope_; }

  // Scalar-argument evaluation; the hot path of every 1-D solver loop.
  double eval1(double p) const {
    switch (kind_) {
      case HamKind::quadratic: return 0.5 * scale_ * p * p;
      case HamKind::linear: return c_[0] * p;
      case HamKind::power: return scale_ * std::pow(std::abs(p), gamma_);
      case HamKind::plateau: {
        if (p > b_) {
          const double d = p - b_;
          return cSlope_ * p + kExt_ * (extExp_ == 2 ? d * d : d * d * d);
        }
        if (p < a_) {
          const double d = a_ - p;
          return cSlope_ * p + kExt_ * (extExp_ == 2 ? d * d : d * d * d);
        }
        return cSlope_ * p;
      }
      case HamKind::kinkTable:
      case HamKind::sampledTable: return table_eval(p);
    }
    return 0.0;
  }

  double eval(const std::vector<double>& p) const {
    switch (kind_) {
      case HamKind::quadratic: {
        double s = 0;
        for (double x : p) s += x * x;
        return 0.5 * scale_ * s;
      }
      case HamKind::linear: {
        if (p.size() != c_.size())
          throw GridMismatch("Hamiltonian: gradient dimension mismatch");
        double s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) s += c_[i] * p[i];
        return s;
      }
      case HamKind::power: {
        double s = 0;
        for (double x : p) s += x * x;
        return scale_ * std::pow(std::sqrt(s), gamma_);
      }
      default:
        if (p.size() != 1)
          throw GridMismatch("Hamiltonian: this family takes a scalar gradient");
        return eval1(p[0]);
    }
  }

  double h0() const {
    return dim_ <= 1 ? eval1(0.0) : eval(std::vector<double>(static_cast<std::size_t>(dim_), 0.0));
  }

private:
  Hamiltonian(HamKind k, int dim) : kind_(k), dim_(dim) {}

  static Hamiltonian table(HamKind k, std::vector<double> ps, std::vector<double> Hs) {
    if (ps.size() != Hs.size() || ps.size() < 2)
      throw ConfigError("Hamiltonian table: need >= 2 matching nodes");
    for (std::size_t i = 1; i < ps.size(); ++i)
      if (!(ps[i] > ps[i - 1]))
        throw ConfigError("Hamiltonian table: nodes must be strictly increasing");
    Hamiltonian h(k, 1);
    h.xs_ = std::move(ps);
    h.ys_ = std::move(Hs);
    return h;
  }

  double table_eval(double p) const {
    // end segments extrapolate so evaluation stays total on any box
    std::size_t hi;
    if (p <= xs_.front()) hi = 1;
    else if (p >= xs_.back()) hi = xs_.size() - 1;
    else hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), p) - xs_.begin());
    const std::size_t lo = hi - 1;
    const double t = (p - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + t * (ys_[hi] - ys_[lo]);
  }

  HamKind kind_;
  int dim_;
  double scale_ = 1.0;
  double gamma_ = 2.0;
  std::vector<double> c_;
  std::vector<double> xs_, ys_;
  double a_ = 0.0, b_ = 0.0, cSlope_ = 0.0, kExt_ = 0.0;
  int extExp_ = 2;
};

} // namespace aphj

#endif
