#ifndef APHJ_TRIGPOLY_HPP
#define APHJ_TRIGPOLY_HPP

#include "aphj/errors.hpp"
#include "aphj/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace aphj {

struct TrigTerm {
  std::complex<double> a;
  FrequencyVector freq;
};

// Finite trigonometric polynomial sum a_l exp(2 pi i l . x) with exact
// frequency bookkeeping.  All terms share one frequency regime; a declared
// real basis is carried when the terms are lattice-regime.  Term list is
// kept sorted with pairwise distinct frequencies.
class TrigPoly {
public:
  explicit TrigPoly(int dim = 1, std::vector<std::vector<double>> basis = {})
      : dim_(dim), basis_(std::move(basis)) {}

  static TrigPoly constant(double c, int dim = 1) {
    TrigPoly p(dim);
    p.add_term({c, 0.0}, zero_freq(dim));
    return p;
  }

  int dim() const { return dim_; }
  const std::vector<std::vector<double>>& basis() const { return basis_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool real_valued() const { return realValued_; }

  // Inserts coefficient a at freq, merging exact-duplicate frequencies and
  // dropping terms whose coefficient cancels to exactly zero.
  void add_term(std::complex<double> a, const FrequencyVector& freq) {
    if (freq.dim() != dim_)
      throw IncompatibleRepresentation("TrigPoly: frequency dimension mismatch");
    if (!terms_.empty() && terms_.front().freq.regime() != freq.regime())
      throw IncompatibleRepresentation("TrigPoly: mixed frequency regimes");
    if (freq.regime() == FreqRegime::lattice &&
        basis_.size() != freq.lattice_coords().size())
      throw IncompatibleRepresentation("TrigPoly: lattice frequency does not match declared basis");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), freq,
                               [](const TrigTerm& t, const FrequencyVector& f) {
                                 return t.freq < f;
                               });
    if (it != terms_.end() && it->freq == freq) {
      it->a += a;
      if (it->a == std::complex<double>(0.0, 0.0)) terms_.erase(it);
    } else if (a != std::complex<double>(0.0, 0.0)) {
      terms_.insert(it, TrigTerm{a, freq});
    }
  }

  // amp * cos(2 pi l . x) and amp * sin(2 pi l . x) as conjugate pairs.
  void add_cos(double amp, const FrequencyVector& freq) {
    if (freq.is_zero()) {
      add_term({amp, 0.0}, freq);
      return;
    }
    add_term({amp / 2, 0.0}, freq);
    add_term({amp / 2, 0.0}, -freq);
  }
  void add_sin(double amp, const FrequencyVector& freq) {
    add_term({0.0, -amp / 2}, freq);
    add_term({0.0, amp / 2}, -freq);
  }

  // Conjugate-pairing invariant of real-valued polynomials: every (a, l)
  // has a matching (conj a, -l).
  bool conjugate_paired(double tol = 1e-12) const {
    double scale = 0;
    for (const auto& t : terms_) scale += std::abs(t.a);
    for (const auto& t : terms_) {
      const FrequencyVector neg = -t.freq;
      auto it = std::lower_bound(terms_.begin(), terms_.end(), neg,
                                 [](const TrigTerm& u, const FrequencyVector& f) {
                                   return u.freq < f;
                                 });
      if (it == terms_.end() || !(it->freq == neg)) return false;
      if (std::abs(it->a - std::conj(t.a)) > tol * std::max(1.0, scale)) return false;
    }
    return true;
  }

  void set_real_valued(bool rv) { realValued_ = rv; }

private:
  static FrequencyVector zero_freq(int dim) {
    return FrequencyVector::rational(std::vector<Rat>(static_cast<std::size_t>(dim), Rat(0)));
  }

  int dim_;
  std::vector<std::vector<double>> basis_;
  std::vector<TrigTerm> terms_;
  bool realValued_ = true;
};

// Complex evaluation; building block for the checked real evaluation.
inline std::complex<double> evaluate_complex(const TrigPoly& p,
                                             const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != p.dim())
    throw GridMismatch("evaluate: point dimension != polynomial dimension");
  std::complex<double> s{0.0, 0.0};
  for (const auto& t : p.terms()) {
    const std::vector<double> lam = t.freq.value(p.basis());
    double phase = 0;
    for (std::size_t d = 0; d < lam.size(); ++d) phase += lam[d] * x[d];
    phase *= 2 * std::numbers::pi;
    s += t.a * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return s;
}

// Real evaluation.  The imaginary residue is discarded only after checking
// it against 1e-12 relative to the total coefficient mass; a larger residue
// means the conjugate-pairing invariant is broken.
inline double evaluate(const TrigPoly& p, const std::vector<double>& x) {
  if (!p.real_valued())
    throw NonRealResidue("evaluate: polynomial is not flagged real-valued");
  double mass = 0;
  for (const auto& t : p.terms()) mass += std::abs(t.a);
  const std::complex<double> s = evaluate_complex(p, x);
  if (std::abs(s.imag()) > 1e-12 * std::max(1.0, mass))
    throw NonRealResidue("evaluate: imaginary residue above tolerance; "
                         "conjugate pairing is violated");
  return s.real();
}

inline double evaluate(const TrigPoly& p, double x) {
  return evaluate(p, std::vector<double>{x});
}

// Exact coefficient of the zero frequency, which equals the Bohr mean.
inline double mean_value(const TrigPoly& p) {
  if (!p.real_valued())
    throw NonRealResidue("mean_value: polynomial is not flagged real-valued");
  for (const auto& t : p.terms())
    if (t.freq.is_zero()) return t.a.real();
  return 0.0;
}

// Exact coefficient lookup: a_lambda when lambda is in the spectrum, else 0.
inline std::complex<double> bohr_coefficient(const TrigPoly& p,
                                             const FrequencyVector& lambda) {
  if (!p.terms().empty() &&
      p.terms().front().freq.regime() != lambda.regime())
    throw IncompatibleRepresentation(
        "bohr_coefficient: frequency regime differs from the polynomial's");
  if (lambda.dim() != p.dim())
    throw IncompatibleRepresentation("bohr_coefficient: dimension mismatch");
  for (const auto& t : p.terms())
    if (t.freq == lambda) return t.a;
  return {0.0, 0.0};
}

// Frequencies with nonzero coefficients.
inline std::vector<FrequencyVector> spectrum(const TrigPoly& p) {
  std::vector<FrequencyVector> s;
  s.reserve(p.terms().size());
  for (const auto& t : p.terms()) s.push_back(t.freq);
  return s;
}

} // namespace aphj

#endif
