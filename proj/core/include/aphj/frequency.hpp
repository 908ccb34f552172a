#ifndef APHJ_FREQUENCY_HPP
#define APHJ_FREQUENCY_HPP

#include "aphj/errors.hpp"
#include "aphj/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace aphj {

// Frequencies live in exactly two regimes.  Exact rationals support exact
// group arithmetic directly; irrational frequencies are expressed as integer
// coefficient vectors k over a declared real basis (lambda = sum k_j b_j),
// so that group arithmetic stays in Z^m.  The regimes never coerce.
enum class FreqRegime { rational, lattice };

class FrequencyVector {
public:
  FrequencyVector() : regime_(FreqRegime::rational), dim_(1), coords_(1, Rat(0)) {}

  static FrequencyVector rational(std::vector<Rat> coords) {
    FrequencyVector f;
    f.regime_ = FreqRegime::rational;
    f.dim_ = static_cast<int>(coords.size());
    f.coords_ = std::move(coords);
    return f;
  }
  static FrequencyVector rational1(const Rat& v) { return rational({v}); }

  // k over a declared basis of dim-dimensional real vectors.
  static FrequencyVector lattice(std::vector<Int> k, int dim = 1) {
    FrequencyVector f;
    f.regime_ = FreqRegime::lattice;
    f.dim_ = dim;
    f.coords_.clear();
    f.k_ = std::move(k);
    return f;
  }

  FreqRegime regime() const { return regime_; }
  int dim() const { return dim_; }
  bool is_rational() const { return regime_ == FreqRegime::rational; }

  const std::vector<Rat>& coords() const { return coords_; }
  const std::vector<Int>& lattice_coords() const { return k_; }

  bool is_zero() const {
    if (regime_ == FreqRegime::rational) {
      for (const auto& c : coords_)
        if (c != 0) return false;
      return true;
    }
    for (const auto& c : k_)
      if (c != 0) return false;
    return true;
  }

  FrequencyVector operator-() const {
    FrequencyVector f(*this);
    for (auto& c : f.coords_) c = -c;
    for (auto& c : f.k_) c = -c;
    return f;
  }

  // Equality is exact arithmetic within a regime; a rational frequency and a
  // lattice frequency are never equal even if they name the same real.
  friend bool operator==(const FrequencyVector& a, const FrequencyVector& b) {
    return a.regime_ == b.regime_ && a.dim_ == b.dim_ &&
           a.coords_ == b.coords_ && a.k_ == b.k_;
  }
  friend bool operator!=(const FrequencyVector& a, const FrequencyVector& b) {
    return !(a == b);
  }
  friend bool operator<(const FrequencyVector& a, const FrequencyVector& b) {
    if (a.regime_ != b.regime_) return a.regime_ < b.regime_;
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    if (a.regime_ == FreqRegime::rational) return a.coords_ < b.coords_;
    return a.k_ < b.k_;
  }

  // Numeric value; lattice regime needs the declared basis rows (m rows of
  // dim reals) to evaluate lambda = sum k_j b_j.
  std::vector<double> value(const std::vector<std::vector<double>>& basis = {}) const {
    std::vector<double> v(static_cast<std::size_t>(dim_), 0.0);
    if (regime_ == FreqRegime::rational) {
      for (int d = 0; d < dim_; ++d) v[d] = to_double(coords_[d]);
      return v;
    }
    if (basis.size() != k_.size())
      throw IncompatibleRepresentation(
          "lattice frequency needs its declared basis for numeric evaluation");
    for (std::size_t j = 0; j < k_.size(); ++j) {
      const double kj = to_double(k_[j]);
      for (int d = 0; d < dim_; ++d) v[d] += kj * basis[j][d];
    }
    return v;
  }

private:
  FreqRegime regime_;
  int dim_;
  std::vector<Rat> coords_; // rational regime, size dim
  std::vector<Int> k_;      // lattice regime, size = basis rank
};

} // namespace aphj

#endif
