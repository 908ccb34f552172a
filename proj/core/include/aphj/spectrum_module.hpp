#ifndef APHJ_SPECTRUM_MODULE_HPP
#define APHJ_SPECTRUM_MODULE_HPP

#include "aphj/errors.hpp"
#include "aphj/frequency.hpp"
#include "aphj/integer_matrix.hpp"
#include "aphj/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace aphj {

// The additive group generated by a finite set of frequencies, as a free
// abelian group of finite rank.  Two regimes:
//  - computed: exact rational basis in HNF-canonical form (common scale D
//    kept so coordinate solves stay in integer arithmetic);
//  - declared: the caller supplies real basis vectors and asserts their
//    Z-independence (unverifiable in finite precision; recorded as trust).
class SpectrumModule {
public:
  SpectrumModule() = default;

  static SpectrumModule declared(std::vector<std::vector<double>> basisRows, int dim) {
    SpectrumModule m;
    m.dim_ = dim;
    m.declaredRegime_ = true;
    m.realBasis_ = std::move(basisRows);
    m.provenance_ = "declared";
    return m;
  }

  int rank() const {
    return declaredRegime_ ? static_cast<int>(realBasis_.size())
                           : static_cast<int>(lattice_.rows);
  }
  int dim() const { return dim_; }
  bool is_declared() const { return declaredRegime_; }
  const std::string& provenance() const { return provenance_; }

  // Rational regime: canonical basis rows as exact frequencies.
  const std::vector<FrequencyVector>& basis() const { return basis_; }
  // Scaled integer lattice: basis() rows equal lattice rows divided by denom.
  const IntegerMatrix& lattice() const { return lattice_; }
  const Int& denom() const { return denom_; }

  // Declared regime: trusted Z-independent real rows (rank x dim).
  const std::vector<std::vector<double>>& real_basis() const { return realBasis_; }

  // Numeric basis rows in either regime, for solvers and probes.
  std::vector<std::vector<double>> numeric_basis() const {
    if (declaredRegime_) return realBasis_;
    std::vector<std::vector<double>> rows;
    rows.reserve(basis_.size());
    for (const auto& b : basis_) rows.push_back(b.value());
    return rows;
  }

  friend SpectrumModule module_basis_rational(const std::vector<FrequencyVector>& gens);

private:
  int dim_ = 0;
  bool declaredRegime_ = false;
  std::vector<FrequencyVector> basis_;
  IntegerMatrix lattice_;
  Int denom_ = 1;
  std::vector<std::vector<double>> realBasis_;
  std::string provenance_ = "computed";
};

// Basis of the group generated by exact rational frequencies: clear
// denominators to a common scale D, stack the integer vectors, take the
// Hermite normal form, rescale the nonzero rows by 1/D.  Every generator
// then reproduces exactly as an integer combination of the basis.
inline SpectrumModule module_basis_rational(const std::vector<FrequencyVector>& gens) {
  if (gens.empty()) throw EmptyInput("module_basis_rational: no generators");
  const int n = gens.front().dim();
  for (const auto& g : gens) {
    if (!g.is_rational())
      throw IncompatibleRepresentation(
          "module_basis_rational: generators must be exact rationals");
    if (g.dim() != n)
      throw IncompatibleRepresentation("module_basis_rational: mixed dimensions");
  }

  Int D = 1;
  for (const auto& g : gens)
    for (const auto& c : g.coords()) D = lcm(D, rat_den(c));

  IntegerMatrix m(gens.size(), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int d = 0; d < n; ++d) {
      const Rat scaled = gens[i].coords()[static_cast<std::size_t>(d)] * D;
      m[i][static_cast<std::size_t>(d)] = rat_num(scaled); // exact by choice of D
    }

  SpectrumModule out;
  out.dim_ = n;
  out.declaredRegime_ = false;
  out.denom_ = D;
  out.lattice_ = hnf(std::move(m));
  out.provenance_ = "computed";
  for (std::size_t i = 0; i < out.lattice_.rows; ++i) {
    std::vector<Rat> coords(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d)
      coords[static_cast<std::size_t>(d)] =
          Rat(out.lattice_[i][static_cast<std::size_t>(d)], D);
    out.basis_.push_back(FrequencyVector::rational(std::move(coords)));
  }
  return out;
}

// Unique integer coordinates of lambda over the module basis; freeness of
// the group makes the representation unique when it exists.
inline std::vector<Int> integer_coordinates(const SpectrumModule& M,
                                            const FrequencyVector& lambda) {
  if (M.is_declared()) {
    if (lambda.is_rational())
      throw IncompatibleRepresentation(
          "integer_coordinates: rational frequency against a declared real basis");
    if (static_cast<int>(lambda.lattice_coords().size()) != M.rank())
      throw NotInModule("integer_coordinates: coefficient count != module rank");
    return lambda.lattice_coords(); // identity in the declared regime
  }
  if (!lambda.is_rational())
    throw IncompatibleRepresentation(
        "integer_coordinates: lattice frequency against a rational module");
  if (lambda.dim() != M.dim())
    throw IncompatibleRepresentation("integer_coordinates: dimension mismatch");

  std::vector<Int> target(static_cast<std::size_t>(M.dim()));
  for (int d = 0; d < M.dim(); ++d) {
    const Rat scaled = lambda.coords()[static_cast<std::size_t>(d)] * M.denom();
    if (rat_den(scaled) != 1)
      throw NotInModule("integer_coordinates: " + to_string(lambda.coords()[static_cast<std::size_t>(d)]) +
                        " is not at the module's denominator scale");
    target[static_cast<std::size_t>(d)] = rat_num(scaled);
  }
  std::vector<Int> k;
  if (!solve_in_lattice(M.lattice(), std::move(target), k))
    throw NotInModule("integer_coordinates: no integer combination reproduces the frequency");
  return k;
}

// Predicate form; absorbs both failure modes.  A frequency expressed in the
// other regime is simply not a member (regimes never coerce).
inline bool membership(const SpectrumModule& M, const FrequencyVector& lambda) {
  try {
    (void)integer_coordinates(M, lambda);
    return true;
  } catch (const NotInModule&) {
    return false;
  } catch (const IncompatibleRepresentation&) {
    return false;
  }
}

} // namespace aphj

#endif
