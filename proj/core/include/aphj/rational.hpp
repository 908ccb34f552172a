#ifndef APHJ_RATIONAL_HPP
#define APHJ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace aphj {

// Exact arithmetic backing for frequency lattices.  cpp_rational keeps
// lowest terms with positive denominator automatically, which is exactly
// the canonical form the frequency invariants require.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& i) { return i.convert_to<double>(); }

inline std::string to_string(const Rat& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

} // namespace aphj

#endif
