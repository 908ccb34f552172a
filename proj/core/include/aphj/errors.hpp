#ifndef APHJ_ERRORS_HPP
#define APHJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aphj {

// Base class for all library errors; what() carries diagnostic context.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Real-valued evaluation produced an imaginary residue above tolerance,
// i.e. the conjugate-pairing invariant of the term list is broken.
class NonRealResidue : public Error {
public:
  using Error::Error;
};

// Mixing exact-rational frequencies with integer vectors over a declared
// real basis; the two regimes never coerce.
class IncompatibleRepresentation : public Error {
public:
  using Error::Error;
};

class WindowTooShort : public Error {
public:
  using Error::Error;
};

class OrderTooLarge : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

class EmptyInput : public Error {
public:
  using Error::Error;
};

class NotInModule : public Error {
public:
  using Error::Error;
};

// Sampling or grid resolution cannot represent the requested frequency.
class NyquistViolation : public Error {
public:
  using Error::Error;
};

// Secant slopes of the hamiltonian keep growing under refinement; no
// finite monotonicity coefficient exists on the requested gradient box.
class UnboundedHamiltonian : public Error {
public:
  using Error::Error;
};

class CFLFailure : public Error {
public:
  using Error::Error;
};

// A field value escaped 10x the initial sup-norm: the scheme invariant
// (discrete max principle) is breached, results are meaningless.
class BlowUp : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class NotConverged : public Error {
public:
  using Error::Error;
};

// Any scenario failure that is not a configuration problem (exit code 1).
class RuntimeFailure : public Error {
public:
  using Error::Error;
};

} // namespace aphj

#endif
