#ifndef APHJ_CONSLAW_HPP
#define APHJ_CONSLAW_HPP

#include "aphj/hamiltonian.hpp"
#include "aphj/solver.hpp"

#include <vector>

namespace aphj {

// Cell averages of a conserved quantity on the unit-period 1-D torus.
struct CellField1D {
  int gridN = 0;
  double time = 0.0;
  std::vector<double> values;
};

struct CLTrajectory {
  std::vector<CellField1D> snapshots;
  double alpha = 0.0;
  double dt = 0.0;
  long long steps = 0;
};

// Conservative Lax-Friedrichs march of v_t + H(v)_x = 0.  The per-step cell
// sum is asserted invariant to 1e-12 relative; the flux-difference form
// makes it telescope exactly up to roundoff.  Honors cfg.alphaOverride[0]
// so a run can share its stabilization with a gradient-flow twin.
CLTrajectory solve_cl_1d(const CellField1D& v0, const Hamiltonian& flux,
                         const SolveConfig& cfg);

double discrete_mean(const CellField1D& v);

// Per-snapshot L1 norm of (central difference of u) - v on matched grids
// and timestamps; u must live on the unit period.
std::vector<double> duality_check(const Trajectory1D& uTraj,
                                  const CLTrajectory& vTraj);

// Resolution-bounded non-affineness probe around I: true iff every
// sub-interval of [I-width, I+width] of half its length containing I
// deviates somewhere (257 samples) from the chord of H over the full
// interval by more than tol.  False reports an affine-looking vicinity at
// this resolution.
bool nd2_check(const Hamiltonian& H, double I, double width, double tol);

} // namespace aphj

#endif
