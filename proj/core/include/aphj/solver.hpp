#ifndef APHJ_SOLVER_HPP
#define APHJ_SOLVER_HPP

#include "aphj/hamiltonian.hpp"
#include "aphj/sampled_line.hpp"
#include "aphj/spectrum_module.hpp"
#include "aphj/torus_field.hpp"
#include "aphj/trigpoly.hpp"

#include <vector>

namespace aphj {

// Explicit time-stepping configuration.  gradientBox == 0 selects the
// default box: twice the one-sided Lipschitz estimate of the initial data
// from grid differences (solutions do not leave it).  alphaOverride and
// dtOverride exist so property tests can run two solves in exact lockstep
// with a shared stabilization; production paths leave them empty.
struct SolveConfig {
  enum class Scheme { laxFriedrichs, vanishingViscosity };
  Scheme scheme = Scheme::laxFriedrichs;
  double epsilon = 0.0;
  double cflSafety = 0.9;
  int gridN = 0;
  double tFinal = 0.0;
  double snapshotCadence = 0.0;
  double gradientBox = 0.0;
  std::vector<double> alphaOverride;
  double dtOverride = 0.0;
};

struct Trajectory {
  std::vector<TorusField> snapshots;
  std::vector<double> alpha;
  double dt = 0.0;
  long long steps = 0;
  double h0 = 0.0;
};

struct Trajectory1D {
  std::vector<double> times;
  std::vector<SampledLine> lines;
  std::vector<double> alpha;
  double dt = 0.0;
  long long steps = 0;
  double h0 = 0.0;
};

// Samples sum a_k exp(2 pi i k . y) on the T^rank grid, k given by the
// module coordinates of each frequency of u0.
TorusField lift_initial(const TrigPoly& u0, const SpectrumModule& M, int gridN);

// One configured solve held open so callers can advance a step at a time.
// Two steppers built with the same alphaOverride and dt advance in exact
// lockstep, which is what the comparison and contraction checks need.
// Every step() re-asserts finiteness, the discrete max principle (slack
// 1e-12 * max(1, sup |v0|)) and the 10x blow-up guard.
class LiftedStepper {
public:
  LiftedStepper(const TorusField& v0, const Hamiltonian& H,
                std::vector<std::vector<double>> basis, const SolveConfig& cfg,
                bool viscous);

  double dt_max() const { return dtMax_; }
  double dt() const { return dt_; }
  // dt must stay at or below dt_max (tiny relative tolerance for splits
  // computed as interval / steps).
  void set_dt(double dt);
  void step();
  long long steps_taken() const { return steps_; }
  double time() const { return dt_ * static_cast<double>(steps_); }
  const std::vector<double>& alpha() const { return alpha_; }
  double h0() const { return h0_; }
  // working buffer of the drift-normalized flow (no h0 restore)
  const std::vector<double>& raw() const { return a_; }
  double current_min() const { return minPrev_; }
  double current_max() const { return maxPrev_; }
  TorusField field() const;

private:
  void refresh_coupling();

  const Hamiltonian* H_;
  std::vector<std::vector<double>> basis_;
  int m_ = 0, N_ = 0, n_ = 0, nt_ = 1;
  bool viscous_ = false;
  double epsilon_ = 0.0, dy_ = 0.0, invTwoDy_ = 0.0, h0_ = 0.0;
  double dt_ = 0.0, dtMax_ = 0.0;
  std::vector<double> alpha_, diff_;
  std::vector<double> a_, b_;
  double maxPrev_ = 0.0, minPrev_ = 0.0, blowThresh_ = 0.0, slack_ = 0.0;
  long long steps_ = 0;
};

// Per-axis bound alpha_i >= sup over [-L, L]^m of |dG/dq_i| for the lifted
// hamiltonian G(q) = H(basis^T q), by dense secant sampling under
// refinement, inflated 10%.
std::vector<double> lipschitz_bound(const Hamiltonian& H,
                                    const std::vector<std::vector<double>>& basis,
                                    double L);

Trajectory solve_lifted(const TorusField& v0, const Hamiltonian& H,
                        const std::vector<std::vector<double>>& basis,
                        const SolveConfig& cfg);

Trajectory solve_viscous(const TorusField& v0, const Hamiltonian& H,
                         const std::vector<std::vector<double>>& basis,
                         const SolveConfig& cfg);

// u(x_i) = multilinear interpolation of v at (x_i * lambda mod 1); the
// restriction of the torus field to the line through 0 with direction
// lambda.  Output is non-periodic on [0, xRange] with xCount intervals.
SampledLine trace_back(const TorusField& v, const std::vector<double>& lambda,
                       double xRange, std::size_t xCount);

// m = 1 specialization accepting arbitrary periodic samples: the period is
// rescaled onto the unit torus (basis row 1/period) and traced back.
Trajectory1D solve_direct_1d(const SampledLine& u0, const Hamiltonian& H,
                             const SolveConfig& cfg);

// Twice the max one-sided grid difference quotient of v0; the default
// gradient box for stabilization estimates.
double default_gradient_box(const TorusField& v0);

// Worker count after applying the APHJ_THREADS cap; 1 without OpenMP.
int solver_thread_cap();

} // namespace aphj

#endif
