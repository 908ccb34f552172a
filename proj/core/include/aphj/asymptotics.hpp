#ifndef APHJ_ASYMPTOTICS_HPP
#define APHJ_ASYMPTOTICS_HPP

#include "aphj/hamiltonian.hpp"
#include "aphj/sampled_line.hpp"
#include "aphj/solver.hpp"
#include "aphj/spectrum_module.hpp"

#include <string>
#include <vector>

namespace aphj {

// Maximal interval around 0 on which H(u) - H(0) looks like c*u at the
// detection tolerance; a = b = 0 with the degenerate flag when no such
// interval extends past a few tol.
struct LinearInterval {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool degenerate = true;
};

struct DiagnosticsSeries {
  std::vector<double> times;
  std::vector<double> minSeries;
  std::vector<double> maxSeries;
  std::vector<double> oscillation;
  std::vector<double> l1ref; // empty when no reference was requested
  std::vector<std::string> probeLabels;
  std::vector<std::vector<double>> probeSeries; // one row per label
};

// Periodic wave profile plus the affine motion that carries it.
struct Profile {
  SampledLine samples; // periodic
  double offset = 0.0; // late-time mean level
  double speed = 0.0;
};

struct DecayReport {
  double initialOscillation = 0.0;
  double finalOscillation = 0.0;
  double ratio = 0.0;
  long long violations = 0; // oscillation increases beyond slack
  double threshold = 0.0;
  bool pass = false;
};

struct ProbeReading {
  std::string label;
  double lambda = 0.0;
  double magnitude = 0.0;
};

struct ContainmentReport {
  std::vector<ProbeReading> inProbes;
  std::vector<ProbeReading> outProbes;
  double quadBound = 0.0;
  bool degenerate = false; // no in-probe signal but nothing leaked either
  bool pass = false;
};

// c is the symmetric secant of H - H(0) at scale tol; the interval expands
// by bisection while |H(u) - H(0) - c*u| <= tol * max(|u|, tol) holds on
// sampled points.
LinearInterval detect_linear_interval(const Hamiltonian& H, double searchRadius,
                                      double tol);

// Brute-force inf-convolution value for H = p^2/2:
//   min over y of u0(y) + (x - y)^2 / (2t),
// y on a grid fineFactor times denser than u0's sampling, window
// sqrt(2 t osc(u0)) + one period around x.  This operation is the trusted
// oracle the solvers are validated against.
double hopf_lax_oracle(const SampledLine& u0, double t, double x,
                       int fineFactor = 8);

// Min/max/oscillation per snapshot of u - profile(x - ct); null profile
// means raw statistics.
DiagnosticsSeries oscillation_series(const Trajectory1D& traj,
                                     const Profile* profile = nullptr);
DiagnosticsSeries oscillation_series(const Trajectory& traj);

// Averages late snapshots shifted by +ct into a profile; the certificate is
// their sup-disagreement after shifting and must stay under certThreshold.
Profile extract_profile(const std::vector<double>& times,
                        const std::vector<SampledLine>& lines, double c,
                        double certThreshold);

// Certificate the last extract_profile-style alignment would report, without
// throwing: sup-disagreement among shifted snapshots.
double profile_alignment_residual(const std::vector<double>& times,
                                  const std::vector<SampledLine>& lines, double c);

// a(y2-y1) - tol <= p(y2) - p(y1) <= b(y2-y1) + tol over all sample pairs in
// one period (subsampled beyond 1024 points).
bool one_sided_lipschitz_check(const Profile& p, double a, double b, double tol);

DecayReport decay_verdict(const DiagnosticsSeries& series, double threshold);

// Pass iff every out-of-module probe stays below quadBound and at least one
// in-module probe rises above it; a silent field (nothing above the bound
// anywhere, oscillation under the bound) counts as a degenerate pass.
ContainmentReport spectrum_containment_probe(const SampledLine& u,
                                             const SpectrumModule& M,
                                             const std::vector<FrequencyVector>& inProbes,
                                             const std::vector<FrequencyVector>& outProbes,
                                             double window, double quadBound);

} // namespace aphj

#endif
