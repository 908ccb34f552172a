#include "aphj/asymptotics.hpp"

#include "aphj/errors.hpp"
#include "aphj/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace aphj {

namespace {

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

} // namespace

LinearInterval detect_linear_interval(const Hamiltonian& H, double searchRadius,
                                      double tol) {
  if (!(searchRadius > 0))
    throw ConfigError("detect_linear_interval: searchRadius must be positive");
  if (!(tol > 0)) throw ConfigError("detect_linear_interval: tol must be positive");
  if (H.dim() > 1)
    throw GridMismatch("detect_linear_interval: H must take a scalar argument");

  const double g0 = H.eval1(0.0);
  auto ht = [&](double u) { return H.eval1(u) - g0; };
  const double c = (ht(tol) - ht(-tol)) / (2 * tol);
  auto ok_point = [&](double u) {
    return std::abs(ht(u) - c * u) <= tol * std::max(std::abs(u), tol);
  };
  // the whole segment from 0 must pass, not just the endpoint
  auto ok_upto = [&](double b) {
    for (int i = 0; i <= 128; ++i)
      if (!ok_point(b * i / 128.0)) return false;
    return true;
  };

  auto expand = [&](double sign) {
    if (ok_upto(sign * searchRadius)) return searchRadius;
    double lo = 0, hi = searchRadius;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (ok_upto(sign * mid))
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };

  const double b = expand(+1.0);
  const double a = -expand(-1.0);

  LinearInterval out;
  out.c = c;
  out.degenerate = (b <= 3 * tol && -a <= 3 * tol);
  if (!out.degenerate) {
    out.a = a;
    out.b = b;
  }
  return out;
}

double hopf_lax_oracle(const SampledLine& u0, double t, double x,
                       int fineFactor) {
  if (!u0.periodic)
    throw ConfigError("hopf_lax_oracle: initial data must be periodic");
  if (u0.values.empty()) throw EmptyInput("hopf_lax_oracle: empty initial data");
  if (!(t > 0)) throw ConfigError("hopf_lax_oracle: t must be positive");
  if (fineFactor < 8) fineFactor = 8;

  const double R = u0.length;
  const double osc = oscillation(u0);
  const double win = std::sqrt(2 * t * osc) + R;
  const double h = R / (static_cast<double>(u0.values.size()) * fineFactor);
  const long long n = std::llround(std::ceil(win / h));

  double best = std::numeric_limits<double>::infinity();
  for (long long i = -n; i <= n; ++i) {
    const double y = x + static_cast<double>(i) * h;
    const double d = x - y;
    const double val = interp_periodic(u0, y) + d * d / (2 * t);
    if (val < best) best = val;
  }
  return best;
}

DiagnosticsSeries oscillation_series(const Trajectory1D& traj,
                                     const Profile* profile) {
  if (traj.lines.empty()) throw EmptyInput("oscillation_series: empty trajectory");
  if (profile) {
    if (!profile->samples.periodic)
      throw GridMismatch("oscillation_series: profile must be periodic");
    if (profile->samples.length != traj.lines.front().length)
      throw GridMismatch("oscillation_series: profile period != line length");
  }

  DiagnosticsSeries s;
  for (std::size_t k = 0; k < traj.lines.size(); ++k) {
    const SampledLine& u = traj.lines[k];
    const double t = traj.times[k];
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    const std::size_t count = u.values.size();
    for (std::size_t j = 0; j < count; ++j) {
      double d = u.values[j];
      if (profile) {
        const double x = u.x(j);
        d -= interp_periodic(profile->samples, x - profile->speed * t);
      }
      mn = std::min(mn, d);
      mx = std::max(mx, d);
    }
    s.times.push_back(t);
    s.minSeries.push_back(mn);
    s.maxSeries.push_back(mx);
    s.oscillation.push_back(mx - mn);
  }
  return s;
}

DiagnosticsSeries oscillation_series(const Trajectory& traj) {
  if (traj.snapshots.empty())
    throw EmptyInput("oscillation_series: empty trajectory");
  DiagnosticsSeries s;
  for (const auto& f : traj.snapshots) {
    const double mn = min_value(f), mx = max_value(f);
    s.times.push_back(f.time);
    s.minSeries.push_back(mn);
    s.maxSeries.push_back(mx);
    s.oscillation.push_back(mx - mn);
  }
  return s;
}

double profile_alignment_residual(const std::vector<double>& times,
                                  const std::vector<SampledLine>& lines,
                                  double c) {
  if (lines.size() < 2 || times.size() != lines.size())
    throw EmptyInput("profile alignment: need matching times and >= 2 snapshots");
  const std::size_t K = lines.front().values.size();
  const double R = lines.front().length;
  for (const auto& l : lines)
    if (!l.periodic || l.values.size() != K || l.length != R)
      throw GridMismatch("profile alignment: snapshot grids differ");

  double cert = 0;
  for (std::size_t j = 0; j < K; ++j) {
    const double y = R * static_cast<double>(j) / static_cast<double>(K);
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (std::size_t k = 0; k < lines.size(); ++k) {
      const double v = interp_periodic(lines[k], y + c * times[k]);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    cert = std::max(cert, mx - mn);
  }
  return cert;
}

Profile extract_profile(const std::vector<double>& times,
                        const std::vector<SampledLine>& lines, double c,
                        double certThreshold) {
  const double cert = profile_alignment_residual(times, lines, c);
  if (cert > certThreshold)
    throw NotConverged("extract_profile: shifted snapshots disagree by " +
                       fmt_g(cert) + " > " + fmt_g(certThreshold));

  const std::size_t K = lines.front().values.size();
  const double R = lines.front().length;
  Profile p;
  p.speed = c;
  p.samples.length = R;
  p.samples.periodic = true;
  p.samples.values.assign(K, 0.0);
  for (std::size_t j = 0; j < K; ++j) {
    const double y = R * static_cast<double>(j) / static_cast<double>(K);
    NeumaierSum acc;
    for (std::size_t k = 0; k < lines.size(); ++k)
      acc.add(interp_periodic(lines[k], y + c * times[k]));
    p.samples.values[j] = acc.value() / static_cast<double>(lines.size());
  }
  NeumaierSum level;
  for (const auto& l : lines) level.add(0.5 * (min_value(l) + max_value(l)));
  p.offset = level.value() / static_cast<double>(lines.size());
  return p;
}

bool one_sided_lipschitz_check(const Profile& p, double a, double b, double tol) {
  if (!(a <= 0 && 0 <= b))
    throw ConfigError("one_sided_lipschitz_check: need a <= 0 <= b");
  const auto& v = p.samples.values;
  if (v.empty()) throw EmptyInput("one_sided_lipschitz_check: empty profile");
  const std::size_t K = v.size();
  const double R = p.samples.length;
  const std::size_t stride = std::max<std::size_t>(1, (K + 1023) / 1024);

  std::vector<std::size_t> pick;
  for (std::size_t j = 0; j < K; j += stride) pick.push_back(j);
  for (std::size_t ii = 0; ii < pick.size(); ++ii)
    for (std::size_t jj = ii + 1; jj < pick.size(); ++jj) {
      const double dy = R * static_cast<double>(pick[jj] - pick[ii]) / static_cast<double>(K);
      const double d = v[pick[jj]] - v[pick[ii]];
      if (d < a * dy - tol || d > b * dy + tol) return false;
    }
  return true;
}

DecayReport decay_verdict(const DiagnosticsSeries& series, double threshold) {
  if (series.oscillation.empty())
    throw EmptyInput("decay_verdict: empty series");
  DecayReport r;
  r.threshold = threshold;
  r.initialOscillation = series.oscillation.front();
  r.finalOscillation = series.oscillation.back();
  if (r.initialOscillation > 0)
    r.ratio = r.finalOscillation / r.initialOscillation;
  else
    r.ratio = r.finalOscillation > 0 ? std::numeric_limits<double>::infinity() : 0.0;

  const double slack = 1e-12 * std::max(1.0, r.initialOscillation);
  for (std::size_t k = 1; k < series.oscillation.size(); ++k)
    if (series.oscillation[k] > series.oscillation[k - 1] + slack) ++r.violations;

  r.pass = r.ratio <= threshold;
  return r;
}

ContainmentReport spectrum_containment_probe(const SampledLine& u,
                                             const SpectrumModule& M,
                                             const std::vector<FrequencyVector>& inProbes,
                                             const std::vector<FrequencyVector>& outProbes,
                                             double window, double quadBound) {
  if (!(quadBound > 0))
    throw ConfigError("spectrum_containment_probe: quadrature bound must be positive");

  const std::vector<std::vector<double>> basis = M.numeric_basis();
  auto reading = [&](const FrequencyVector& f) {
    const std::vector<double> val =
        f.regime() == FreqRegime::lattice ? f.value(basis) : f.value();
    if (val.size() != 1)
      throw GridMismatch("spectrum_containment_probe: probes must be scalar "
                         "frequencies");
    ProbeReading r;
    r.lambda = val[0];
    r.label = fmt_g(val[0]);
    r.magnitude = std::abs(bohr_probe_sampled(u, val[0], window));
    return r;
  };

  ContainmentReport rep;
  rep.quadBound = quadBound;
  for (const auto& f : inProbes) {
    if (!membership(M, f))
      throw ConfigError("spectrum_containment_probe: declared in-probe is not "
                        "a module member");
    rep.inProbes.push_back(reading(f));
  }
  for (const auto& f : outProbes) {
    if (membership(M, f))
      throw ConfigError("spectrum_containment_probe: declared out-probe is a "
                        "module member");
    rep.outProbes.push_back(reading(f));
  }

  bool allOutBelow = true;
  for (const auto& r : rep.outProbes) allOutBelow = allOutBelow && r.magnitude < quadBound;
  bool anyInAbove = false;
  for (const auto& r : rep.inProbes) anyInAbove = anyInAbove || r.magnitude > quadBound;

  if (anyInAbove && allOutBelow) {
    rep.pass = true;
  } else if (!anyInAbove && allOutBelow && oscillation(u) <= quadBound) {
    // nothing above the bound anywhere and the field itself is flat:
    // containment holds vacuously
    rep.pass = true;
    rep.degenerate = true;
  }
  return rep;
}

} // namespace aphj
