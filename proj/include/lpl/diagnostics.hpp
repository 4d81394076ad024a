#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpl/algebra.hpp"
#include "lpl/integrate.hpp"

namespace lpl::diagnostics {

using algebra::InputError;
using algebra::Vec;

/// Unnormalized Gibbs density exp(-beta h0) restricted to an orbit.
struct GibbsSpec {
  double beta;
  std::function<double(const Vec&)> h0;
  /// signed defect of the orbit constraint(s) at a state; 0 on-orbit
  std::function<double(const Vec&)> orbit_defect;
  double orbit_tolerance = 1e-8;

  GibbsSpec(double beta_, std::function<double(const Vec&)> h0_,
            std::function<double(const Vec&)> orbit_defect_);
};

/// -beta h0(state); throws (reporting the defect) for off-orbit states.
double gibbs_log_density(const GibbsSpec& spec, const Vec& state);

/// Rejection sampling of h0 under the Gibbs measure on a product of spheres:
/// draw uniform points of radius radii[k] for each factor, accept with
/// probability exp(-beta (h0 - h_min_estimate)).  h_min_estimate comes from a
/// coarse random search.  Returns n accepted h0 values.
std::vector<double> orbit_rejection_sampler(const GibbsSpec& spec,
                                            const std::vector<double>& radii, int n,
                                            std::uint64_t seed);

/// Two-sample Kolmogorov-Smirnov statistic in [0, 1].
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// 1% critical value for the two-sample KS statistic (asymptotic).
double ks_critical_1pct(std::size_t n, std::size_t m);

struct InvariantReport {
  struct Entry {
    std::string name;
    double initial;
    double max_abs_drift;       // max |C(t) - C(0)|
    double max_rel_drift;       // relative to max(|C(0)|, 1e-300)
  };
  std::vector<Entry> invariants;
  bool has_energy = false;
  double energy_initial = 0.0;
  double energy_final = 0.0;
  bool energy_monotone_nonincreasing = false;  // per-step, tolerance 1e-12 |h0|
};

InvariantReport invariant_report(const integrate::Trajectory& traj);

/// Mean/variance of a window of a scalar series (burn-in fraction dropped,
/// then strided); the subsample itself is returned for KS testing.
std::vector<double> subsample(const std::vector<double>& series, double burn_in_fraction,
                              int stride);

}  // namespace lpl::diagnostics
