#include "lpl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpl/noise.hpp"

namespace lpl::diagnostics {

GibbsSpec::GibbsSpec(double beta_, std::function<double(const Vec&)> h0_,
                     std::function<double(const Vec&)> orbit_defect_)
    : beta(beta_), h0(std::move(h0_)), orbit_defect(std::move(orbit_defect_)) {
  if (beta < 0.0) throw InputError("GibbsSpec: beta must be nonnegative");
}

double gibbs_log_density(const GibbsSpec& spec, const Vec& state) {
  if (spec.orbit_defect) {
    double d = spec.orbit_defect(state);
    if (std::abs(d) > spec.orbit_tolerance)
      throw InputError("gibbs_log_density: state off the orbit, defect = " +
                       std::to_string(d));
  }
  return -spec.beta * spec.h0(state);
}

namespace {

Vec uniform_product_of_spheres(const std::vector<double>& radii, std::uint64_t seed,
                               std::uint64_t attempt) {
  Vec x(3 * radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) {
    Eigen::Vector3d v;
    for (int c = 0; c < 3; ++c)
      v[c] = noise::normal_draw(seed, 0, static_cast<std::uint64_t>(k), attempt, c);
    x.segment<3>(3 * k) = radii[k] * v.normalized();
  }
  return x;
}

}  // namespace

std::vector<double> orbit_rejection_sampler(const GibbsSpec& spec,
                                            const std::vector<double>& radii, int n,
                                            std::uint64_t seed) {
  if (n < 1) throw InputError("orbit_rejection_sampler: n must be >= 1");
  if (radii.empty()) throw InputError("orbit_rejection_sampler: no orbit factors");

  // coarse minimum of h0 over uniform draws (stream 2 of the key space)
  double h_min = std::numeric_limits<double>::infinity();
  for (std::uint64_t a = 0; a < 2000; ++a) {
    Vec x(3 * radii.size());
    for (std::size_t k = 0; k < radii.size(); ++k) {
      Eigen::Vector3d v;
      for (int c = 0; c < 3; ++c)
        v[c] = noise::normal_draw(seed, 2, static_cast<std::uint64_t>(k), a, c);
      x.segment<3>(3 * k) = radii[k] * v.normalized();
    }
    h_min = std::min(h_min, spec.h0(x));
  }

  std::vector<double> out;
  out.reserve(n);
  std::uint64_t attempts = 0;
  while (static_cast<int>(out.size()) < n) {
    ++attempts;
    Vec x = uniform_product_of_spheres(radii, seed, attempts);
    double h = spec.h0(x);
    double p = std::exp(-spec.beta * (h - h_min));
    double u = noise::uniform_draw(seed, 1, 0, attempts, 0);
    if (u < p) out.push_back(h);
    if (attempts > 1000000 && out.size() < attempts / 10000)
      throw InputError("orbit_rejection_sampler: acceptance rate below 1e-4; "
                       "consider a smaller beta");
  }
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InputError("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    // evaluate both empirical CDFs just past the next data point, consuming
    // all ties so equal values never contribute a spurious gap
    double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    double fa = static_cast<double>(i) / a.size();
    double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
  return 1.628 * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

InvariantReport invariant_report(const integrate::Trajectory& traj) {
  InvariantReport rep;
  if (traj.diagnostics.empty()) return rep;
  std::size_t col0 = 0;
  if (!traj.diagnostic_names.empty() && traj.diagnostic_names[0] == "h0") {
    rep.has_energy = true;
    col0 = 1;
    rep.energy_initial = traj.diagnostics.front()[0];
    rep.energy_final = traj.diagnostics.back()[0];
    rep.energy_monotone_nonincreasing = true;
    for (std::size_t r = 1; r < traj.diagnostics.size(); ++r) {
      double prev = traj.diagnostics[r - 1][0], cur = traj.diagnostics[r][0];
      if (cur > prev + 1e-12 * std::abs(prev)) {
        rep.energy_monotone_nonincreasing = false;
        break;
      }
    }
  }
  for (std::size_t c = col0; c < traj.diagnostic_names.size(); ++c) {
    InvariantReport::Entry e;
    e.name = traj.diagnostic_names[c];
    e.initial = traj.diagnostics.front()[c];
    e.max_abs_drift = 0.0;
    for (const auto& row : traj.diagnostics)
      e.max_abs_drift = std::max(e.max_abs_drift, std::abs(row[c] - e.initial));
    e.max_rel_drift = e.max_abs_drift / std::max(std::abs(e.initial), 1e-300);
    rep.invariants.push_back(std::move(e));
  }
  return rep;
}

std::vector<double> subsample(const std::vector<double>& series, double burn_in_fraction,
                              int stride) {
  if (stride < 1) throw InputError("subsample: stride must be >= 1");
  if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0)
    throw InputError("subsample: burn-in fraction must be in [0, 1)");
  std::vector<double> out;
  for (std::size_t k = static_cast<std::size_t>(burn_in_fraction * series.size());
       k < series.size(); k += stride)
    out.push_back(series[k]);
  return out;
}

}  // namespace lpl::diagnostics
