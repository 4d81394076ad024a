#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lpl/dynamics.hpp"
#include "lpl/noise.hpp"

namespace lpl::integrate {

using algebra::InputError;
using algebra::Vec;
using dynamics::FieldEval;
using dynamics::Fields;

/// Raised when a step produces non-finite state; carries the step index.
struct NumericalError : std::runtime_error {
  NumericalError(int step_, const std::string& what_)
      : std::runtime_error("step " + std::to_string(step_) + ": " + what_), step(step_) {}
  int step;
};

enum class Scheme { heun, ito_euler, coadjoint };

Scheme scheme_from_string(const std::string& name);
std::string scheme_name(Scheme s);

/// One system as seen by the steppers: Stratonovich fields, an optional Ito
/// drift (Stratonovich drift + correction), an optional post-step projection,
/// and named scalar diagnostics recorded along trajectories.
struct Model {
  int dim = 0;
  FieldEval fields;
  std::function<Vec(const Vec&)> ito_drift;   // defaults to fields + fd correction
  std::function<Vec(const Vec&)> project;     // identity when absent
  std::function<double(const Vec&)> energy;   // h0; required for diagnostics
  std::vector<std::pair<std::string, std::function<double(const Vec&)>>> invariants;
  // set for so(3) Lie-Poisson systems to enable the coadjoint scheme
  std::shared_ptr<const dynamics::LiePoissonSystem> so3;
};

/// Stratonovich Heun: predictor x~ = x + sum f_i(x) dS^i, corrector
/// x' = x + (1/2) sum (f_i(x) + f_i(x~)) dS^i.  increments[0] is the clock.
Vec heun_step(const FieldEval& fields, const Vec& x, const std::vector<double>& increments);

/// Ito Euler: x' = x + drift_ito(x) dt + sum f_i(x) dW^i.
Vec ito_euler_step(const FieldEval& fields, const std::function<Vec(const Vec&)>& drift_ito,
                   const Vec& x, const std::vector<double>& increments);

/// Orbit-preserving so(3) step: the drift and noise axes are assembled into a
/// single rotation vector and applied through the Rodrigues formula with a
/// Heun-style predictor-corrector; |Pi| is preserved to machine precision.
Vec coadjoint_step_so3(const dynamics::LiePoissonSystem& sys, const Vec& Pi,
                       const std::vector<double>& increments);

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<std::string> diagnostic_names;     // "h0", invariant names...
  std::vector<std::vector<double>> diagnostics;  // [record][column]
  std::string scheme;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Integrate over the whole path, recording state + diagnostics every
/// `record_stride` steps (and always at t0 and t_final).
Trajectory integrate_trajectory(const Model& model, Scheme scheme,
                                const noise::DrivingPath& path, const Vec& x0,
                                int record_stride = 1);

struct EnsembleSummary {
  std::vector<double> times;
  std::vector<std::string> observable_names;
  // [observable][record]: ensemble mean and (population) variance
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> variance;
  std::vector<Vec> terminal_states;  // one per trajectory, in index order
};

/// Independent trajectories with per-trajectory noise streams
/// (seed, trajectory-index); results are identical for any worker count.
EnsembleSummary run_ensemble(const Model& model, Scheme scheme, int n_traj,
                             std::uint64_t base_seed, int n_components, double t0,
                             double t1, int n_steps, const Vec& x0,
                             int record_stride = 1, int n_workers = 1);

}  // namespace lpl::integrate
