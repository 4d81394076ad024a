#include "lpl/integrate.hpp"

#include <cmath>
#include <thread>

namespace lpl::integrate {

Scheme scheme_from_string(const std::string& name) {
  if (name == "heun") return Scheme::heun;
  if (name == "ito_euler") return Scheme::ito_euler;
  if (name == "coadjoint") return Scheme::coadjoint;
  throw InputError("unknown scheme: " + name);
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::heun: return "heun";
    case Scheme::ito_euler: return "ito_euler";
    case Scheme::coadjoint: return "coadjoint";
  }
  return "?";
}

namespace {

Vec combine(const Fields& f, const std::vector<double>& increments) {
  Vec dx = increments[0] * f.drift;
  for (std::size_t i = 0; i < f.diffusions.size(); ++i)
    dx += increments[i + 1] * f.diffusions[i];
  return dx;
}

void check_increments(std::size_t n_fields, const std::vector<double>& increments) {
  if (increments.size() != n_fields + 1)
    throw InputError("step: increment count does not match field count");
}

Eigen::Vector3d rodrigues(const Eigen::Vector3d& v, const Eigen::Vector3d& axis) {
  double angle = axis.norm();
  if (angle < 1e-300) return v;
  Eigen::Vector3d k = axis / angle;
  double c = std::cos(angle), s = std::sin(angle);
  return v * c + k.cross(v) * s + k * (k.dot(v)) * (1.0 - c);
}

}  // namespace

Vec heun_step(const FieldEval& fields, const Vec& x, const std::vector<double>& increments) {
  Fields f1 = fields(x);
  check_increments(f1.diffusions.size(), increments);
  Vec d1 = combine(f1, increments);
  Fields f2 = fields(x + d1);
  return x + 0.5 * (d1 + combine(f2, increments));
}

Vec ito_euler_step(const FieldEval& fields, const std::function<Vec(const Vec&)>& drift_ito,
                   const Vec& x, const std::vector<double>& increments) {
  Fields f = fields(x);
  check_increments(f.diffusions.size(), increments);
  Vec dx = increments[0] * drift_ito(x);
  for (std::size_t i = 0; i < f.diffusions.size(); ++i)
    dx += increments[i + 1] * f.diffusions[i];
  return x + dx;
}

namespace {

// Rotation-vector form of the drift of an so(3) Lie-Poisson-Langevin system:
// dPi/dt = a(Pi) x Pi with a = grad_h0 + theta * sharp(ad*_{grad_h0} Pi).
Eigen::Vector3d so3_drift_axis(const dynamics::LiePoissonSystem& sys, const Vec& Pi) {
  Vec gh = sys.grad_h0(Pi);
  Eigen::Vector3d axis = gh.head<3>();
  if (sys.theta > 0.0) {
    Vec w = sys.structure.ad_star(gh, Pi);
    axis += sys.theta * Eigen::Vector3d(sys.structure.sharp(w).head<3>());
  }
  return axis;
}

Eigen::Vector3d so3_axis(const dynamics::LiePoissonSystem& sys, const Vec& Pi,
                         const std::vector<double>& increments) {
  Eigen::Vector3d axis = increments[0] * so3_drift_axis(sys, Pi);
  for (std::size_t i = 0; i < sys.noise_dirs.size(); ++i)
    axis += increments[i + 1] * sys.sigma * Eigen::Vector3d(sys.noise_dirs[i].head<3>());
  return axis;
}

}  // namespace

Vec coadjoint_step_so3(const dynamics::LiePoissonSystem& sys, const Vec& Pi,
                       const std::vector<double>& increments) {
  if (sys.structure.dim() != 3)
    throw InputError("coadjoint_step_so3: requires an so(3) structure");
  check_increments(sys.noise_dirs.size(), increments);
  Eigen::Vector3d p = Pi.head<3>();
  Eigen::Vector3d th1 = so3_axis(sys, Pi, increments);
  Vec pred = Vec(rodrigues(p, th1));
  Eigen::Vector3d th2 = so3_axis(sys, pred, increments);
  return Vec(rodrigues(p, 0.5 * (th1 + th2)));
}

namespace {

std::vector<double> increments_at(const noise::DrivingPath& path, int n) {
  std::vector<double> inc(path.n_components());
  for (int i = 0; i < path.n_components(); ++i) inc[i] = path.increments[i][n];
  return inc;
}

void record(const Model& model, double t, const Vec& x, Trajectory& traj) {
  traj.times.push_back(t);
  traj.states.push_back(x);
  std::vector<double> d;
  if (model.energy) d.push_back(model.energy(x));
  for (const auto& inv : model.invariants) d.push_back(inv.second(x));
  traj.diagnostics.push_back(std::move(d));
}

}  // namespace

Trajectory integrate_trajectory(const Model& model, Scheme scheme,
                                const noise::DrivingPath& path, const Vec& x0,
                                int record_stride) {
  if (record_stride < 1) throw InputError("integrate_trajectory: record_stride >= 1");
  if (x0.size() != model.dim) throw InputError("integrate_trajectory: x0 has wrong dimension");
  if (scheme == Scheme::coadjoint && !model.so3)
    throw InputError("coadjoint scheme: only available for so(3) Lie-Poisson systems");

  std::function<Vec(const Vec&)> ito_drift = model.ito_drift;
  if (scheme == Scheme::ito_euler && !ito_drift) {
    const FieldEval& fields = model.fields;
    ito_drift = [fields](const Vec& x) {
      return Vec(fields(x).drift + dynamics::ito_correction_fd(fields, x));
    };
  }

  Trajectory traj;
  traj.scheme = scheme_name(scheme);
  traj.seed = path.seed;
  traj.stream = path.stream;
  if (model.energy) traj.diagnostic_names.push_back("h0");
  for (const auto& inv : model.invariants) traj.diagnostic_names.push_back(inv.first);

  Vec x = x0;
  record(model, path.times[0], x, traj);
  int n_steps = path.n_steps();
  for (int n = 0; n < n_steps; ++n) {
    std::vector<double> inc = increments_at(path, n);
    switch (scheme) {
      case Scheme::heun: x = heun_step(model.fields, x, inc); break;
      case Scheme::ito_euler: x = ito_euler_step(model.fields, ito_drift, x, inc); break;
      case Scheme::coadjoint: x = coadjoint_step_so3(*model.so3, x, inc); break;
    }
    if (model.project) x = model.project(x);
    if (!x.allFinite()) throw NumericalError(n, "non-finite state");
    if ((n + 1) % record_stride == 0 || n + 1 == n_steps)
      record(model, path.times[n + 1], x, traj);
  }
  return traj;
}

EnsembleSummary run_ensemble(const Model& model, Scheme scheme, int n_traj,
                             std::uint64_t base_seed, int n_components, double t0,
                             double t1, int n_steps, const Vec& x0, int record_stride,
                             int n_workers) {
  if (n_traj < 1) throw InputError("run_ensemble: n_traj must be >= 1");
  if (n_workers < 1) n_workers = 1;

  std::vector<Trajectory> trajs(n_traj);
  std::vector<std::exception_ptr> errors(n_traj);
  auto work = [&](int w) {
    for (int k = w; k < n_traj; k += n_workers) {
      try {
        noise::DrivingPath p = noise::brownian_path(n_components, t0, t1, n_steps,
                                                    base_seed, static_cast<std::uint64_t>(k));
        trajs[k] = integrate_trajectory(model, scheme, p, x0, record_stride);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (int k = 0; k < n_traj; ++k)
    if (errors[k]) std::rethrow_exception(errors[k]);

  EnsembleSummary out;
  out.times = trajs[0].times;
  out.observable_names = trajs[0].diagnostic_names;
  std::size_t n_obs = out.observable_names.size();
  std::size_t n_rec = out.times.size();
  out.mean.assign(n_obs, std::vector<double>(n_rec, 0.0));
  out.variance.assign(n_obs, std::vector<double>(n_rec, 0.0));
  // fixed accumulation order over trajectory index for bitwise reproducibility
  for (std::size_t o = 0; o < n_obs; ++o)
    for (std::size_t r = 0; r < n_rec; ++r) {
      double s = 0.0;
      for (int k = 0; k < n_traj; ++k) s += trajs[k].diagnostics[r][o];
      double m = s / n_traj;
      double v = 0.0;
      for (int k = 0; k < n_traj; ++k) {
        double d = trajs[k].diagnostics[r][o] - m;
        v += d * d;
      }
      out.mean[o][r] = m;
      out.variance[o][r] = v / n_traj;
    }
  out.terminal_states.reserve(n_traj);
  for (int k = 0; k < n_traj; ++k) out.terminal_states.push_back(trajs[k].states.back());
  return out;
}

}  // namespace lpl::integrate
