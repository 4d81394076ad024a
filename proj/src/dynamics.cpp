#include "lpl/dynamics.hpp"

#include <cmath>
#include <limits>

namespace lpl::dynamics {

namespace {

Eigen::Vector3d cross(const Vec& a, const Vec& b) {
  return Eigen::Vector3d(a.head<3>()).cross(Eigen::Vector3d(b.head<3>()));
}

}  // namespace

LiePoissonSystem::LiePoissonSystem(LieStructure structure_,
                                   std::function<Vec(const Vec&)> grad_h0_,
                                   std::vector<Vec> noise_dirs_, double sigma_,
                                   double theta_, std::optional<double> beta_)
    : structure(std::move(structure_)), grad_h0(std::move(grad_h0_)),
      noise_dirs(std::move(noise_dirs_)), sigma(sigma_), theta(theta_), beta(beta_) {
  if (sigma < 0.0) throw InputError("LiePoissonSystem: sigma must be nonnegative");
  if (theta < 0.0) throw InputError("LiePoissonSystem: theta must be nonnegative");
  const Mat& g = structure.gamma();
  for (std::size_t i = 0; i < noise_dirs.size(); ++i) {
    if (noise_dirs[i].size() != structure.dim())
      throw InputError("LiePoissonSystem: noise direction has wrong dimension");
    for (std::size_t j = 0; j <= i; ++j) {
      double ip = noise_dirs[i].dot(g * noise_dirs[j]);
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - want) > 1e-10)
        throw InputError("LiePoissonSystem: noise directions not gamma-orthonormal");
    }
  }
  if (beta) {
    double want = 0.5 * (*beta) * sigma * sigma;
    if (std::abs(theta - want) > 1e-12 * std::max(theta, 1.0))
      throw InputError("LiePoissonSystem: theta != beta*sigma^2/2");
  }
}

Fields lp_fields(const LiePoissonSystem& sys, const Vec& mu) {
  Vec gh = sys.grad_h0(mu);
  Fields out;
  out.drift = sys.structure.ad_star(gh, mu);
  if (sys.theta > 0.0)
    out.drift += sys.structure.double_bracket_drift(gh, mu, sys.theta);
  out.diffusions.reserve(sys.noise_dirs.size());
  for (const Vec& xi : sys.noise_dirs)
    out.diffusions.push_back(sys.sigma * sys.structure.ad_star(xi, mu));
  return out;
}

Vec lp_ito_correction(const LiePoissonSystem& sys, const Vec& mu) {
  Vec corr = Vec::Zero(mu.size());
  for (const Vec& xi : sys.noise_dirs)
    corr += sys.structure.ad_star(xi, sys.structure.ad_star(xi, mu));
  return 0.5 * sys.sigma * sys.sigma * corr;
}

Vec ito_correction_fd(const FieldEval& eval, const Vec& x) {
  Fields f = eval(x);
  Vec corr = Vec::Zero(x.size());
  double scale = std::max(1.0, x.norm());
  double h = std::cbrt(std::numeric_limits<double>::epsilon()) * scale;
  // (1/2) sum_i J_{f_i} f_i with the directional derivative of f_i along
  // itself taken by central differences.
  for (std::size_t i = 0; i < f.diffusions.size(); ++i) {
    const Vec& fi = f.diffusions[i];
    double fn = fi.norm();
    if (fn == 0.0) continue;
    Vec fp = eval(x + h * fi / fn).diffusions[i];
    Vec fm = eval(x - h * fi / fn).diffusions[i];
    corr += 0.5 * fn * (fp - fm) / (2.0 * h);
  }
  return corr;
}

Hamiltonian fd_hamiltonian(std::function<double(const Vec&, const Vec&)> value,
                           double scale) {
  double h = std::cbrt(std::numeric_limits<double>::epsilon()) * scale;
  Hamiltonian out;
  out.value = value;
  out.grad_q = [value, h](const Vec& q, const Vec& p) {
    Vec g(q.size());
    for (int i = 0; i < q.size(); ++i) {
      Vec qp = q, qm = q;
      qp[i] += h;
      qm[i] -= h;
      g[i] = (value(qp, p) - value(qm, p)) / (2.0 * h);
    }
    return g;
  };
  out.grad_p = [value, h](const Vec& q, const Vec& p) {
    Vec g(p.size());
    for (int i = 0; i < p.size(); ++i) {
      Vec pp = p, pm = p;
      pp[i] += h;
      pm[i] -= h;
      g[i] = (value(q, pp) - value(q, pm)) / (2.0 * h);
    }
    return g;
  };
  return out;
}

CanonicalSystem::CanonicalSystem(int dim_q_, std::vector<Hamiltonian> hamiltonians_,
                                 double sigma_, double beta_)
    : dim_q(dim_q_), hamiltonians(std::move(hamiltonians_)), sigma(sigma_), beta(beta_) {
  if (dim_q <= 0) throw InputError("CanonicalSystem: dim_q must be positive");
  if (hamiltonians.empty())
    throw InputError("CanonicalSystem: need at least the energy Hamiltonian");
  if (sigma < 0.0 || beta < 0.0)
    throw InputError("CanonicalSystem: sigma and beta must be nonnegative");
}

std::vector<Vec> bismut_fields(const CanonicalSystem& sys, const Vec& q, const Vec& p) {
  std::vector<Vec> out;
  out.reserve(sys.hamiltonians.size());
  for (const Hamiltonian& H : sys.hamiltonians) {
    Vec field(2 * sys.dim_q);
    field.head(sys.dim_q) = H.grad_p(q, p);
    field.tail(sys.dim_q) = -H.grad_q(q, p);
    out.push_back(std::move(field));
  }
  return out;
}

Fields langevin_fields(const CanonicalSystem& sys, const Vec& q, const Vec& p) {
  std::vector<Vec> X = bismut_fields(sys, q, p);
  Vec g0q = sys.hamiltonians[0].grad_q(q, p);
  Vec g0p = sys.hamiltonians[0].grad_p(q, p);
  Fields out;
  out.drift = X[0];
  double theta = sys.theta();
  for (std::size_t i = 1; i < X.size(); ++i) {
    // {H0, Hi} = dH0/dq . dHi/dp - dH0/dp . dHi/dq = (g0q, g0p) . X_i
    double pb = g0q.dot(X[i].head(sys.dim_q)) + g0p.dot(X[i].tail(sys.dim_q));
    out.drift -= theta * pb * X[i];
    out.diffusions.push_back(sys.sigma * X[i]);
  }
  return out;
}

MagneticParticleSystem::MagneticParticleSystem(double m_,
                                               std::function<double(const Vec&)> V_,
                                               std::function<Vec(const Vec&)> grad_V_,
                                               Vec B_, double mu_charge_, double sigma_,
                                               double beta_)
    : m(m_), V(std::move(V_)), grad_V(std::move(grad_V_)), B(std::move(B_)),
      mu_charge(mu_charge_), sigma(sigma_), beta(beta_),
      theta(0.5 * beta_ * sigma_ * sigma_) {
  if (m <= 0.0) throw InputError("MagneticParticleSystem: mass must be positive");
  if (B.size() != 3) throw InputError("MagneticParticleSystem: B must be a 3-vector");
}

double MagneticParticleSystem::energy(const Vec& state) const {
  Vec q = state.head(3), p = state.tail(3);
  return 0.5 * p.squaredNorm() / m + V(q);
}

Fields magnetic_particle_fields(const MagneticParticleSystem& sys, const Vec& state) {
  Vec q = state.head(3), p = state.tail(3);
  Fields out;
  out.drift = Vec(6);
  out.drift.head(3) = p / sys.m;
  out.drift.tail(3) =
      -sys.grad_V(q) + (sys.mu_charge / sys.m) * Vec(cross(p, sys.B)) - (sys.theta / sys.m) * p;
  for (int i = 0; i < 3; ++i) {
    Vec f = Vec::Zero(6);
    f[3 + i] = sys.sigma;
    out.diffusions.push_back(std::move(f));
  }
  return out;
}

HeavyTopSystem::HeavyTopSystem(Mat I_, double Mgl_, Vec chi_, std::vector<Vec> xis_,
                               std::vector<Vec> gs_, double sigma_, double theta_,
                               std::optional<double> beta_)
    : I(std::move(I_)), Mgl(Mgl_), chi(std::move(chi_)), xis(std::move(xis_)),
      gs(std::move(gs_)), sigma(sigma_), theta(theta_), beta(beta_) {
  if (I.rows() != 3 || I.cols() != 3 || (I - I.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InputError("HeavyTopSystem: inertia must be 3x3 symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(I);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw InputError("HeavyTopSystem: inertia must be positive definite");
  I_inv = I.inverse();
  if (chi.size() != 3 || std::abs(chi.norm() - 1.0) > 1e-10)
    throw InputError("HeavyTopSystem: chi must be a unit 3-vector");
  if (xis.empty())
    for (int i = 0; i < 3; ++i) xis.push_back(Vec(Eigen::Vector3d::Unit(i)));
  if (gs.empty()) gs.assign(xis.size(), Vec(Eigen::Vector3d::Zero()));
  if (gs.size() != xis.size())
    throw InputError("HeavyTopSystem: gs and xis must have equal length");
  if (sigma < 0.0 || theta < 0.0)
    throw InputError("HeavyTopSystem: sigma and theta must be nonnegative");
  if (beta) {
    double want = 0.5 * (*beta) * sigma * sigma;
    if (std::abs(theta - want) > 1e-12 * std::max(theta, 1.0))
      throw InputError("HeavyTopSystem: theta != beta*sigma^2/2");
  }
}

double HeavyTopSystem::energy(const Vec& state) const {
  Vec Pi = state.head(3), Gamma = state.tail(3);
  return 0.5 * Pi.dot(I_inv * Pi) + Mgl * Gamma.dot(chi);
}

Fields heavy_top_fields(const HeavyTopSystem& sys, const Vec& state) {
  if (state.size() != 6) throw InputError("heavy_top_fields: state must be (Pi, Gamma)");
  Eigen::Vector3d Pi = state.head<3>(), Gamma = state.tail<3>();
  Eigen::Vector3d Omega = sys.I_inv * Pi;
  Eigen::Vector3d chi = sys.chi.head<3>();
  Eigen::Vector3d u = Pi.cross(Omega) + sys.Mgl * Gamma.cross(chi);

  Fields out;
  out.drift = Vec(6);
  out.drift.head<3>() =
      u + sys.theta * (Pi.cross(u) + Gamma.cross(Gamma.cross(Omega)));
  out.drift.tail<3>() = Gamma.cross(Omega) + sys.theta * Gamma.cross(u);

  for (std::size_t i = 0; i < sys.xis.size(); ++i) {
    Eigen::Vector3d xi = sys.xis[i].head<3>(), g = sys.gs[i].head<3>();
    Vec f(6);
    f.head<3>() = sys.sigma * (Pi.cross(xi) + Gamma.cross(g));
    f.tail<3>() = sys.sigma * Gamma.cross(xi);
    out.diffusions.push_back(std::move(f));
  }
  return out;
}

}  // namespace lpl::dynamics
