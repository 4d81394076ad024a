#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lpl/algebra.hpp"

namespace lpl::dynamics {

using algebra::Casimir;
using algebra::InputError;
using algebra::LieStructure;
using algebra::Mat;
using algebra::Vec;

/// Drift and per-noise-component diffusion fields at one state, all in
/// Stratonovich form (drift multiplies dt, diffusion i multiplies dS^i).
struct Fields {
  Vec drift;
  std::vector<Vec> diffusions;
};

using FieldEval = std::function<Fields(const Vec&)>;

/// dmu = ad*_{grad_h0} mu dt + theta ad*_{(ad*_{grad_h0} mu)#} mu dt
///       + sigma sum_i ad*_{xi_i} mu o dW^i
/// with {xi_i} gamma-orthonormal and theta = beta sigma^2 / 2 when beta is
/// supplied (fluctuation-dissipation).
struct LiePoissonSystem {
  LiePoissonSystem(LieStructure structure, std::function<Vec(const Vec&)> grad_h0,
                   std::vector<Vec> noise_dirs, double sigma, double theta,
                   std::optional<double> beta = std::nullopt);

  LieStructure structure;
  std::function<Vec(const Vec&)> grad_h0;
  std::vector<Vec> noise_dirs;
  double sigma;
  double theta;
  std::optional<double> beta;
};

Fields lp_fields(const LiePoissonSystem& sys, const Vec& mu);

/// Stratonovich-to-Ito drift correction (sigma^2/2) sum_i ad*_{xi_i}(ad*_{xi_i} mu)
/// for Brownian noise with the linear noise Hamiltonians above.
Vec lp_ito_correction(const LiePoissonSystem& sys, const Vec& mu);

/// Generic Ito correction (1/2) sum_i J_{f_i} f_i evaluated by central
/// differences of the diffusion fields; exact (to roundoff) for linear fields.
Vec ito_correction_fd(const FieldEval& eval, const Vec& x);

/// Hamiltonian on canonical phase space with analytic gradients.
struct Hamiltonian {
  std::function<double(const Vec&, const Vec&)> value;   // H(q, p)
  std::function<Vec(const Vec&, const Vec&)> grad_q;
  std::function<Vec(const Vec&, const Vec&)> grad_p;
};

/// Build a Hamiltonian whose gradients are central differences of `value`.
Hamiltonian fd_hamiltonian(std::function<double(const Vec&, const Vec&)> value,
                           double scale = 1.0);

/// Canonical phase space R^{2n}; hamiltonians[0] is the energy, the rest are
/// noise Hamiltonians.  State layout: (q, p) stacked.
struct CanonicalSystem {
  CanonicalSystem(int dim_q, std::vector<Hamiltonian> hamiltonians, double sigma,
                  double beta);

  int dim_q;
  std::vector<Hamiltonian> hamiltonians;
  double sigma;
  double beta;
  double theta() const { return 0.5 * beta * sigma * sigma; }
};

/// Hamiltonian vector fields X_{H_i} = (dH_i/dp, -dH_i/dq), one per H_i.
std::vector<Vec> bismut_fields(const CanonicalSystem& sys, const Vec& q, const Vec& p);

/// Symplectic Langevin equation:
/// drift = X_{H0} - theta sum_{i>=1} {H0, H_i} X_{H_i},  diffusion_i = sigma X_{H_i},
/// theta = beta sigma^2 / 2.
Fields langevin_fields(const CanonicalSystem& sys, const Vec& q, const Vec& p);

/// Charged Brownian particle in a magnetic field B with potential V:
///   dq = (p/m) dt
///   dp = (-grad V + (mu_charge/m) p x B - (theta/m) p) dt + sigma dW
/// State (q, p) in R^6; theta = beta sigma^2 / 2.
struct MagneticParticleSystem {
  MagneticParticleSystem(double m, std::function<double(const Vec&)> V,
                         std::function<Vec(const Vec&)> grad_V, Vec B, double mu_charge,
                         double sigma, double beta);

  double m;
  std::function<double(const Vec&)> V;
  std::function<Vec(const Vec&)> grad_V;
  Vec B;          // uniform field (curl of the vector potential)
  double mu_charge;
  double sigma;
  double beta;
  double theta;

  double energy(const Vec& state) const;  // |p|^2/2m + V(q)
};

Fields magnetic_particle_fields(const MagneticParticleSystem& sys, const Vec& state);

/// Heavy top on (Pi, Gamma), transcribed with Omega = I^{-1} Pi and
/// u = Pi x Omega + Mgl Gamma x chi:
///   dPi    = (Pi x Omega + Mgl Gamma x chi) dt
///            + theta (Pi x u + Gamma x (Gamma x Omega)) dt
///            + sigma sum_i (Pi x xi_i + Gamma x g_i) o dW^i
///   dGamma = Gamma x Omega dt + theta Gamma x u dt + sigma sum_i Gamma x xi_i o dW^i
/// The theta-terms equal the generic double-bracket drift on the semidirect
/// algebra (block-identity sharp), so h0 decreases and both Casimirs are
/// preserved.  g_i are optional translational noise gradients (default 0).
struct HeavyTopSystem {
  HeavyTopSystem(Mat I, double Mgl, Vec chi, std::vector<Vec> xis, std::vector<Vec> gs,
                 double sigma, double theta, std::optional<double> beta = std::nullopt);

  Mat I;            // 3x3 SPD inertia
  Mat I_inv;
  double Mgl;
  Vec chi;          // unit vector to the centre of mass
  std::vector<Vec> xis;  // rotational noise directions (default e1,e2,e3)
  std::vector<Vec> gs;   // translational noise gradients (default zero)
  double sigma;
  double theta;
  std::optional<double> beta;

  double energy(const Vec& state) const;  // (1/2) Pi.Omega + Mgl Gamma.chi
};

Fields heavy_top_fields(const HeavyTopSystem& sys, const Vec& state);

}  // namespace lpl::dynamics
