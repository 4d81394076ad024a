#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lpl/algebra.hpp"
#include "lpl/dynamics.hpp"

namespace lpl::sphere {

using algebra::InputError;
using algebra::Mat;
using algebra::Vec;
using Vec3 = Eigen::Vector3d;

/// Raised when two vortices reach the collision cutoff R^2 - x_i.x_j <= eps.
struct CollisionError : std::runtime_error {
  CollisionError(int i, int j, double defect);
  int i, j;
  double defect;  // R^2 - x_i.x_j at the time of the error
};

/// N point vortices on the sphere of radius R, extrinsic coordinates.
struct VortexConfig {
  double R = 1.0;
  std::vector<Vec3> positions;   // each with |x_i| = R
  std::vector<double> strengths;
  double collision_epsilon = -1.0;  // < 0 means default 1e-8 R^2

  int n() const { return static_cast<int>(positions.size()); }
  double eps() const { return collision_epsilon < 0 ? 1e-8 * R * R : collision_epsilon; }
  void validate() const;     // strict: radius + collision invariants (input data)
  void check_pairs() const;  // collisions/shape only, tolerates off-sphere states
};

/// Green's function of the Laplacian on the R-sphere:
/// G0(x, y) = -log(R^2 - x.y) / (4 pi R).
double green_g0(const Vec3& x, const Vec3& y, double R, double collision_epsilon = 1e-8);

/// h0 = sum_{i<j} Gamma_i Gamma_j G0(x_i, x_j)  (self-terms excluded).
double vortex_hamiltonian(const VortexConfig& c);

/// Gradient of h0 with respect to each x_i (extrinsic).
std::vector<Vec3> vortex_grad_h(const VortexConfig& c);

/// Conservative + double-bracket dissipative drift, one tangent vector per
/// vortex.  The dissipative triple sum is factored through the per-vortex
/// conservative velocities v_k, giving O(N^2) work.
std::vector<Vec3> vortex_drift(const VortexConfig& c, double theta);

/// SO(3) momentum sum_i Gamma_i x_i (conserved by the theta=0 drift).
Vec3 vortex_momentum(const VortexConfig& c);

/// Real spherical harmonics (Condon-Shortley phase omitted) on the R-sphere,
/// unit-normalized, with their divergence-free rotated gradients
/// lambda^{-1/2} x^ x grad_{S^2} Y used as transport-noise fields.
struct HarmonicBasis {
  explicit HarmonicBasis(int ell_max, double R = 1.0);

  int ell_max;
  double R;
  struct Entry {
    int ell, m;      // m in [-ell, ell], ell >= 1
    double lambda;   // ell(ell+1)/R^2
  };
  std::vector<Entry> entries;  // ell = 1..ell_max, m = -ell..ell

  int size() const { return static_cast<int>(entries.size()); }
  /// Y_ell^m at a point of the R-sphere (0-homogeneous extension off it).
  double eval(int idx, const Vec3& x) const;
  /// Tangent surface gradient of eval at x.
  Vec3 surface_gradient(int idx, const Vec3& x) const;
  /// lambda^{-1/2} x^ x surface_gradient: the (ell, m) noise field at x.
  Vec3 noise_field(int idx, const Vec3& x) const;
};

/// Gram matrix int_{S^2_R} f_i . f_j dA of all noise fields by product
/// Gauss-Legendre x trapezoid quadrature; identity to 1e-6 for ell_max <= 3.
Mat harmonic_gram(const HarmonicBasis& b);

/// Drift/diffusion fields on the flattened 3N state.  Noise component (ell,m)
/// moves every vortex with the same Brownian increment (spatially correlated
/// transport noise).
struct VortexSystem {
  VortexSystem(VortexConfig config, double theta, double sigma, int ell_max);

  VortexConfig config;  // positions here are the initial condition
  double theta;
  double sigma;
  HarmonicBasis basis;

  VortexConfig with_positions(const Vec& state) const;
  double energy(const Vec& state) const;
};

dynamics::Fields vortex_fields(const VortexSystem& sys, const Vec& state);

/// JSON load/save: {"R": ..., "positions": [[x,y,z],...], "strengths": [...]}.
VortexConfig load_vortex_json(const std::string& filename);
void save_vortex_json(const VortexConfig& c, const std::string& filename);

}  // namespace lpl::sphere
