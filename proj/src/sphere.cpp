#include "lpl/sphere.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

namespace lpl::sphere {

namespace {

constexpr double kPi = std::numbers::pi;

double pair_denom(const Vec3& x, const Vec3& y, double R) { return R * R - x.dot(y); }

}  // namespace

CollisionError::CollisionError(int i_, int j_, double defect_)
    : std::runtime_error("vortex collision: pair (" + std::to_string(i_) + ", " +
                         std::to_string(j_) + "), R^2 - x.y = " + std::to_string(defect_)),
      i(i_), j(j_), defect(defect_) {}

void VortexConfig::check_pairs() const {
  if (positions.size() != strengths.size())
    throw InputError("VortexConfig: positions/strengths length mismatch");
  if (R <= 0.0) throw InputError("VortexConfig: R must be positive");
  double e = eps();
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j) {
      double d = pair_denom(positions[i], positions[j], R);
      if (d <= e) throw CollisionError(i, j, d);
    }
}

void VortexConfig::validate() const {
  check_pairs();
  for (const Vec3& x : positions)
    if (std::abs(x.norm() - R) > 1e-10 * std::max(1.0, R))
      throw InputError("VortexConfig: position off the sphere");
}

double green_g0(const Vec3& x, const Vec3& y, double R, double collision_epsilon) {
  double d = pair_denom(x, y, R);
  if (d <= collision_epsilon * R * R) throw CollisionError(-1, -1, d);
  return -std::log(d) / (4.0 * kPi * R);
}

double vortex_hamiltonian(const VortexConfig& c) {
  c.check_pairs();
  double h = 0.0;
  for (int i = 0; i < c.n(); ++i)
    for (int j = i + 1; j < c.n(); ++j)
      h += c.strengths[i] * c.strengths[j] *
           (-std::log(pair_denom(c.positions[i], c.positions[j], c.R)) / (4.0 * kPi * c.R));
  return h;
}

std::vector<Vec3> vortex_grad_h(const VortexConfig& c) {
  c.check_pairs();
  std::vector<Vec3> g(c.n(), Vec3::Zero());
  for (int i = 0; i < c.n(); ++i)
    for (int j = 0; j < c.n(); ++j) {
      if (j == i) continue;
      double d = pair_denom(c.positions[i], c.positions[j], c.R);
      g[i] += c.strengths[i] * c.strengths[j] * c.positions[j] / (4.0 * kPi * c.R * d);
    }
  return g;
}

std::vector<Vec3> vortex_drift(const VortexConfig& c, double theta) {
  if (theta < 0.0) throw InputError("vortex_drift: theta must be nonnegative");
  c.check_pairs();
  int N = c.n();
  double fourPiR = 4.0 * kPi * c.R;

  // conservative velocities v_i = sum_{j != i} Gamma_j (x_j x x_i) / (4 pi R d_ij)
  std::vector<Vec3> v(N, Vec3::Zero());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      double d = pair_denom(c.positions[i], c.positions[j], c.R);
      v[i] += c.strengths[j] * c.positions[j].cross(c.positions[i]) / (fourPiR * d);
    }
  if (theta == 0.0) return v;

  // dissipative double sum, factored through the v_k (O(N^2))
  std::vector<Vec3> out(N);
  for (int i = 0; i < N; ++i) {
    Vec3 diss = Vec3::Zero();
    for (int k = 0; k < N; ++k) {
      if (k == i) continue;
      double d = pair_denom(c.positions[i], c.positions[k], c.R);
      Vec3 a = v[k].cross(c.strengths[k] * c.positions[i] / (fourPiR * d));
      Vec3 b = (c.positions[i].dot(v[k])) * c.strengths[k] *
               c.positions[k].cross(c.positions[i]) / (fourPiR * d * d);
      diss -= a + b;
    }
    out[i] = v[i] + theta * diss;
  }
  return out;
}

Vec3 vortex_momentum(const VortexConfig& c) {
  Vec3 m = Vec3::Zero();
  for (int i = 0; i < c.n(); ++i) m += c.strengths[i] * c.positions[i];
  return m;
}

// ---------------------------------------------------------------------------
// spherical harmonics

namespace {

// q_{lm}(w) = P_l^m(w) / sin^m(theta) as a polynomial in w = cos(theta),
// Condon-Shortley phase omitted; value and derivative by the standard
// three-term recurrence.
void legendre_q(int ell, int m, double w, double& q, double& dq) {
  double qmm = 1.0, dqmm = 0.0;
  for (int k = 1; k <= m; ++k) qmm *= 2.0 * k - 1.0;  // (2m-1)!!
  if (ell == m) {
    q = qmm;
    dq = dqmm;
    return;
  }
  double qprev = qmm, dqprev = dqmm;
  double qcur = (2.0 * m + 1.0) * w * qmm;
  double dqcur = (2.0 * m + 1.0) * qmm;
  for (int l = m + 2; l <= ell; ++l) {
    double qnext =
        ((2.0 * l - 1.0) * w * qcur - (l + m - 1.0) * qprev) / (l - m);
    double dqnext =
        ((2.0 * l - 1.0) * (qcur + w * dqcur) - (l + m - 1.0) * dqprev) / (l - m);
    qprev = qcur;
    dqprev = dqcur;
    qcur = qnext;
    dqcur = dqnext;
  }
  q = qcur;
  dq = dqcur;
}

double norm_const(int ell, int m) {
  double ratio = 1.0;  // (l-m)! / (l+m)!
  for (int k = ell - m + 1; k <= ell + m; ++k) ratio /= k;
  double n = std::sqrt((2.0 * ell + 1.0) / (4.0 * kPi) * ratio);
  return m > 0 ? std::numbers::sqrt2 * n : n;
}

// C_m + i S_m = (ax + i ay)^m
void azimuthal(int m, double ax, double ay, double& C, double& S, double& Cm1,
               double& Sm1) {
  C = 1.0;
  S = 0.0;
  Cm1 = 0.0;
  Sm1 = 0.0;
  for (int k = 1; k <= m; ++k) {
    Cm1 = C;
    Sm1 = S;
    C = ax * Cm1 - ay * Sm1;
    S = ax * Sm1 + ay * Cm1;
  }
}

}  // namespace

HarmonicBasis::HarmonicBasis(int ell_max_, double R_) : ell_max(ell_max_), R(R_) {
  if (ell_max < 1) throw InputError("HarmonicBasis: ell_max must be >= 1 (ell = 0 generates no flow)");
  if (R <= 0.0) throw InputError("HarmonicBasis: R must be positive");
  for (int ell = 1; ell <= ell_max; ++ell)
    for (int m = -ell; m <= ell; ++m)
      entries.push_back({ell, m, ell * (ell + 1.0) / (R * R)});
}

double HarmonicBasis::eval(int idx, const Vec3& x) const {
  const Entry& e = entries.at(idx);
  Vec3 a = x.normalized();
  int am = std::abs(e.m);
  double q, dq;
  legendre_q(e.ell, am, a.z(), q, dq);
  double C, S, Cm1, Sm1;
  azimuthal(am, a.x(), a.y(), C, S, Cm1, Sm1);
  double azim = e.m >= 0 ? C : S;
  return norm_const(e.ell, am) * q * azim / R;
}

Vec3 HarmonicBasis::surface_gradient(int idx, const Vec3& x) const {
  const Entry& e = entries.at(idx);
  double r = x.norm();
  Vec3 a = x / r;
  int am = std::abs(e.m);
  double q, dq;
  legendre_q(e.ell, am, a.z(), q, dq);
  double C, S, Cm1, Sm1;
  azimuthal(am, a.x(), a.y(), C, S, Cm1, Sm1);

  // gradient of q(az) * azim(ax, ay) in the free coordinates a
  double azim = e.m >= 0 ? C : S;
  Vec3 grad_a(q * (e.m >= 0 ? am * Cm1 : am * Sm1),
              q * (e.m >= 0 ? -am * Sm1 : am * Cm1),
              dq * azim);
  return norm_const(e.ell, am) / (R * r) * (grad_a - a * a.dot(grad_a));
}

Vec3 HarmonicBasis::noise_field(int idx, const Vec3& x) const {
  const Entry& e = entries.at(idx);
  return x.normalized().cross(surface_gradient(idx, x)) / std::sqrt(e.lambda);
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace

Mat harmonic_gram(const HarmonicBasis& b) {
  int nfields = b.size();
  int nu = 2 * b.ell_max + 4;
  int nphi = 4 * b.ell_max + 4;
  std::vector<double> u, wu;
  gauss_legendre(nu, u, wu);
  Mat gram = Mat::Zero(nfields, nfields);
  std::vector<Vec3> f(nfields);
  for (int i = 0; i < nu; ++i) {
    double s = std::sqrt(std::max(0.0, 1.0 - u[i] * u[i]));
    for (int j = 0; j < nphi; ++j) {
      double phi = 2.0 * kPi * j / nphi;
      Vec3 x = b.R * Vec3(s * std::cos(phi), s * std::sin(phi), u[i]);
      double w = wu[i] * (2.0 * kPi / nphi) * b.R * b.R;
      for (int a = 0; a < nfields; ++a) f[a] = b.noise_field(a, x);
      for (int a = 0; a < nfields; ++a)
        for (int c = a; c < nfields; ++c) gram(a, c) += w * f[a].dot(f[c]);
    }
  }
  for (int a = 0; a < nfields; ++a)
    for (int c = 0; c < a; ++c) gram(a, c) = gram(c, a);
  return gram;
}

// ---------------------------------------------------------------------------
// flattened SDE system

VortexSystem::VortexSystem(VortexConfig config_, double theta_, double sigma_,
                           int ell_max_)
    : config(std::move(config_)), theta(theta_), sigma(sigma_),
      basis(ell_max_, config.R) {
  config.validate();
  if (theta < 0.0 || sigma < 0.0)
    throw InputError("VortexSystem: theta and sigma must be nonnegative");
}

VortexConfig VortexSystem::with_positions(const Vec& state) const {
  if (state.size() != 3 * config.n())
    throw InputError("VortexSystem: state has wrong length");
  VortexConfig c = config;
  for (int i = 0; i < c.n(); ++i) c.positions[i] = state.segment<3>(3 * i);
  return c;
}

double VortexSystem::energy(const Vec& state) const {
  return vortex_hamiltonian(with_positions(state));
}

dynamics::Fields vortex_fields(const VortexSystem& sys, const Vec& state) {
  VortexConfig c = sys.with_positions(state);
  std::vector<Vec3> drift = vortex_drift(c, sys.theta);
  dynamics::Fields out;
  out.drift = Vec(state.size());
  for (int i = 0; i < c.n(); ++i) out.drift.segment<3>(3 * i) = drift[i];
  if (sys.sigma == 0.0) return out;  // deterministic run: no noise components
  out.diffusions.reserve(sys.basis.size());
  for (int a = 0; a < sys.basis.size(); ++a) {
    Vec f(state.size());
    for (int i = 0; i < c.n(); ++i)
      f.segment<3>(3 * i) = sys.sigma * sys.basis.noise_field(a, c.positions[i]);
    out.diffusions.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON round trip

VortexConfig load_vortex_json(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw InputError("load_vortex_json: cannot open " + filename);
  nlohmann::json j;
  in >> j;
  VortexConfig c;
  c.R = j.at("R").get<double>();
  for (const auto& p : j.at("positions"))
    c.positions.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(),
                             p.at(2).get<double>());
  c.strengths = j.at("strengths").get<std::vector<double>>();
  if (j.contains("collision_epsilon"))
    c.collision_epsilon = j["collision_epsilon"].get<double>();
  c.validate();
  return c;
}

void save_vortex_json(const VortexConfig& c, const std::string& filename) {
  nlohmann::json j;
  j["R"] = c.R;
  j["positions"] = nlohmann::json::array();
  for (const Vec3& x : c.positions) j["positions"].push_back({x.x(), x.y(), x.z()});
  j["strengths"] = c.strengths;
  std::ofstream out(filename);
  if (!out) throw InputError("save_vortex_json: cannot open " + filename);
  out << j.dump(2) << "\n";
}

}  // namespace lpl::sphere
