#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lpl/dynamics.hpp"
#include "lpl/noise.hpp"

using namespace lpl;
using algebra::Mat;
using algebra::Vec;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Vec random_vec(int dim, std::uint64_t seed, std::uint64_t idx) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = noise::normal_draw(seed, idx, i, 0, 0);
  return v;
}

dynamics::LiePoissonSystem rigid_body(double sigma, double theta) {
  Mat I = Mat::Zero(3, 3);
  I.diagonal() << 1, 2, 3;
  Mat I_inv = I.inverse();
  std::vector<Vec> dirs;
  for (int i = 0; i < 3; ++i)
    dirs.push_back(Vec(Eigen::Vector3d::Unit(i) / std::sqrt(I(i, i))));
  return dynamics::LiePoissonSystem(algebra::make_so3(I),
                                    [I_inv](const Vec& mu) { return Vec(I_inv * mu); },
                                    dirs, sigma, theta);
}

}  // namespace

TEST_CASE("construction enforces gamma-orthonormal noise and theta coupling") {
  Mat I = Mat::Zero(3, 3);
  I.diagonal() << 1, 2, 3;
  Mat I_inv = I.inverse();
  auto grad = [I_inv](const Vec& mu) { return Vec(I_inv * mu); };
  std::vector<Vec> bad{v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)};  // not I-orthonormal
  CHECK_THROWS_AS(
      dynamics::LiePoissonSystem(algebra::make_so3(I), grad, bad, 1.0, 0.0),
      algebra::InputError);

  std::vector<Vec> good;
  for (int i = 0; i < 3; ++i)
    good.push_back(Vec(Eigen::Vector3d::Unit(i) / std::sqrt(I(i, i))));
  CHECK_THROWS_AS(
      dynamics::LiePoissonSystem(algebra::make_so3(I), grad, good, 0.5, 0.2, 1.0),
      algebra::InputError);  // theta != beta sigma^2/2
  CHECK_NOTHROW(
      dynamics::LiePoissonSystem(algebra::make_so3(I), grad, good, 0.5, 0.125, 1.0));
}

TEST_CASE("lp_fields reproduces the classical Euler equations at sigma=theta=0") {
  auto sys = rigid_body(0.0, 0.0);
  Vec mu = v3(0.7, -1.2, 0.4);
  Vec drift = dynamics::lp_fields(sys, mu).drift;
  Eigen::Vector3d Pi = mu.head<3>();
  Eigen::Vector3d Omega(Pi.x() / 1.0, Pi.y() / 2.0, Pi.z() / 3.0);
  CHECK((drift - Vec(-Pi.cross(Omega))).norm() < 1e-14);

  auto f0 = dynamics::lp_fields(sys, Vec::Zero(3));
  CHECK(f0.drift.norm() == doctest::Approx(0.0));
}

TEST_CASE("drift and diffusions are tangent to the Casimir levels") {
  auto sys = rigid_body(0.6, 0.3);
  for (std::uint64_t k = 0; k < 100; ++k) {
    Vec mu = random_vec(3, 10, k);
    auto f = dynamics::lp_fields(sys, mu);
    for (const auto& cas : sys.structure.casimirs()) {
      Vec g = cas.gradient(mu);
      CHECK(std::abs(g.dot(f.drift)) < 1e-10 * std::max(1.0, mu.squaredNorm()));
      for (const Vec& d : f.diffusions) CHECK(std::abs(g.dot(d)) < 1e-10);
    }
  }
}

TEST_CASE("lp_ito_correction") {
  // standard basis, identity metric: correction = -sigma^2 Pi
  Mat id = Mat::Identity(3, 3);
  std::vector<Vec> dirs;
  for (int i = 0; i < 3; ++i) dirs.push_back(Vec(Eigen::Vector3d::Unit(i)));
  dynamics::LiePoissonSystem sys(algebra::make_so3(id),
                                 [](const Vec& mu) { return mu; }, dirs, 0.8, 0.0);
  Vec mu = v3(0.2, -0.7, 1.1);
  CHECK((dynamics::lp_ito_correction(sys, mu) - Vec(-0.64 * mu)).norm() < 1e-14);

  dynamics::LiePoissonSystem sys0(algebra::make_so3(id),
                                  [](const Vec& mu) { return mu; }, dirs, 0.0, 0.0);
  CHECK(dynamics::lp_ito_correction(sys0, mu).norm() == doctest::Approx(0.0));

  // single direction with mu parallel to it: ad*_xi mu = 0
  std::vector<Vec> one{v3(0, 0, 1)};
  dynamics::LiePoissonSystem sysk(algebra::make_so3(id),
                                  [](const Vec& mu) { return mu; }, one, 1.0, 0.0);
  CHECK(dynamics::lp_ito_correction(sysk, v3(0, 0, 2)).norm() == doctest::Approx(0.0));
}

TEST_CASE("finite-difference Ito correction matches the closed form") {
  auto sys = rigid_body(0.5, 0.0);
  auto eval = [&sys](const Vec& mu) { return dynamics::lp_fields(sys, mu); };
  for (std::uint64_t k = 0; k < 10; ++k) {
    Vec mu = random_vec(3, 11, k);
    Vec fd = dynamics::ito_correction_fd(eval, mu);
    Vec exact = dynamics::lp_ito_correction(sys, mu);
    CHECK((fd - exact).norm() < 1e-6 * std::max(1.0, exact.norm()));
  }
}

TEST_CASE("bismut fields") {
  dynamics::Hamiltonian h0{
      [](const Vec&, const Vec& p) { return 0.5 * p.squaredNorm(); },
      [](const Vec& q, const Vec&) { return Vec(Vec::Zero(q.size())); },
      [](const Vec&, const Vec& p) { return p; }};
  dynamics::Hamiltonian h1{[](const Vec& q, const Vec&) { return q[0]; },
                           [](const Vec& q, const Vec&) {
                             Vec g = Vec::Zero(q.size());
                             g[0] = 1.0;
                             return g;
                           },
                           [](const Vec&, const Vec& p) { return Vec(Vec::Zero(p.size())); }};
  dynamics::CanonicalSystem sys(3, {h0, h1}, 1.0, 1.0);
  Vec q = v3(0.1, 0.2, 0.3), p = v3(-1.0, 0.5, 2.0);
  auto X = dynamics::bismut_fields(sys, q, p);
  REQUIRE(X.size() == 2);
  CHECK((X[0].head(3) - p).norm() == doctest::Approx(0.0));  // free particle: (p, 0)
  CHECK(X[0].tail(3).norm() == doctest::Approx(0.0));
  CHECK(X[1].head(3).norm() == doctest::Approx(0.0));  // H = q^1: (0, -e1)
  CHECK((X[1].tail(3) + v3(1, 0, 0)).norm() == doctest::Approx(0.0));
}

TEST_CASE("bismut fields are divergence-free (Liouville)") {
  // nontrivial H = q.p + |q|^2 |p|^2 via fd gradients
  auto H = [](const Vec& q, const Vec& p) {
    return q.dot(p) + q.squaredNorm() * p.squaredNorm();
  };
  dynamics::CanonicalSystem sys(2, {dynamics::fd_hamiltonian(H)}, 0.0, 0.0);
  Vec q = v3(0.3, -0.2, 0).head(2), p = v3(0.7, 0.4, 0).head(2);
  double h = 1e-5, div = 0.0;
  for (int i = 0; i < 4; ++i) {
    Vec qp = q, qm = q, pp = p, pm = p;
    if (i < 2) {
      qp[i] += h;
      qm[i] -= h;
    } else {
      pp[i - 2] += h;
      pm[i - 2] -= h;
    }
    double fp = dynamics::bismut_fields(sys, i < 2 ? qp : q, i < 2 ? p : pp)[0][i];
    double fm = dynamics::bismut_fields(sys, i < 2 ? qm : q, i < 2 ? p : pm)[0][i];
    div += (fp - fm) / (2 * h);
  }
  CHECK(std::abs(div) < 1e-5);
}

TEST_CASE("symplectic Langevin drift reproduces underdamped Langevin") {
  // H0 = |p|^2/2m + V, H_i = q^i: drift = (p/m, -grad V - theta p/m)
  double m = 2.0, k = 3.0, sigma = 1.0, beta = 0.8;
  dynamics::Hamiltonian h0{
      [m, k](const Vec& q, const Vec& p) {
        return 0.5 * p.squaredNorm() / m + 0.5 * k * q.squaredNorm();
      },
      [k](const Vec& q, const Vec&) { return Vec(k * q); },
      [m](const Vec&, const Vec& p) { return Vec(p / m); }};
  std::vector<dynamics::Hamiltonian> hs{h0};
  for (int i = 0; i < 3; ++i)
    hs.push_back(dynamics::Hamiltonian{
        [i](const Vec& q, const Vec&) { return q[i]; },
        [i](const Vec& q, const Vec&) {
          Vec g = Vec::Zero(q.size());
          g[i] = 1.0;
          return g;
        },
        [](const Vec&, const Vec& p) { return Vec(Vec::Zero(p.size())); }});
  dynamics::CanonicalSystem sys(3, hs, sigma, beta);
  Vec q = v3(0.4, -0.1, 0.9), p = v3(1.0, 0.2, -0.5);
  auto f = dynamics::langevin_fields(sys, q, p);
  double theta = 0.5 * beta * sigma * sigma;
  CHECK((f.drift.head(3) - p / m).norm() < 1e-14);
  CHECK((f.drift.tail(3) - (-k * q - theta * p / m)).norm() < 1e-13);
  REQUIRE(f.diffusions.size() == 3);
  CHECK((f.diffusions[0].tail(3) + sigma * v3(1, 0, 0)).norm() == doctest::Approx(0.0));

  dynamics::CanonicalSystem sys0(3, hs, sigma, 0.0);
  auto f0 = dynamics::langevin_fields(sys0, q, p);
  CHECK((f0.drift - dynamics::bismut_fields(sys0, q, p)[0]).norm() == doctest::Approx(0.0));
}

TEST_CASE("langevin dissipative part is -theta sum {H0,Hi}^2") {
  double sigma = 0.7, beta = 1.3;
  dynamics::Hamiltonian h0 = dynamics::fd_hamiltonian([](const Vec& q, const Vec& p) {
    return 0.5 * p.squaredNorm() + std::cos(q[0]) + q[1] * q[1];
  });
  std::vector<dynamics::Hamiltonian> hs{h0};
  for (int i = 0; i < 2; ++i)
    hs.push_back(dynamics::fd_hamiltonian(
        [i](const Vec& q, const Vec&) { return std::sin(q[i]); }));
  dynamics::CanonicalSystem sys(2, hs, sigma, beta);
  for (std::uint64_t k = 0; k < 100; ++k) {
    Vec q = random_vec(2, 12, 2 * k), p = random_vec(2, 12, 2 * k + 1);
    auto f = dynamics::langevin_fields(sys, q, p);
    auto X = dynamics::bismut_fields(sys, q, p);
    Vec g(4);
    g.head(2) = hs[0].grad_q(q, p);
    g.tail(2) = hs[0].grad_p(q, p);
    // <grad H0, drift> = 0 (conservative) - theta sum {H0,Hi}^2
    double rate = g.dot(f.drift);
    double expected = 0.0;
    for (int i = 1; i <= 2; ++i) {
      double pb = g.head(2).dot(X[i].head(2)) + g.tail(2).dot(X[i].tail(2));
      expected -= sys.theta() * pb * pb;
    }
    CHECK(rate == doctest::Approx(expected).epsilon(1e-6));
    CHECK(expected <= 0.0);
  }
}

TEST_CASE("magnetic particle") {
  auto make = [](Eigen::Vector3d B, double sigma, double beta) {
    return dynamics::MagneticParticleSystem(
        2.0, [](const Vec&) { return 0.0; },
        [](const Vec& q) { return Vec(Vec::Zero(q.size())); }, Vec(B), 1.5, sigma, beta);
  };
  CHECK_THROWS_AS(dynamics::MagneticParticleSystem(
                      -1.0, [](const Vec&) { return 0.0; },
                      [](const Vec& q) { return Vec(Vec::Zero(q.size())); },
                      Vec(Eigen::Vector3d::Zero()), 0.0, 0.0, 0.0),
                  algebra::InputError);

  SUBCASE("pure momentum decay") {
    // theta > 0 via (sigma, beta); stepping uses the drift only
    dynamics::MagneticParticleSystem decay(
        2.0, [](const Vec&) { return 0.0; },
        [](const Vec& q) { return Vec(Vec::Zero(q.size())); },
        Vec(Eigen::Vector3d::Zero()), 0.0, 1.0, 0.6);  // theta = 0.3
    Vec x(6);
    x << 0, 0, 0, 1.0, -2.0, 0.5;
    double dt = 1e-4, T = 2.0;
    Vec p0 = x.tail(3);
    int n = static_cast<int>(T / dt);
    for (int s = 0; s < n; ++s) {
      // deterministic Heun on the drift only
      auto f1 = dynamics::magnetic_particle_fields(decay, x);
      Vec pred = x + dt * f1.drift;
      auto f2 = dynamics::magnetic_particle_fields(decay, pred);
      x += 0.5 * dt * (f1.drift + f2.drift);
    }
    Vec expect = p0 * std::exp(-decay.theta * T / decay.m);
    CHECK((x.tail(3) - expect).norm() < 1e-6 * expect.norm());
  }

  SUBCASE("uniform field gives circular motion with |p| constant") {
    auto sys = make(Eigen::Vector3d(0, 0, 2.0), 0.0, 0.0);
    Vec x(6);
    x << 0, 0, 0, 1.0, 0.0, 0.0;
    double dt = 1e-4;
    double p0 = x.tail(3).norm();
    for (int s = 0; s < 20000; ++s) {
      auto f1 = dynamics::magnetic_particle_fields(sys, x);
      Vec pred = x + dt * f1.drift;
      auto f2 = dynamics::magnetic_particle_fields(sys, pred);
      x += 0.5 * dt * (f1.drift + f2.drift);
    }
    CHECK(x.tail(3).norm() == doctest::Approx(p0).epsilon(1e-6));
    // closed-form rotation: omega = mu_charge |B| / m
    double omega = 1.5 * 2.0 / 2.0, t = 20000 * dt;
    Eigen::Vector3d p_exact(std::cos(omega * t), -std::sin(omega * t), 0.0);
    CHECK((x.tail(3) - Vec(p_exact)).norm() < 1e-3);
  }

  SUBCASE("energy decay rate at sigma=0") {
    dynamics::MagneticParticleSystem sys(
        1.5, [](const Vec& q) { return 0.5 * q.squaredNorm(); },
        [](const Vec& q) { return q; }, Vec(Eigen::Vector3d(0, 1, 0)), 0.7, 2.0, 0.4);
    Vec x = random_vec(6, 13, 0);
    auto f = dynamics::magnetic_particle_fields(sys, x);
    Vec grad(6);
    grad.head(3) = x.head(3);            // grad V
    grad.tail(3) = x.tail(3) / sys.m;    // p/m
    double rate = grad.dot(f.drift);
    double expected = -(sys.theta / (sys.m * sys.m)) * x.tail(3).squaredNorm();
    CHECK(rate == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("heavy top fields") {
  Mat I = Mat::Zero(3, 3);
  I.diagonal() << 1, 2, 3;

  SUBCASE("Mgl=0 reduces to the rigid body on Pi") {
    dynamics::HeavyTopSystem sys(I, 0.0, v3(0, 0, 1), {}, {}, 0.0, 0.0);
    Vec x(6);
    x << 0.7, -1.2, 0.4, 0.1, 0.2, 0.3;
    auto f = dynamics::heavy_top_fields(sys, x);
    Eigen::Vector3d Pi = x.head<3>();
    Eigen::Vector3d Omega(Pi.x(), Pi.y() / 2, Pi.z() / 3);
    CHECK((f.drift.head(3) - Vec(Pi.cross(Omega))).norm() < 1e-14);
  }

  SUBCASE("drift and noise preserve both Casimirs") {
    dynamics::HeavyTopSystem sys(I, 1.3, v3(0, 0, 1), {}, {}, 0.4, 0.2);
    auto structure = algebra::make_heavy_top_structure();
    for (std::uint64_t k = 0; k < 100; ++k) {
      Vec x = random_vec(6, 14, k);
      auto f = dynamics::heavy_top_fields(sys, x);
      for (const auto& cas : structure.casimirs()) {
        Vec g = cas.gradient(x);
        CHECK(std::abs(g.dot(f.drift)) < 1e-10 * std::max(1.0, x.squaredNorm()));
        for (const Vec& d : f.diffusions)
          CHECK(std::abs(g.dot(d)) < 1e-10 * std::max(1.0, x.squaredNorm()));
      }
    }
  }

  SUBCASE("upright spinning equilibrium has zero drift") {
    dynamics::HeavyTopSystem sys(I, 2.0, v3(0, 0, 1), {}, {}, 0.0, 0.5);
    Vec x(6);
    x << 0, 0, 1.5, 0, 0, 1.0;  // Pi || Gamma || chi, chi a principal axis
    CHECK(dynamics::heavy_top_fields(sys, x).drift.norm() < 1e-14);
  }

  SUBCASE("energy balance of the dissipative drift") {
    double theta = 0.35;
    dynamics::HeavyTopSystem sys(I, 1.1, v3(0, 0, 1), {}, {}, 0.0, theta);
    for (std::uint64_t k = 0; k < 50; ++k) {
      Vec x = random_vec(6, 15, k);
      Eigen::Vector3d Pi = x.head<3>(), Gamma = x.tail<3>();
      Eigen::Vector3d Omega = sys.I_inv * Pi;
      Eigen::Vector3d chi = sys.chi.head<3>();
      Eigen::Vector3d u = Pi.cross(Omega) + sys.Mgl * Gamma.cross(chi);
      Vec grad(6);
      grad.head<3>() = Omega;
      grad.tail<3>() = sys.Mgl * chi;
      double rate = grad.dot(dynamics::heavy_top_fields(sys, x).drift);
      double expected = -theta * (u.squaredNorm() + Gamma.cross(Omega).squaredNorm());
      CHECK(rate == doctest::Approx(expected).epsilon(1e-10));
      CHECK(expected <= 0.0);
    }
  }
}
