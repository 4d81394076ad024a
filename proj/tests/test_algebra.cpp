#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpl/algebra.hpp"
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

}  // namespace

TEST_CASE("so(3) bracket is the cross product") {
  auto s = algebra::make_so3();
  CHECK((s.bracket(v3(1, 0, 0), v3(0, 1, 0)) - v3(0, 0, 1)).norm() == doctest::Approx(0.0));
  CHECK((s.bracket(v3(1, 2, 3), v3(4, 5, 6)) - v3(-3, 6, -3)).norm() ==
        doctest::Approx(0.0));
  Vec xi = v3(0.3, -1.2, 0.7);
  CHECK(s.bracket(xi, xi).norm() == doctest::Approx(0.0));
}

TEST_CASE("construction rejects bad structure data") {
  auto s = algebra::make_so3();
  std::vector<Mat> c = s.structure_constants();
  c[0](0, 0) = 1.0;  // breaks antisymmetry
  CHECK_THROWS_AS(algebra::LieStructure(c, Mat::Identity(3, 3), {}), algebra::InputError);
  Mat bad_gamma = -Mat::Identity(3, 3);
  CHECK_THROWS_AS(algebra::LieStructure(s.structure_constants(), bad_gamma, {}),
                  algebra::InputError);
  CHECK_THROWS_AS(s.bracket(v3(1, 2, 3), Vec::Zero(4)), algebra::InputError);
}

TEST_CASE("ad_star on so(3) is xi x mu") {
  auto s = algebra::make_so3();
  CHECK((s.ad_star(v3(0, 0, 1), v3(1, 0, 0)) - v3(0, 1, 0)).norm() ==
        doctest::Approx(0.0));
  CHECK(s.ad_star(v3(0.4, 1.0, -2.0), Vec::Zero(3)).norm() == doctest::Approx(0.0));
}

TEST_CASE("ad_star is the negative dual of the bracket") {
  auto so3 = algebra::make_so3();
  auto ht = algebra::make_heavy_top_structure();
  for (std::uint64_t k = 0; k < 100; ++k) {
    for (const algebra::LieStructure* s : {&so3, &ht}) {
      int d = s->dim();
      Vec xi = random_vec(d, 1, 3 * k), mu = random_vec(d, 1, 3 * k + 1),
          eta = random_vec(d, 1, 3 * k + 2);
      double lhs = s->ad_star(xi, mu).dot(eta);
      double rhs = -mu.dot(s->bracket(xi, eta));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("sharp and flat") {
  auto s_id = algebra::make_so3();
  Vec mu = v3(0.3, -0.4, 2.0);
  CHECK((s_id.sharp(mu) - mu).norm() == doctest::Approx(0.0));

  Mat g = Mat::Zero(3, 3);
  g.diagonal() << 1, 2, 3;
  auto s = algebra::make_so3(g);
  CHECK((s.sharp(v3(1, 2, 3)) - v3(1, 1, 1)).norm() == doctest::Approx(0.0));
  CHECK((s.flat(s.sharp(mu)) - mu).norm() < 1e-14);
}

TEST_CASE("double-bracket drift: value, dissipativity, equilibria") {
  Mat I = Mat::Zero(3, 3);
  I.diagonal() << 1, 2, 3;
  auto s = algebra::make_so3(I);  // gamma = inertia, sharp = I^{-1}

  Vec mu = v3(1, 1, 1);
  Vec grad = I.inverse() * mu;
  double theta = 0.7;
  Vec drift = s.double_bracket_drift(grad, mu, theta);
  CHECK((drift - theta * v3(-0.5, 0.0, 0.5)).norm() < 1e-14);

  CHECK(s.double_bracket_drift(grad, mu, 0.0).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(s.double_bracket_drift(grad, mu, -1.0), algebra::InputError);

  // principal axis: ad*_{grad} mu = 0, dissipation vanishes
  Vec axis = v3(0, 0, 2);
  CHECK(s.double_bracket_drift(Vec(I.inverse() * axis), axis, theta).norm() ==
        doctest::Approx(0.0));

  for (std::uint64_t k = 0; k < 1000; ++k) {
    Vec m = random_vec(3, 2, k);
    Vec g = I.inverse() * m;
    CHECK(s.double_bracket_drift(g, m, 1.0).dot(g) <= 1e-14);
  }
}

TEST_CASE("casimirs evaluate and annihilate ad_star directions") {
  auto so3 = algebra::make_so3();
  auto vals = so3.casimir_values(v3(3, 4, 0));
  REQUIRE(vals.size() == 1);
  CHECK(vals[0].first == "Pi_sq");
  CHECK(vals[0].second == doctest::Approx(25.0));

  auto ht = algebra::make_heavy_top_structure();
  Vec state(6);
  state << 1, 0, 0, 0, 1, 0;
  auto hv = ht.casimir_values(state);
  REQUIRE(hv.size() == 2);
  CHECK(hv[0].second == doctest::Approx(1.0));  // |Gamma|^2
  CHECK(hv[1].second == doctest::Approx(0.0));  // Pi.Gamma

  for (std::uint64_t k = 0; k < 100; ++k) {
    for (const algebra::LieStructure* s : {&so3, &ht}) {
      int d = s->dim();
      Vec xi = random_vec(d, 3, 2 * k), mu = random_vec(d, 3, 2 * k + 1);
      Vec flow = s->ad_star(xi, mu);
      for (const auto& cas : s->casimirs())
        CHECK(std::abs(cas.gradient(mu).dot(flow)) < 1e-10);
    }
  }
}

TEST_CASE("casimir is invariant under explicit rotations") {
  auto so3 = algebra::make_so3();
  Vec mu = v3(0.3, -1.1, 0.9);
  Eigen::AngleAxisd rot(1.234, Eigen::Vector3d(1, 2, -1).normalized());
  Vec rotated = rot.toRotationMatrix() * mu;
  CHECK(so3.casimir_values(rotated)[0].second ==
        doctest::Approx(so3.casimir_values(mu)[0].second).epsilon(1e-12));
}

TEST_CASE("structure constants satisfy Jacobi") {
  // construction already checks to 1e-12; verify on vectors too
  auto s = algebra::make_heavy_top_structure();
  for (std::uint64_t k = 0; k < 20; ++k) {
    Vec a = random_vec(6, 4, 3 * k), b = random_vec(6, 4, 3 * k + 1),
        c = random_vec(6, 4, 3 * k + 2);
    Vec j = s.bracket(a, s.bracket(b, c)) + s.bracket(b, s.bracket(c, a)) +
            s.bracket(c, s.bracket(a, b));
    CHECK(j.norm() < 1e-12 * (1 + a.norm() * b.norm() * c.norm()));
  }
}
