#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpl::algebra {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Error thrown when inputs violate an operation's preconditions
/// (dimension mismatches, negative dissipation strength, ...).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A named Casimir function C(mu) together with its gradient.
struct Casimir {
  std::string name;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

/// Finite-dimensional Lie algebra given by structure constants, an inner
/// product gamma on the algebra, and a list of Casimirs of the associated
/// Lie-Poisson structure on the dual.
///
/// Conventions (fixed once, used everywhere):
///   bracket:  [e_i, e_j] = sum_k c[k](i,j) e_k
///   ad_star:  <ad*_xi mu, eta> = -<mu, [xi, eta]>  for all eta,
/// i.e. ad* is the negative dual of the bracket.  On so(3) this gives
/// ad*_xi Pi = xi x Pi.  With this choice ad*-directions are tangent to
/// coadjoint orbits (Casimirs are annihilated exactly) and the
/// double-bracket drift below is dissipative.
class LieStructure {
 public:
  // c: one dim x dim matrix per output index k; gamma: SPD inner product.
  LieStructure(std::vector<Mat> c, Mat gamma, std::vector<Casimir> casimirs = {});

  int dim() const { return dim_; }
  const std::vector<Mat>& structure_constants() const { return c_; }
  const Mat& gamma() const { return gamma_; }
  const std::vector<Casimir>& casimirs() const { return casimirs_; }

  Vec bracket(const Vec& xi, const Vec& eta) const;
  Vec ad_star(const Vec& xi, const Vec& mu) const;

  /// gamma^{-1} mu: the musical isomorphism g* -> g defined by
  /// <mu, eta> = gamma(sharp(mu), eta).
  Vec sharp(const Vec& mu) const;
  /// gamma xi: inverse of sharp.
  Vec flat(const Vec& xi) const;

  /// theta * ad*_{sharp(ad*_{grad_h} mu)} mu.  Pairing with grad_h equals
  /// -theta * gamma^{-1}(w, w) <= 0 where w = ad*_{grad_h} mu.
  Vec double_bracket_drift(const Vec& grad_h, const Vec& mu, double theta) const;

  /// Evaluate all registered Casimirs at mu.
  std::vector<std::pair<std::string, double>> casimir_values(const Vec& mu) const;

 private:
  void check_dim(const Vec& v, const char* what) const;

  int dim_;
  std::vector<Mat> c_;
  Mat gamma_;
  Eigen::LLT<Mat> gamma_llt_;
  std::vector<Casimir> casimirs_;
};

/// so(3) with bracket = cross product and configurable inner product.
/// Casimir: |Pi|^2.
LieStructure make_so3(const Mat& gamma = Mat::Identity(3, 3));

/// The semidirect structure se(3)* ~ so(3) x R^3 underlying the heavy top,
/// as a 6-dimensional Lie algebra with state (Pi, Gamma).  gamma is a 6x6
/// inner product (default identity, the usual modelling choice).
/// Casimirs: |Gamma|^2 and Pi.Gamma.
LieStructure make_heavy_top_structure(const Mat& gamma = Mat::Identity(6, 6));

}  // namespace lpl::algebra
