#include "lpl/algebra.hpp"

#include <cmath>

namespace lpl::algebra {

namespace {

double jacobi_defect(const std::vector<Mat>& c, int dim) {
  // max over (i,j,k,m) of the cyclic sum of c contractions
  double worst = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int m = 0; m < dim; ++m) {
          double s = 0.0;
          for (int n = 0; n < dim; ++n) {
            s += c[n](i, j) * c[m](n, k);
            s += c[n](j, k) * c[m](n, i);
            s += c[n](k, i) * c[m](n, j);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

}  // namespace

LieStructure::LieStructure(std::vector<Mat> c, Mat gamma, std::vector<Casimir> casimirs)
    : dim_(static_cast<int>(c.size())), c_(std::move(c)), gamma_(std::move(gamma)),
      casimirs_(std::move(casimirs)) {
  if (dim_ == 0) throw InputError("LieStructure: empty structure constants");
  for (const Mat& ck : c_) {
    if (ck.rows() != dim_ || ck.cols() != dim_)
      throw InputError("LieStructure: structure constant block has wrong shape");
    if ((ck + ck.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw InputError("LieStructure: structure constants not antisymmetric");
  }
  if (jacobi_defect(c_, dim_) > 1e-12)
    throw InputError("LieStructure: Jacobi identity violated");
  if (gamma_.rows() != dim_ || gamma_.cols() != dim_)
    throw InputError("LieStructure: gamma has wrong shape");
  if ((gamma_ - gamma_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InputError("LieStructure: gamma not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(gamma_);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw InputError("LieStructure: gamma not positive definite");
  gamma_llt_.compute(gamma_);
}

void LieStructure::check_dim(const Vec& v, const char* what) const {
  if (v.size() != dim_)
    throw InputError(std::string("LieStructure: dimension mismatch in ") + what);
}

Vec LieStructure::bracket(const Vec& xi, const Vec& eta) const {
  check_dim(xi, "bracket");
  check_dim(eta, "bracket");
  Vec out(dim_);
  for (int k = 0; k < dim_; ++k) out[k] = xi.dot(c_[k] * eta);
  return out;
}

Vec LieStructure::ad_star(const Vec& xi, const Vec& mu) const {
  check_dim(xi, "ad_star");
  check_dim(mu, "ad_star");
  // <ad*_xi mu, eta> = -<mu, [xi, eta]>; on so(3) this is xi x mu.
  Vec out = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i) out -= mu[i] * (xi.transpose() * c_[i]).transpose();
  return out;
}

Vec LieStructure::sharp(const Vec& mu) const {
  check_dim(mu, "sharp");
  return gamma_llt_.solve(mu);
}

Vec LieStructure::flat(const Vec& xi) const {
  check_dim(xi, "flat");
  return gamma_ * xi;
}

Vec LieStructure::double_bracket_drift(const Vec& grad_h, const Vec& mu, double theta) const {
  if (theta < 0.0) throw InputError("double_bracket_drift: theta must be nonnegative");
  check_dim(grad_h, "double_bracket_drift");
  check_dim(mu, "double_bracket_drift");
  Vec w = ad_star(grad_h, mu);
  return theta * ad_star(sharp(w), mu);
}

std::vector<std::pair<std::string, double>> LieStructure::casimir_values(const Vec& mu) const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(casimirs_.size());
  for (const auto& cas : casimirs_) out.emplace_back(cas.name, cas.value(mu));
  return out;
}

LieStructure make_so3(const Mat& gamma) {
  std::vector<Mat> c(3, Mat::Zero(3, 3));
  // [e_i, e_j] = eps_{ijk} e_k (cross product)
  c[0](1, 2) = 1.0; c[0](2, 1) = -1.0;
  c[1](2, 0) = 1.0; c[1](0, 2) = -1.0;
  c[2](0, 1) = 1.0; c[2](1, 0) = -1.0;
  std::vector<Casimir> cas{{"Pi_sq",
                            [](const Vec& mu) { return mu.squaredNorm(); },
                            [](const Vec& mu) { return Vec(2.0 * mu); }}};
  return LieStructure(std::move(c), gamma, std::move(cas));
}

LieStructure make_heavy_top_structure(const Mat& gamma) {
  // basis e_1..e_3 (rotations), f_1..f_3 (translations):
  // [e_i, e_j] = eps_{ijk} e_k, [e_i, f_j] = eps_{ijk} f_k, [f_i, f_j] = 0
  std::vector<Mat> c(6, Mat::Zero(6, 6));
  auto eps = [](int i, int j, int k) {
    return static_cast<double>((i - j) * (j - k) * (k - i)) / 2.0;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double e = eps(i, j, k);
        if (e == 0.0) continue;
        c[k](i, j) = e;                // [e_i, e_j] -> e_k
        c[3 + k](i, 3 + j) = e;        // [e_i, f_j] -> f_k
        c[3 + k](3 + j, i) = -e;
      }
  std::vector<Casimir> cas{
      {"Gamma_sq",
       [](const Vec& s) { return s.tail<3>().squaredNorm(); },
       [](const Vec& s) {
         Vec g = Vec::Zero(6);
         g.tail<3>() = 2.0 * s.tail<3>();
         return g;
       }},
      {"Pi_dot_Gamma",
       [](const Vec& s) { return s.head<3>().dot(s.tail<3>()); },
       [](const Vec& s) {
         Vec g(6);
         g.head<3>() = s.tail<3>();
         g.tail<3>() = s.head<3>();
         return g;
       }}};
  return LieStructure(std::move(c), gamma, std::move(cas));
}

}  // namespace lpl::algebra
