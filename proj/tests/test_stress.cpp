#include <doctest.h>

#include <cmath>
#include <random>

#include "varpns/stress.hpp"

using namespace varpns;

namespace {

Mat2 random_sym(std::mt19937& gen, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  Mat2 a;
  const double off = nd(gen);
  a << nd(gen), off, off, nd(gen);
  return a;
}

}  // namespace

TEST_CASE("stress closed-form values") {
  const StressModel model;  // mu0 = 0.5, delta = 1e-5
  CHECK(stress(2.7, Mat2::Zero(), model).norm() == 0.0);

  std::mt19937 gen(29);
  const Mat2 a = random_sym(gen, 1.0);
  CHECK((stress(2.0, a, model) - 0.5 * a).norm() < 1e-15);
  CHECK((stress(2.0, a, StressModel{0.5, 0.3}) - 0.5 * a).norm() < 1e-15);

  // mu0 = 1/2, delta = 0, p = 3, A = I: S = (sqrt(2)/2) I.
  const StressModel bare{0.5, 0.0};
  const Mat2 s = stress(3.0, Mat2::Identity(), bare);
  CHECK((s - (std::sqrt(2.0) / 2.0) * Mat2::Identity()).norm() < 1e-14);
}

TEST_CASE("stress Jacobian matches finite differences") {
  const StressModel model;
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> pd(1.5, 4.0);
  const double eps = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    const double p = pd(gen);
    const Mat2 a = random_sym(gen, 0.8);
    const Mat2 b = random_sym(gen, 0.8);
    const Mat2 fd =
        (stress(p, Mat2(a + eps * b), model) -
         stress(p, Mat2(a - eps * b), model)) /
        (2.0 * eps);
    const Mat2 an = stress_jacobian_apply(p, a, b, model);
    CHECK((fd - an).norm() <= 1e-6 * (1.0 + an.norm()));

    // Full tensor agrees with the directional application.
    const StressJacobian jac = stress_jacobian(p, a, model);
    Mat2 applied = Mat2::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            applied(i, j) += jac.J[i][j][k][l] * b(k, l);
    CHECK((applied - an).norm() < 1e-12 * (1.0 + an.norm()));
  }
}

TEST_CASE("stress Jacobian special cases") {
  const StressModel model{0.7, 0.2};
  const StressJacobian jac = stress_jacobian(2.0, Mat2::Zero(), model);
  CHECK_FALSE(jac.singular);
  // p = 2: mu0 I_sym exactly.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const double sym_id =
              0.5 * ((i == k && j == l) + (i == l && j == k));
          CHECK(jac.J[i][j][k][l] == doctest::Approx(0.7 * sym_id));
        }
  CHECK(stress_jacobian(1.5, Mat2::Zero(), StressModel{1.0, 0.0}).singular);
}

TEST_CASE("monotonicity and coercivity on 1e4 random samples") {
  const StressModel model;
  std::mt19937 gen(37);
  std::uniform_real_distribution<double> pd(2.0, 4.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const double p = pd(gen);
    const Mat2 a = random_sym(gen, 1.5);
    const Mat2 b = random_sym(gen, 1.5);
    const Mat2 ds = stress(p, a, model) - stress(p, b, model);
    CHECK(ds.cwiseProduct(a - b).sum() >= -1e-14);

    const double sa = stress(p, a, model).cwiseProduct(a).sum();
    const double bound =
        0.5 * model.mu0 * std::pow(model.delta + a.norm(), p - 2.0) *
            a.squaredNorm() -
        model.mu0 * std::pow(model.delta, p);
    CHECK(sa >= bound - 1e-14);
  }
}

TEST_CASE("natural transforms") {
  const StressModel model;
  CHECK(natural_transform(2.7, Mat2::Zero(), model).norm() == 0.0);
  CHECK(natural_transform_conjugate(2.7, Mat2::Zero(), model).norm() == 0.0);

  std::mt19937 gen(41);
  const Mat2 a = random_sym(gen, 1.0);
  // p = 2: both transforms are the identity (exponents vanish).
  CHECK((natural_transform(2.0, a, model) - a).norm() < 1e-15);
  CHECK((natural_transform_conjugate(2.0, a, model) - a).norm() < 1e-15);

  // delta = 0, p = 4, A = diag(1, 0): |A| = 1, F = A.
  Mat2 d10 = Mat2::Zero();
  d10(0, 0) = 1.0;
  CHECK((natural_transform(4.0, d10, StressModel{0.5, 0.0}) - d10).norm() <
        1e-15);
}
