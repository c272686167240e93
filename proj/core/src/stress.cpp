#include "varpns/stress.hpp"

#include <cmath>

#include "varpns/exponent.hpp"

namespace varpns {

Mat2 stress(double p, const Mat2& A, const StressModel& model) {
  const double norm = A.norm();
  return model.mu0 * std::pow(model.delta + norm, p - 2.0) * A;
}

Mat2 stress_jacobian_apply(double p, const Mat2& A, const Mat2& B,
                           const StressModel& model) {
  const double norm = A.norm();
  const double base = model.delta + norm;
  Mat2 out = std::pow(base, p - 2.0) * B;
  if (norm > 0.0) {
    const double coeff =
        (p - 2.0) * std::pow(base, p - 3.0) * (A.cwiseProduct(B).sum() / norm);
    out += coeff * A;
  }
  return model.mu0 * out;
}

StressJacobian stress_jacobian(double p, const Mat2& A,
                               const StressModel& model) {
  StressJacobian jac;
  const double norm = A.norm();
  jac.singular = (model.delta == 0.0 && norm == 0.0 && p < 2.0);
  const double base = model.delta + norm;
  const double c_iso = model.mu0 * std::pow(base, p - 2.0);
  const double c_dyad =
      norm > 0.0 ? model.mu0 * (p - 2.0) * std::pow(base, p - 3.0) / norm : 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const double sym_id = 0.5 * ((i == k && j == l ? 1.0 : 0.0) +
                                       (i == l && j == k ? 1.0 : 0.0));
          jac.J[i][j][k][l] = c_iso * sym_id + c_dyad * A(i, j) * A(k, l);
        }
  return jac;
}

Mat2 natural_transform(double p, const Mat2& A, const StressModel& model) {
  return std::pow(model.delta + A.norm(), 0.5 * (p - 2.0)) * A;
}

Mat2 natural_transform_conjugate(double p, const Mat2& A,
                                 const StressModel& model) {
  const double pc = conjugate_exponent(p);
  return std::pow(std::pow(model.delta, p - 1.0) + A.norm(),
                  0.5 * (pc - 2.0)) *
         A;
}

}  // namespace varpns
