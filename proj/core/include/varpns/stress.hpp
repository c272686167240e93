#pragma once

#include <Eigen/Dense>

#include "varpns/mesh.hpp"

namespace varpns {

/// Power-law stress S(p,A) = mu0 (delta + |A|)^{p-2} A with |A| the
/// Frobenius norm of the symmetric 2x2 strain rate.
struct StressModel {
  double mu0 = 0.5;
  double delta = 1e-5;
};

Mat2 stress(double p, const Mat2& A, const StressModel& model);

/// Directional derivative dS/dA applied to a symmetric direction B:
///   mu0 [ (delta+|A|)^{p-2} B + (p-2)(delta+|A|)^{p-3} (A:B)/|A| A ],
/// the dyadic term taken as 0 at |A| = 0.
Mat2 stress_jacobian_apply(double p, const Mat2& A, const Mat2& B,
                           const StressModel& model);

struct StressJacobian {
  // Components J[i][j][k][l] = d S_ij / d A_kl (symmetrized in (k,l)).
  double J[2][2][2][2];
  bool singular = false;  // delta = 0, |A| = 0, p < 2: dyadic part undefined
};

StressJacobian stress_jacobian(double p, const Mat2& A,
                               const StressModel& model);

/// Natural distance transforms:
///   F(p,A)  = (delta + |A|)^{(p-2)/2} A
///   F*(p,A) = (delta^{p-1} + |A|)^{(p'-2)/2} A
Mat2 natural_transform(double p, const Mat2& A, const StressModel& model);
Mat2 natural_transform_conjugate(double p, const Mat2& A,
                                 const StressModel& model);

}  // namespace varpns
