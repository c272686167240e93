#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "varpns/assembly.hpp"
#include "varpns/solver.hpp"

namespace varpns {

/// Analytic reference fields evaluated at quadrature points.
struct ExactSolution {
  std::function<Eigen::Vector2d(double t, const Vec2&)> velocity;
  std::function<Mat2(double t, const Vec2&)> strain;
  std::function<Mat2(double t, const Vec2&)> stress;  // S(p(t,x), Dv(t,x))
  std::function<double(double t, const Vec2&)> pressure;
};

/// Reference fields of the fractional-regularity benchmark; the pressure
/// mean is computed with `rule` on `mesh` and cached per time.
ExactSolution manufactured_solution(const ManufacturedCase& c,
                                    const StressModel& model,
                                    const Triangulation& mesh,
                                    const QuadratureRule& rule);

struct ErrorQuadruple {
  double e_strain = 0.0;    // natural distance of strain rates (F_n)
  double e_stress = 0.0;    // natural distance of stresses (F_n*)
  double e_velocity = 0.0;  // max_k L2 velocity error
  double e_pressure = 0.0;  // weighted pressure error
};

ErrorQuadruple error_quantities(const std::vector<StepState>& states,
                                const TimeGrid& grid,
                                const Triangulation& mesh,
                                const DofMap& dofmap,
                                const QuadratureRule& rule,
                                const StressModel& model,
                                const ExponentField& exponent,
                                const ExactSolution& exact);

/// log(e_n / e_{n-1}) / log((h_n + tau_n) / (h_{n-1} + tau_{n-1})),
/// absent when either error is non-positive.
std::optional<double> eoc(double e_prev, double e_cur, double h_prev,
                          double tau_prev, double h_cur, double tau_cur);

/// Expected rate alpha (p+)'/2 with p+ = p- + 1.
double expected_rate(const ManufacturedCase& c);

struct LevelResult {
  int level;
  double h;
  double tau;
  ErrorQuadruple errors;
  std::optional<double> eoc_strain, eoc_stress, eoc_velocity, eoc_pressure;
};

struct ErrorReport {
  std::vector<LevelResult> levels;
  double expected = 0.0;
};

}  // namespace varpns
