#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "varpns/exponent.hpp"
#include "varpns/manufactured.hpp"

using namespace varpns;

TEST_CASE("conjugate and parabolic Sobolev conjugate exponents") {
  CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
  CHECK(conjugate_exponent(3.25) == doctest::Approx(13.0 / 9.0));
  CHECK(conjugate_exponent(3.5) == doctest::Approx(1.4));
  CHECK(sobolev_conjugate(2.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(conjugate_exponent(1.0), std::domain_error);
  CHECK_THROWS_AS(conjugate_exponent(0.5), std::domain_error);
}

TEST_CASE("exponent discretization samples t_k at cell barycenters") {
  const Triangulation mesh = refine(unit_square_initial());

  const std::vector<double> cp =
      discretize_exponent(constant_exponent(2.5), 0.05, mesh);
  for (double v : cp) CHECK(v == doctest::Approx(2.5));

  ManufacturedCase mcase;
  mcase.p_minus = 2.25;
  mcase.alpha = 0.5;
  const ExponentField field = exponent_field(mcase);
  const double t_k = 0.075;
  const std::vector<double> pk = discretize_exponent(field, t_k, mesh);
  REQUIRE(static_cast<int>(pk.size()) == mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const Vec2 x = cell_geometry(mesh, c).barycenter;
    const double s =
        std::pow(x.norm(), mcase.alpha) / std::pow(2.0, mcase.alpha / 2.0);
    const double expect =
        (1.0 - s) * mcase.p_plus() + s * (mcase.p_minus + t_k);
    CHECK(pk[c] == doctest::Approx(expect).epsilon(1e-14));
    CHECK(pk[c] >= mcase.p_minus);
    CHECK(pk[c] <= mcase.p_plus());
  }
}

namespace {

QuadSamples sample(const Triangulation& mesh, const QuadratureRule& rule,
                   const std::function<double(const Vec2&)>& f) {
  QuadSamples out(mesh.num_cells() * rule.size());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    for (int q = 0; q < rule.size(); ++q)
      out[c * rule.size() + q] =
          f(geo.jacobian * rule.points[q] + geo.offset);
  }
  return out;
}

}  // namespace

TEST_CASE("modular: closed-form examples") {
  const Triangulation mesh = refine(refine(unit_square_initial()));
  const QuadratureRule rule = quadrature_rule(8);
  const QuadSamples zero(mesh.num_cells() * rule.size(), 0.0);
  const QuadSamples one(mesh.num_cells() * rule.size(), 1.0);
  QuadSamples p(mesh.num_cells() * rule.size(), 2.7);
  CHECK(modular(zero, p, mesh, rule) == 0.0);
  CHECK(modular(one, p, mesh, rule) == doctest::Approx(1.0));

  const QuadSamples x1 = sample(mesh, rule, [](const Vec2& x) { return x.x(); });
  QuadSamples two(mesh.num_cells() * rule.size(), 2.0);
  CHECK(modular(x1, two, mesh, rule) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("Luxembourg norm: constant exponent reduces to the L^r norm") {
  const Triangulation mesh = refine(unit_square_initial());
  const QuadratureRule rule = quadrature_rule(4);
  const int n = mesh.num_cells() * rule.size();
  const QuadSamples one(n, 1.0);
  QuadSamples p3(n, 3.0);
  CHECK(luxembourg_norm(one, p3, mesh, rule) == doctest::Approx(1.0));
  // |u| = x1, r = 2: ||u||_2 = (1/3)^{1/2}.
  const QuadSamples x1 = sample(mesh, rule, [](const Vec2& x) { return x.x(); });
  QuadSamples p2(n, 2.0);
  CHECK(luxembourg_norm(x1, p2, mesh, rule) ==
        doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-9));
  CHECK(luxembourg_norm(QuadSamples(n, 0.0), p2, mesh, rule) == 0.0);
}

TEST_CASE("Luxembourg norm properties on random piecewise data") {
  const Triangulation mesh = refine(unit_square_initial());
  const QuadratureRule rule = quadrature_rule(4);
  const int n = mesh.num_cells() * rule.size();
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> uval(-3.0, 3.0);
  std::uniform_real_distribution<double> pval(1.2, 4.5);
  for (int trial = 0; trial < 20; ++trial) {
    QuadSamples u(n), w(n), p(n), pc(n);
    for (int i = 0; i < n; ++i) {
      u[i] = uval(gen);
      w[i] = uval(gen);
      p[i] = pval(gen);
      pc[i] = conjugate_exponent(p[i]);
    }
    const double nu = luxembourg_norm(u, pc, mesh, rule);

    // Unit-ball property of the infimum.
    QuadSamples scaled(n);
    for (int i = 0; i < n; ++i) scaled[i] = u[i] / nu;
    const double rho = modular(scaled, pc, mesh, rule);
    CHECK(rho <= 1.0 + 1e-8);
    CHECK(rho >= 1.0 - 1e-6);

    // Homogeneity.
    QuadSamples cu(n);
    for (int i = 0; i < n; ++i) cu[i] = -2.5 * u[i];
    CHECK(luxembourg_norm(cu, pc, mesh, rule) ==
          doctest::Approx(2.5 * nu).epsilon(1e-9));

    // Variable Hoelder inequality with constant 2.
    double l1 = 0.0;
    int idx = 0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
      const double detj = 2.0 * cell_geometry(mesh, c).area;
      for (int q = 0; q < rule.size(); ++q, ++idx)
        l1 += detj * rule.weights[q] * std::abs(u[idx] * w[idx]);
    }
    const double nw = luxembourg_norm(w, p, mesh, rule);
    CHECK(l1 <= 2.0 * nu * nw * (1.0 + 1e-12));
  }
}
