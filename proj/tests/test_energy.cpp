#include <doctest.h>

#include <cmath>
#include <functional>

#include "hmap/dual_cocycle.hpp"
#include "hmap/energy.hpp"
#include "hmap/errors.hpp"
#include "hmap/fixtures.hpp"
#include "hmap/teich_opt.hpp"

using namespace hmap;

namespace {

double central(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("quadratic profile") {
  const EnergyVariant q = EnergyVariant::quadratic({1.0, 2.0});
  CHECK(q.w(0, 2) == doctest::Approx(2));
  CHECK(q.w_prime(0, 2) == doctest::Approx(2));
  CHECK(q.w(1, 3) == doctest::Approx(9));
  CHECK(q.k(0, 1.5) == doctest::Approx(1.5 / std::sinh(1.5)));
  CHECK(q.k(0, 0) == doctest::Approx(1));
  CHECK(q.k(0, 1e-6) == doctest::Approx(1));
  CHECK(q.w(0, 0) == 0);
}

TEST_CASE("sinh half squared profile") {
  const EnergyVariant s = EnergyVariant::sinh_half_squared({1.0});
  CHECK(s.w(0, 2) == doctest::Approx(2 * std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-14));
  CHECK(s.w_prime(0, 2) == doctest::Approx(std::sinh(2.0)).epsilon(1e-14));
  CHECK(std::abs(central([&](double x) { return s.w(0, x); }, 2) - s.w_prime(0, 2)) <= 1e-8);
  CHECK(s.k(0, 0.7) == doctest::Approx(1));
  CHECK(s.w(0, 0) == 0);
}

TEST_CASE("tabulated profile") {
  auto table = std::make_shared<ProfileTable>(std::vector<double>{0.5, 1.0, 2.0, 4.0},
                                              std::vector<double>{0.5, 1.2, 1.5, 3.0});
  const EnergyVariant v = EnergyVariant::custom(table, {2.0});
  // Below the first sample the slope is linear, so the curvature jumps there.
  for (double x : {0.2, 0.5, 0.75, 1.3, 2.0, 3.1, 5.0}) {
    CHECK(std::abs(central([&](double y) { return v.w(0, y); }, x, 1e-6) - v.w_prime(0, x)) <= (x == 0.5 ? 1e-6 : 1e-8));
    CHECK(v.w_prime(0, x) > 0);
    CHECK(v.k(0, x) == doctest::Approx(v.w_prime(0, x) / std::sinh(x)));
  }
  // Samples are interpolated exactly and the slope is monotone between them.
  CHECK(table->derivative(1.0) == doctest::Approx(1.2));
  CHECK(table->derivative(2.0) == doctest::Approx(1.5));
  for (double x = 1.0; x < 2.0; x += 0.05) CHECK(table->derivative(x) >= 1.2 - 1e-12);
  CHECK(v.w(0, 0) == 0);
  CHECK(std::isfinite(v.k(0, 0)));

  CHECK_THROWS_AS(ProfileTable({1.0, 2.0}, {1.0, 0.0}), MonotonicityError);
  CHECK_THROWS_AS(ProfileTable({1.0, 1.0}, {1.0, 2.0}), InputError);
  CHECK_THROWS_AS(ProfileTable({}, {}), InputError);
}

TEST_CASE("variant names and weights") {
  CHECK(parse_variant("sinh_half_squared") == VariantKind::SinhHalfSquared);
  CHECK(variant_name(VariantKind::Custom) == "custom");
  CHECK_THROWS_AS(parse_variant("cubic"), InputError);
  CHECK_THROWS_AS(EnergyVariant::quadratic({1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(EnergyVariant::quadratic({0.0, 0.0}), DomainError);
  CHECK_NOTHROW(EnergyVariant::quadratic({1.0, 0.0}));
  CHECK(EnergyVariant::quadratic({1.0}).with_weights({3.0}).weights()[0] == 3);
}

TEST_CASE("sinh variant dual relations") {
  // |a_h| = c sinh l, so the recovery is exact at any harmonic point, and the
  // mean curvature sum equals the energy.
  Realization r = regular_fixture(FixtureKind::CenteredPolygon);
  std::vector<double> c;
  for (int e = 0; e < r.complex().num_edges(); ++e) c.push_back(1.0 + 0.1 * e);
  const EnergyVariant v = EnergyVariant::sinh_half_squared(c);
  const Realization solved = solve_harmonic(r, v).real;
  const DualRealization dual = equivariant_dual(solved, integrate_dual(solved, v));
  const auto rec = recover_weights_sinh(solved, dual);
  for (std::size_t e = 0; e < c.size(); ++e) CHECK(rec[e] == doctest::Approx(c[e]).epsilon(1e-9));
  CHECK(mean_curvature_functional(solved, dual) == doctest::Approx(dirichlet_energy(solved, v)).epsilon(1e-9));
}

}  // TEST_SUITE
