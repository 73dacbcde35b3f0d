#include <doctest.h>

#include <random>

#include "hmap/dual_cocycle.hpp"
#include "hmap/fixtures.hpp"
#include "hmap/teich_opt.hpp"

using namespace hmap;

namespace {

EnergyVariant uneven(const Realization& r) {
  std::vector<double> c;
  for (int e = 0; e < r.complex().num_edges(); ++e) c.push_back(0.6 + 0.05 * e);
  return EnergyVariant::quadratic(c);
}

Realization moved_fan(std::uint64_t seed, double t) {
  Realization r = regular_fixture(FixtureKind::Fan);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  GeneratorCocycle s = GeneratorCocycle::zero(4);
  for (const auto& b : basis_H1(r.rep)) s += normal(rng) * b;
  set_rep(r, deform_rep(r.rep, s, t));
  return r;
}

}  // namespace

TEST_SUITE("dual_cocycle") {

TEST_CASE("edge vectors") {
  const Realization r = moved_fan(1, 0.2);
  const EnergyVariant v = uneven(r);
  const auto& cx = r.complex();
  for (int h = 0; h < cx.num_half_edges(); ++h) {
    const Vec3 a = edge_dual_vector(r, v, h);
    const double l = raw_edge_length(r, h);
    const double w = v.w_prime(cx.edge[std::size_t(h)], l);
    CHECK(std::abs(spacelike_norm(a) - w) <= 1e-12 * std::max(1.0, w) * 1e3);
    CHECK(std::abs(mink_inner(a, r.f[std::size_t(cx.origin[std::size_t(h)])])) <= 1e-10 * r.far_end(h).norm());
    CHECK(std::abs(mink_inner(a, r.far_end(h))) <= 1e-10 * r.far_end(h).squaredNorm());
  }
}

TEST_CASE("closure equals the harmonic residual") {
  const Realization r = moved_fan(2, 0.2);
  const EnergyVariant v = uneven(r);
  const DualRealization d = integrate_dual(r, v);
  const auto res = harmonic_residual_vectors(r, v);
  for (std::size_t i = 0; i < res.size(); ++i) {
    CHECK(res[i].norm() > 1e-3);
    CHECK((d.closure[i] - res[i]).norm() <= 1e-12 * 1e3);
  }
  CHECK_THROWS_AS(tau_from_dual(d, 1e-6), ClosureError);

  const Realization solved = solve_harmonic(r, v).real;
  const DualRealization ds = integrate_dual(solved, v);
  CHECK(ds.max_closure <= 1e-10);
  for (int h = 0; h < solved.complex().num_half_edges(); ++h)
    CHECK((ds.dual_edge(solved.complex(), h) - ds.edge_vector[std::size_t(h)]).norm() <= 1e-9);
  CHECK(ds.consistency <= 1e-8);
  CHECK(cocycle_relator_residual(solved.rep, ds.tau) <= 1e-8 * relator_scale(solved.rep));
}

TEST_CASE("translation changes tau by a coboundary") {
  const Realization r = solve_harmonic(moved_fan(3, 0.2), EnergyVariant::quadratic(std::vector<double>(9, 1.0))).real;
  const EnergyVariant v = EnergyVariant::quadratic(std::vector<double>(9, 1.0));
  const DualRealization d = integrate_dual(r, v);
  const Vec3 shift(0.3, -0.1, 0.2);
  const DualRealization t = translate_dual(d, r.rep, shift);
  const GeneratorCocycle diff = t.tau - d.tau;
  const GeneratorCocycle cob = coboundary_cocycle(r.rep, shift);
  for (int k = 0; k < 4; ++k) CHECK((diff.values[std::size_t(k)] - cob.values[std::size_t(k)]).norm() <= 1e-9);
  CHECK(certify_tau(r, t).residual == doctest::Approx(certify_tau(r, d).residual).epsilon(1e-8));
}

TEST_CASE("tau certificate") {
  // At the regular structure with uniform weights the map is the optimum.
  const Realization reg = regular_fixture(FixtureKind::CenteredPolygon);
  const EnergyVariant v = EnergyVariant::quadratic(std::vector<double>(12, 1.0));
  const Realization solved = solve_harmonic(reg, v).real;
  const DualRealization d = integrate_dual(solved, v);
  const TauCertificate cert = certify_tau(solved, d);
  CHECK(cert.residual <= 1e-6);
  const DualRealization eq = equivariant_dual(solved, d);
  for (const auto& t : eq.tau.values) CHECK(t.norm() <= 1e-6);

  const Realization off = solve_harmonic(moved_fan(4, 0.3), EnergyVariant::quadratic(std::vector<double>(9, 1.0))).real;
  CHECK(certify_tau(off, integrate_dual(off, EnergyVariant::quadratic(std::vector<double>(9, 1.0)))).residual > 1e-3);
}

TEST_CASE("pairing derivative") {
  const EnergyVariant v = EnergyVariant::quadratic(std::vector<double>(9, 1.0));
  const Realization r = solve_harmonic(moved_fan(5, 0.2), v).real;
  const DualRealization d = integrate_dual(r, v);
  CHECK(pairing_derivative(r, d, GeneratorCocycle::zero(4)) == 0);
  const double cob = pairing_derivative(r, d, coboundary_cocycle(r.rep, Vec3(0.2, 0.5, -0.3)));
  CHECK(std::abs(cob) <= 1e-8);

  // Against a central difference of the solved energy.
  const GeneratorCocycle s = basis_H1(r.rep)[1];
  auto energy = [&](double t) {
    Realization m = r;
    set_rep(m, deform_rep(r.rep, s, t));
    SolveOptions o;
    o.tol = 1e-12;
    return dirichlet_energy(solve_harmonic(m, v, o).real, v);
  };
  const double fd = (energy(1e-4) - energy(-1e-4)) / 2e-4;
  const double p = pairing_derivative(r, d, s);
  CHECK(std::abs(fd - p) <= 1e-4 * std::abs(p));
  // The translation of the dual does not matter.
  CHECK(pairing_derivative(r, translate_dual(d, r.rep, Vec3(1, 2, 3)), s) == doctest::Approx(p).epsilon(1e-8));
}

}  // TEST_SUITE
