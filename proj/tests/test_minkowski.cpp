#include <doctest.h>

#include <random>

#include "hmap/minkowski.hpp"

using namespace hmap;

namespace {

Vec3 rand_vec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  return Vec3(u(rng), u(rng), u(rng));
}

Vec3 rand_point(std::mt19937_64& rng) {
  const Vec3 v = rand_vec(rng);
  return Vec3(v(0), v(1), std::sqrt(1 + v(0) * v(0) + v(1) * v(1)));
}

Mat3 rand_isometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0, 6.28), s(0, 1.5);
  return rotation_e0(a(rng)) * boost_x(s(rng)) * rotation_e0(a(rng));
}

}  // namespace

TEST_SUITE("minkowski") {

TEST_CASE("inner product and cross product conventions") {
  CHECK(mink_inner(Vec3(1, 2, 2), Vec3(1, 2, 2)) == doctest::Approx(1));
  CHECK(mink_cross(Vec3(1, 0, 0), Vec3(0, 1, 0)) == Vec3(0, 0, -1));
  const Vec3 x(0.3, -1.2, 2.0);
  CHECK(mink_cross(x, x).norm() == 0);

  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 u = rand_vec(rng), v = rand_vec(rng);
    const Vec3 w = mink_cross(u, v);
    CHECK(std::abs(mink_inner(w, u)) <= 1e-12);
    CHECK(std::abs(mink_inner(w, v)) <= 1e-12);
    CHECK(triple_cross_check(u, v) <= 1e-12);
  }
  CHECK(triple_cross_check(x, x) <= 1e-15);
  CHECK(triple_cross_check(Vec3(0, 0, 1), Vec3(1, 0, 0)) == 0);
}

TEST_CASE("distance formulas") {
  const Vec3 o(0, 0, 1), q(std::sinh(1.0), 0, std::cosh(1.0));
  CHECK(hyp_distance(o, o) == 0);
  CHECK(hyp_distance(o, q) == doctest::Approx(1).epsilon(1e-15));

  std::mt19937_64 rng(2);
  for (int k = 0; k < 500; ++k) {
    const Vec3 p = rand_point(rng), r = rand_point(rng), s = rand_point(rng);
    const double d = hyp_distance(p, r);
    CHECK(std::abs(d - std::asinh(spacelike_norm(mink_cross(p, r)))) <= 1e-10 * std::max(1.0, d));
    CHECK(hyp_distance(r, p) == doctest::Approx(d).epsilon(1e-12));
    CHECK(hyp_distance(p, s) <= hyp_distance(p, r) + hyp_distance(r, s) + 1e-9);
  }
  CHECK_THROWS_AS(hyp_distance(Vec3(0, 0, 1), Vec3(0, 0, 0.5)), DomainError);
}

TEST_CASE("projection to the hyperboloid") {
  CHECK((project_hyperboloid(Vec3(0, 0, 2)) - Vec3(0, 0, 1)).norm() == 0);
  CHECK((project_hyperboloid(Vec3(1, 0, 2)) - Vec3(1, 0, 2) / std::sqrt(3.0)).norm() <= 1e-15);
  const Vec3 p = project_hyperboloid(Vec3(0.4, -0.7, 3.0));
  CHECK(on_hyperboloid(p));
  CHECK((project_hyperboloid(p) - p).norm() <= 1e-15);
  CHECK_THROWS_AS(project_hyperboloid(Vec3(2, 0, 1)), DomainError);
  CHECK_THROWS_AS(project_hyperboloid(Vec3(0, 0, -1)), DomainError);
}

TEST_CASE("lie algebra identification") {
  CHECK(lie_matrix(Vec3::Zero()).norm() == 0);
  std::mt19937_64 rng(3);
  const Mat3 j = minkowski_metric();
  for (int k = 0; k < 200; ++k) {
    const Vec3 v = rand_vec(rng), w = rand_vec(rng), x = rand_vec(rng);
    const Mat3 a = eta_inv(v);
    CHECK((a * x - mink_cross(v, x)).norm() <= 1e-14);
    CHECK((a.transpose() * j + j * a).norm() <= 1e-14);
    CHECK((eta(a) - v).norm() <= 1e-15);
    // Half the trace form is the inner product.
    CHECK(std::abs(killing(a, eta_inv(w)) - mink_inner(v, w)) <= 1e-12);
    CHECK(std::abs(0.5 * (a * eta_inv(w)).trace() - mink_inner(v, w)) <= 1e-12);

    const Mat3 g = rand_isometry(rng);
    CHECK(adjoint_identity_check(g, v) <= 1e-12);
  }
  CHECK(adjoint_identity_check(Mat3::Identity(), Vec3(1, 2, 3)) == 0);
  CHECK(adjoint_identity_check(rotation_e0(0.7), Vec3(0, 0, 1)) <= 1e-15);
}

TEST_CASE("exponential map") {
  CHECK((exp_so21(Vec3(0.3, 0.1, 0.2), 0.0) - Mat3::Identity()).norm() == 0);
  for (double theta : {0.1, 1.0, 2.5, 7.0}) {
    const Mat3 r = exp_so21(Vec3(0, 0, 1), theta);
    CHECK((r - rotation_e0(theta)).cwiseAbs().maxCoeff() <= 1e-13);
  }
  const Vec3 v(0.4, -0.3, 0.2);
  const Mat3 ab = exp_so21(v, 0.7) * exp_so21(v, 1.1);
  CHECK((ab - exp_so21(v, 1.8)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(is_isometry(exp_so21(Vec3(3, -2, 1), 1.5)));
  // A space-like generator is a boost.
  CHECK((exp_so21(Vec3(0, 1, 0), 0.8) - boost_x(0.8)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("isometries") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 100; ++k) {
    const Mat3 g = rand_isometry(rng);
    CHECK(is_isometry(g));
    CHECK((isometry_inverse(g) * g - Mat3::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    const Vec3 p = rand_point(rng);
    CHECK((boost_from_origin(p) * Vec3(0, 0, 1) - p).norm() <= 1e-12);
    CHECK(is_isometry(boost_from_origin(p)));
    const Mat3 noisy = g + 1e-7 * Mat3::Random();
    CHECK_FALSE(is_isometry(noisy));
    CHECK(is_isometry(repair_isometry(noisy)));
  }
  Mat3 flip = Mat3::Identity();
  flip(2, 2) = -1;
  CHECK_FALSE(is_isometry(flip));
}

}  // TEST_SUITE
