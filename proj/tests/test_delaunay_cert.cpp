#include <doctest.h>

#include <random>

#include "hmap/delaunay_cert.hpp"
#include "hmap/fixtures.hpp"
#include "hmap/pipeline.hpp"
#include "hmap/teich_opt.hpp"

using namespace hmap;

namespace {

// The regular structure with its canonical weights: the decomposition is its
// own harmonic map, with vertex weights 1.
struct RoundTrip {
  Realization real = regular_fixture(FixtureKind::CenteredPolygon);
  EnergyVariant variant = EnergyVariant::quadratic(canonical_weights(real));
  DualRealization dual = equivariant_dual(real, integrate_dual(real, variant));
};

}  // namespace

TEST_SUITE("delaunay_cert") {

TEST_CASE("canonical weights of the regular decomposition") {
  const Realization r = regular_fixture(FixtureKind::CenteredPolygon);
  const auto cot = canonical_weights_cot(r, corner_angles(r));
  const auto dual = canonical_weights_dual(r, polar_dual(r));
  const auto& cx = r.complex();
  double spoke = -1;
  for (int e = 0; e < cx.num_edges(); ++e) {
    CHECK(std::abs(cot[std::size_t(e)] - dual[std::size_t(e)]) <= 1e-9 * 0.3);
    if (cx.edge_names[std::size_t(e)][0] == 's') {
      if (spoke < 0) spoke = cot[std::size_t(e)];
      CHECK(cot[std::size_t(e)] == doctest::Approx(spoke).epsilon(1e-9));
      CHECK(cot[std::size_t(e)] > 0.1);
    } else {
      // Rim edges join cocircular neighbours and carry no weight.
      CHECK(std::abs(cot[std::size_t(e)]) <= 1e-9);
    }
  }
  // Equal arguments on both sides: c = 2 cot(arg) tanh(l/2) / l.
  const auto args = cot_arguments(r, corner_angles(r));
  const int e = 0;
  REQUIRE(std::abs(args[e].a - args[e].b) <= 1e-9);
  const double l = raw_edge_length(r, cx.edge_half[e]);
  CHECK(cot[e] == doctest::Approx(2 / std::tan(args[e].a) * std::tanh(l / 2) / l).epsilon(1e-9));
}

TEST_CASE("corner angles") {
  const Realization r = regular_fixture(FixtureKind::CenteredPolygon);
  const CornerAngles a = corner_angles(r);
  const auto& cx = r.complex();
  // The centre sees the octagon under 8 equal angles; corner angles sum to 2 pi at each vertex.
  for (int v = 0; v < 2; ++v) {
    double sum = 0;
    for (int h : cx.out[std::size_t(v)]) sum += a.angle[std::size_t(h)];
    CHECK(sum == doctest::Approx(2 * M_PI).epsilon(1e-10));
  }
  for (int h : cx.out[0]) CHECK(a.angle[std::size_t(h)] == doctest::Approx(M_PI / 4).epsilon(1e-10));
  CHECK_THROWS_AS(corner_angles(regular_fixture(FixtureKind::Polygon)), TriangleError);
}

TEST_CASE("vertex weights") {
  const RoundTrip rt;
  const VertexWeights w = vertex_weights(rt.real, rt.dual);
  for (double d : w.delta) CHECK(d == doctest::Approx(1).epsilon(1e-8));
  CHECK(w.max_spread <= 1e-8);

  DualRealization scaled = rt.dual;
  for (auto& c : scaled.corner) c *= 2.5;
  const VertexWeights ws = compute_vertex_weights(rt.real, scaled);
  for (std::size_t v = 0; v < w.delta.size(); ++v) CHECK(ws.delta[v] == doctest::Approx(2.5 * w.delta[v]));

  DualRealization flipped = rt.dual;
  for (auto& c : flipped.corner) c = -c;
  CHECK_THROWS_AS(vertex_weights(rt.real, flipped), NegativeWeightError);
  DualRealization bent = rt.dual;
  bent.corner[0] *= 1.1;
  CHECK_THROWS_AS(vertex_weights(rt.real, bent), InconsistentWeightError);
}

TEST_CASE("local convexity") {
  const RoundTrip rt;
  const VertexWeights w = compute_vertex_weights(rt.real, rt.dual);
  const ConvexityReport rep = convexity_check(rt.real, rt.dual, w);
  CHECK(rep.min_margin >= -1e-8);
  // Rim edges are flat, spokes are strictly convex.
  const auto& cx = rt.real.complex();
  for (int h = 0; h < cx.num_half_edges(); ++h) {
    const bool rim = cx.edge_names[std::size_t(cx.edge[std::size_t(h)])][0] == 'a';
    if (rim) CHECK(std::abs(rep.margin[std::size_t(h)]) <= 1e-8);
    else CHECK(rep.margin[std::size_t(h)] > 1e-3);
  }

  DualRealization noisy = rt.dual;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (auto& c : noisy.corner) c += 0.05 * Vec3(normal(rng), normal(rng), normal(rng));
  CHECK(convexity_check(rt.real, noisy, compute_vertex_weights(rt.real, noisy)).min_margin < 0);
}

TEST_CASE("circles") {
  const RoundTrip rt;
  VertexWeights w = compute_vertex_weights(rt.real, rt.dual);
  const CircleData circles = circle_data(rt.real, rt.dual, w);
  for (const auto& vc : circles.vertices) CHECK(vc.radius <= 1e-4);
  const auto& cx = rt.real.complex();
  for (int f = 0; f < cx.num_faces(); ++f) {
    const FaceCircle& fc = circles.faces[std::size_t(f)];
    REQUIRE(fc.real);
    const int h = cx.face_first[std::size_t(f)];
    CHECK(hyp_distance(fc.center, rt.real.f[std::size_t(cx.origin[std::size_t(h)])]) ==
          doctest::Approx(fc.radius).epsilon(1e-8));
    CHECK(hyp_distance(fc.center, rt.real.far_end(h)) == doctest::Approx(fc.radius).epsilon(1e-8));
  }
  w.delta.assign(w.delta.size(), std::cosh(0.3));
  for (const auto& vc : circle_data(rt.real, rt.dual, w).vertices) CHECK(vc.radius == doctest::Approx(0.3));
  w.delta.assign(w.delta.size(), 0.5);
  for (const auto& vc : circle_data(rt.real, rt.dual, w).vertices) CHECK_FALSE(vc.real);
}

TEST_CASE("polar dual of a polygon") {
  const Realization r = regular_fixture(FixtureKind::Polygon);
  const DualRealization d = polar_dual(r);
  CHECK(d.max_closure <= 1e-10);
  const auto c = canonical_weights_dual(r, d);
  for (double ce : c) CHECK(ce > 0);
  const auto& cx = r.complex();
  // Far corners of the single face sit behind four generator matrices.
  for (int h = 0; h < cx.num_half_edges(); ++h)
    CHECK(mink_inner(d.corner[std::size_t(h)], r.f[std::size_t(cx.origin[std::size_t(h)])]) ==
          doctest::Approx(-1).epsilon(1e-7));
}

TEST_CASE("certified optimum") {
  const Realization reg = regular_fixture(FixtureKind::Fan);
  const EnergyVariant v = EnergyVariant::quadratic(std::vector<double>(9, 1.0));
  const TeichState st = optimize_metric(reg, v);
  REQUIRE(st.certified);
  const VertexWeights w = vertex_weights(st.real, st.dual);
  CHECK(w.min_delta > 0);
  CHECK(w.max_spread <= 1e-6);
  CHECK(convexity_check(st.real, st.dual, w).min_margin >= -1e-8);
}

}  // TEST_SUITE
