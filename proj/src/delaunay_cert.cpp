#include "hmap/delaunay_cert.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hmap {

namespace {

// Vertices of the lift of face(c) that has the representative of origin(c) at
// corner c, in face order starting there. The second half is reached backwards
// around the face, which keeps the transport words short.
std::vector<std::pair<int, Vec3>> face_lift(const Realization& real, int c) {
  const auto& cx = real.complex();
  std::vector<int> hs;
  int h = c;
  do {
    hs.push_back(h);
    h = cx.next[std::size_t(h)];
  } while (h != c);
  const std::size_t n = hs.size(), half = (n + 1) / 2;
  std::vector<std::pair<int, Vec3>> out(n);
  Mat3 m = Mat3::Identity();
  for (std::size_t k = 0; k < half; ++k) {
    const int v = cx.origin[std::size_t(hs[k])];
    out[k] = {v, m * real.f[std::size_t(v)]};
    m = m * real.transport[std::size_t(hs[k])];
  }
  m = Mat3::Identity();
  for (std::size_t k = n; k-- > half;) {
    m = m * isometry_inverse(real.transport[std::size_t(hs[k])]);
    const int v = cx.origin[std::size_t(hs[k])];
    out[k] = {v, m * real.f[std::size_t(v)]};
  }
  return out;
}

}  // namespace

VertexWeights compute_vertex_weights(const Realization& real, const DualRealization& dual) {
  const auto& cx = real.complex();
  VertexWeights w;
  w.min_delta = std::numeric_limits<double>::infinity();
  for (int v = 0; v < cx.num_vertices(); ++v) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0;
    for (int h : cx.out[std::size_t(v)]) {
      const double d = -mink_inner(dual.corner[std::size_t(h)], real.f[std::size_t(v)]);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      sum += d;
    }
    w.delta.push_back(sum / double(cx.out[std::size_t(v)].size()));
    w.spread.push_back(hi - lo);
    w.max_spread = std::max(w.max_spread, hi - lo);
    w.min_delta = std::min(w.min_delta, w.delta.back());
  }
  return w;
}

VertexWeights vertex_weights(const Realization& real, const DualRealization& dual, const Tolerances& tol) {
  auto w = compute_vertex_weights(real, dual);
  const auto& names = real.complex().vertex_names;
  for (std::size_t v = 0; v < w.delta.size(); ++v) {
    if (!(w.delta[v] > 0))
      throw NegativeWeightError("vertex weight of " + names[v] + " is " + std::to_string(w.delta[v]));
    if (!(w.spread[v] <= tol.delta))
      throw InconsistentWeightError("vertex weight of " + names[v] + " varies by " + std::to_string(w.spread[v]));
  }
  return w;
}

ConvexityReport convexity_check(const Realization& real, const DualRealization& dual, const VertexWeights& weights) {
  const auto& cx = real.complex();
  ConvexityReport rep;
  rep.margin.assign(std::size_t(cx.num_half_edges()), std::numeric_limits<double>::infinity());
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (int h = 0; h < cx.num_half_edges(); ++h) {
    const Vec3& support = dual.corner[std::size_t(h)];
    const auto right = face_lift(real, cx.rotate(h));
    double m = std::numeric_limits<double>::infinity();
    // right[0] is the origin of h, right.back() is its far end.
    for (std::size_t k = 1; k + 1 < right.size(); ++k) {
      const auto& [v, p] = right[k];
      m = std::min(m, -1 - mink_inner(support, p) / weights.delta[std::size_t(v)]);
    }
    rep.margin[std::size_t(h)] = m;
    if (m < rep.min_margin) {
      rep.min_margin = m;
      rep.worst_half_edge = h;
    }
  }
  return rep;
}

DualRealization polar_dual(const Realization& real) {
  const auto& mesh = *real.mesh;
  const auto& cx = mesh.complex;
  const auto nh = std::size_t(cx.num_half_edges());
  DualRealization dual;
  dual.corner.resize(nh);
  for (std::size_t h = 0; h < nh; ++h) {
    const auto verts = face_lift(real, int(h));
    Eigen::MatrixXd a(long(verts.size()), 3);
    for (std::size_t m = 0; m < verts.size(); ++m) a.row(long(m)) = (minkowski_metric() * verts[m].second).transpose();
    const Eigen::VectorXd rhs = -Eigen::VectorXd::Ones(long(verts.size()));
    dual.corner[h] = a.colPivHouseholderQr().solve(rhs);
  }
  dual.edge_vector.resize(nh);
  for (std::size_t h = 0; h < nh; ++h) dual.edge_vector[h] = dual.dual_edge(cx, int(h));
  dual.closure.assign(std::size_t(cx.num_vertices()), Vec3::Zero());
  for (int v = 0; v < cx.num_vertices(); ++v)
    for (int h : cx.out[std::size_t(v)]) dual.closure[std::size_t(v)] += dual.edge_vector[std::size_t(h)];
  for (std::size_t v = 0; v < dual.closure.size(); ++v)
    dual.max_closure = std::max(dual.max_closure, frame_norm(dual.closure[v], real.f[v]));
  const auto& gens = mesh.labels.generator_half;
  dual.tau = GeneratorCocycle::zero(int(gens.size()));
  for (std::size_t r = 0; r < gens.size(); ++r) {
    const auto h = std::size_t(gens[r]);
    dual.tau.values[r] = dual.corner[h] - real.transport[h] * dual.corner[std::size_t(cx.next[h])];
  }
  for (std::size_t h = 0; h < nh; ++h) {
    const Vec3 t = dual.corner[h] - real.transport[h] * dual.corner[std::size_t(cx.next[h])];
    dual.consistency = std::max(dual.consistency, (t - extend_cocycle(real.rep, dual.tau, mesh.labels.label[h])).norm());
  }
  return dual;
}

std::vector<double> canonical_weights_dual(const Realization& real, const DualRealization& dual) {
  const auto& cx = real.complex();
  std::vector<double> c;
  for (int e = 0; e < cx.num_edges(); ++e) {
    const int h = cx.edge_half[std::size_t(e)];
    const Vec3 d = dual.dual_edge(cx, h);
    const double q = mink_inner(d, d);
    // Cocircular neighbours give a dual edge of length zero.
    if (!(q > -1e-12)) throw NonSpacelikeError("dual edge across " + cx.edge_names[std::size_t(e)] + " is not space-like");
    c.push_back(std::sqrt(std::max(q, 0.0)) / raw_edge_length(real, h));
  }
  return c;
}

CornerAngles corner_angles(const Realization& real) {
  const auto& cx = real.complex();
  CornerAngles out;
  out.angle.resize(std::size_t(cx.num_half_edges()));
  for (int h = 0; h < cx.num_half_edges(); ++h) {
    const int n = cx.next[std::size_t(h)], p = cx.prev[std::size_t(h)];
    if (cx.next[std::size_t(n)] != p)
      throw TriangleError("face " + cx.face_names[std::size_t(cx.face[std::size_t(h)])] + " is not a triangle");
    const double a = raw_edge_length(real, h), b = raw_edge_length(real, p), opposite = raw_edge_length(real, n);
    if (!(opposite < a + b && a < b + opposite && b < a + opposite))
      throw TriangleError("edge lengths of face " + cx.face_names[std::size_t(cx.face[std::size_t(h)])] +
                          " violate the triangle inequality");
    // Half-angle form of the hyperbolic law of cosines.
    const double sp = (a + b + opposite) / 2;
    const double t2 = std::sinh(sp - a) * std::sinh(sp - b) / (std::sinh(sp) * std::sinh(sp - opposite));
    out.angle[std::size_t(h)] = 2 * std::atan(std::sqrt(t2));
  }
  return out;
}

std::vector<CotArguments> cot_arguments(const Realization& real, const CornerAngles& angles) {
  const auto& cx = real.complex();
  const double pi = std::numbers::pi;
  auto arg = [&](int h) {
    const double ai = angles.angle[std::size_t(h)];
    const double aj = angles.angle[std::size_t(cx.next[std::size_t(h)])];
    const double ak = angles.angle[std::size_t(cx.prev[std::size_t(h)])];
    return (pi - ai - aj + ak) / 2;
  };
  std::vector<CotArguments> out;
  for (int h : cx.edge_half) out.push_back({arg(h), arg(cx.twin[std::size_t(h)])});
  return out;
}

std::vector<double> canonical_weights_cot(const Realization& real, const CornerAngles& angles) {
  const auto& cx = real.complex();
  const double pi = std::numbers::pi;
  const auto args = cot_arguments(real, angles);
  std::vector<double> c;
  for (int e = 0; e < cx.num_edges(); ++e) {
    const auto [a, b] = args[std::size_t(e)];
    for (double x : {a, b})
      if (!(x > 1e-12 && x < pi - 1e-12))
        throw CotangentPoleError("cotangent argument at edge " + cx.edge_names[std::size_t(e)] + " is degenerate");
    const double l = raw_edge_length(real, cx.edge_half[std::size_t(e)]);
    c.push_back((1 / std::tan(a) + 1 / std::tan(b)) * std::tanh(l / 2) / l);
  }
  return c;
}

CircleData circle_data(const Realization& real, const DualRealization& dual, const VertexWeights& weights) {
  const auto& cx = real.complex();
  CircleData out;
  for (int f = 0; f < cx.num_faces(); ++f) {
    const Vec3& c = dual.corner[std::size_t(cx.face_first[std::size_t(f)])];
    const double q = -mink_inner(c, c);
    FaceCircle fc;
    if (q > 0 && c(2) > 0) {
      const double s = std::sqrt(q);
      fc.center = c / s;
      fc.real = s <= 1;
      if (fc.real) fc.radius = std::acosh(1 / s);
    }
    out.faces.push_back(fc);
  }
  for (double d : weights.delta) {
    VertexCircle vc;
    vc.real = d >= 1;
    if (vc.real) vc.radius = std::acosh(d);
    out.vertices.push_back(vc);
  }
  return out;
}

}  // namespace hmap
