#include "hmap/dual_cocycle.hpp"

namespace hmap {

Vec3 edge_dual_vector(const Realization& real, const EnergyVariant& variant, int h) {
  const auto& cx = real.complex();
  const Vec3& fi = real.f[std::size_t(cx.origin[std::size_t(h)])];
  const Vec3 fj = real.far_end(h);
  const double k = variant.k(cx.edge[std::size_t(h)], hyp_distance(fi, fj, 1e-9));
  return k * mink_cross(fi, fj);
}

DualRealization integrate_dual(const Realization& real, const EnergyVariant& variant) {
  const auto& mesh = *real.mesh;
  const auto& cx = mesh.complex;
  const auto& basis = mesh.basis;
  const auto nh = std::size_t(cx.num_half_edges());

  DualRealization dual;
  dual.edge_vector.resize(nh);
  for (std::size_t h = 0; h < nh; ++h) dual.edge_vector[h] = edge_dual_vector(real, variant, int(h));

  dual.corner.assign(nh, Vec3::Zero());
  dual.closure.assign(std::size_t(cx.num_vertices()), Vec3::Zero());
  for (int v : basis.vertex_order) {
    const int p = basis.vertex_parent[std::size_t(v)];
    const int start = p < 0 ? cx.out[std::size_t(v)].front() : cx.next[std::size_t(p)];
    if (p >= 0) dual.corner[std::size_t(start)] = dual.corner[std::size_t(p)];
    int h = start;
    Vec3 sum = Vec3::Zero();
    for (std::size_t step = 0; step < cx.out[std::size_t(v)].size(); ++step) {
      const int r = cx.rotate(h);
      sum += dual.edge_vector[std::size_t(h)];
      if (r != start) dual.corner[std::size_t(r)] = dual.corner[std::size_t(h)] - dual.edge_vector[std::size_t(h)];
      h = r;
    }
    dual.closure[std::size_t(v)] = sum;
    dual.max_closure = std::max(dual.max_closure, frame_norm(sum, real.f[std::size_t(v)]));
  }

  const Vec3 anchor = dual.corner[std::size_t(cx.face_first[std::size_t(basis.base_face)])];
  for (auto& c : dual.corner) c -= anchor;

  const auto& gens = mesh.labels.generator_half;
  dual.tau = GeneratorCocycle::zero(int(gens.size()));
  for (std::size_t r = 0; r < gens.size(); ++r) {
    const auto h = std::size_t(gens[r]);
    dual.tau.values[r] = dual.corner[h] - real.transport[h] * dual.corner[std::size_t(cx.next[h])];
  }
  for (std::size_t h = 0; h < nh; ++h) {
    const Vec3 t = dual.corner[h] - real.transport[h] * dual.corner[std::size_t(cx.next[h])];
    const Vec3 expected = extend_cocycle(real.rep, dual.tau, mesh.labels.label[h]);
    dual.consistency = std::max(dual.consistency, (t - expected).norm());
  }
  return dual;
}

GeneratorCocycle tau_from_dual(const DualRealization& dual, double max_closure) {
  if (!(dual.max_closure <= max_closure))
    throw ClosureError("dual surface does not close: residual " + std::to_string(dual.max_closure));
  return dual.tau;
}

DualRealization translate_dual(const DualRealization& dual, const HolonomyRep& rep, const Vec3& v) {
  DualRealization out = dual;
  for (auto& c : out.corner) c += v;
  out.tau += coboundary_cocycle(rep, v);
  return out;
}

TauCertificate certify_tau(const Realization& real, const DualRealization& dual) {
  const Mat3 b = boost_from_origin(real.f[std::size_t(real.mesh->basis.base_vertex)]);
  const Mat3 binv = isometry_inverse(b);
  GeneratorCocycle moved = dual.tau;
  for (auto& v : moved.values) v = binv * v;
  const auto proj = coboundary_project(conjugate(real.rep, binv), moved);
  TauCertificate cert;
  cert.residual = proj.residual;
  cert.s0 = b * proj.s0;
  cert.reduced = proj.reduced;
  for (auto& v : cert.reduced.values) v = b * v;
  return cert;
}

DualRealization equivariant_dual(const Realization& real, const DualRealization& dual) {
  return translate_dual(dual, real.rep, -certify_tau(real, dual).s0);
}

double pairing_derivative(const Realization& real, const DualRealization& dual, const GeneratorCocycle& sigma) {
  const auto& mesh = *real.mesh;
  double d = 0;
  for (int h : mesh.complex.edge_half) {
    const auto& word = mesh.labels.label[std::size_t(h)];
    if (word.empty()) continue;
    d += mink_inner(extend_cocycle(real.rep, sigma, word), dual.edge_vector[std::size_t(h)]);
  }
  return d;
}

}  // namespace hmap
