#include "hmap/harmonic.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace hmap {

Realization make_realization(std::shared_ptr<const MarkedComplex> mesh, HolonomyRep rep, std::vector<Vec3> f,
                             const Tolerances& tol) {
  if (int(f.size()) != mesh->complex.num_vertices())
    throw InputError("realization needs one position per vertex");
  for (std::size_t v = 0; v < f.size(); ++v)
    if (!on_hyperboloid(f[v], 1e3 * tol.hyp))
      throw DomainError("position of vertex " + mesh->complex.vertex_names[v] + " is not on the hyperboloid");
  if (rep.num_generators() != mesh->num_generators())
    throw InputError("representation has " + std::to_string(rep.num_generators()) + " generators, complex needs " +
                     std::to_string(mesh->num_generators()));
  validate_rep(rep, tol);
  Realization real;
  real.mesh = std::move(mesh);
  real.f = std::move(f);
  set_rep(real, std::move(rep));
  return real;
}

void set_rep(Realization& real, HolonomyRep rep) {
  real.rep = std::move(rep);
  const auto& labels = real.mesh->labels.label;
  real.transport.resize(labels.size());
  for (std::size_t h = 0; h < labels.size(); ++h) real.transport[h] = evaluate_word(real.rep, labels[h]);
}

double frame_norm(const Vec3& x, const Vec3& p) {
  const double n = mink_inner(x, p);
  return std::sqrt(std::max(0.0, mink_inner(x, x) + 2 * n * n));
}

double raw_edge_length(const Realization& real, int h) {
  return hyp_distance(real.f[std::size_t(real.complex().origin[std::size_t(h)])], real.far_end(h), 1e-9);
}

double edge_length(const Realization& real, int h, const Tolerances& tol) {
  const double l = raw_edge_length(real, h);
  if (!(l >= tol.ell_min))
    throw DegenerateEdgeError("edge " + real.complex().edge_names[std::size_t(real.complex().edge[std::size_t(h)])] +
                              " has length " + std::to_string(l));
  return l;
}

double dirichlet_energy(const Realization& real, const EnergyVariant& variant) {
  const auto& cx = real.complex();
  double e = 0;
  for (int edge = 0; edge < cx.num_edges(); ++edge)
    e += variant.w(edge, raw_edge_length(real, cx.edge_half[std::size_t(edge)]));
  return e;
}

namespace {

double k_of(const Realization& real, const EnergyVariant& variant, int h) {
  return variant.k(real.complex().edge[std::size_t(h)], raw_edge_length(real, h));
}

// sum_h k_h * far_end(h) over the half-edges leaving v, with v placed at x.
Vec3 pull(const Realization& real, const EnergyVariant& variant, int v, const Vec3& x) {
  const auto& cx = real.complex();
  Vec3 g = Vec3::Zero();
  for (int h : cx.out[std::size_t(v)]) {
    const int j = cx.dest(h);
    const Vec3 far = real.transport[std::size_t(h)] * (j == v ? x : real.f[std::size_t(j)]);
    const double l = hyp_distance(x, far, 1e-9);
    g += variant.k(cx.edge[std::size_t(h)], l) * far;
  }
  return g;
}

Vec3 tangent_part(const Vec3& x, const Vec3& p) { return x + mink_inner(x, p) * p; }

}  // namespace

std::vector<Vec3> harmonic_residual_vectors(const Realization& real, const EnergyVariant& variant) {
  const auto& cx = real.complex();
  std::vector<Vec3> r(std::size_t(cx.num_vertices()), Vec3::Zero());
  for (int v = 0; v < cx.num_vertices(); ++v)
    for (int h : cx.out[std::size_t(v)])
      r[std::size_t(v)] += k_of(real, variant, h) * mink_cross(real.f[std::size_t(v)], real.far_end(h));
  return r;
}

double harmonic_residual(const Realization& real, const EnergyVariant& variant) {
  const auto r = harmonic_residual_vectors(real, variant);
  double m = 0;
  for (std::size_t v = 0; v < r.size(); ++v) m = std::max(m, frame_norm(r[v], real.f[v]));
  return m;
}

double lagrange_multiplier(const Realization& real, const EnergyVariant& variant, int vertex) {
  const Vec3& fi = real.f[std::size_t(vertex)];
  Vec3 s = Vec3::Zero();
  for (int h : real.complex().out[std::size_t(vertex)]) s += k_of(real, variant, h) * (real.far_end(h) - fi);
  return -mink_inner(s, fi);
}

Vec3 tangential_defect(const Realization& real, const EnergyVariant& variant, int vertex) {
  const Vec3& fi = real.f[std::size_t(vertex)];
  Vec3 s = Vec3::Zero();
  for (int h : real.complex().out[std::size_t(vertex)]) s += k_of(real, variant, h) * (real.far_end(h) - fi);
  return s - lagrange_multiplier(real, variant, vertex) * fi;
}

namespace {

// Moves vertex v to the minimum of the energy along the geodesic from its
// position in direction u (unit tangent). Returns the step length.
double geodesic_line_search(Realization& real, const EnergyVariant& variant, int v, const Vec3& dir, double guess) {
  const Vec3 p = real.f[std::size_t(v)];
  // A short direction obtained by cancellation is far from tangent once scaled.
  Vec3 u = tangent_part(dir, p);
  u = tangent_part(u, p);
  const double un = mink_inner(u, u);
  if (!(un > 0)) return 0;
  u /= std::sqrt(un);
  auto point = [&](double s) { return Vec3(std::cosh(s) * p + std::sinh(s) * u); };
  auto slope = [&](double s) {
    const Vec3 x = point(s);
    const Vec3 dx = std::sinh(s) * p + std::cosh(s) * u;
    return -mink_inner(pull(real, variant, v, x), dx);
  };
  const double slope0 = slope(0);
  if (!(slope0 < 0)) return 0;
  double lo = 0, hi = guess, flo = slope0, fhi = slope(hi);
  for (int i = 0; i < 200 && fhi < 0; ++i) {
    lo = hi;
    flo = fhi;
    hi *= 2;
    fhi = slope(hi);
  }
  if (!(fhi >= 0)) throw ConvergenceError("line search could not bracket the minimum");
  // Illinois variant of regula falsi on the slope.
  double s = lo;
  int side = 0;
  for (int i = 0; i < 100; ++i) {
    s = (lo * fhi - hi * flo) / (fhi - flo);
    const double fs = slope(s);
    if (std::abs(fs) <= 1e-3 * std::abs(slope0) || hi - lo <= 1e-15 * (1 + hi)) break;
    if (fs < 0) {
      lo = s;
      flo = fs;
      if (side == -1) fhi /= 2;
      side = -1;
    } else {
      hi = s;
      fhi = fs;
      if (side == 1) flo /= 2;
      side = 1;
    }
  }
  real.f[std::size_t(v)] = project_hyperboloid(point(s));
  return s;
}

double max_residual(const Realization& real, const EnergyVariant& variant) { return harmonic_residual(real, variant); }

}  // namespace

SolveResult solve_harmonic(Realization init, const EnergyVariant& variant, const SolveOptions& opts) {
  SolveResult res{std::move(init), 0, 0, 0, {}};
  Realization& real = res.real;
  const auto& cx = real.complex();
  res.energy_history.push_back(dirichlet_energy(real, variant));
  res.residual = max_residual(real, variant);
  while (res.residual > opts.tol) {
    if (res.sweeps >= opts.max_sweeps)
    {
      char buf[96];
      std::snprintf(buf, sizeof buf, "harmonic solver: residual %.3e after %d sweeps", res.residual, res.sweeps);
      throw ConvergenceError(buf);
    }
    for (int v = 0; v < cx.num_vertices(); ++v) {
      for (int step = 0; step < opts.steps_per_vertex; ++step) {
        const Vec3 x = real.f[std::size_t(v)];
        const Vec3 d = tangent_part(pull(real, variant, v, x), x);
        const double dn = frame_norm(d, x);
        if (dn <= 0.1 * opts.tol) break;
        double ksum = 0;
        for (int h : cx.out[std::size_t(v)]) ksum += k_of(real, variant, h);
        geodesic_line_search(real, variant, v, d / dn, dn / std::max(ksum, 1e-300));
        ++res.steps;
      }
    }
    ++res.sweeps;
    res.energy_history.push_back(dirichlet_energy(real, variant));
    res.residual = max_residual(real, variant);
  }
  for (int h = 0; h < cx.num_half_edges(); ++h) {
    Tolerances tol;
    tol.ell_min = opts.ell_min;
    edge_length(real, h, tol);
  }
  return res;
}

std::vector<Vec3> random_positions(int count, std::uint64_t seed, double spread, const Vec3& center) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, spread);
  const Mat3 b = boost_from_origin(center);
  std::vector<Vec3> out;
  for (int i = 0; i < count; ++i) {
    const double a = normal(rng), c = normal(rng);
    const double r = std::hypot(a, c);
    const Vec3 local = r > 0 ? Vec3(std::sinh(r) * a / r, std::sinh(r) * c / r, std::cosh(r)) : Vec3(0, 0, 1);
    out.push_back(project_hyperboloid(Vec3(b * local)));
  }
  return out;
}

Realization conjugate(const Realization& real, const Mat3& h) {
  Realization out = real;
  for (auto& p : out.f) p = h * p;
  set_rep(out, conjugate(real.rep, h));
  return out;
}

Realization rebase(const Realization& real, std::shared_ptr<const MarkedComplex> mesh) {
  const auto& cx = mesh->complex;
  if (cx.num_half_edges() != real.complex().num_half_edges() || cx.origin != real.complex().origin ||
      cx.next != real.complex().next)
    throw InputError("rebase requires the same underlying complex");
  const auto& basis = mesh->basis;
  std::vector<Mat3> m(std::size_t(cx.num_vertices()), Mat3::Identity());
  for (int v : basis.vertex_order) {
    const int p = basis.vertex_parent[std::size_t(v)];
    if (p >= 0) m[std::size_t(v)] = m[std::size_t(cx.origin[std::size_t(p)])] * real.transport[std::size_t(p)];
  }
  auto moved = [&](int h) {
    return Mat3(m[std::size_t(cx.origin[std::size_t(h)])] * real.transport[std::size_t(h)] *
                isometry_inverse(m[std::size_t(cx.dest(h))]));
  };
  HolonomyRep rep;
  for (int h : mesh->labels.generator_half) rep.generators.push_back(moved(h));
  rep.relator = mesh->relator();
  std::vector<Vec3> f;
  for (int v = 0; v < cx.num_vertices(); ++v) f.push_back(project_hyperboloid(Vec3(m[std::size_t(v)] * real.f[std::size_t(v)])));
  return make_realization(std::move(mesh), std::move(rep), std::move(f));
}

}  // namespace hmap
