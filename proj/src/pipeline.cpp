#include "hmap/pipeline.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "hmap/teich_opt.hpp"

namespace hmap {

namespace {

bool same_layout(const ComplexInput& a, const ComplexInput& b) {
  if (a.vertices != b.vertices || a.faces.size() != b.faces.size()) return false;
  for (std::size_t f = 0; f < a.faces.size(); ++f) {
    const auto& x = a.faces[f];
    const auto& y = b.faces[f];
    if (x.name != y.name || x.sides.size() != y.sides.size()) return false;
    for (std::size_t s = 0; s < x.sides.size(); ++s)
      if (x.sides[s].from != y.sides[s].from || x.sides[s].to != y.sides[s].to || x.sides[s].edge != y.sides[s].edge)
        return false;
  }
  return true;
}

std::shared_ptr<ProfileTable> parse_profile(const std::string& text) {
  std::vector<double> x, g;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("profile samples are written x:g");
    try {
      x.push_back(std::stod(item.substr(0, colon)));
      g.push_back(std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw InputError("bad profile sample '" + item + "'");
    }
  }
  return std::make_shared<ProfileTable>(x, g);
}

}  // namespace

std::optional<FixtureKind> match_fixture(const ComplexInput& input, int genus) {
  for (auto kind : {FixtureKind::Polygon, FixtureKind::CenteredPolygon, FixtureKind::Fan})
    if (same_layout(input, fixture_input(kind, genus))) return kind;
  return std::nullopt;
}

Realization initial_realization(const RunConfig& cfg) {
  const ComplexInput input = parse_mesh(cfg.mesh);
  auto mesh = std::make_shared<const MarkedComplex>(mark(load_complex(input)));
  const int genus = mesh->complex.genus;

  Realization real;
  bool developed = false;
  if (cfg.rep == "regular-4g") {
    const auto kind = match_fixture(input, genus);
    if (!kind)
      throw InputError("rep = regular-4g needs one of the fixture layouts written by 'hmap fixture'; "
                       "give a holonomy file for other meshes");
    real = realize_development(mesh, regular_development(*kind, mesh->complex, genus));
    developed = true;
  } else {
    HolonomyRep rep = parse_rep(cfg.rep);
    std::vector<Vec3> f(std::size_t(mesh->complex.num_vertices()), Vec3(0, 0, 1));
    real = make_realization(mesh, std::move(rep), std::move(f));
  }

  std::mt19937_64 rng(cfg.seed);
  if (cfg.start == "random" || (cfg.start == "auto" && !developed)) {
    real.f = random_positions(mesh->complex.num_vertices(), rng(), 0.5);
  } else if (cfg.start == "development" && !developed) {
    throw InputError("start = development needs rep = regular-4g");
  }
  if (cfg.perturb > 0) {
    std::normal_distribution<double> normal;
    const auto basis = basis_H1(real.rep);
    Eigen::VectorXd coeff(long(basis.size()));
    for (long b = 0; b < coeff.size(); ++b) coeff(b) = normal(rng);
    coeff.normalize();
    GeneratorCocycle sigma = GeneratorCocycle::zero(real.rep.num_generators());
    for (std::size_t b = 0; b < basis.size(); ++b) sigma += coeff(long(b)) * basis[b];
    set_rep(real, deform_rep(real.rep, sigma, cfg.perturb));
  }
  return real;
}

std::vector<double> canonical_weights(const Realization& real) {
  const auto& cx = real.complex();
  bool triangles = true;
  for (int f = 0; f < cx.num_faces(); ++f) triangles = triangles && cx.face_half_edges(f).size() == 3;
  std::vector<double> c = triangles ? canonical_weights_cot(real, corner_angles(real))
                                    : canonical_weights_dual(real, polar_dual(real));
  // Edges between cocircular neighbours are flat; their weight is zero up to rounding.
  double top = 0;
  for (double ce : c) top = std::max(top, std::abs(ce));
  for (double& ce : c)
    if (std::abs(ce) <= 1e-8 * top) ce = 0;
  return c;
}

EnergyVariant make_variant(const RunConfig& cfg, const Realization& real) {
  const auto& cx = real.complex();
  std::vector<double> c(std::size_t(cx.num_edges()), cfg.c_default);
  if (cfg.weights == "canonical-from-delaunay") {
    c = canonical_weights(real);
  } else if (cfg.weights != "unit") {
    std::istringstream is(cfg.weights);
    std::string item;
    while (std::getline(is, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw InputError("weights are written edge:value");
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string name = trim(item.substr(0, colon));
      int e = 0;
      while (e < cx.num_edges() && cx.edge_names[std::size_t(e)] != name) ++e;
      if (e == cx.num_edges()) throw InputError("weights: unknown edge '" + name + "'");
      double v = 0;
      try {
        v = std::stod(item.substr(colon + 1));
      } catch (const std::exception&) {
        throw InputError("weights: bad value for '" + name + "'");
      }
      if (!(v > 0)) throw DomainError("weights: edge '" + name + "' needs a positive weight");
      c[std::size_t(e)] = v;
    }
  }
  switch (parse_variant(cfg.variant)) {
    case VariantKind::Quadratic: return EnergyVariant::quadratic(c);
    case VariantKind::SinhHalfSquared: return EnergyVariant::sinh_half_squared(c);
    case VariantKind::Custom:
      if (cfg.profile.empty()) throw InputError("variant custom needs a profile");
      return EnergyVariant::custom(parse_profile(cfg.profile), c);
  }
  return EnergyVariant::quadratic(c);
}

std::vector<double> recovered_weights(const Realization& real, const DualRealization& dual,
                                      const EnergyVariant& variant) {
  const auto& cx = real.complex();
  const EnergyVariant unit = variant.with_weights(std::vector<double>(std::size_t(cx.num_edges()), 1.0));
  std::vector<double> out;
  for (int e = 0; e < cx.num_edges(); ++e) {
    const int h = cx.edge_half[std::size_t(e)];
    const Vec3 d = dual.dual_edge(cx, h);
    const double len = std::sqrt(std::max(0.0, mink_inner(d, d)));
    const double l = raw_edge_length(real, h);
    out.push_back(len / unit.w_prime(e, l));
  }
  return out;
}

}  // namespace hmap
