#include "hmap/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "hmap/delaunay_cert.hpp"

namespace hmap {

namespace {

// Polygon side k is glued to side k + 2 within each block of four.
std::string rim_edge(int side) { return "a" + std::to_string(2 * (side / 4) + side % 2); }

constexpr int kCentre = -1;

// Polygon corner (or kCentre) at each side of each face, in input order.
std::vector<int> corner_layout(FixtureKind kind, int genus) {
  const int n = 4 * genus;
  std::vector<int> out;
  switch (kind) {
    case FixtureKind::Polygon:
      for (int k = 0; k < n; ++k) out.push_back(k);
      break;
    case FixtureKind::CenteredPolygon:
      for (int k = 0; k < n; ++k) out.insert(out.end(), {kCentre, k, (k + 1) % n});
      break;
    case FixtureKind::Fan:
      for (int k = 1; k + 1 < n; ++k) out.insert(out.end(), {0, k, k + 1});
      break;
  }
  return out;
}

}  // namespace

ComplexInput fixture_input(FixtureKind kind, int genus) {
  if (genus < 2) throw GenusError("fixtures need genus >= 2");
  const int n = 4 * genus;
  ComplexInput in;
  switch (kind) {
    case FixtureKind::Polygon: {
      in.vertices = {"p"};
      FaceInput f{"F", {}};
      for (int k = 0; k < n; ++k) f.sides.push_back({"p", "p", rim_edge(k)});
      in.faces.push_back(f);
      break;
    }
    case FixtureKind::CenteredPolygon: {
      in.vertices = {"c", "p"};
      for (int k = 0; k < n; ++k)
        in.faces.push_back({"t" + std::to_string(k),
                            {{"c", "p", "s" + std::to_string(k)},
                             {"p", "p", rim_edge(k)},
                             {"p", "c", "s" + std::to_string((k + 1) % n)}}});
      break;
    }
    case FixtureKind::Fan: {
      in.vertices = {"p"};
      auto diagonal = [&](int k) {
        if (k == 1) return rim_edge(0);
        if (k == n - 1) return rim_edge(n - 1);
        return "d" + std::to_string(k);
      };
      for (int k = 1; k + 1 < n; ++k)
        in.faces.push_back({"t" + std::to_string(k),
                            {{"p", "p", diagonal(k)}, {"p", "p", rim_edge(k)}, {"p", "p", diagonal(k + 1)}}});
      break;
    }
  }
  return in;
}

Development regular_development(FixtureKind kind, const CellComplex& complex, int genus) {
  const auto decks = regular_corner_decks(genus);
  const Vec3 p0 = regular_polygon_corners(genus)[0];
  Development dev;
  for (const auto& name : complex.vertex_names) dev.base.push_back(name == "c" ? Vec3(0, 0, 1) : p0);
  for (int corner : corner_layout(kind, genus))
    dev.deck.push_back(corner == kCentre ? Mat3::Identity() : decks[std::size_t(corner)]);
  if (int(dev.deck.size()) != complex.num_half_edges())
    throw InputError("development does not match the complex");
  return dev;
}

Realization realize_development(std::shared_ptr<const MarkedComplex> mesh, const Development& dev) {
  const auto& cx = mesh->complex;
  const auto& basis = mesh->basis;
  std::vector<Mat3> label(std::size_t(cx.num_half_edges()));
  for (int h = 0; h < cx.num_half_edges(); ++h)
    label[std::size_t(h)] = isometry_inverse(dev.deck[std::size_t(h)]) * dev.deck[std::size_t(cx.next[std::size_t(h)])];

  std::vector<Mat3> shift(std::size_t(cx.num_vertices()), Mat3::Identity());
  for (int v : basis.vertex_order) {
    const int p = basis.vertex_parent[std::size_t(v)];
    if (p >= 0) shift[std::size_t(v)] = shift[std::size_t(cx.origin[std::size_t(p)])] * label[std::size_t(p)];
  }
  auto relabel = [&](int h) {
    return Mat3(shift[std::size_t(cx.origin[std::size_t(h)])] * label[std::size_t(h)] *
                isometry_inverse(shift[std::size_t(cx.dest(h))]));
  };

  HolonomyRep rep;
  for (int h : mesh->labels.generator_half) rep.generators.push_back(relabel(h));
  rep.relator = mesh->relator();
  for (int h = 0; h < cx.num_half_edges(); ++h) {
    const Mat3 expected = relabel(h);
    const double err = (evaluate_word(rep, mesh->labels.label[std::size_t(h)]) - expected).cwiseAbs().maxCoeff();
    if (!(err <= 1e-8 * std::max(1.0, expected.cwiseAbs().maxCoeff())))
      throw SolverError("development is inconsistent with the holonomy labels");
  }
  rep = renormalize_relator(rep);
  std::vector<Vec3> f;
  for (int v = 0; v < cx.num_vertices(); ++v)
    f.push_back(project_hyperboloid(Vec3(shift[std::size_t(v)] * dev.base[std::size_t(v)])));
  return make_realization(std::move(mesh), std::move(rep), std::move(f));
}

Realization regular_fixture(FixtureKind kind, int genus, int base_vertex, int base_face) {
  auto mesh = std::make_shared<const MarkedComplex>(mark(load_complex(fixture_input(kind, genus)), base_vertex, base_face));
  const auto dev = regular_development(kind, mesh->complex, genus);
  return realize_development(std::move(mesh), dev);
}

std::vector<double> delaunay_excess(const Realization& real) {
  std::vector<double> out;
  for (const auto& a : cot_arguments(real, corner_angles(real))) out.push_back(a.a + a.b - std::numbers::pi);
  return out;
}

}  // namespace hmap
