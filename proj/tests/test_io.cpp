#include <doctest.h>

#include <regex>

#include "hmap/errors.hpp"
#include "hmap/io.hpp"
#include "hmap/pipeline.hpp"
#include "hmap/render.hpp"
#include "hmap/teich_opt.hpp"

using namespace hmap;

namespace {

const std::string data_dir = HMAP_DATA_DIR;

int count(const std::string& text, const std::string& what) {
  int n = 0;
  for (auto p = text.find(what); p != std::string::npos; p = text.find(what, p + 1)) ++n;
  return n;
}

std::string trailer_value(const std::string& report, const std::string& key) {
  std::smatch m;
  const std::regex re("\n" + key + "=([^\n]*)\n");
  return std::regex_search(report, m, re) ? m[1].str() : "";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("shipped meshes") {
  const CellComplex c = load_complex(parse_mesh(data_dir + "/octagon_center.mesh"));
  CHECK(c.genus == 2);
  CHECK(c.num_vertices() == 2);
  CHECK(c.num_edges() == 12);
  CHECK(c.num_faces() == 8);
  CHECK(match_fixture(parse_mesh(data_dir + "/octagon_center.mesh"), 2) == FixtureKind::CenteredPolygon);
  CHECK(match_fixture(parse_mesh(data_dir + "/fan.mesh"), 2) == FixtureKind::Fan);
  CHECK_FALSE(match_fixture(parse_mesh(data_dir + "/fan.mesh"), 3).has_value());
}

TEST_CASE("mesh round trip") {
  const ComplexInput in = fixture_input(FixtureKind::Fan);
  const ComplexInput back = parse_mesh_text(format_mesh(in));
  CHECK(format_mesh(back) == format_mesh(in));
  CHECK(match_fixture(back, 2) == FixtureKind::Fan);
}

TEST_CASE("mesh errors carry locations") {
  const std::string head = "surface-complex v1\nvertex p\n";
  try {
    parse_mesh_text(head + "face t : p-p#a, p-p#b, p-p#a\n# note\nface t : p-p#b, p-p#c, p-p#c\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(std::string(e.what()).find("duplicate face") != std::string::npos);
  }
  try {
    parse_mesh_text(head + "face t : p-q#a\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
  }
  CHECK_THROWS_AS(parse_mesh_text("surface-complex v2\n"), ParseError);
  CHECK_THROWS_AS(parse_mesh_text(head), ParseError);
  CHECK_THROWS_AS(parse_mesh(data_dir + "/missing.mesh"), InputError);
}

TEST_CASE("holonomy round trip") {
  const HolonomyRep rep = parse_rep(data_dir + "/fan.rep");
  CHECK(rep.num_generators() == 4);
  CHECK(relator_residual(rep) <= 1e-12);
  const HolonomyRep back = parse_rep_text(format_rep(rep));
  CHECK(back.relator == rep.relator);
  for (int k = 0; k < 4; ++k) CHECK(back.generators[std::size_t(k)] == rep.generators[std::size_t(k)]);

  HolonomyRep bent = rep;
  bent.generators[1] = bent.generators[1] * boost_x(0.01);
  const std::string text = format_rep(bent);
  try {
    parse_rep_text(text);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("relator") != std::string::npos);
  }
}

TEST_CASE("configs") {
  const RunConfig cfg = parse_config_text(
      "mesh = m.mesh\nweights = s0:2, a1:0.5\ntol.inner = 1e-9\nseed = 4\nstart = random\nout.report = out/r.txt\n",
      "/base");
  CHECK(cfg.mesh == "/base/m.mesh");
  CHECK(cfg.out_report == "/base/out/r.txt");
  CHECK(cfg.rep == "regular-4g");
  CHECK(cfg.tol_inner == 1e-9);
  CHECK(cfg.seed == 4);
  CHECK(cfg.start == "random");
  CHECK(parse_config_text("mesh = /abs.mesh\n", "/base").mesh == "/abs.mesh");

  CHECK_THROWS_AS(parse_config_text("mesh = a\nmesh = b\n"), ParseError);
  CHECK_THROWS_AS(parse_config_text("mesh = a\ncolour = red\n"), ParseError);
  CHECK_THROWS_AS(parse_config_text("mesh = a\ntol.inner = -1\n"), ParseError);
  CHECK_THROWS_AS(parse_config_text("mesh = a\nvariant = cubic\n"), ParseError);
  CHECK_THROWS_AS(parse_config_text("seed = 1\n"), ParseError);
  try {
    parse_config_text("mesh = a\n\nseed = x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("weights from a config") {
  RunConfig cfg;
  cfg.mesh = data_dir + "/octagon_center.mesh";
  const Realization real = initial_realization(cfg);
  const auto& cx = real.complex();
  cfg.weights = "s0:2, a1:0.5";
  cfg.c_default = 1.5;
  const EnergyVariant v = make_variant(cfg, real);
  for (int e = 0; e < cx.num_edges(); ++e) {
    const std::string& name = cx.edge_names[std::size_t(e)];
    CHECK(v.weights()[std::size_t(e)] == (name == "s0" ? 2.0 : name == "a1" ? 0.5 : 1.5));
  }
  cfg.weights = "s9:1";
  CHECK_THROWS_AS(make_variant(cfg, real), InputError);
  cfg.weights = "s0:-1";
  CHECK_THROWS_AS(make_variant(cfg, real), InputError);
  cfg.weights = "canonical-from-delaunay";
  CHECK(make_variant(cfg, real).weights() == canonical_weights(real));

  RunConfig fan;
  fan.mesh = data_dir + "/fan.mesh";
  fan.rep = data_dir + "/fan.rep";
  fan.start = "development";
  CHECK_THROWS_AS(initial_realization(fan), InputError);
}

TEST_CASE("seeded starts are reproducible") {
  RunConfig cfg;
  cfg.mesh = data_dir + "/octagon_center.mesh";
  cfg.start = "random";
  cfg.perturb = 0.1;
  cfg.seed = 9;
  const Realization a = initial_realization(cfg), b = initial_realization(cfg);
  CHECK(a.f == b.f);
  CHECK(a.rep.generators == b.rep.generators);
  cfg.seed = 10;
  CHECK(initial_realization(cfg).f != a.f);
}

TEST_CASE("state round trip and reports") {
  RunConfig cfg;
  cfg.mesh = data_dir + "/octagon_center.mesh";
  const Realization real = initial_realization(cfg);
  const EnergyVariant v = make_variant(cfg, real);
  const SolveResult res = solve_harmonic(real, v);

  const SolvedState st = parse_state_text(format_state(res.real, v), real.complex());
  CHECK(st.variant == "quadratic");
  CHECK(st.weights == v.weights());
  for (std::size_t i = 0; i < st.positions.size(); ++i) CHECK((st.positions[i] - res.real.f[i]).norm() == 0);
  CHECK_THROWS_AS(parse_state_text("state v1\n", real.complex()), ParseError);

  const std::string report = inner_report(res.real, v, res);
  CHECK(std::stod(trailer_value(report, "energy")) == doctest::Approx(res.energy_history.back()));
  CHECK(std::stod(trailer_value(report, "residual.inner")) <= 1e-10);
  CHECK(trailer_value(report, "sweeps") == std::to_string(res.sweeps));

  const TeichState ts = optimize_metric(res.real, v);
  const VertexWeights w = compute_vertex_weights(ts.real, ts.dual);
  const ConvexityReport cr = convexity_check(ts.real, ts.dual, w);
  OptimizeSummary s{&ts, &w, &cr, recovered_weights(ts.real, ts.dual, v)};
  const std::string opt = optimize_report(v, s);
  CHECK(trailer_value(opt, "certified") == "true");
  for (const char* key : {"energy", "residual.inner", "residual.tau", "delta.spread.max", "convexity.margin.min",
                          "iterations"})
    CHECK_FALSE(trailer_value(opt, key).empty());

  const std::string svg = render_svg(ts.real, &ts.dual, &w);
  CHECK(svg == render_svg(ts.real, &ts.dual, &w));
  CHECK(count(svg, "stroke=\"#1f4e9a\"") == 12);
  CHECK(count(svg, "stroke-dasharray") == 12);
  CHECK(svg.find("delta=") != std::string::npos);
  CHECK(count(render_svg(ts.real), "<line") == 12);
}

}  // TEST_SUITE
