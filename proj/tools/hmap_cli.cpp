// hmap: harmonic maps into hyperbolic surfaces from the command line.
//
//   hmap inner CONFIG       harmonic map at fixed holonomy
//   hmap optimize CONFIG    energy minimisation over Teichmueller space
//   hmap render CONFIG      SVG of the state written by inner/optimize
//   hmap fixture KIND DIR   write a shipped mesh and its regular holonomy
//
// Exit codes: 0 success, 2 solver error, 3 input error.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "hmap/errors.hpp"
#include "hmap/io.hpp"
#include "hmap/pipeline.hpp"
#include "hmap/render.hpp"

using namespace hmap;

namespace {

struct Overrides {
  int max_iter = -1;
  long long seed = -1;
  bool verbose = false;
};

RunConfig load(const std::string& path, const Overrides& o) {
  RunConfig cfg = parse_config(path);
  if (o.max_iter >= 0) cfg.max_iter = o.max_iter;
  if (o.seed >= 0) cfg.seed = std::uint64_t(o.seed);
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

void cmd_inner(const RunConfig& cfg) {
  Realization real = initial_realization(cfg);
  const EnergyVariant variant = make_variant(cfg, real);
  SolveOptions opts;
  opts.tol = cfg.tol_inner;
  if (cfg.max_iter > 0) opts.max_sweeps = cfg.max_iter;
  const SolveResult res = solve_harmonic(std::move(real), variant, opts);
  emit(cfg.out_report, inner_report(res.real, variant, res));
  if (!cfg.out_state.empty()) write_file(cfg.out_state, format_state(res.real, variant));
}

void cmd_optimize(const RunConfig& cfg, bool verbose) {
  Realization real = initial_realization(cfg);
  const EnergyVariant variant = make_variant(cfg, real);
  OptimizeOptions opts;
  opts.tol_outer = cfg.tol_outer;
  opts.tol_inner = cfg.tol_inner;
  opts.tol_inner_final = std::min(opts.tol_inner_final, cfg.tol_inner);
  if (cfg.max_iter > 0) opts.max_outer = cfg.max_iter;
  std::function<void(const OuterLogEntry&)> progress;
  if (verbose) progress = [](const OuterLogEntry& e) { std::cerr << format_log_entry(e) << "\n"; };
  const TeichState st = optimize_metric(std::move(real), variant, opts, progress);

  const VertexWeights weights = compute_vertex_weights(st.real, st.dual);
  const ConvexityReport convexity = convexity_check(st.real, st.dual, weights);
  OptimizeSummary summary;
  summary.state = &st;
  summary.weights = &weights;
  summary.convexity = &convexity;
  summary.recovered = recovered_weights(st.real, st.dual, variant);
  emit(cfg.out_report, optimize_report(variant, summary));
  if (!cfg.out_state.empty()) write_file(cfg.out_state, format_state(st.real, variant));
}

void cmd_render(const RunConfig& cfg, const std::string& state_override) {
  const std::string state_path = state_override.empty() ? cfg.out_state : state_override;
  if (state_path.empty()) throw InputError("render needs out.state in the config or --state");
  const std::string text = read_file(state_path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw InputError("state file " + state_path + " is empty");

  auto mesh = std::make_shared<const MarkedComplex>(mark(load_complex(parse_mesh(cfg.mesh))));
  SolvedState st = parse_state_text(text, mesh->complex);
  Realization real = make_realization(mesh, std::move(st.rep), std::move(st.positions));
  RunConfig vcfg = cfg;
  if (!st.variant.empty()) vcfg.variant = st.variant;
  vcfg.weights = "unit";
  const EnergyVariant variant = make_variant(vcfg, real).with_weights(st.weights);

  std::string svg;
  try {
    const DualRealization dual = equivariant_dual(real, integrate_dual(real, variant));
    const VertexWeights weights = compute_vertex_weights(real, dual);
    svg = render_svg(real, &dual, &weights);
  } catch (const SolverError&) {
    svg = render_svg(real);
  }
  if (cfg.out_svg.empty())
    std::cout << svg;
  else
    write_file(cfg.out_svg, svg);
}

void cmd_fixture(const std::string& kind_name, int genus, const std::string& dir) {
  FixtureKind kind;
  if (kind_name == "polygon")
    kind = FixtureKind::Polygon;
  else if (kind_name == "centered")
    kind = FixtureKind::CenteredPolygon;
  else if (kind_name == "fan")
    kind = FixtureKind::Fan;
  else
    throw InputError("unknown fixture '" + kind_name + "' (polygon, centered, fan)");
  std::filesystem::create_directories(dir);
  const Realization real = regular_fixture(kind, genus);
  const std::string stem = (std::filesystem::path(dir) / kind_name).string();
  write_file(stem + ".mesh", format_mesh(fixture_input(kind, genus)));
  write_file(stem + ".rep", format_rep(real.rep));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete harmonic maps into closed hyperbolic surfaces"};
  app.require_subcommand(1);
  Overrides o;
  std::string config, state_override, fixture_kind, fixture_dir;
  int genus = 2;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config, "configuration file")->required();
    sub->add_option("--max-iter", o.max_iter, "override max.iter");
    sub->add_option("--seed", o.seed, "override seed");
  };
  auto* inner = app.add_subcommand("inner", "harmonic map at fixed holonomy");
  add_common(inner);
  auto* optimize = app.add_subcommand("optimize", "minimise the energy over Teichmueller space");
  add_common(optimize);
  optimize->add_flag("-v,--verbose", o.verbose, "print the trajectory to standard error");
  auto* render = app.add_subcommand("render", "SVG of a solved state");
  add_common(render);
  render->add_option("--state", state_override, "state file instead of out.state");
  auto* fixture = app.add_subcommand("fixture", "write a fixture mesh and its regular holonomy");
  fixture->add_option("kind", fixture_kind, "polygon, centered or fan")->required();
  fixture->add_option("dir", fixture_dir, "output directory")->required();
  fixture->add_option("--genus", genus, "genus of the surface")->check(CLI::Range(2, 64));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fixture) {
      cmd_fixture(fixture_kind, genus, fixture_dir);
      return 0;
    }
    const RunConfig cfg = load(config, o);
    if (*inner) cmd_inner(cfg);
    if (*optimize) cmd_optimize(cfg, o.verbose);
    if (*render) cmd_render(cfg, state_override);
  } catch (const InputError& e) {
    std::cerr << "hmap: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    std::cerr << "hmap: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hmap: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
