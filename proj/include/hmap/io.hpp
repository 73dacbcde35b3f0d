#pragma once

// Text formats: surface complexes, holonomy representations, run
// configurations, solved states and reports.
//
//   surface-complex v1
//   vertex c
//   face t0 : c-p#s0, p-p#a0, p-c#s1
//
// A '#' that follows a token directly tags a side with its edge; a '#' at the
// start of a line or after white space opens a comment, and so does "##"
// anywhere.

#include <cstdint>
#include <string>
#include <vector>

#include "hmap/complex.hpp"
#include "hmap/delaunay_cert.hpp"
#include "hmap/energy.hpp"
#include "hmap/fuchsian.hpp"
#include "hmap/harmonic.hpp"
#include "hmap/teich_opt.hpp"
#include "hmap/tolerances.hpp"

namespace hmap {

std::string read_file(const std::string& path);  // InputError if unreadable
void write_file(const std::string& path, const std::string& text);

// Throws ParseError with the line and column of the offending token.
ComplexInput parse_mesh_text(const std::string& text);
ComplexInput parse_mesh(const std::string& path);
std::string format_mesh(const ComplexInput& input);

// "holonomy v1", then "gen k" and three rows per generator, then "relator w".
// Throws ParseError("relator ...") when the relator residual exceeds tol.rel.
HolonomyRep parse_rep_text(const std::string& text, const Tolerances& tol = default_tolerances());
HolonomyRep parse_rep(const std::string& path, const Tolerances& tol = default_tolerances());
std::string format_rep(const HolonomyRep& rep);

struct RunConfig {
  std::string mesh;
  std::string rep = "regular-4g";      // or the path of a holonomy file
  std::string weights = "unit";        // unit | canonical-from-delaunay | list of edge:value
  std::string variant = "quadratic";
  std::string profile;                 // custom variant: list of x:g samples
  double c_default = 1.0;
  double tol_inner = 1e-10;
  double tol_outer = 1e-6;
  std::uint64_t seed = 0;
  std::string start = "auto";          // auto | development | random
  double perturb = 0;                  // size of a random step in Teichmueller space
  int max_iter = 0;                    // inner sweeps (inner) or outer steps (optimize); 0 = default
  std::string out_report;
  std::string out_svg;
  std::string out_state;
};

// Relative paths are resolved against base_dir.
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = "");
RunConfig parse_config(const std::string& path);

struct SolvedState {
  HolonomyRep rep;
  std::vector<Vec3> positions;
  std::vector<double> weights;
  std::string variant;
};

std::string format_state(const Realization& real, const EnergyVariant& variant);
// Vertex and edge names are resolved against the complex.
SolvedState parse_state_text(const std::string& text, const CellComplex& complex);

// Human-readable sections followed by a "key=value" trailer.
std::string inner_report(const Realization& real, const EnergyVariant& variant, const SolveResult& res);

struct OptimizeSummary {
  const TeichState* state = nullptr;
  const VertexWeights* weights = nullptr;
  const ConvexityReport* convexity = nullptr;
  std::vector<double> recovered;  // canonical weights recovered from the dual, per edge
};
std::string optimize_report(const EnergyVariant& variant, const OptimizeSummary& s);

}  // namespace hmap
