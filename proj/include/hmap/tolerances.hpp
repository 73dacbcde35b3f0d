#pragma once

namespace hmap {

// All invariant-check thresholds used across modules.
struct Tolerances {
  double hyp = 1e-12;     // <x,x> = -1 on the hyperboloid
  double iso = 1e-10;     // m^T J m = J
  double rel = 1e-9;      // relator residual of a holonomy representation
  double coc = 1e-8;      // cocycle relator residual
  double inner = 1e-10;   // harmonic residual of the inner solve
  double outer = 1e-6;    // coboundary residual of the translation cocycle
  double delta = 1e-6;    // vertex-weight spread
  double convex = 1e-6;   // local convexity margin
  double ell_min = 1e-8;  // shortest admissible edge
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace hmap
