#pragma once

// Klein-model picture of one fundamental domain: the stars of the vertex
// representatives as solid segments, the dual edges dashed, the boundary
// circle, and the vertex weights when a dual is supplied.

#include <string>

#include "hmap/delaunay_cert.hpp"
#include "hmap/dual_cocycle.hpp"
#include "hmap/harmonic.hpp"

namespace hmap {

struct RenderOptions {
  int size = 800;  // pixels of the square canvas
  double margin = 20;
};

// Points are projected with klein() from minkowski.hpp.
std::string render_svg(const Realization& real, const DualRealization* dual = nullptr,
                       const VertexWeights* weights = nullptr, const RenderOptions& opts = {});

}  // namespace hmap
