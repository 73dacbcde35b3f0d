#pragma once

// Weighted Delaunay certificates read off an equivariant dual surface, the
// polar dual of a given decomposition, and canonical edge weights.

#include <vector>

#include "hmap/dual_cocycle.hpp"
#include "hmap/harmonic.hpp"

namespace hmap {

struct VertexWeights {
  std::vector<double> delta;   // mean over corners of -<corner, f_v>
  std::vector<double> spread;  // max - min over the same corners
  double max_spread = 0;
  double min_delta = 0;
};

VertexWeights compute_vertex_weights(const Realization& real, const DualRealization& dual);

// As above, but throws NegativeWeightError or InconsistentWeightError.
VertexWeights vertex_weights(const Realization& real, const DualRealization& dual,
                             const Tolerances& tol = default_tolerances());

struct ConvexityReport {
  std::vector<double> margin;  // per half-edge; >= 0 when the far vertices lie beyond the support plane
  double min_margin = 0;
  int worst_half_edge = -1;
};

// For each half-edge h the support plane <x, corner[h]> = -1 of the face on
// its left is tested against the vertices f_k / delta_k of the face on its
// right other than the endpoints of h: margin = -1 - <corner[h], f_k / delta_k>.
ConvexityReport convexity_check(const Realization& real, const DualRealization& dual, const VertexWeights& weights);

// Corners solving <corner, f_v> = -1 for the vertices of each face lift (least
// squares for polygons). Equivariant by construction; tau is filled for checking.
DualRealization polar_dual(const Realization& real);

// c_e = |corner[h] - corner[rotate(h)]| / l_e. Throws NonSpacelikeError.
std::vector<double> canonical_weights_dual(const Realization& real, const DualRealization& dual);

struct CornerAngles {
  std::vector<double> angle;  // per half-edge: interior angle at origin(h) inside face(h)
};

// Hyperbolic law of cosines. Throws TriangleError for non-triangular faces or
// lengths violating the triangle inequality.
CornerAngles corner_angles(const Realization& real);

// The two half-angle arguments (A for face(h), B for face(twin h)) of edge e.
struct CotArguments {
  double a = 0;
  double b = 0;
};
std::vector<CotArguments> cot_arguments(const Realization& real, const CornerAngles& angles);

// c_e = (cot A + cot B) tanh(l_e / 2) / l_e. Throws CotangentPoleError.
std::vector<double> canonical_weights_cot(const Realization& real, const CornerAngles& angles);

struct FaceCircle {
  bool real = false;  // false when the corner is not time-like or its radius is imaginary
  Vec3 center = Vec3(0, 0, 1);
  double radius = 0;
};

struct VertexCircle {
  bool real = false;  // imaginary when delta < 1
  double radius = 0;
};

struct CircleData {
  std::vector<FaceCircle> faces;  // per face, at the corner face_first[f]
  std::vector<VertexCircle> vertices;
};

CircleData circle_data(const Realization& real, const DualRealization& dual, const VertexWeights& weights);

}  // namespace hmap
