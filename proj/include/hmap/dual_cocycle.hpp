#pragma once

// The dual surface of a harmonic realization and its translation cocycle.
//
// Faces are not given positions directly. corner[h] is the position of the
// lift of face(h) that has the representative of origin(h) as a corner, at the
// corner where h leaves that vertex. Two rules tie the corners together:
//   corner[h] - corner[rotate(h)] = a_h                (around a vertex)
//   corner[h] = rho(g_h) corner[next(h)] + t_{g_h}      (along a face)
// where a_h = k_h f_i x far_end(h) and t is the translation cocycle.

#include <vector>

#include "hmap/energy.hpp"
#include "hmap/fuchsian.hpp"
#include "hmap/harmonic.hpp"

namespace hmap {

struct DualRealization {
  std::vector<Vec3> corner;       // per half-edge
  std::vector<Vec3> edge_vector;  // a_h per half-edge
  std::vector<Vec3> closure;      // per vertex: sum of a_h around it
  GeneratorCocycle tau;           // translation part on generators (eta-images)
  double max_closure = 0;
  double consistency = 0;         // face rule on non-generator half-edges vs extend_cocycle(tau)

  // corner[h] - corner[rotate(h)]; equals edge_vector[h] by construction.
  Vec3 dual_edge(const CellComplex& c, int h) const {
    return corner[std::size_t(h)] - corner[std::size_t(c.rotate(h))];
  }
};

// a_h = k_h f_i x far_end(h); |a_h| = w'(l_h).
Vec3 edge_dual_vector(const Realization& real, const EnergyVariant& variant, int h);

// Integrates corners from the primal tree, anchoring corner face_first[base_face]
// at the origin. Non-harmonic input is allowed; closure then equals the
// harmonic residual vectors.
DualRealization integrate_dual(const Realization& real, const EnergyVariant& variant);

// The cocycle part of a dual; throws ClosureError if the closure exceeds max_closure.
GeneratorCocycle tau_from_dual(const DualRealization& dual, double max_closure);

// Adds v to every corner; tau changes by the coboundary of v.
DualRealization translate_dual(const DualRealization& dual, const HolonomyRep& rep, const Vec3& v);

struct TauCertificate {
  double residual = 0;  // coboundary-projection residual in the frame centred at f_{base vertex}
  Vec3 s0 = Vec3::Zero();
  GeneratorCocycle reduced;
};

// Conjugation-invariant coboundary test of tau: the projection is done after
// moving the base vertex of the marking to e0 (the remaining freedom is a
// Euclidean rotation of coordinates).
TauCertificate certify_tau(const Realization& real, const DualRealization& dual);

// Translates the dual by -s0 so that tau is the reduced (ideally zero) cocycle.
DualRealization equivariant_dual(const Realization& real, const DualRealization& dual);

// d/dt of the energy of the harmonic map when rho moves along sigma:
// sum over edges of <sigma_{g_h}, a_h>.
double pairing_derivative(const Realization& real, const DualRealization& dual, const GeneratorCocycle& sigma);

}  // namespace hmap
