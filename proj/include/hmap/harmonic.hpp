#pragma once

// Equivariant realizations of a marked complex in the hyperboloid and the
// discrete harmonic map problem at fixed holonomy.

#include <cstdint>
#include <memory>
#include <vector>

#include "hmap/complex.hpp"
#include "hmap/energy.hpp"
#include "hmap/fuchsian.hpp"
#include "hmap/minkowski.hpp"
#include "hmap/tolerances.hpp"

namespace hmap {

// One representative position per vertex. The lift of half-edge h = (i -> j)
// runs from f_i to transport[h] * f_j, where transport[h] = rho(label_h).
struct Realization {
  std::shared_ptr<const MarkedComplex> mesh;
  HolonomyRep rep;
  std::vector<Vec3> f;
  std::vector<Mat3> transport;

  const CellComplex& complex() const { return mesh->complex; }
  // transport[h] * f[dest(h)]
  Vec3 far_end(int h) const { return transport[std::size_t(h)] * f[std::size_t(complex().dest(h))]; }
};

// Throws DomainError if a position is off the hyperboloid or the rep is invalid.
Realization make_realization(std::shared_ptr<const MarkedComplex> mesh, HolonomyRep rep, std::vector<Vec3> f,
                             const Tolerances& tol = default_tolerances());

// Recomputes transports after rep changes.
void set_rep(Realization& real, HolonomyRep rep);

// Positive-definite norm sqrt(<x,x> + 2<x,p>^2) of the frame at p; equals the
// Minkowski norm on vectors tangent at p.
double frame_norm(const Vec3& x, const Vec3& p);

// Length without the degeneracy check.
double raw_edge_length(const Realization& real, int h);
// Throws DegenerateEdgeError below tol.ell_min.
double edge_length(const Realization& real, int h, const Tolerances& tol = default_tolerances());

double dirichlet_energy(const Realization& real, const EnergyVariant& variant);

// r_i = sum_{h out of i} k_h f_i x far_end(h).
std::vector<Vec3> harmonic_residual_vectors(const Realization& real, const EnergyVariant& variant);
double harmonic_residual(const Realization& real, const EnergyVariant& variant);

// mu_i = -< sum_h k_h (far_end(h) - f_i), f_i >.
double lagrange_multiplier(const Realization& real, const EnergyVariant& variant, int vertex);

// sum_h k_h (far_end(h) - f_i) - mu_i f_i; tangent at f_i and zero exactly at
// harmonic points.
Vec3 tangential_defect(const Realization& real, const EnergyVariant& variant, int vertex);

struct SolveOptions {
  double tol = 1e-10;
  int max_sweeps = 10000;
  int steps_per_vertex = 5;
  double ell_min = 1e-8;
};

struct SolveResult {
  Realization real;
  int sweeps = 0;
  int steps = 0;
  double residual = 0;
  std::vector<double> energy_history;  // before the first sweep and after each sweep
};

// Gauss-Seidel over vertices: each vertex moves along the geodesic in the
// direction of its tangential force to the exact minimum of the energy on that
// geodesic. Throws ConvergenceError when max_sweeps is exhausted and
// DegenerateEdgeError when the result has an edge shorter than ell_min.
SolveResult solve_harmonic(Realization init, const EnergyVariant& variant, const SolveOptions& opts = {});

// Distinct pseudo-random positions near `center`, reproducible from the seed.
std::vector<Vec3> random_positions(int count, std::uint64_t seed, double spread, const Vec3& center = Vec3(0, 0, 1));

// Conjugation gauge: rep -> h rep h^{-1}, f -> h f.
Realization conjugate(const Realization& real, const Mat3& h);

// The same geometric realization expressed in another marking of the same
// complex: new vertex representatives follow the new primal tree and the new
// generators are the transports of the new generator half-edges.
Realization rebase(const Realization& real, std::shared_ptr<const MarkedComplex> mesh);

}  // namespace hmap
