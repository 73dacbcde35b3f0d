#pragma once

// Holonomy representations pi_1(S) -> SO+(2,1) stored as generator matrices,
// group cocycles with values in so(2,1) (held as eta-images in R^{2,1}), and
// the coboundary projection that certifies a cohomology class vanishes.

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "hmap/complex.hpp"
#include "hmap/minkowski.hpp"
#include "hmap/tolerances.hpp"

namespace hmap {

struct HolonomyRep {
  std::vector<Mat3> generators;  // R_1..R_{2g}
  Word relator;

  int num_generators() const { return int(generators.size()); }
  // Matrix of a single letter (+k or -k).
  Mat3 letter(int l) const;
};

Mat3 evaluate_word(const HolonomyRep& rep, const Word& w);

// Largest max|prefix| * max|suffix| over the splittings of the relator; the
// rounding error of evaluating the relator is proportional to it.
double relator_scale(const HolonomyRep& rep);

// Max-abs entry of evaluate(relator) - Id, divided by relator_scale.
double relator_residual(const HolonomyRep& rep);

// Throws DomainError if a generator is not in SO+(2,1) or the relator fails.
void validate_rep(const HolonomyRep& rep, const Tolerances& tol = default_tolerances());

// h rho h^{-1}.
HolonomyRep conjugate(const HolonomyRep& rep, const Mat3& h);

// Side pairings of the regular hyperbolic 4g-gon with interior angles 2pi/(4g),
// glued by the product of commutators [x1,x2]...[x_{2g-1},x_{2g}].
HolonomyRep build_regular_4g_group(int genus);

// Corners of the regular 4g-gon used by build_regular_4g_group, counter-clockwise,
// corner k at polar angle 2 pi k / 4g.
std::vector<Vec3> regular_polygon_corners(int genus);

// Group element carrying corner 0 of the regular polygon to corner k.
std::vector<Mat3> regular_corner_decks(int genus);

// Orientation-preserving side pairings S_m of the regular polygon in the order
// (0->2), (1->3), (4->6), (5->7), ...; S maps side i onto side j reversed.
std::vector<Mat3> regular_side_pairings(int genus);

// The element of the group generated by `gens` mapping `from` to `to`, found by
// breadth-first search over the orbit of `from` inside the ball of the given
// radius around e0. The action is assumed free.
std::optional<Mat3> find_deck_element(const std::vector<Mat3>& gens, const Vec3& from, const Vec3& to,
                                      double radius, double tol = 1e-8);

// so(2,1)-valued cocycle given on generators as eta-images.
struct GeneratorCocycle {
  std::vector<Vec3> values;

  static GeneratorCocycle zero(int n) { return {std::vector<Vec3>(std::size_t(n), Vec3::Zero())}; }
  Eigen::VectorXd flat() const;
  static GeneratorCocycle from_flat(const Eigen::VectorXd& v);

  GeneratorCocycle& operator+=(const GeneratorCocycle& o);
  GeneratorCocycle& operator-=(const GeneratorCocycle& o);
  GeneratorCocycle& operator*=(double s);
  friend GeneratorCocycle operator+(GeneratorCocycle a, const GeneratorCocycle& b) { return a += b; }
  friend GeneratorCocycle operator-(GeneratorCocycle a, const GeneratorCocycle& b) { return a -= b; }
  friend GeneratorCocycle operator*(double s, GeneratorCocycle a) { return a *= s; }
};

// Fold of sigma_{w1 w2} = sigma_{w1} + Ad rho_{w1} sigma_{w2} over w.
Vec3 extend_cocycle(const HolonomyRep& rep, const GeneratorCocycle& c, const Word& w);

// Norm of the cocycle extended over the relator.
double cocycle_relator_residual(const HolonomyRep& rep, const GeneratorCocycle& c);

GeneratorCocycle coboundary_cocycle(const HolonomyRep& rep, const Vec3& s0);

// Linearised relator: maps stacked generator values (3n) to the relator value (3).
Eigen::MatrixXd relator_jacobian(const HolonomyRep& rep);

// Maps s0 (3) to the stacked coboundary values (3n).
Eigen::MatrixXd coboundary_matrix(const HolonomyRep& rep);

struct CoboundaryProjection {
  Vec3 s0 = Vec3::Zero();
  double residual = 0;
  GeneratorCocycle reduced;
};

// Least-squares fit of c by a coboundary in coordinate (Euclidean) norm.
// Throws RankError when the 3x3 normal system is singular.
CoboundaryProjection coboundary_project(const HolonomyRep& rep, const GeneratorCocycle& c);

// Restores the relator after a finite deformation with a minimum-norm
// Gauss-Newton correction of the generators, stopping at the rounding floor.
// Throws ConvergenceError if the residual stays above tol.rel.
HolonomyRep renormalize_relator(const HolonomyRep& rep, const Tolerances& tol = default_tolerances());

}  // namespace hmap
