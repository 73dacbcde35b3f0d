#pragma once

// Minimisation of the harmonic-map energy over Teichmueller space. Tangent
// vectors are generator cocycles; the gradient is assembled from the pairing
// derivative against an orthonormal basis of the reduced cocycles.

#include <functional>
#include <string>
#include <vector>

#include "hmap/dual_cocycle.hpp"
#include "hmap/harmonic.hpp"

namespace hmap {

// R_k <- exp(t s_k) R_k, then the relator is restored.
HolonomyRep deform_rep(const HolonomyRep& rep, const GeneratorCocycle& sigma, double t,
                       const Tolerances& tol = default_tolerances());

// Rows: linearised relator (3) and coboundary directions (3); columns: the 6g
// stacked generator values. Its null space is the reduced cocycle space.
Eigen::MatrixXd h1_constraint_matrix(const HolonomyRep& rep);

// Coordinate-orthonormal basis of {cocycles} orthogonal to {coboundaries};
// 6g - 6 elements. Throws RankError when the constraints are degenerate.
std::vector<GeneratorCocycle> basis_H1(const HolonomyRep& rep);

struct OptimizeOptions {
  double tol_outer = 1e-6;       // certificate on the tau residual
  double tol_gradient = 1e-5;    // certificate on every pairing coefficient
  double tol_inner = 1e-10;
  double tol_inner_final = 1e-11;
  int max_outer = 100;
  int max_backtracks = 30;
  double armijo = 1e-4;
  double max_step = 0.5;         // bound on the basis coefficients of a step
  double fd_step = 1e-4;         // difference step of the Hessian
};

struct OuterLogEntry {
  int iteration = 0;
  double energy = 0;
  double tau_residual = 0;
  double gradient_norm = 0;
  double step = 0;
  int inner_sweeps = 0;
};

struct TeichState {
  Realization real;
  DualRealization dual;          // equivariant translate
  TauCertificate tau;
  std::vector<double> gradient;  // pairing coefficients against basis_H1(real.rep)
  Eigen::VectorXd gradient_vector;  // sum_b gradient[b] * b in stacked generator values
  double energy = 0;
  double inner_residual = 0;
  int inner_sweeps = 0;
  bool certified = false;
  int iterations = 0;
  std::vector<OuterLogEntry> log;

  double gradient_max() const;
};

// Inner solve from the given positions, dual surface, tau certificate and gradient.
TeichState evaluate_state(Realization warm, const EnergyVariant& variant, double tol_inner,
                          const SolveOptions& base = {});

std::string format_log_entry(const OuterLogEntry& e);

// Damped Newton iteration in the coordinates of basis_H1, with the Hessian taken
// from central differences of the pairing coefficients. Stops once the tau
// residual and every pairing coefficient are within tolerance; throws
// ConvergenceError otherwise.
TeichState optimize_metric(Realization start, const EnergyVariant& variant, const OptimizeOptions& opts = {},
                           const std::function<void(const OuterLogEntry&)>& progress = {});

}  // namespace hmap
