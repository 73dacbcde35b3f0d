#include "hmap/teich_opt.hpp"

#include <cmath>
#include <cstdio>

namespace hmap {

HolonomyRep deform_rep(const HolonomyRep& rep, const GeneratorCocycle& sigma, double t, const Tolerances& tol) {
  if (t == 0) return rep;
  HolonomyRep out = rep;
  for (std::size_t k = 0; k < out.generators.size(); ++k)
    out.generators[k] = repair_isometry(Mat3(exp_so21(sigma.values[k], t) * out.generators[k]));
  return renormalize_relator(out, tol);
}

Eigen::MatrixXd h1_constraint_matrix(const HolonomyRep& rep) {
  const long n = 3 * rep.num_generators();
  Eigen::MatrixXd m(6, n);
  m.topRows(3) = relator_jacobian(rep);
  m.bottomRows(3) = coboundary_matrix(rep).transpose();
  return m;
}

std::vector<GeneratorCocycle> basis_H1(const HolonomyRep& rep) {
  const Eigen::MatrixXd m = h1_constraint_matrix(rep);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(5) > 1e-8 * sv(0)))
    throw RankError("cocycle constraints are degenerate; the representation is not a surface group");
  std::vector<GeneratorCocycle> basis;
  for (long c = 6; c < m.cols(); ++c) basis.push_back(GeneratorCocycle::from_flat(svd.matrixV().col(c)));
  return basis;
}

double TeichState::gradient_max() const {
  double g = 0;
  for (double x : gradient) g = std::max(g, std::abs(x));
  return g;
}

TeichState evaluate_state(Realization warm, const EnergyVariant& variant, double tol_inner,
                          const SolveOptions& base) {
  SolveOptions so = base;
  so.tol = tol_inner;
  auto solved = solve_harmonic(std::move(warm), variant, so);
  TeichState st;
  st.real = std::move(solved.real);
  st.inner_residual = solved.residual;
  st.inner_sweeps = solved.sweeps;
  st.energy = dirichlet_energy(st.real, variant);
  const DualRealization raw = integrate_dual(st.real, variant);
  st.tau = certify_tau(st.real, raw);
  st.dual = translate_dual(raw, st.real.rep, -st.tau.s0);
  const auto basis = basis_H1(st.real.rep);
  st.gradient_vector = Eigen::VectorXd::Zero(3 * st.real.rep.num_generators());
  for (const auto& b : basis) {
    const double g = pairing_derivative(st.real, raw, b);
    st.gradient.push_back(g);
    st.gradient_vector += g * b.flat();
  }
  return st;
}

std::string format_log_entry(const OuterLogEntry& e) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "iter=%d energy=%.12e tau=%.3e grad=%.3e step=%.3e sweeps=%d", e.iteration,
                e.energy, e.tau_residual, e.gradient_norm, e.step, e.inner_sweeps);
  return buf;
}

namespace {

bool is_certified(const TeichState& st, const OptimizeOptions& opts) {
  return st.tau.residual <= opts.tol_outer && st.gradient_max() <= opts.tol_gradient;
}

OuterLogEntry entry_of(const TeichState& st, int iteration, double step) {
  return {iteration, st.energy, st.tau.residual, st.gradient_vector.norm(), step, st.inner_sweeps};
}

}  // namespace

namespace {

// Pairing coefficients of the harmonic map at rep against the given basis.
Eigen::VectorXd pairings_at(const Realization& warm, const HolonomyRep& rep, const EnergyVariant& variant,
                            const std::vector<GeneratorCocycle>& basis, double tol_inner) {
  Realization moved = warm;
  set_rep(moved, rep);
  SolveOptions so;
  so.tol = tol_inner;
  const auto solved = solve_harmonic(std::move(moved), variant, so);
  const DualRealization dual = integrate_dual(solved.real, variant);
  // The basis cocycles of the old point are moved onto the cocycles of rep by
  // the minimum-norm correction of their linearised relator.
  const Eigen::MatrixXd jac = relator_jacobian(rep);
  const Eigen::LDLT<Eigen::MatrixXd> normal(jac * jac.transpose());
  Eigen::VectorXd g(long(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    Eigen::VectorXd v = basis[b].flat();
    v -= jac.transpose() * normal.solve(jac * v);
    g(long(b)) = pairing_derivative(solved.real, dual, GeneratorCocycle::from_flat(v));
  }
  return g;
}

// Central differences of the pairing coefficients along the basis, symmetrised.
Eigen::MatrixXd pairing_hessian(const TeichState& st, const EnergyVariant& variant,
                                const std::vector<GeneratorCocycle>& basis, double h, double tol_inner) {
  const long n = long(basis.size());
  Eigen::MatrixXd hess(n, n);
  for (long c = 0; c < n; ++c) {
    const auto plus = pairings_at(st.real, deform_rep(st.real.rep, basis[std::size_t(c)], h), variant, basis, tol_inner);
    const auto minus =
        pairings_at(st.real, deform_rep(st.real.rep, basis[std::size_t(c)], -h), variant, basis, tol_inner);
    hess.col(c) = (plus - minus) / (2 * h);
  }
  return (hess + hess.transpose()) / 2;
}

// Newton direction with the Hessian eigenvalues replaced by their absolute
// values (bounded away from zero), so that it always descends.
Eigen::VectorXd newton_direction(const Eigen::MatrixXd& hess, const Eigen::VectorXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseAbs();
  const double floor = std::max(1e-8, 1e-6 * ev.maxCoeff());
  const Eigen::VectorXd coeff = es.eigenvectors().transpose() * g;
  Eigen::VectorXd p = Eigen::VectorXd::Zero(g.size());
  for (long k = 0; k < g.size(); ++k) p -= coeff(k) / std::max(ev(k), floor) * es.eigenvectors().col(k);
  return p;
}

}  // namespace

TeichState optimize_metric(Realization start, const EnergyVariant& variant, const OptimizeOptions& opts,
                           const std::function<void(const OuterLogEntry&)>& progress) {
  auto inner_tol = [&](const TeichState& st) {
    return st.tau.residual < 1e3 * opts.tol_outer ? opts.tol_inner_final : opts.tol_inner;
  };
  TeichState st = evaluate_state(std::move(start), variant, opts.tol_inner);
  std::vector<OuterLogEntry> log{entry_of(st, 0, 0)};
  if (progress) progress(log.back());

  int it = 0;
  while (!is_certified(st, opts)) {
    if (it >= opts.max_outer) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "optimize_metric: not certified after %d iterations (tau residual %.3e)", it,
                    st.tau.residual);
      throw ConvergenceError(buf);
    }
    ++it;
    const auto basis = basis_H1(st.real.rep);
    const Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(st.gradient.data(), long(st.gradient.size()));
    const Eigen::MatrixXd hess = pairing_hessian(st, variant, basis, opts.fd_step, inner_tol(st));
    Eigen::VectorXd p = newton_direction(hess, g);
    if (p.norm() > opts.max_step) p *= opts.max_step / p.norm();
    const double slope = g.dot(p);
    GeneratorCocycle sigma = GeneratorCocycle::zero(st.real.rep.num_generators());
    for (std::size_t b = 0; b < basis.size(); ++b) sigma += p(long(b)) * basis[b];

    bool accepted = false;
    TeichState trial;
    double t = 1;
    for (int b = 0; b <= opts.max_backtracks; ++b, t *= 0.5) {
      try {
        Realization moved = st.real;
        set_rep(moved, deform_rep(st.real.rep, sigma, t));
        trial = evaluate_state(std::move(moved), variant, inner_tol(st));
      } catch (const SolverError&) {
        continue;
      }
      const bool sufficient = trial.energy <= st.energy + opts.armijo * t * slope;
      // Near the optimum energy differences drown in rounding; a smaller
      // gradient is then the better witness of progress.
      const bool within_rounding = trial.energy <= st.energy + 1e-13 * std::abs(st.energy) &&
                                   trial.gradient_max() < st.gradient_max();
      if (sufficient || within_rounding) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw ConvergenceError("optimize_metric: line search failed at iteration " + std::to_string(it));
    trial.log = {};
    st = std::move(trial);
    log.push_back(entry_of(st, it, t * p.norm()));
    if (progress) progress(log.back());
  }
  st.certified = true;
  st.iterations = it;
  st.log = std::move(log);
  return st;
}

}  // namespace hmap
