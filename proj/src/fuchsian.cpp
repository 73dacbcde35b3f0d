#include "hmap/fuchsian.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>

namespace hmap {

Mat3 HolonomyRep::letter(int l) const {
  const auto k = std::size_t(std::abs(l) - 1);
  if (k >= generators.size()) throw InputError("word uses a generator beyond the representation");
  return l > 0 ? generators[k] : isometry_inverse(generators[k]);
}

Mat3 evaluate_word(const HolonomyRep& rep, const Word& w) {
  // Partial products of long words grow far beyond the result; extended
  // precision keeps the cancellation harmless.
  using Ext = Eigen::Matrix<long double, 3, 3>;
  Ext m = Ext::Identity();
  for (int l : w.letters()) m = m * rep.letter(l).cast<long double>();
  return m.cast<double>();
}

double relator_scale(const HolonomyRep& rep) {
  const auto& letters = rep.relator.letters();
  std::vector<Mat3> suffix(letters.size() + 1, Mat3::Identity());
  for (std::size_t k = letters.size(); k-- > 0;) suffix[k] = rep.letter(letters[k]) * suffix[k + 1];
  Mat3 prefix = Mat3::Identity();
  double scale = 1;
  for (std::size_t k = 0; k <= letters.size(); ++k) {
    scale = std::max(scale, prefix.cwiseAbs().maxCoeff() * suffix[k].cwiseAbs().maxCoeff());
    if (k < letters.size()) prefix = prefix * rep.letter(letters[k]);
  }
  return scale;
}

double relator_residual(const HolonomyRep& rep) {
  return (evaluate_word(rep, rep.relator) - Mat3::Identity()).cwiseAbs().maxCoeff() / relator_scale(rep);
}

void validate_rep(const HolonomyRep& rep, const Tolerances& tol) {
  for (std::size_t k = 0; k < rep.generators.size(); ++k)
    if (!is_isometry(rep.generators[k], tol.iso))
      throw DomainError("generator " + std::to_string(k + 1) + " is not in SO+(2,1)");
  const double res = relator_residual(rep);
  if (!(res <= tol.rel))
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "relator residual %.3e exceeds tolerance %.1e", res, tol.rel);
    throw DomainError(buf);
  }
}

HolonomyRep conjugate(const HolonomyRep& rep, const Mat3& h) {
  HolonomyRep out = rep;
  const Mat3 hinv = isometry_inverse(h);
  for (auto& g : out.generators) g = h * g * hinv;
  return out;
}

std::vector<Vec3> regular_polygon_corners(int genus) {
  const int n = 4 * genus;
  const double pi = std::numbers::pi;
  const double half_angle = pi / double(n);  // half the interior angle 2pi/n
  const double cosh_r = 1.0 / (std::tan(pi / n) * std::tan(half_angle));
  const double sinh_r = std::sqrt(cosh_r * cosh_r - 1.0);
  std::vector<Vec3> corners;
  for (int k = 0; k < n; ++k) {
    const double phi = 2 * pi * k / n;
    corners.emplace_back(sinh_r * std::cos(phi), sinh_r * std::sin(phi), cosh_r);
  }
  return corners;
}

std::vector<Mat3> regular_side_pairings(int genus) {
  const int n = 4 * genus;
  const double pi = std::numbers::pi;
  const double cosh_d = std::cos(pi / n) / std::sin(pi / n);
  const double d = std::acosh(cosh_d);
  auto midpoint_angle = [&](int side) { return 2 * pi * (side + 0.5) / n; };
  auto pairing = [&](int i, int j) {
    return Mat3(rotation_e0(midpoint_angle(j)) * boost_x(2 * d) * rotation_e0(pi) *
                rotation_e0(-midpoint_angle(i)));
  };
  std::vector<Mat3> out;
  for (int m = 0; m < genus; ++m) {
    out.push_back(pairing(4 * m, 4 * m + 2));
    out.push_back(pairing(4 * m + 1, 4 * m + 3));
  }
  return out;
}

std::optional<Mat3> find_deck_element(const std::vector<Mat3>& gens, const Vec3& from, const Vec3& to,
                                      double radius, double tol) {
  std::vector<Mat3> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(isometry_inverse(g));
  }
  const Vec3 e0(0, 0, 1);
  const double max_cosh = std::cosh(radius);
  auto close = [&](const Vec3& a, const Vec3& b) {
    return (a - b).cwiseAbs().maxCoeff() <= tol * std::max(1.0, b(2));
  };
  std::vector<std::pair<Mat3, Vec3>> visited{{Mat3::Identity(), from}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    const Mat3 m = visited[idx].first;
    const Vec3 p = visited[idx].second;
    if (close(p, to)) return m;
    for (const auto& s : letters) {
      const Vec3 q = s * p;
      if (-mink_inner(q, e0) > max_cosh) continue;
      bool seen = false;
      for (const auto& [vm, vp] : visited)
        if (close(vp, q)) {
          seen = true;
          break;
        }
      if (seen) continue;
      visited.emplace_back(s * m, q);
      queue.push_back(visited.size() - 1);
    }
  }
  return std::nullopt;
}

std::vector<Mat3> regular_corner_decks(int genus) {
  const int n = 4 * genus;
  const auto corners = regular_polygon_corners(genus);
  std::vector<Mat3> letters;
  for (const auto& s : regular_side_pairings(genus)) {
    letters.push_back(s);
    letters.push_back(isometry_inverse(s));
  }
  // All corners form one orbit; walk it from corner 0.
  std::vector<std::optional<Mat3>> deck(static_cast<std::size_t>(n));
  deck[0] = Mat3::Identity();
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int k = queue.front();
    queue.pop_front();
    for (const auto& s : letters) {
      const Vec3 q = s * corners[std::size_t(k)];
      for (int m = 0; m < n; ++m) {
        if (deck[std::size_t(m)]) continue;
        if ((q - corners[std::size_t(m)]).cwiseAbs().maxCoeff() < 1e-9 * corners[0](2)) {
          deck[std::size_t(m)] = Mat3(s * *deck[std::size_t(k)]);
          queue.push_back(m);
        }
      }
    }
  }
  std::vector<Mat3> out;
  for (const auto& d : deck) {
    if (!d) throw SolverError("regular polygon corners do not form a single orbit");
    out.push_back(*d);
  }
  return out;
}

HolonomyRep build_regular_4g_group(int genus) {
  if (genus < 2) throw GenusError("build_regular_4g_group requires genus >= 2");
  const int n = 4 * genus;
  const auto to_corner = regular_corner_decks(genus);

  // Side k of the single face carries the label M_k^{-1} M_{k+1}.
  auto side_label = [&](int k) {
    return Mat3(isometry_inverse(to_corner[std::size_t(k)]) * to_corner[std::size_t((k + 1) % n)]);
  };
  HolonomyRep rep;
  std::vector<int> letters_of_relator;
  for (int m = 0; m < genus; ++m) {
    rep.generators.push_back(side_label(4 * m));
    rep.generators.push_back(side_label(4 * m + 1));
    const int a = 2 * m + 1, b = 2 * m + 2;
    letters_of_relator.insert(letters_of_relator.end(), {a, b, -a, -b});
  }
  rep.relator = Word(letters_of_relator);
  return renormalize_relator(rep);
}

Eigen::VectorXd GeneratorCocycle::flat() const {
  Eigen::VectorXd v(3 * long(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) v.segment<3>(3 * long(k)) = values[k];
  return v;
}

GeneratorCocycle GeneratorCocycle::from_flat(const Eigen::VectorXd& v) {
  GeneratorCocycle c;
  for (long k = 0; k < v.size() / 3; ++k) c.values.emplace_back(v.segment<3>(3 * k));
  return c;
}

GeneratorCocycle& GeneratorCocycle::operator+=(const GeneratorCocycle& o) {
  for (std::size_t k = 0; k < values.size(); ++k) values[k] += o.values[k];
  return *this;
}

GeneratorCocycle& GeneratorCocycle::operator-=(const GeneratorCocycle& o) {
  for (std::size_t k = 0; k < values.size(); ++k) values[k] -= o.values[k];
  return *this;
}

GeneratorCocycle& GeneratorCocycle::operator*=(double s) {
  for (auto& v : values) v *= s;
  return *this;
}

Vec3 extend_cocycle(const HolonomyRep& rep, const GeneratorCocycle& c, const Word& w) {
  Vec3 acc = Vec3::Zero();
  Mat3 prefix = Mat3::Identity();
  for (int l : w.letters()) {
    const auto k = std::size_t(std::abs(l) - 1);
    const Mat3 g = rep.letter(l);
    // sigma_{x^{-1}} = -Ad rho_x^{-1} sigma_x
    const Vec3 s = l > 0 ? Vec3(c.values[k]) : Vec3(-(g * c.values[k]));
    acc += prefix * s;
    prefix = prefix * g;
  }
  return acc;
}

double cocycle_relator_residual(const HolonomyRep& rep, const GeneratorCocycle& c) {
  return extend_cocycle(rep, c, rep.relator).norm();
}

GeneratorCocycle coboundary_cocycle(const HolonomyRep& rep, const Vec3& s0) {
  GeneratorCocycle c;
  for (const auto& g : rep.generators) c.values.emplace_back(s0 - g * s0);
  return c;
}

Eigen::MatrixXd relator_jacobian(const HolonomyRep& rep) {
  const long n = rep.num_generators();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3, 3 * n);
  Mat3 prefix = Mat3::Identity();
  for (int l : rep.relator.letters()) {
    const long k = std::abs(l) - 1;
    const Mat3 g = rep.letter(l);
    if (l > 0)
      jac.block<3, 3>(0, 3 * k) += prefix;
    else
      jac.block<3, 3>(0, 3 * k) -= prefix * g;
    prefix = prefix * g;
  }
  return jac;
}

Eigen::MatrixXd coboundary_matrix(const HolonomyRep& rep) {
  const long n = rep.num_generators();
  Eigen::MatrixXd b(3 * n, 3);
  for (long k = 0; k < n; ++k)
    b.block<3, 3>(3 * k, 0) = Mat3::Identity() - rep.generators[std::size_t(k)];
  return b;
}

CoboundaryProjection coboundary_project(const HolonomyRep& rep, const GeneratorCocycle& c) {
  const Eigen::MatrixXd a = coboundary_matrix(rep);
  const Eigen::VectorXd b = c.flat();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(2) > 1e-10 * sv(0)))
    throw RankError("coboundary system is singular; the representation is degenerate");
  CoboundaryProjection out;
  out.s0 = svd.solve(b);
  const Eigen::VectorXd r = b - a * out.s0;
  out.residual = r.norm();
  out.reduced = GeneratorCocycle::from_flat(r);
  return out;
}

namespace {

// Generator of the relator defect: for D = exp(A), (D - D^{-1})/2 = A + O(A^3).
Vec3 defect_vector(const Mat3& d) { return eta((d - isometry_inverse(d)) / 2.0); }

}  // namespace

HolonomyRep renormalize_relator(const HolonomyRep& rep, const Tolerances& tol) {
  HolonomyRep best = rep;
  double best_res = relator_residual(rep);
  HolonomyRep out = rep;
  // Newton is run down to the rounding floor, which grows with the size of the
  // generators, so that nearby representations are restored consistently.
  for (int iter = 0, stalled = 0; iter < 50 && stalled < 2 && best_res > 0; ++iter) {
    const Mat3 d = evaluate_word(out, out.relator);
    const Eigen::MatrixXd jac = relator_jacobian(out);
    const Eigen::VectorXd u =
        -jac.transpose() * (jac * jac.transpose()).ldlt().solve(defect_vector(d));
    for (std::size_t k = 0; k < out.generators.size(); ++k) {
      const Vec3 uk = u.segment<3>(3 * long(k));
      out.generators[k] = repair_isometry(Mat3(exp_so21(uk, 1.0) * out.generators[k]));
    }
    const double res = relator_residual(out);
    stalled = res < 0.5 * best_res ? 0 : stalled + 1;
    if (res < best_res) {
      best = out;
      best_res = res;
    }
  }
  if (best_res <= tol.rel) return best;
  throw ConvergenceError("renormalize_relator: Newton iteration did not converge");
}

}  // namespace hmap
