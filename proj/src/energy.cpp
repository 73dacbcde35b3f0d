#include "hmap/energy.hpp"

#include <algorithm>
#include <cmath>

#include "hmap/dual_cocycle.hpp"
#include "hmap/errors.hpp"
#include "hmap/harmonic.hpp"

namespace hmap {

ProfileTable::ProfileTable(std::vector<double> x, std::vector<double> slope) : x_(std::move(x)), g_(std::move(slope)) {
  if (x_.empty() || x_.size() != g_.size()) throw InputError("profile table needs matching, non-empty columns");
  for (std::size_t m = 0; m < x_.size(); ++m) {
    if (!(x_[m] > (m == 0 ? 0.0 : x_[m - 1]))) throw InputError("profile abscissae must be positive and increasing");
    if (!(g_[m] > 0)) throw MonotonicityError("profile derivative must be positive at x = " + std::to_string(x_[m]));
  }
  // Fritsch-Carlson tangents keep the interpolant between neighbouring samples,
  // hence positive.
  const std::size_t n = x_.size();
  d_.assign(n, 0.0);
  if (n > 1) {
    std::vector<double> sec(n - 1);
    for (std::size_t m = 0; m + 1 < n; ++m) sec[m] = (g_[m + 1] - g_[m]) / (x_[m + 1] - x_[m]);
    d_[0] = sec[0];
    d_[n - 1] = sec[n - 2];
    for (std::size_t m = 1; m + 1 < n; ++m) d_[m] = sec[m - 1] * sec[m] > 0 ? 0.5 * (sec[m - 1] + sec[m]) : 0.0;
    for (std::size_t m = 0; m + 1 < n; ++m) {
      if (sec[m] == 0) {
        d_[m] = d_[m + 1] = 0;
        continue;
      }
      const double a = d_[m] / sec[m], b = d_[m + 1] / sec[m];
      if (a < 0) d_[m] = 0;
      if (b < 0) d_[m + 1] = 0;
      const double r = a * a + b * b;
      if (r > 9) {
        const double t = 3 / std::sqrt(r);
        d_[m] = t * a * sec[m];
        d_[m + 1] = t * b * sec[m];
      }
    }
  }
  integral_.resize(n);
  integral_[0] = 0.5 * g_[0] * x_[0];
  for (std::size_t m = 1; m < n; ++m) integral_[m] = integral_[m - 1] + segment_integral(m - 1, 1.0);
}

double ProfileTable::segment_integral(std::size_t m, double t) const {
  const double h = x_[m + 1] - x_[m];
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  return h * (g_[m] * (t4 / 2 - t3 + t) + h * d_[m] * (t4 / 4 - 2 * t3 / 3 + t2 / 2) + g_[m + 1] * (t3 - t4 / 2) +
              h * d_[m + 1] * (t4 / 4 - t3 / 3));
}

double ProfileTable::derivative(double x) const {
  if (x <= x_[0]) return g_[0] * x / x_[0];
  if (x >= x_.back()) return g_.back();
  const auto m = std::size_t(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
  const double h = x_[m + 1] - x_[m];
  const double t = (x - x_[m]) / h, t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * g_[m] + (t3 - 2 * t2 + t) * h * d_[m] + (-2 * t3 + 3 * t2) * g_[m + 1] +
         (t3 - t2) * h * d_[m + 1];
}

double ProfileTable::value(double x) const {
  if (x <= x_[0]) return 0.5 * g_[0] * x * x / x_[0];
  if (x >= x_.back()) return integral_.back() + g_.back() * (x - x_.back());
  const auto m = std::size_t(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
  return integral_[m] + segment_integral(m, (x - x_[m]) / (x_[m + 1] - x_[m]));
}

std::string variant_name(VariantKind kind) {
  switch (kind) {
    case VariantKind::Quadratic: return "quadratic";
    case VariantKind::SinhHalfSquared: return "sinh_half_squared";
    case VariantKind::Custom: return "custom";
  }
  return "quadratic";
}

VariantKind parse_variant(const std::string& name) {
  if (name == "quadratic") return VariantKind::Quadratic;
  if (name == "sinh_half_squared") return VariantKind::SinhHalfSquared;
  if (name == "custom") return VariantKind::Custom;
  throw InputError("unknown energy variant '" + name + "'");
}

EnergyVariant::EnergyVariant(VariantKind kind, std::vector<double> c, std::shared_ptr<const ProfileTable> table)
    : kind_(kind), c_(std::move(c)), table_(std::move(table)) {
  double total = 0;
  for (double ce : c_) {
    if (!(ce >= 0) || !std::isfinite(ce)) throw DomainError("edge weights must be non-negative");
    total += ce;
  }
  if (!(total > 0)) throw DomainError("at least one edge weight must be positive");
  if (kind_ == VariantKind::Custom && !table_) throw InputError("custom variant needs a profile table");
}

EnergyVariant EnergyVariant::quadratic(std::vector<double> c) { return {VariantKind::Quadratic, std::move(c), nullptr}; }

EnergyVariant EnergyVariant::sinh_half_squared(std::vector<double> c) {
  return {VariantKind::SinhHalfSquared, std::move(c), nullptr};
}

EnergyVariant EnergyVariant::custom(std::shared_ptr<const ProfileTable> table, std::vector<double> c) {
  return {VariantKind::Custom, std::move(c), std::move(table)};
}

EnergyVariant EnergyVariant::with_weights(std::vector<double> c) const { return {kind_, std::move(c), table_}; }

double EnergyVariant::w(int edge, double x) const {
  if (x < 0) throw DomainError("energy evaluated at negative length");
  const double c = c_[std::size_t(edge)];
  switch (kind_) {
    case VariantKind::Quadratic: return 0.5 * c * x * x;
    case VariantKind::SinhHalfSquared: {
      const double s = std::sinh(x / 2);
      return 2 * c * s * s;
    }
    case VariantKind::Custom: return c * table_->value(x);
  }
  return 0;
}

double EnergyVariant::w_prime(int edge, double x) const {
  if (x < 0) throw DomainError("energy evaluated at negative length");
  const double c = c_[std::size_t(edge)];
  switch (kind_) {
    case VariantKind::Quadratic: return c * x;
    case VariantKind::SinhHalfSquared: return c * std::sinh(x);
    case VariantKind::Custom: return c * table_->derivative(x);
  }
  return 0;
}

double EnergyVariant::k(int edge, double x) const {
  const double c = c_[std::size_t(edge)];
  switch (kind_) {
    case VariantKind::Quadratic:
      return x < 1e-4 ? c * (1 - x * x / 6) : c * x / std::sinh(x);
    case VariantKind::SinhHalfSquared: return c;
    case VariantKind::Custom: {
      if (x <= table_->x().front()) {
        const double s = x < 1e-4 ? 1 - x * x / 6 : x / std::sinh(x);
        return c * table_->slope().front() / table_->x().front() * s;
      }
      return c * table_->derivative(x) / std::sinh(x);
    }
  }
  return 0;
}

namespace {

double dual_edge_norm(const CellComplex& cx, const DualRealization& dual, int h) {
  const Vec3 d = dual.dual_edge(cx, h);
  const double q = mink_inner(d, d);
  if (!(q > 0))
    throw NonSpacelikeError("dual edge across " + cx.edge_names[std::size_t(cx.edge[std::size_t(h)])] +
                            " is not space-like");
  return std::sqrt(q);
}

}  // namespace

std::vector<double> recover_weights_sinh(const Realization& real, const DualRealization& dual) {
  const auto& cx = real.complex();
  std::vector<double> c;
  for (int h : cx.edge_half) c.push_back(dual_edge_norm(cx, dual, h) / std::sinh(raw_edge_length(real, h)));
  return c;
}

double mean_curvature_functional(const Realization& real, const DualRealization& dual) {
  const auto& cx = real.complex();
  double sum = 0;
  for (int h : cx.edge_half) sum += dual_edge_norm(cx, dual, h) * std::tanh(raw_edge_length(real, h) / 2);
  return sum;
}

}  // namespace hmap
