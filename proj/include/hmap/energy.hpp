#pragma once

// Edge energies w_e(l) of a realization, E = sum_e w_e(l_e), and their
// derivatives. Everything downstream only needs w, w' and k = w'(l) / sinh l.

#include <memory>
#include <string>
#include <vector>

namespace hmap {

struct Realization;
struct DualRealization;

// Positive profile g given by samples (x_m, g_m): monotone cubic Hermite between
// samples, linear from (0, 0) to the first sample and constant after the last.
// The custom energy is w(x) = c * int_0^x g, integrated in closed form, so
// w' = c g is positive and exactly consistent with w.
class ProfileTable {
public:
  ProfileTable(std::vector<double> x, std::vector<double> slope);

  double value(double x) const;      // int_0^x g
  double derivative(double x) const; // g(x)

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& slope() const { return g_; }

private:
  std::vector<double> x_;
  std::vector<double> g_;
  std::vector<double> d_;         // tangents at the samples
  std::vector<double> integral_;  // int_0^{x_m} g

  double segment_integral(std::size_t m, double t) const;
};

enum class VariantKind { Quadratic, SinhHalfSquared, Custom };

std::string variant_name(VariantKind kind);
VariantKind parse_variant(const std::string& name);

class EnergyVariant {
public:
  static EnergyVariant quadratic(std::vector<double> c);
  static EnergyVariant sinh_half_squared(std::vector<double> c);
  static EnergyVariant custom(std::shared_ptr<const ProfileTable> table, std::vector<double> c);

  VariantKind kind() const { return kind_; }
  const std::vector<double>& weights() const { return c_; }
  const ProfileTable* table() const { return table_.get(); }
  int num_edges() const { return int(c_.size()); }

  // Same variant with other weights.
  EnergyVariant with_weights(std::vector<double> c) const;

  double w(int edge, double x) const;
  double w_prime(int edge, double x) const;
  // w'(x) / sinh(x), finite at x = 0.
  double k(int edge, double x) const;

private:
  EnergyVariant(VariantKind kind, std::vector<double> c, std::shared_ptr<const ProfileTable> table);

  VariantKind kind_ = VariantKind::Quadratic;
  std::vector<double> c_;
  std::shared_ptr<const ProfileTable> table_;
};

// c_e = |f_l - f_r| / sinh l_e from an equivariant dual of a sinh-variant harmonic map.
std::vector<double> recover_weights_sinh(const Realization& real, const DualRealization& dual);

// sum_e |f_l - f_r| tanh(l_e / 2); the length parameter is the primal edge length.
double mean_curvature_functional(const Realization& real, const DualRealization& dual);

}  // namespace hmap
