#pragma once

// Turning a run configuration into a starting realization and an energy.

#include <memory>
#include <optional>

#include "hmap/fixtures.hpp"
#include "hmap/io.hpp"

namespace hmap {

// The shipped fixture whose layout the input reproduces exactly, if any.
std::optional<FixtureKind> match_fixture(const ComplexInput& input, int genus);

// Mesh, holonomy and starting positions as configured:
//  - rep = regular-4g needs a fixture layout and starts from its development;
//  - a holonomy file starts from random positions;
//  - start = random forces random positions (seeded), perturb > 0 moves the
//    holonomy by that distance along a random reduced cocycle (same seed).
Realization initial_realization(const RunConfig& cfg);

// Edge weights per cfg.weights: "unit" (every edge c.default),
// "canonical-from-delaunay" (canonical weights of real), or "edge:value, ..."
// with c.default for the edges not listed.
EnergyVariant make_variant(const RunConfig& cfg, const Realization& real);

// Canonical weights of a decomposition: the cotangent formula on
// triangulations, the polar dual otherwise. Weights below 1e-8 of the largest
// are set to zero.
std::vector<double> canonical_weights(const Realization& real);

// Per edge: |dual edge| / g(l_e) with w' = c g, which reproduces c_e at a harmonic map.
std::vector<double> recovered_weights(const Realization& real, const DualRealization& dual,
                                      const EnergyVariant& variant);

}  // namespace hmap
