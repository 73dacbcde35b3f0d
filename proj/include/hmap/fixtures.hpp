#pragma once

// Decompositions of the regular 4g-gon surface used as test fixtures and as
// starting points of the command-line tool.

#include <memory>

#include "hmap/complex.hpp"
#include "hmap/harmonic.hpp"

namespace hmap {

enum class FixtureKind {
  Polygon,          // one vertex, one 4g-gon face, 2g edges
  CenteredPolygon,  // centre plus corner vertex, 4g triangles, 6g edges
  Fan,              // one vertex, 4g - 2 triangles fanned from corner 0
};

ComplexInput fixture_input(FixtureKind kind, int genus = 2);

// A picture of the complex cut open in the plane: the corner of half-edge h
// sits at deck[h] * base[origin(h)].
struct Development {
  std::vector<Vec3> base;
  std::vector<Mat3> deck;
};

Development regular_development(FixtureKind kind, const CellComplex& complex, int genus = 2);

// Holonomy and vertex representatives that make the marking's tree labels
// trivial and reproduce the development. Throws SolverError if the
// development is inconsistent with the labels.
Realization realize_development(std::shared_ptr<const MarkedComplex> mesh, const Development& dev);

// The fixture realized on the regular 4g-gon group.
Realization regular_fixture(FixtureKind kind, int genus = 2, int base_vertex = 0, int base_face = 0);

// Per edge: A + B - pi of the cotangent arguments; negative means strictly Delaunay.
std::vector<double> delaunay_excess(const Realization& real);

}  // namespace hmap
