#pragma once

// Half-edge combinatorics of a closed oriented cell decomposition, its tree-cotree
// homology basis, and per-half-edge holonomy labels.
//
// The universal cover is never built. Every vertex v has one representative
// lift; the half-edge h = (i -> j) carries a group word g_h such that the lift of
// h starting at the representative of i ends at rho(g_h) applied to the
// representative of j. Labels on primal-tree edges are trivial, so the
// representatives form a fundamental domain made of the stars of the vertices.

#include <string>
#include <vector>

namespace hmap {

// Element of the free group on x_1..x_n. Letter +k is x_k, -k is its inverse.
// Always stored freely reduced.
class Word {
public:
  Word() = default;
  explicit Word(std::vector<int> letters);

  static Word generator(int k) { return Word({k}); }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word cyclically_reduced() const;

  // "x1 x2 X1 X2"; the empty word prints as "1".
  std::string str() const;
  static Word parse(const std::string& text);

  friend Word operator*(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

private:
  std::vector<int> letters_;
};

// Exponent sum of each generator.
std::vector<int> abelianization(const Word& w, int num_generators);

// True if b is a cyclic rotation of a.
bool cyclically_equal(const Word& a, const Word& b);

struct SideInput {
  std::string from;
  std::string to;
  std::string edge;
};

struct FaceInput {
  std::string name;
  std::vector<SideInput> sides;
};

struct ComplexInput {
  std::vector<std::string> vertices;
  std::vector<FaceInput> faces;
};

class CellComplex {
public:
  int num_vertices() const { return int(vertex_names.size()); }
  int num_edges() const { return int(edge_names.size()); }
  int num_faces() const { return int(face_names.size()); }
  int num_half_edges() const { return int(origin.size()); }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_faces(); }

  int dest(int h) const { return origin[next[h]]; }
  // Next outgoing half-edge around origin(h); the corner after h.
  int rotate(int h) const { return next[twin[h]]; }
  // Half-edges of face f in cyclic order.
  std::vector<int> face_half_edges(int f) const;

  std::vector<std::string> vertex_names;
  std::vector<std::string> edge_names;
  std::vector<std::string> face_names;

  std::vector<int> origin;
  std::vector<int> twin;
  std::vector<int> next;
  std::vector<int> prev;
  std::vector<int> face;
  std::vector<int> edge;

  std::vector<int> face_first;       // first half-edge of each face
  std::vector<int> edge_half;        // first side of each edge in input order
  std::vector<std::vector<int>> out; // outgoing half-edges per vertex, rotation order
  int genus = 0;
};

// Validates and builds the complex. Throws NonManifoldError, OrientationError or
// GenusError (genus < 2).
CellComplex load_complex(const ComplexInput& input);

enum class EdgeKind { Tree, Cotree, Leftover };

struct HomologyBasis {
  int base_vertex = 0;
  int base_face = 0;
  std::vector<EdgeKind> kind;       // per edge
  std::vector<int> leftover;        // the 2g generator edges, ascending
  std::vector<int> vertex_order;    // BFS order of the primal tree
  std::vector<int> vertex_parent;   // half-edge parent -> v, -1 at the root
  std::vector<int> face_order;      // BFS order of the dual tree
  std::vector<int> face_parent;     // half-edge of f whose twin lies in the parent face

  int tree_size() const;
  int cotree_size() const;
};

// Breadth-first primal spanning tree from base_vertex, then breadth-first dual
// spanning tree from base_face on the remaining edges. Half-edges are visited in
// index order, so the result is deterministic.
HomologyBasis tree_cotree(const CellComplex& complex, int base_vertex = 0, int base_face = 0);

struct HolonomyLabels {
  std::vector<Word> label;        // per half-edge
  std::vector<int> generator_half; // positive half-edge of generator r (x_{r+1})
  Word relator;
};

HolonomyLabels assign_labels(const CellComplex& complex, const HomologyBasis& basis);
Word relator_word(const CellComplex& complex, const HomologyBasis& basis);

// A complex together with its basis and labels; the unit every solver works on.
struct MarkedComplex {
  CellComplex complex;
  HomologyBasis basis;
  HolonomyLabels labels;

  int num_generators() const { return int(labels.generator_half.size()); }
  const Word& relator() const { return labels.relator; }
};

MarkedComplex mark(CellComplex complex, int base_vertex = 0, int base_face = 0);

}  // namespace hmap
