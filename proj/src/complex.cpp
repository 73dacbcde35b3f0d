#include "hmap/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "hmap/errors.hpp"

namespace hmap {

namespace {

std::vector<int> reduce(const std::vector<int>& letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace

Word::Word(std::vector<int> letters) : letters_(reduce(letters)) {}

Word Word::inverse() const {
  std::vector<int> inv(letters_.rbegin(), letters_.rend());
  for (int& l : inv) l = -l;
  Word w;
  w.letters_ = std::move(inv);
  return w;
}

Word Word::cyclically_reduced() const {
  std::size_t a = 0, b = letters_.size();
  while (b - a >= 2 && letters_[a] == -letters_[b - 1]) {
    ++a;
    --b;
  }
  Word w;
  w.letters_.assign(letters_.begin() + long(a), letters_.begin() + long(b));
  return w;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << (letters_[i] > 0 ? 'x' : 'X') << std::abs(letters_[i]);
  }
  return os.str();
}

Word Word::parse(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<int> letters;
  while (is >> tok) {
    if (tok == "1") continue;
    if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X'))
      throw InputError("bad word token '" + tok + "'");
    int k = 0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if (tok[i] < '0' || tok[i] > '9') throw InputError("bad word token '" + tok + "'");
      k = 10 * k + (tok[i] - '0');
    }
    if (k <= 0) throw InputError("bad word token '" + tok + "'");
    letters.push_back(tok[0] == 'x' ? k : -k);
  }
  return Word(letters);
}

Word operator*(const Word& a, const Word& b) {
  std::vector<int> letters = a.letters_;
  letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
  return Word(letters);
}

std::vector<int> abelianization(const Word& w, int num_generators) {
  std::vector<int> ab(std::size_t(num_generators), 0);
  for (int l : w.letters()) {
    const int k = std::abs(l) - 1;
    if (k < num_generators) ab[std::size_t(k)] += l > 0 ? 1 : -1;
  }
  return ab;
}

bool cyclically_equal(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const auto& x = a.letters();
  const auto& y = b.letters();
  const std::size_t n = x.size();
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = x[i] == y[(i + shift) % n];
    if (same) return true;
  }
  return false;
}

std::vector<int> CellComplex::face_half_edges(int f) const {
  std::vector<int> hs;
  int h = face_first[std::size_t(f)];
  do {
    hs.push_back(h);
    h = next[std::size_t(h)];
  } while (h != face_first[std::size_t(f)]);
  return hs;
}

CellComplex load_complex(const ComplexInput& input) {
  CellComplex c;
  std::map<std::string, int> vertex_index;
  for (const auto& name : input.vertices) {
    if (!vertex_index.emplace(name, int(c.vertex_names.size())).second)
      throw InputError("duplicate vertex '" + name + "'");
    c.vertex_names.push_back(name);
  }

  std::map<std::string, int> edge_index;
  std::vector<std::vector<int>> edge_sides;
  for (const auto& f : input.faces) {
    if (f.sides.empty()) throw NonManifoldError("face '" + f.name + "' has no sides");
    const int fi = int(c.face_names.size());
    c.face_names.push_back(f.name);
    const int first = int(c.origin.size());
    c.face_first.push_back(first);
    const int n = int(f.sides.size());
    for (int k = 0; k < n; ++k) {
      const auto& s = f.sides[std::size_t(k)];
      const auto& t = f.sides[std::size_t((k + 1) % n)];
      auto from = vertex_index.find(s.from);
      auto to = vertex_index.find(s.to);
      if (from == vertex_index.end() || to == vertex_index.end())
        throw InputError("face '" + f.name + "' uses an undeclared vertex");
      if (s.to != t.from)
        throw NonManifoldError("face '" + f.name + "': consecutive sides do not chain at side " +
                               std::to_string(k + 1));
      auto [it, fresh] = edge_index.emplace(s.edge, int(c.edge_names.size()));
      if (fresh) {
        c.edge_names.push_back(s.edge);
        edge_sides.emplace_back();
      }
      const int h = first + k;
      edge_sides[std::size_t(it->second)].push_back(h);
      c.origin.push_back(from->second);
      c.face.push_back(fi);
      c.edge.push_back(it->second);
      c.next.push_back(first + (k + 1) % n);
      c.prev.push_back(first + (k + n - 1) % n);
    }
  }

  const std::size_t num_half = c.origin.size();
  c.twin.assign(num_half, -1);
  for (std::size_t e = 0; e < edge_sides.size(); ++e) {
    const auto& sides = edge_sides[e];
    if (sides.size() != 2)
      throw NonManifoldError("edge '" + c.edge_names[e] + "' is used " + std::to_string(sides.size()) +
                             " times (expected 2)");
    const int a = sides[0], b = sides[1];
    if (c.origin[std::size_t(a)] != c.dest(b) || c.dest(a) != c.origin[std::size_t(b)])
      throw OrientationError("edge '" + c.edge_names[e] +
                             "' is not traversed in opposite directions by its two sides");
    c.twin[std::size_t(a)] = b;
    c.twin[std::size_t(b)] = a;
    c.edge_half.push_back(a);
  }

  // Vertex links must be single cycles.
  std::vector<std::vector<int>> outgoing(c.vertex_names.size());
  for (std::size_t h = 0; h < num_half; ++h) outgoing[std::size_t(c.origin[h])].push_back(int(h));
  c.out.resize(c.vertex_names.size());
  for (std::size_t v = 0; v < outgoing.size(); ++v) {
    if (outgoing[v].empty())
      throw NonManifoldError("vertex '" + c.vertex_names[v] + "' has no incident edge");
    int h = outgoing[v].front();
    do {
      c.out[v].push_back(h);
      h = c.rotate(h);
    } while (h != outgoing[v].front() && c.out[v].size() <= outgoing[v].size());
    if (c.out[v].size() != outgoing[v].size())
      throw NonManifoldError("vertex '" + c.vertex_names[v] + "' does not have a disk neighbourhood");
  }

  // Connectivity.
  std::vector<char> seen(c.vertex_names.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int h : c.out[std::size_t(v)]) {
      const int j = c.dest(h);
      if (!seen[std::size_t(j)]) {
        seen[std::size_t(j)] = 1;
        ++reached;
        queue.push_back(j);
      }
    }
  }
  if (reached != c.vertex_names.size()) throw NonManifoldError("complex is not connected");

  const int chi = c.euler_characteristic();
  if (chi % 2 != 0) throw NonManifoldError("odd Euler characteristic " + std::to_string(chi));
  c.genus = (2 - chi) / 2;
  if (c.genus < 2)
    throw GenusError("surface has genus " + std::to_string(c.genus) + "; genus at least 2 is required");
  return c;
}

int HomologyBasis::tree_size() const {
  return int(std::count(kind.begin(), kind.end(), EdgeKind::Tree));
}

int HomologyBasis::cotree_size() const {
  return int(std::count(kind.begin(), kind.end(), EdgeKind::Cotree));
}

HomologyBasis tree_cotree(const CellComplex& complex, int base_vertex, int base_face) {
  if (base_vertex < 0 || base_vertex >= complex.num_vertices() || base_face < 0 ||
      base_face >= complex.num_faces())
    throw InputError("tree_cotree: base vertex or face out of range");

  HomologyBasis basis;
  basis.base_vertex = base_vertex;
  basis.base_face = base_face;
  const std::size_t num_edges = std::size_t(complex.num_edges());
  std::vector<int> state(num_edges, -1);  // -1 unassigned, 0 tree, 1 cotree

  basis.vertex_parent.assign(std::size_t(complex.num_vertices()), -1);
  std::vector<char> seen(std::size_t(complex.num_vertices()), 0);
  std::deque<int> queue{base_vertex};
  seen[std::size_t(base_vertex)] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    basis.vertex_order.push_back(v);
    std::vector<int> hs = complex.out[std::size_t(v)];
    std::sort(hs.begin(), hs.end());
    for (int h : hs) {
      const int j = complex.dest(h);
      if (seen[std::size_t(j)]) continue;
      seen[std::size_t(j)] = 1;
      basis.vertex_parent[std::size_t(j)] = h;
      state[std::size_t(complex.edge[std::size_t(h)])] = 0;
      queue.push_back(j);
    }
  }

  basis.face_parent.assign(std::size_t(complex.num_faces()), -1);
  std::vector<char> face_seen(std::size_t(complex.num_faces()), 0);
  queue = {base_face};
  face_seen[std::size_t(base_face)] = 1;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    basis.face_order.push_back(f);
    for (int h : complex.face_half_edges(f)) {
      const int e = complex.edge[std::size_t(h)];
      if (state[std::size_t(e)] == 0) continue;
      const int t = complex.twin[std::size_t(h)];
      const int g = complex.face[std::size_t(t)];
      if (face_seen[std::size_t(g)]) continue;
      face_seen[std::size_t(g)] = 1;
      basis.face_parent[std::size_t(g)] = t;
      state[std::size_t(e)] = 1;
      queue.push_back(g);
    }
  }

  basis.kind.resize(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) {
    if (state[e] == 0)
      basis.kind[e] = EdgeKind::Tree;
    else if (state[e] == 1)
      basis.kind[e] = EdgeKind::Cotree;
    else {
      basis.kind[e] = EdgeKind::Leftover;
      basis.leftover.push_back(int(e));
    }
  }
  if (int(basis.leftover.size()) != 2 * complex.genus)
    throw NonManifoldError("tree-cotree left " + std::to_string(basis.leftover.size()) +
                           " edges, expected 2g = " + std::to_string(2 * complex.genus));
  return basis;
}

HolonomyLabels assign_labels(const CellComplex& complex, const HomologyBasis& basis) {
  HolonomyLabels labels;
  labels.label.assign(std::size_t(complex.num_half_edges()), Word());
  for (std::size_t r = 0; r < basis.leftover.size(); ++r) {
    const int h = complex.edge_half[std::size_t(basis.leftover[r])];
    labels.generator_half.push_back(h);
    labels.label[std::size_t(h)] = Word::generator(int(r) + 1);
    labels.label[std::size_t(complex.twin[std::size_t(h)])] = Word::generator(-(int(r) + 1));
  }

  // Peel the dual tree from its leaves: the face relation of a leaf determines
  // the label of the edge joining it to its parent.
  for (auto it = basis.face_order.rbegin(); it != basis.face_order.rend(); ++it) {
    const int f = *it;
    const int u = basis.face_parent[std::size_t(f)];
    if (u < 0) continue;
    const std::vector<int> hs = complex.face_half_edges(f);
    const auto pos = std::size_t(std::find(hs.begin(), hs.end(), u) - hs.begin());
    Word before, after;
    for (std::size_t k = 0; k < pos; ++k) before = before * labels.label[std::size_t(hs[k])];
    for (std::size_t k = pos + 1; k < hs.size(); ++k) after = after * labels.label[std::size_t(hs[k])];
    labels.label[std::size_t(u)] = before.inverse() * after.inverse();
    labels.label[std::size_t(complex.twin[std::size_t(u)])] = labels.label[std::size_t(u)].inverse();
  }

  for (int h : complex.face_half_edges(basis.base_face))
    labels.relator = labels.relator * labels.label[std::size_t(h)];
  return labels;
}

Word relator_word(const CellComplex& complex, const HomologyBasis& basis) {
  return assign_labels(complex, basis).relator;
}

MarkedComplex mark(CellComplex complex, int base_vertex, int base_face) {
  MarkedComplex mc;
  mc.basis = tree_cotree(complex, base_vertex, base_face);
  mc.labels = assign_labels(complex, mc.basis);
  mc.complex = std::move(complex);
  return mc;
}

}  // namespace hmap
