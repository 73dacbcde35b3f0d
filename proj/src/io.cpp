#include "hmap/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hmap/errors.hpp"

namespace hmap {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Drops the comment part of a line following the rule in the header.
std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] != '#') continue;
    const bool doubled = i + 1 < line.size() && line[i + 1] == '#';
    if (doubled || i == 0 || is_space(line[i - 1])) return line.substr(0, i);
  }
  return line;
}

// Splits on white space; ',' and ':' are tokens of their own.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    const std::string line = strip_comment(raw);
    Line l{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      if (is_space(line[i])) {
        ++i;
        continue;
      }
      if (line[i] == ',' || line[i] == ':') {
        l.tokens.push_back({std::string(1, line[i]), int(i) + 1});
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !is_space(line[i]) && line[i] != ',' && line[i] != ':') ++i;
      l.tokens.push_back({line.substr(start, i - start), int(start) + 1});
    }
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

bool valid_id(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return true;
}

[[noreturn]] void fail(const std::string& what, const Line& l, const Token& t) {
  throw ParseError(what, l.number, t.column);
}

void expect_header(const std::vector<Line>& lines, const std::string& a, const std::string& b) {
  if (lines.empty()) throw ParseError("empty file, expected '" + a + " " + b + "'", 1, 1);
  const Line& l = lines.front();
  if (l.tokens.size() != 2 || l.tokens[0].text != a || l.tokens[1].text != b)
    fail("expected header '" + a + " " + b + "'", l, l.tokens[0]);
}

double parse_number(const Line& l, const Token& t) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t.text, &used);
  } catch (const std::exception&) {
    fail("expected a number, found '" + t.text + "'", l, t);
  }
  if (used != t.text.size() || !std::isfinite(v)) fail("expected a number, found '" + t.text + "'", l, t);
  return v;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string num(double v) { return fmt("%.17g", v); }

}  // namespace

ComplexInput parse_mesh_text(const std::string& text) {
  const auto lines = tokenize(text);
  expect_header(lines, "surface-complex", "v1");
  ComplexInput in;
  std::set<std::string> vertices, faces;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const auto& t = l.tokens;
    if (t[0].text == "vertex") {
      if (!in.faces.empty()) fail("vertex declared after the first face", l, t[0]);
      if (t.size() != 2) fail("expected 'vertex <id>'", l, t[0]);
      if (!valid_id(t[1].text)) fail("invalid vertex id '" + t[1].text + "'", l, t[1]);
      if (!vertices.insert(t[1].text).second) fail("duplicate vertex '" + t[1].text + "'", l, t[1]);
      in.vertices.push_back(t[1].text);
    } else if (t[0].text == "face") {
      if (t.size() < 4 || t[2].text != ":") fail("expected 'face <id> : <side>, ...'", l, t[0]);
      if (!valid_id(t[1].text)) fail("invalid face id '" + t[1].text + "'", l, t[1]);
      if (!faces.insert(t[1].text).second) fail("duplicate face '" + t[1].text + "'", l, t[1]);
      FaceInput face{t[1].text, {}};
      for (std::size_t i = 3; i < t.size(); ++i) {
        if (i % 2 == 0) {
          if (t[i].text != ",") fail("expected ',' between sides", l, t[i]);
          if (i + 1 == t.size()) fail("trailing ','", l, t[i]);
          continue;
        }
        const std::string& s = t[i].text;
        const auto dash = s.find('-'), hash = s.find('#');
        if (dash == std::string::npos || hash == std::string::npos || hash < dash)
          fail("expected side '<vertex>-<vertex>#<edge>', found '" + s + "'", l, t[i]);
        SideInput side{s.substr(0, dash), s.substr(dash + 1, hash - dash - 1), s.substr(hash + 1)};
        for (const auto* id : {&side.from, &side.to})
          if (!vertices.count(*id)) fail("unknown vertex '" + *id + "'", l, t[i]);
        if (!valid_id(side.edge)) fail("invalid edge id in '" + s + "'", l, t[i]);
        face.sides.push_back(side);
      }
      in.faces.push_back(std::move(face));
    } else {
      fail("unknown keyword '" + t[0].text + "'", l, t[0]);
    }
  }
  if (in.faces.empty()) throw ParseError("mesh has no faces");
  return in;
}

ComplexInput parse_mesh(const std::string& path) { return parse_mesh_text(read_file(path)); }

std::string format_mesh(const ComplexInput& input) {
  std::string out = "surface-complex v1\n";
  for (const auto& v : input.vertices) out += "vertex " + v + "\n";
  for (const auto& f : input.faces) {
    out += "face " + f.name + " :";
    for (std::size_t i = 0; i < f.sides.size(); ++i) {
      const auto& s = f.sides[i];
      out += (i ? ", " : " ") + s.from + "-" + s.to + "#" + s.edge;
    }
    out += "\n";
  }
  return out;
}

HolonomyRep parse_rep_text(const std::string& text, const Tolerances& tol) {
  const auto lines = tokenize(text);
  expect_header(lines, "holonomy", "v1");
  HolonomyRep rep;
  bool have_relator = false;
  const Line* relator_line = nullptr;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const auto& t = l.tokens;
    if (t[0].text == "gen") {
      if (have_relator) fail("generator after the relator", l, t[0]);
      if (t.size() != 2) fail("expected 'gen <k>'", l, t[0]);
      if (t[1].text != std::to_string(rep.generators.size() + 1))
        fail("expected generator " + std::to_string(rep.generators.size() + 1), l, t[1]);
      Mat3 m;
      for (int r = 0; r < 3; ++r) {
        if (++k >= lines.size()) throw ParseError("generator " + t[1].text + " needs three rows", l.number, 0);
        const Line& row = lines[k];
        if (row.tokens.size() != 3) fail("expected three numbers", row, row.tokens[0]);
        for (int c = 0; c < 3; ++c) m(r, c) = parse_number(row, row.tokens[std::size_t(c)]);
      }
      if (!is_isometry(m, tol.iso)) fail("generator " + t[1].text + " is not in SO+(2,1)", l, t[1]);
      rep.generators.push_back(m);
    } else if (t[0].text == "relator") {
      if (have_relator) fail("second relator", l, t[0]);
      std::string w;
      for (std::size_t i = 1; i < t.size(); ++i) w += t[i].text + " ";
      try {
        rep.relator = Word::parse(w);
      } catch (const InputError& e) {
        fail(std::string("relator: ") + e.what(), l, t[0]);
      }
      for (int letter : rep.relator.letters())
        if (std::abs(letter) > rep.num_generators()) fail("relator uses an undefined generator", l, t[0]);
      have_relator = true;
      relator_line = &l;
    } else {
      fail("unknown keyword '" + t[0].text + "'", l, t[0]);
    }
  }
  if (!have_relator) throw ParseError("relator missing");
  const double res = relator_residual(rep);
  if (!(res <= tol.rel))
    fail("relator residual " + fmt("%.3e", res) + " exceeds tolerance", *relator_line, relator_line->tokens[0]);
  return rep;
}

HolonomyRep parse_rep(const std::string& path, const Tolerances& tol) { return parse_rep_text(read_file(path), tol); }

std::string format_rep(const HolonomyRep& rep) {
  std::string out = "holonomy v1\n";
  for (int k = 0; k < rep.num_generators(); ++k) {
    out += "gen " + std::to_string(k + 1) + "\n";
    const Mat3& m = rep.generators[std::size_t(k)];
    for (int r = 0; r < 3; ++r) out += num(m(r, 0)) + " " + num(m(r, 1)) + " " + num(m(r, 2)) + "\n";
  }
  return out + "relator " + rep.relator.str() + "\n";
}

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  RunConfig cfg;
  auto path = [&](const std::string& p) {
    if (p.empty() || p.front() == '/' || base_dir.empty()) return p;
    return base_dir + "/" + p;
  };
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  std::set<std::string> seen;
  while (std::getline(is, raw)) {
    ++number;
    const std::string line = strip_comment(raw);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", number, 1);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const int col = int(line.find_first_not_of(" \t")) + 1;
    const int vcol = int(eq) + 2;
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", number, col);
    auto number_value = [&]() {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size() || !std::isfinite(v))
        throw ParseError("expected a number for '" + key + "'", number, vcol);
      return v;
    };
    auto positive = [&]() {
      const double v = number_value();
      if (!(v > 0)) throw ParseError("'" + key + "' must be positive", number, vcol);
      return v;
    };
    auto count = [&]() {
      const double v = number_value();
      if (v < 0 || v != std::floor(v) || v > 9.0e15) throw ParseError("'" + key + "' must be a non-negative integer", number, vcol);
      return v;
    };
    if (key == "mesh") {
      cfg.mesh = path(value);
    } else if (key == "rep") {
      cfg.rep = value == "regular-4g" ? value : path(value);
    } else if (key == "weights") {
      cfg.weights = value;
    } else if (key == "variant") {
      try {
        parse_variant(value);
      } catch (const InputError& e) {
        throw ParseError(e.what(), number, vcol);
      }
      cfg.variant = value;
    } else if (key == "profile") {
      cfg.profile = value;
    } else if (key == "c.default") {
      cfg.c_default = positive();
    } else if (key == "tol.inner") {
      cfg.tol_inner = positive();
    } else if (key == "tol.outer") {
      cfg.tol_outer = positive();
    } else if (key == "seed") {
      cfg.seed = std::uint64_t(count());
    } else if (key == "start") {
      if (value != "auto" && value != "development" && value != "random")
        throw ParseError("start must be auto, development or random", number, vcol);
      cfg.start = value;
    } else if (key == "perturb") {
      cfg.perturb = number_value();
      if (cfg.perturb < 0) throw ParseError("'perturb' must be non-negative", number, vcol);
    } else if (key == "max.iter") {
      cfg.max_iter = int(count());
    } else if (key == "out.report") {
      cfg.out_report = path(value);
    } else if (key == "out.svg") {
      cfg.out_svg = path(value);
    } else if (key == "out.state") {
      cfg.out_state = path(value);
    } else {
      throw ParseError("unknown key '" + key + "'", number, col);
    }
  }
  if (cfg.mesh.empty()) throw ParseError("config has no 'mesh'");
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return parse_config_text(read_file(path), slash == std::string::npos ? "" : path.substr(0, slash));
}

std::string format_state(const Realization& real, const EnergyVariant& variant) {
  const auto& cx = real.complex();
  std::string out = "state v1\nvariant " + variant_name(variant.kind()) + "\n";
  out += format_rep(real.rep);
  out += "end\n";
  for (int v = 0; v < cx.num_vertices(); ++v) {
    const Vec3& p = real.f[std::size_t(v)];
    out += "pos " + cx.vertex_names[std::size_t(v)] + " " + num(p(0)) + " " + num(p(1)) + " " + num(p(2)) + "\n";
  }
  for (int e = 0; e < cx.num_edges(); ++e)
    out += "weight " + cx.edge_names[std::size_t(e)] + " " + num(variant.weights()[std::size_t(e)]) + "\n";
  return out;
}

SolvedState parse_state_text(const std::string& text, const CellComplex& complex) {
  const auto lines = tokenize(text);
  expect_header(lines, "state", "v1");
  SolvedState st;
  std::size_t k = 1;
  if (k < lines.size() && lines[k].tokens[0].text == "variant") {
    if (lines[k].tokens.size() != 2) fail("expected 'variant <name>'", lines[k], lines[k].tokens[0]);
    st.variant = lines[k].tokens[1].text;
    ++k;
  }
  // The embedded holonomy block runs up to "end".
  std::istringstream is(text);
  std::string raw, block;
  int number = 0, first = k < lines.size() ? lines[k].number : 0, last = 0;
  for (std::size_t j = k; j < lines.size(); ++j)
    if (lines[j].tokens.size() == 1 && lines[j].tokens[0].text == "end") {
      last = lines[j].number;
      k = j + 1;
      break;
    }
  if (last == 0) throw ParseError("state has no holonomy block ending in 'end'");
  while (std::getline(is, raw)) {
    ++number;
    block += number >= first && number < last ? raw + "\n" : "\n";
  }
  st.rep = parse_rep_text(block);

  std::map<std::string, int> vid, eid;
  for (int v = 0; v < complex.num_vertices(); ++v) vid[complex.vertex_names[std::size_t(v)]] = v;
  for (int e = 0; e < complex.num_edges(); ++e) eid[complex.edge_names[std::size_t(e)]] = e;
  st.positions.assign(std::size_t(complex.num_vertices()), Vec3::Constant(std::nan("")));
  st.weights.assign(std::size_t(complex.num_edges()), std::nan(""));
  for (; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const auto& t = l.tokens;
    if (t[0].text == "pos") {
      if (t.size() != 5) fail("expected 'pos <vertex> x1 x2 x3'", l, t[0]);
      const auto it = vid.find(t[1].text);
      if (it == vid.end()) fail("unknown vertex '" + t[1].text + "'", l, t[1]);
      st.positions[std::size_t(it->second)] = Vec3(parse_number(l, t[2]), parse_number(l, t[3]), parse_number(l, t[4]));
    } else if (t[0].text == "weight") {
      if (t.size() != 3) fail("expected 'weight <edge> <value>'", l, t[0]);
      const auto it = eid.find(t[1].text);
      if (it == eid.end()) fail("unknown edge '" + t[1].text + "'", l, t[1]);
      st.weights[std::size_t(it->second)] = parse_number(l, t[2]);
    } else {
      fail("unknown keyword '" + t[0].text + "'", l, t[0]);
    }
  }
  for (std::size_t v = 0; v < st.positions.size(); ++v)
    if (std::isnan(st.positions[v](0))) throw ParseError("state has no position for " + complex.vertex_names[v]);
  for (std::size_t e = 0; e < st.weights.size(); ++e)
    if (std::isnan(st.weights[e])) throw ParseError("state has no weight for " + complex.edge_names[e]);
  return st;
}

namespace {

std::string edge_table(const Realization& real, const EnergyVariant& variant) {
  const auto& cx = real.complex();
  std::string out = "edge        weight              length\n";
  for (int e = 0; e < cx.num_edges(); ++e) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-10s  %-18.12f  %.12f\n", cx.edge_names[std::size_t(e)].c_str(),
                  variant.weights()[std::size_t(e)], raw_edge_length(real, cx.edge_half[std::size_t(e)]));
    out += buf;
  }
  return out;
}

std::string kv(const std::string& key, const std::string& value) { return key + "=" + value + "\n"; }

}  // namespace

std::string inner_report(const Realization& real, const EnergyVariant& variant, const SolveResult& res) {
  std::string out = "# harmonic map at fixed holonomy\n";
  out += "variant: " + variant_name(variant.kind()) + "\n";
  out += "sweeps: " + std::to_string(res.sweeps) + "\n";
  out += "vertex steps: " + std::to_string(res.steps) + "\n";
  out += "energy: " + fmt("%.12f", res.energy_history.back()) + "\n";
  out += "max residual: " + fmt("%.3e", res.residual) + "\n\n";
  out += edge_table(real, variant);
  out += "\n[trailer]\n";
  out += kv("energy", fmt("%.12e", res.energy_history.back()));
  out += kv("residual.inner", fmt("%.3e", res.residual));
  out += kv("sweeps", std::to_string(res.sweeps));
  return out;
}

std::string optimize_report(const EnergyVariant& variant, const OptimizeSummary& s) {
  const TeichState& st = *s.state;
  const auto& cx = st.real.complex();
  std::string out = "# energy minimisation over Teichmueller space\n";
  out += "variant: " + variant_name(variant.kind()) + "\n\n## trajectory\n";
  for (const auto& e : st.log) out += format_log_entry(e) + "\n";
  out += "\n## result\n";
  out += "certified: " + std::string(st.certified ? "true" : "false") + "\n";
  out += "energy: " + fmt("%.12f", st.energy) + "\n";
  out += "tau residual: " + fmt("%.3e", st.tau.residual) + "\n";
  out += "max pairing coefficient: " + fmt("%.3e", st.gradient_max()) + "\n";
  out += "inner residual: " + fmt("%.3e", st.inner_residual) + "\n\n";
  out += edge_table(st.real, variant);

  out += "\n## vertex weights\nvertex      delta               spread\n";
  for (int v = 0; v < cx.num_vertices(); ++v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-10s  %-18.12f  %.3e\n", cx.vertex_names[std::size_t(v)].c_str(),
                  s.weights->delta[std::size_t(v)], s.weights->spread[std::size_t(v)]);
    out += buf;
  }
  out += "\n## convexity\n";
  out += "min margin: " + fmt("%.6e", s.convexity->min_margin) + "\n";
  if (s.convexity->worst_half_edge >= 0)
    out += "worst edge: " + cx.edge_names[std::size_t(cx.edge[std::size_t(s.convexity->worst_half_edge)])] + "\n";

  out += "\n## canonical weights recovered from the dual\nedge        input               recovered\n";
  for (int e = 0; e < cx.num_edges(); ++e) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-10s  %-18.12f  %.12f\n", cx.edge_names[std::size_t(e)].c_str(),
                  variant.weights()[std::size_t(e)], s.recovered[std::size_t(e)]);
    out += buf;
  }
  out += "\n[trailer]\n";
  out += kv("energy", fmt("%.12e", st.energy));
  out += kv("residual.inner", fmt("%.3e", st.inner_residual));
  out += kv("residual.tau", fmt("%.3e", st.tau.residual));
  out += kv("certified", st.certified ? "true" : "false");
  out += kv("delta.spread.max", fmt("%.3e", s.weights->max_spread));
  out += kv("convexity.margin.min", fmt("%.6e", s.convexity->min_margin));
  out += kv("iterations", std::to_string(st.iterations));
  return out;
}

}  // namespace hmap
