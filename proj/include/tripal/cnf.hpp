#pragma once

// CNF compilation of the decision problem, for handing to an external
// SAT solver when an instance outgrows the native engine.
//
// Variables: one selector x(e,c) = 1 + e*k + c per edge and color, then
// one indicator per (triangle, admissible palette) pair, defined in both
// directions so a model's indicators mirror realization exactly. Each
// palette carries a pairwise at-most-one block over its indicators: no
// two triangles may realize the same palette.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tripal/core.hpp"
#include "tripal/search.hpp"

namespace tripal {

struct VarInfo {
  enum class Kind { EdgeColor, TrianglePalette };
  Kind kind = Kind::EdgeColor;
  int edge = -1;          // EdgeColor
  Color color = -1;       // EdgeColor
  Triangle triangle{};    // TrianglePalette
  Palette palette{};      // TrianglePalette
};

struct CnfInstance {
  SearchProblem problem;
  int variables = 0;
  std::vector<VarInfo> legend;  // legend[v-1] describes variable v
  std::vector<int> literals;    // flat clause storage
  std::vector<std::size_t> clause_start;

  std::size_t clause_count() const { return clause_start.size(); }

  std::span<const int> clause(std::size_t i) const {
    const std::size_t begin = clause_start[i];
    const std::size_t end =
        (i + 1 < clause_start.size()) ? clause_start[i + 1] : literals.size();
    return {literals.data() + begin, end - begin};
  }

  int edge_var(int e, Color c) const { return 1 + e * problem.k + c; }
};

struct EncodeOptions {
  std::int64_t clause_budget = 10'000'000;
};

// Palettes a triangle may legally realize under the mode, in canonical
// form (sets collapse {a,c} onto (a,c,c)).
inline std::vector<Palette> admissible_palettes(int k, PaletteMode mode) {
  std::vector<Palette> out;
  for (Color a = 0; a < k; ++a)
    for (Color b = a; b < k; ++b)
      for (Color c = b; c < k; ++c) {
        const bool mono = a == b && b == c;
        const bool rainbow = a < b && b < c;
        const bool set_pair = a < b && b == c;
        switch (mode) {
          case PaletteMode::RainbowProper:
            if (rainbow) out.push_back(Palette{a, b, c});
            break;
          case PaletteMode::Set:
            if (mono || rainbow || set_pair) out.push_back(Palette{a, b, c});
            break;
          case PaletteMode::Multiset:
            out.push_back(Palette{a, b, c});
            break;
        }
      }
  return out;
}

namespace detail {

class CnfBuilder {
 public:
  CnfBuilder(const SearchProblem& problem, const EncodeOptions& opt)
      : p_(problem), opt_(opt) {}

  CnfInstance build() {
    p_.validate();
    const int m = edge_count(p_.n);
    const auto tris = triangles(p_.n);
    const auto palettes = admissible_palettes(p_.k, p_.mode);
    check_budget(m, static_cast<std::int64_t>(tris.size()),
                 static_cast<std::int64_t>(palettes.size()));

    inst_.problem = p_;
    inst_.variables = m * p_.k +
                      static_cast<int>(tris.size()) * static_cast<int>(palettes.size());
    inst_.legend.resize(static_cast<std::size_t>(inst_.variables));
    for (int e = 0; e < m; ++e)
      for (Color c = 0; c < p_.k; ++c) {
        VarInfo& info = inst_.legend[static_cast<std::size_t>(inst_.edge_var(e, c)) - 1];
        info.kind = VarInfo::Kind::EdgeColor;
        info.edge = e;
        info.color = c;
      }
    aux_base_ = m * p_.k + 1;
    palette_count_ = static_cast<int>(palettes.size());
    for (std::size_t t = 0; t < tris.size(); ++t)
      for (std::size_t pi = 0; pi < palettes.size(); ++pi) {
        VarInfo& info =
            inst_.legend[static_cast<std::size_t>(indicator(static_cast<int>(t),
                                                            static_cast<int>(pi))) -
                         1];
        info.kind = VarInfo::Kind::TrianglePalette;
        info.triangle = tris[t];
        info.palette = palettes[pi];
      }

    for (int e = 0; e < m; ++e) exactly_one_color(e);
    if (p_.require_proper) properness();
    for (std::size_t t = 0; t < tris.size(); ++t)
      for (std::size_t pi = 0; pi < palettes.size(); ++pi)
        define_indicator(tris[t], static_cast<int>(t), palettes[pi],
                         static_cast<int>(pi));
    for (std::size_t pi = 0; pi < palettes.size(); ++pi)
      for (std::size_t t1 = 0; t1 < tris.size(); ++t1)
        for (std::size_t t2 = t1 + 1; t2 < tris.size(); ++t2)
          add({-indicator(static_cast<int>(t1), static_cast<int>(pi)),
               -indicator(static_cast<int>(t2), static_cast<int>(pi))});

    return std::move(inst_);
  }

 private:
  void check_budget(std::int64_t m, std::int64_t t, std::int64_t p) const {
    std::int64_t defining = 0;
    const std::int64_t k = p_.k;
    switch (p_.mode) {
      case PaletteMode::RainbowProper:
        defining = 12 * choose3(static_cast<int>(k));
        break;
      case PaletteMode::Set:
        defining = 4 * k + 11 * choose2(static_cast<int>(k)) +
                   12 * choose3(static_cast<int>(k));
        break;
      case PaletteMode::Multiset:
        defining = 4 * k + 10 * k * (k - 1) + 12 * choose3(static_cast<int>(k));
        break;
    }
    std::int64_t total = m * (1 + choose2(p_.k));
    if (p_.require_proper)
      total += static_cast<std::int64_t>(p_.n) * choose2(p_.n - 1) * k;
    total += t * defining;
    total += p * (t * (t - 1) / 2);
    if (total > opt_.clause_budget)
      throw std::invalid_argument("encode: clause budget exceeded (" +
                                  std::to_string(total) + " > " +
                                  std::to_string(opt_.clause_budget) + ")");
  }

  int indicator(int t, int pi) const { return aux_base_ + t * palette_count_ + pi; }

  void add(std::initializer_list<int> lits) {
    inst_.clause_start.push_back(inst_.literals.size());
    inst_.literals.insert(inst_.literals.end(), lits.begin(), lits.end());
  }

  void add(const std::vector<int>& lits) {
    inst_.clause_start.push_back(inst_.literals.size());
    inst_.literals.insert(inst_.literals.end(), lits.begin(), lits.end());
  }

  void exactly_one_color(int e) {
    std::vector<int> alo;
    for (Color c = 0; c < p_.k; ++c) alo.push_back(inst_.edge_var(e, c));
    add(alo);
    for (Color c1 = 0; c1 < p_.k; ++c1)
      for (Color c2 = c1 + 1; c2 < p_.k; ++c2)
        add({-inst_.edge_var(e, c1), -inst_.edge_var(e, c2)});
  }

  void properness() {
    for (Vertex v = 0; v < p_.n; ++v) {
      std::vector<int> incident;
      for (Vertex u = 0; u < p_.n; ++u)
        if (u != v) incident.push_back(edge_index(u, v, p_.n));
      std::sort(incident.begin(), incident.end());
      for (std::size_t i = 0; i < incident.size(); ++i)
        for (std::size_t j = i + 1; j < incident.size(); ++j)
          for (Color c = 0; c < p_.k; ++c)
            add({-inst_.edge_var(incident[i], c), -inst_.edge_var(incident[j], c)});
    }
  }

  // Indicator y equivalent to "this triangle's edges realize this
  // palette": one clause per realizing assignment implies y; the reverse
  // direction pins the realization shape.
  void define_indicator(const Triangle& tri, int t, const Palette& pal, int pi) {
    const int y = indicator(t, pi);
    const int e1 = edge_index(tri.u, tri.v, p_.n);
    const int e2 = edge_index(tri.u, tri.w, p_.n);
    const int e3 = edge_index(tri.v, tri.w, p_.n);
    const int edges[3] = {e1, e2, e3};

    const bool mono = pal.a == pal.b && pal.b == pal.c;
    const bool rainbow = pal.rainbow();
    const bool set_pair = p_.mode == PaletteMode::Set && !mono && !rainbow;

    if (mono) {
      add({-inst_.edge_var(e1, pal.a), -inst_.edge_var(e2, pal.a),
           -inst_.edge_var(e3, pal.a), y});
      for (int e : edges) add({-y, inst_.edge_var(e, pal.a)});
      return;
    }
    if (rainbow) {
      const Color cs[3] = {pal.a, pal.b, pal.c};
      int perm[3] = {0, 1, 2};
      do {
        add({-inst_.edge_var(e1, cs[perm[0]]), -inst_.edge_var(e2, cs[perm[1]]),
             -inst_.edge_var(e3, cs[perm[2]]), y});
      } while (std::next_permutation(perm, perm + 3));
      for (int e : edges)
        add({-y, inst_.edge_var(e, pal.a), inst_.edge_var(e, pal.b),
             inst_.edge_var(e, pal.c)});
      for (Color c : cs)
        add({-y, inst_.edge_var(e1, c), inst_.edge_var(e2, c), inst_.edge_var(e3, c)});
      return;
    }
    if (set_pair) {
      // Canonical (a,c,c) stands for the color set {a,c}: both colors
      // present, nothing else.
      const Color lo = pal.a, hi = pal.c;
      for (int mask = 1; mask <= 6; ++mask)
        add({-inst_.edge_var(e1, (mask & 1) ? hi : lo),
             -inst_.edge_var(e2, (mask & 2) ? hi : lo),
             -inst_.edge_var(e3, (mask & 4) ? hi : lo), y});
      for (int e : edges)
        add({-y, inst_.edge_var(e, lo), inst_.edge_var(e, hi)});
      add({-y, inst_.edge_var(e1, lo), inst_.edge_var(e2, lo), inst_.edge_var(e3, lo)});
      add({-y, inst_.edge_var(e1, hi), inst_.edge_var(e2, hi), inst_.edge_var(e3, hi)});
      return;
    }
    // Multiset double [d,d,s]: d on two edges, s on the third.
    const Color d = (pal.a == pal.b) ? pal.a : pal.b;
    const Color s = (pal.a == pal.b) ? pal.c : pal.a;
    for (int single = 0; single < 3; ++single) {
      std::vector<int> lits;
      for (int e = 0; e < 3; ++e)
        lits.push_back(-inst_.edge_var(edges[e], e == single ? s : d));
      lits.push_back(y);
      add(lits);
    }
    for (int e : edges) add({-y, inst_.edge_var(e, d), inst_.edge_var(e, s)});
    add({-y, inst_.edge_var(e1, s), inst_.edge_var(e2, s), inst_.edge_var(e3, s)});
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        add({-y, -inst_.edge_var(edges[i], s), -inst_.edge_var(edges[j], s)});
  }

  SearchProblem p_;
  EncodeOptions opt_;
  CnfInstance inst_;
  int aux_base_ = 0;
  int palette_count_ = 0;
};

}  // namespace detail

inline CnfInstance encode(const SearchProblem& problem, const EncodeOptions& opt = {}) {
  return detail::CnfBuilder(problem, opt).build();
}

// Full satisfying assignment induced by a coloring: selectors from the
// colors, indicators from the realized palettes.
inline std::vector<bool> selector_assignment(const CnfInstance& inst,
                                             const EdgeColoring& coloring) {
  if (coloring.n != inst.problem.n || coloring.k != inst.problem.k)
    throw std::invalid_argument("selector_assignment: instance/coloring mismatch");
  std::vector<bool> truth(static_cast<std::size_t>(inst.variables) + 1, false);
  for (int v = 1; v <= inst.variables; ++v) {
    const VarInfo& info = inst.legend[static_cast<std::size_t>(v) - 1];
    if (info.kind == VarInfo::Kind::EdgeColor) {
      truth[static_cast<std::size_t>(v)] =
          coloring.colors[static_cast<std::size_t>(info.edge)] == info.color;
    } else {
      const Palette realized =
          palette_of(coloring, info.triangle, inst.problem.mode);
      truth[static_cast<std::size_t>(v)] =
          palettes_equal(realized, info.palette, inst.problem.mode);
    }
  }
  return truth;
}

// Reads each edge's unique true selector out of a satisfying model.
inline EdgeColoring decode(const CnfInstance& inst, const std::vector<bool>& truth) {
  if (truth.size() != static_cast<std::size_t>(inst.variables) + 1)
    throw std::invalid_argument("decode: model size mismatch");
  const int m = edge_count(inst.problem.n);
  std::vector<Color> colors(static_cast<std::size_t>(m), -1);
  for (int e = 0; e < m; ++e) {
    for (Color c = 0; c < inst.problem.k; ++c) {
      if (!truth[static_cast<std::size_t>(inst.edge_var(e, c))]) continue;
      if (colors[static_cast<std::size_t>(e)] != -1)
        throw std::invalid_argument("decode: multiple selectors true on an edge");
      colors[static_cast<std::size_t>(e)] = c;
    }
    if (colors[static_cast<std::size_t>(e)] == -1)
      throw std::invalid_argument("decode: no selector true on an edge");
  }
  return EdgeColoring(inst.problem.n, inst.problem.k, colors);
}

// Standard solver output: optional "s ..." status line, model literals
// on "v" lines or bare, terminated by 0. Lines starting with "c" are
// comments.
inline std::vector<bool> parse_model(const CnfInstance& inst, const std::string& text) {
  std::vector<bool> truth(static_cast<std::size_t>(inst.variables) + 1, false);
  std::istringstream lines(text);
  std::string line;
  bool saw_literal = false;
  while (std::getline(lines, line)) {
    std::istringstream words(line);
    std::string tok;
    while (words >> tok) {
      if (tok == "c") break;  // comment line
      if (tok == "v") continue;
      if (tok == "s" || tok == "SAT" || tok == "SATISFIABLE") continue;
      if (tok == "UNSAT" || tok == "UNSATISFIABLE")
        throw std::invalid_argument("parse_model: solver reported UNSAT");
      std::size_t used = 0;
      long lit = 0;
      try {
        lit = std::stol(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_model: unexpected token '" + tok + "'");
      }
      if (used != tok.size())
        throw std::invalid_argument("parse_model: unexpected token '" + tok + "'");
      if (lit == 0) return truth;
      const long var = lit > 0 ? lit : -lit;
      if (var > inst.variables)
        throw std::invalid_argument("parse_model: literal out of range: " +
                                    std::to_string(lit));
      truth[static_cast<std::size_t>(var)] = lit > 0;
      saw_literal = true;
    }
  }
  if (!saw_literal) throw std::invalid_argument("parse_model: no literals found");
  return truth;
}

// Self-describing DIMACS: comments carry the parameters and the full
// variable legend.
inline void write_dimacs(const CnfInstance& inst, std::ostream& out) {
  const auto& p = inst.problem;
  out << "c triangle-distinguishing coloring of K_" << p.n << "\n";
  out << "c n " << p.n << " k " << p.k << " mode " << mode_name(p.mode) << " proper "
      << (p.require_proper ? 1 : 0) << "\n";
  out << "c edge selectors: var 1 + e*" << p.k
      << " + c <=> edge e (edge-index order) has color c\n";
  out << "c palette indicators:\n";
  for (int v = 1; v <= inst.variables; ++v) {
    const VarInfo& info = inst.legend[static_cast<std::size_t>(v) - 1];
    if (info.kind != VarInfo::Kind::TrianglePalette) continue;
    out << "c var " << v << " : triangle " << info.triangle.u << "-" << info.triangle.v
        << "-" << info.triangle.w << " palette ["
        << palette_to_string(info.palette, p.mode) << "]\n";
  }
  out << "p cnf " << inst.variables << " " << inst.clause_count() << "\n";
  for (std::size_t i = 0; i < inst.clause_count(); ++i) {
    for (int lit : inst.clause(i)) out << lit << " ";
    out << "0\n";
  }
}

}  // namespace tripal
