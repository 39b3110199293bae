#pragma once

// Verification and diagnostics: properness, the palette census with its
// collision detector, palette-capacity formulas, per-color counting
// statistics, and distinguishing under edge removal.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tripal/core.hpp"

namespace tripal {

// True iff no vertex has two incident edges of equal color.
inline bool is_proper(const EdgeColoring& coloring) {
  for (Vertex v = 0; v < coloring.n; ++v) {
    std::set<Color> seen;
    for (Vertex u = 0; u < coloring.n; ++u) {
      if (u == v) continue;
      if (!seen.insert(coloring.color(u, v)).second) return false;
    }
  }
  return true;
}

// How many distinct palettes k colors can express in a mode:
//   rainbow   C(k,3)
//   set       k + C(k,2) + C(k,3)      (sets of 1..3 colors)
//   multiset  C(k+2,3)
inline std::int64_t palette_capacity(int k, PaletteMode mode) {
  if (k < 1) throw std::invalid_argument("palette_capacity: need k >= 1");
  switch (mode) {
    case PaletteMode::RainbowProper: return choose3(k);
    case PaletteMode::Set: return k + choose2(k) + choose3(k);
    case PaletteMode::Multiset: return choose3(k + 2);
  }
  return 0;
}

// Pigeonhole test: can k colors even supply C(n,3) distinct palettes?
inline bool capacity_admits(int n, int k, PaletteMode mode) {
  return triangle_count(n) <= palette_capacity(k, mode);
}

// Distinguishing by multisets needs at least n-1 colors for n >= 4;
// a single color suffices for the lone triangle of K_3.
inline int multiset_lower_bound(int n) {
  if (n < 3) throw std::invalid_argument("multiset_lower_bound: need n >= 3");
  return n == 3 ? 1 : n - 1;
}

// Exact rainbow-proper threshold: n colors when n is odd (the modular
// coloring meets the capacity floor), n+1 when n is even (k = n is
// impossible by counting; one extra color suffices by deletion).
inline int rainbow_tau(int n) {
  if (n < 3) throw std::invalid_argument("rainbow_tau: need n >= 3");
  return n % 2 == 1 ? n : n + 1;
}

// Full palette census: which triangles realize which palette. Entry
// lists come out in lexicographic triangle order; the multiset union of
// all lists is exactly triangles(n).
struct PaletteCensus {
  PaletteMode mode{};
  std::map<Palette, std::vector<Triangle>> entries;
  std::int64_t collision_count = 0;  // triangles minus distinct palettes

  bool distinguishing() const { return collision_count == 0; }
};

inline PaletteCensus census(const EdgeColoring& coloring, PaletteMode mode) {
  if (mode == PaletteMode::RainbowProper && !is_proper(coloring))
    throw std::invalid_argument("census: rainbow mode requires a proper coloring");
  PaletteCensus out;
  out.mode = mode;
  std::int64_t total = 0;
  for (const Triangle& t : triangles(coloring.n)) {
    out.entries[palette_of(coloring, t, mode)].push_back(t);
    ++total;
  }
  out.collision_count = total - static_cast<std::int64_t>(out.entries.size());
  return out;
}

struct DistinguishResult {
  bool distinguishing = false;
  // Lexicographically first pair of triangles sharing a palette.
  std::optional<std::pair<Triangle, Triangle>> collision;

  explicit operator bool() const { return distinguishing; }
};

inline DistinguishResult distinguishes(const EdgeColoring& coloring,
                                       PaletteMode mode) {
  PaletteCensus c = census(coloring, mode);
  DistinguishResult out;
  out.distinguishing = c.distinguishing();
  if (!out.distinguishing) {
    std::optional<std::pair<Triangle, Triangle>> best;
    for (const auto& [palette, list] : c.entries) {
      if (list.size() < 2) continue;
      std::pair<Triangle, Triangle> candidate{list[0], list[1]};
      if (!best || candidate < *best) best = candidate;
    }
    out.collision = best;
  }
  return out;
}

// Per-color counting quantities. solo_pair_palettes[a] counts the
// realized multiset palettes [a,b,b] with b != a, the quantity bounded
// by edges[a] in any multiset-distinguishing coloring: one a-edge can
// close at most one such palette.
struct ColorClassStats {
  PaletteMode mode{};
  std::vector<int> edges;                // m_a: edges colored a
  std::vector<int> triangles_touched;    // t_a: triangles with an a-edge
  std::vector<int> palettes_containing;  // s_a: census palettes containing a
  std::vector<int> solo_pair_palettes;   // multiset palettes [a,b,b], b != a
};

inline ColorClassStats color_class_stats(const EdgeColoring& coloring,
                                         PaletteMode mode) {
  ColorClassStats out;
  out.mode = mode;
  const auto k = static_cast<std::size_t>(coloring.k);
  out.edges.assign(k, 0);
  out.triangles_touched.assign(k, 0);
  out.palettes_containing.assign(k, 0);
  out.solo_pair_palettes.assign(k, 0);

  for (Color c : coloring.colors) ++out.edges[static_cast<std::size_t>(c)];

  for (const Triangle& t : triangles(coloring.n)) {
    Palette p = palette_of(coloring, t, PaletteMode::Multiset);
    for (Color c : p.distinct())
      ++out.triangles_touched[static_cast<std::size_t>(c)];
  }

  for (const auto& [palette, list] : census(coloring, mode).entries)
    for (Color c : palette.distinct())
      ++out.palettes_containing[static_cast<std::size_t>(c)];

  // Shapes [a,b,b] only exist among multisets, so count them there no
  // matter which census mode was requested.
  for (const auto& [palette, list] : census(coloring, PaletteMode::Multiset).entries) {
    if (palette.a == palette.b && palette.b != palette.c)
      ++out.solo_pair_palettes[static_cast<std::size_t>(palette.c)];
    else if (palette.a != palette.b && palette.b == palette.c)
      ++out.solo_pair_palettes[static_cast<std::size_t>(palette.a)];
  }
  return out;
}

// Which edges of K_n survive; a triangle survives iff all three of its
// edges are kept.
struct EdgeMask {
  int n = 0;
  std::vector<bool> kept;

  static EdgeMask full(int n) {
    return EdgeMask{n, std::vector<bool>(static_cast<std::size_t>(edge_count(n)), true)};
  }

  void drop(Vertex i, Vertex j) {
    kept[static_cast<std::size_t>(edge_index(i, j, n))] = false;
  }

  bool keeps(const Triangle& t) const {
    return kept[static_cast<std::size_t>(edge_index(t.u, t.v, n))] &&
           kept[static_cast<std::size_t>(edge_index(t.u, t.w, n))] &&
           kept[static_cast<std::size_t>(edge_index(t.v, t.w, n))];
  }
};

// True iff the triangles surviving the mask still have pairwise distinct
// palettes. Always true when the unmasked coloring distinguishes.
inline bool restrict_distinguishes(const EdgeColoring& coloring,
                                   const EdgeMask& mask, PaletteMode mode) {
  if (mask.n != coloring.n)
    throw std::invalid_argument("restrict_distinguishes: mask size mismatch");
  std::set<Palette> seen;
  for (const Triangle& t : triangles(coloring.n)) {
    if (!mask.keeps(t)) continue;
    if (!seen.insert(palette_of(coloring, t, mode)).second) return false;
  }
  return true;
}

// CSV export: `palette;count;triangles`, one row per census entry in
// palette order. Triangles are rendered u-v-w and separated by spaces.
inline std::string census_csv(const PaletteCensus& c) {
  std::string out = "palette;count;triangles\n";
  for (const auto& [palette, list] : c.entries) {
    out += palette_to_string(palette, c.mode);
    out += ';';
    out += std::to_string(list.size());
    out += ';';
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(list[i].u);
      out += '-';
      out += std::to_string(list[i].v);
      out += '-';
      out += std::to_string(list[i].w);
    }
    out += '\n';
  }
  return out;
}

}  // namespace tripal
