#pragma once

// Core value types for edge colorings of complete graphs: the edge index
// map of K_n, triangles, color palettes and their canonical forms.
//
// Vertices are 0..n-1 and colors are 0..k-1 throughout the library.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tripal {

using Vertex = int;
using Color = int;

constexpr std::int64_t choose2(std::int64_t n) {
  return n < 2 ? 0 : n * (n - 1) / 2;
}

constexpr std::int64_t choose3(std::int64_t n) {
  return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
}

constexpr int edge_count(int n) { return static_cast<int>(choose2(n)); }

constexpr std::int64_t triangle_count(int n) { return choose3(n); }

// Index of the unordered pair {i,j} in K_n. Edges sharing the larger
// endpoint j form the contiguous block [C(j,2), C(j+1,2)); the search
// engine relies on this layout for incremental triangle closure.
inline int edge_index(Vertex i, Vertex j, int n) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("edge_index: need two distinct vertices in 0..n-1");
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

// Inverse of edge_index: the pair (i,j) with i < j at the given index.
inline std::pair<Vertex, Vertex> edge_endpoints(int index, int n) {
  if (index < 0 || index >= edge_count(n))
    throw std::invalid_argument("edge_endpoints: index out of range");
  int j = 1;
  while (choose2(j + 1) <= index) ++j;
  int i = index - static_cast<int>(choose2(j));
  return {i, j};
}

enum class PaletteMode { RainbowProper, Set, Multiset };

constexpr std::array<PaletteMode, 3> all_modes{
    PaletteMode::RainbowProper, PaletteMode::Set, PaletteMode::Multiset};

inline std::string_view mode_name(PaletteMode mode) {
  switch (mode) {
    case PaletteMode::RainbowProper: return "rainbow";
    case PaletteMode::Set: return "set";
    case PaletteMode::Multiset: return "multiset";
  }
  return "?";
}

inline std::optional<PaletteMode> parse_mode(std::string_view name) {
  if (name == "rainbow") return PaletteMode::RainbowProper;
  if (name == "set") return PaletteMode::Set;
  if (name == "multiset") return PaletteMode::Multiset;
  return std::nullopt;
}

struct Triangle {
  Vertex u{}, v{}, w{};  // u < v < w

  // Accepts the vertices in any order.
  static Triangle of(Vertex a, Vertex b, Vertex c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    if (a == b || b == c)
      throw std::invalid_argument("Triangle: vertices must be distinct");
    return Triangle{a, b, c};
  }

  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

// All C(n,3) triangles of K_n in lexicographic (u,v,w) order.
inline std::vector<Triangle> triangles(int n) {
  if (n < 3) throw std::invalid_argument("triangles: need n >= 3");
  std::vector<Triangle> out;
  out.reserve(static_cast<std::size_t>(triangle_count(n)));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      for (Vertex w = v + 1; w < n; ++w) out.push_back(Triangle{u, v, w});
  return out;
}

// The three edge colors of a triangle, stored in nondecreasing order.
// One representation serves all modes: Multiset and RainbowProper compare
// the raw triple, Set compares the deduplicated color list.
struct Palette {
  Color a{}, b{}, c{};  // a <= b <= c

  static Palette sorted(Color x, Color y, Color z) {
    if (x > y) std::swap(x, y);
    if (y > z) std::swap(y, z);
    if (x > y) std::swap(x, y);
    return Palette{x, y, z};
  }

  bool contains(Color col) const { return a == col || b == col || c == col; }

  bool rainbow() const { return a < b && b < c; }

  // Distinct colors in increasing order; size 1..3.
  std::vector<Color> distinct() const {
    std::vector<Color> out{a};
    if (b != a) out.push_back(b);
    if (c != b) out.push_back(c);
    return out;
  }

  friend auto operator<=>(const Palette&, const Palette&) = default;
};

// Canonical representative of a raw color triple under a mode's equality.
// Set mode collapses duplicates and pads by repeating the last distinct
// color, so [1,1,2] and [1,2,2] both canonicalize to (1,2,2).
inline Palette canonical_palette(Color x, Color y, Color z, PaletteMode mode) {
  Palette p = Palette::sorted(x, y, z);
  if (mode != PaletteMode::Set) return p;
  if (p.a == p.b && p.b != p.c) return Palette{p.a, p.c, p.c};
  return p;  // (a,a,a), (a,b,b) and (a,b,c) are already set-canonical
}

inline bool palettes_equal(const Palette& lhs, const Palette& rhs, PaletteMode mode) {
  if (mode != PaletteMode::Set) return lhs == rhs;
  return lhs.distinct() == rhs.distinct();
}

// Rank of a sorted triple (a<=b<=c) among all color multisets of size 3,
// smallest first: C(c+2,3) + C(b+1,2) + a. Bijective onto
// 0..C(k+2,3)-1 when colors come from {0..k-1}; used as a perfect hash
// by the search and encoder modules.
inline std::int64_t palette_rank(const Palette& p) {
  return choose3(p.c + 2) + choose2(p.b + 1) + p.a;
}

// Rendering: multiset/rainbow palettes list all three colors, set
// palettes list the distinct ones.
inline std::string palette_to_string(const Palette& p, PaletteMode mode) {
  std::vector<Color> cols;
  if (mode == PaletteMode::Set) cols = p.distinct();
  else cols = {p.a, p.b, p.c};
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cols[i]);
  }
  return out;
}

// An assignment of colors to all C(n,2) edges of K_n, in edge-index
// order. k is the declared budget; stored colors must lie in 0..k-1
// (k may exceed the number of colors actually used).
struct EdgeColoring {
  int n = 0;
  int k = 0;
  std::vector<Color> colors;

  EdgeColoring() = default;

  EdgeColoring(int n_, int k_, std::vector<Color> colors_)
      : n(n_), k(k_), colors(std::move(colors_)) {
    validate();
  }

  void validate() const {
    if (n < 3) throw std::invalid_argument("EdgeColoring: need n >= 3");
    if (k < 1) throw std::invalid_argument("EdgeColoring: need k >= 1");
    if (colors.size() != static_cast<std::size_t>(edge_count(n)))
      throw std::invalid_argument("EdgeColoring: expected C(n,2) colors");
    for (Color c : colors)
      if (c < 0 || c >= k)
        throw std::invalid_argument("EdgeColoring: color id out of 0..k-1");
  }

  Color color(Vertex i, Vertex j) const {
    return colors[static_cast<std::size_t>(edge_index(i, j, n))];
  }

  int colors_used() const {
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (Color c : colors) seen[static_cast<std::size_t>(c)] = true;
    return static_cast<int>(std::count(seen.begin(), seen.end(), true));
  }

  friend bool operator==(const EdgeColoring& lhs, const EdgeColoring& rhs) = default;
};

inline Palette palette_of(const EdgeColoring& coloring, const Triangle& t,
                          PaletteMode mode) {
  return canonical_palette(coloring.color(t.u, t.v), coloring.color(t.u, t.w),
                           coloring.color(t.v, t.w), mode);
}

}  // namespace tripal
