#pragma once

// Explicit triangle-distinguishing colorings of K_n.
//
// For odd n, coloring edge {i,j} with (i+j) mod n is proper and realizes
// every 3-subset of the n colors as the palette of exactly one triangle.
// For even n the same coloring of K_{n+1} restricted to n vertices does
// the job with n+1 colors.

#include <stdexcept>

#include "tripal/core.hpp"

namespace tripal {

inline int mod_reduce(long long value, int n) {
  long long r = value % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// Edge {i,j} gets color (i+j) mod n. Requires odd n >= 3; uses k = n.
inline EdgeColoring modular_coloring(int n) {
  if (n < 3) throw std::invalid_argument("modular_coloring: need n >= 3");
  if (n % 2 == 0) throw std::invalid_argument("modular_coloring: n must be odd");
  std::vector<Color> colors(static_cast<std::size_t>(edge_count(n)));
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i)
      colors[static_cast<std::size_t>(edge_index(i, j, n))] = mod_reduce(i + j, n);
  return EdgeColoring(n, n, std::move(colors));
}

// Coloring of K_n for even n >= 4: build the modular coloring of K_{n+1}
// and delete the highest-indexed vertex. Since edges are indexed by their
// larger endpoint, deletion is a prefix truncation of the color array.
// k stays n+1 even though one color loses part of its class.
inline EdgeColoring even_coloring(int n) {
  if (n < 4) throw std::invalid_argument("even_coloring: need n >= 4");
  if (n % 2 != 0) throw std::invalid_argument("even_coloring: n must be even");
  EdgeColoring big = modular_coloring(n + 1);
  big.colors.resize(static_cast<std::size_t>(edge_count(n)));
  return EdgeColoring(n, n + 1, std::move(big.colors));
}

// The unique triangle {p,q,r} of the modular coloring whose palette is a
// given set of three distinct colors.
struct PaletteSolution {
  Vertex p{}, q{}, r{};
};

// Solves p+q = a, q+r = b, r+p = c (mod n) for odd n via the closed
// forms p = ((n+1)/2)(a-b+c), q = ((n+1)/2)(a+b-c), r = ((n+1)/2)(-a+b+c);
// (n+1)/2 is the inverse of 2 mod n. Distinct inputs force p, q, r
// pairwise distinct: p-q = c-b, q-r = a-c, r-p = b-a (mod n).
inline PaletteSolution solve_palette_system(Color a, Color b, Color c, int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("solve_palette_system: need odd n >= 3");
  auto in_range = [n](Color x) { return x >= 0 && x < n; };
  if (!in_range(a) || !in_range(b) || !in_range(c))
    throw std::invalid_argument("solve_palette_system: colors must lie in 0..n-1");
  if (a == b || b == c || a == c)
    throw std::invalid_argument("solve_palette_system: colors must be pairwise distinct");
  const long long half = (n + 1) / 2;
  PaletteSolution s;
  s.p = mod_reduce(half * mod_reduce(a - b + c, n), n);
  s.q = mod_reduce(half * mod_reduce(a + b - c, n), n);
  s.r = mod_reduce(half * mod_reduce(-a + b + c, n), n);
  return s;
}

}  // namespace tripal
