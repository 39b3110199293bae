#pragma once

// Command implementations behind the command-line tool. Every command
// writes through caller-supplied streams and returns a process exit
// code, so tests can drive the surface in-process.
//
// Exit codes: 0 success / distinguishing / SAT, 1 negative decision
// (non-distinguishing or UNSAT), 2 usage error, 3 limit hit.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tripal/analysis.hpp"
#include "tripal/cnf.hpp"
#include "tripal/constructions.hpp"
#include "tripal/core.hpp"
#include "tripal/document.hpp"
#include "tripal/search.hpp"

namespace tripal {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitLimit = 3;

namespace detail {

inline std::string color_list(const std::vector<Color>& colors) {
  std::string out;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(colors[i]);
  }
  return out;
}

inline std::string triangle_label(const Triangle& t) {
  return std::to_string(t.u) + "-" + std::to_string(t.v) + "-" + std::to_string(t.w);
}

inline void print_outcome_stats(const SearchOutcome& outcome, std::ostream& out) {
  out << "nodes=" << outcome.nodes_explored << " elapsed=" << outcome.elapsed.count()
      << "s\n";
}

}  // namespace detail

struct ConstructArgs {
  std::string kind;  // modular | even
  int n = 0;
  std::string output_path;  // empty: document to stdout, summary to stderr
};

inline int cmd_construct(const ConstructArgs& args, std::ostream& out,
                         std::ostream& err) {
  EdgeColoring coloring;
  std::string note;
  if (args.kind == "modular") {
    if (args.n < 3 || args.n % 2 == 0) {
      err << "construct: modular needs odd n >= 3\n";
      return kExitUsage;
    }
    coloring = modular_coloring(args.n);
    note = "modular coloring of K_" + std::to_string(args.n);
  } else if (args.kind == "even") {
    if (args.n < 4 || args.n % 2 == 1) {
      err << "construct: even needs even n >= 4\n";
      return kExitUsage;
    }
    coloring = even_coloring(args.n);
    note = "modular coloring of K_" + std::to_string(args.n + 1) +
           " with one vertex deleted";
  } else {
    err << "construct: unknown kind '" << args.kind << "' (modular|even)\n";
    return kExitUsage;
  }

  const PaletteCensus c = census(coloring, PaletteMode::RainbowProper);
  std::ostringstream summary;
  summary << "n=" << coloring.n << " k=" << coloring.k
          << " proper=" << (is_proper(coloring) ? "yes" : "no")
          << " distinguishing=" << (c.distinguishing() ? "yes" : "no")
          << " palettes=" << c.entries.size() << "/" << triangle_count(coloring.n)
          << "\n";

  ColoringDocument doc{coloring, PaletteMode::RainbowProper, note};
  if (args.output_path.empty()) {
    save_document(doc, out);
    err << summary.str();
  } else {
    try {
      save_document(doc, args.output_path);
    } catch (const std::exception& e) {
      err << "construct: " << e.what() << "\n";
      return kExitUsage;
    }
    out << summary.str();
  }
  return kExitSuccess;
}

struct VerifyArgs {
  std::string file;
  std::optional<PaletteMode> mode;  // default: the document's own label
};

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  ColoringDocument doc;
  try {
    doc = load_document(args.file);
  } catch (const std::exception& e) {
    err << "verify: " << e.what() << "\n";
    return kExitUsage;
  }
  const PaletteMode mode = args.mode.value_or(doc.mode);
  const EdgeColoring& coloring = doc.coloring;

  out << "n=" << coloring.n << " k=" << coloring.k << " mode=" << mode_name(mode)
      << "\n";
  const bool proper = is_proper(coloring);
  out << "proper: " << (proper ? "yes" : "no") << "\n";
  out << "capacity: " << triangle_count(coloring.n) << " triangles vs "
      << palette_capacity(coloring.k, mode) << " palettes ("
      << (capacity_admits(coloring.n, coloring.k, mode) ? "admits" : "falls short")
      << ")\n";
  if (mode == PaletteMode::RainbowProper && !proper) {
    out << "NOT DISTINGUISHING (rainbow palettes require a proper coloring)\n";
    return kExitNegative;
  }

  const PaletteCensus c = census(coloring, mode);
  out << "palettes realized: " << c.entries.size() << "/" << triangle_count(coloring.n)
      << "\n";
  const ColorClassStats stats = color_class_stats(coloring, mode);
  for (Color a = 0; a < coloring.k; ++a)
    out << "color " << a << ": edges=" << stats.edges[static_cast<std::size_t>(a)]
        << " triangles=" << stats.triangles_touched[static_cast<std::size_t>(a)]
        << " palettes=" << stats.palettes_containing[static_cast<std::size_t>(a)]
        << " solo_pair_palettes="
        << stats.solo_pair_palettes[static_cast<std::size_t>(a)] << "\n";

  const DistinguishResult verdict = distinguishes(coloring, mode);
  if (verdict.distinguishing) {
    out << "DISTINGUISHING\n";
    return kExitSuccess;
  }
  out << "NOT DISTINGUISHING: triangles "
      << detail::triangle_label(verdict.collision->first) << " and "
      << detail::triangle_label(verdict.collision->second) << " share palette ["
      << palette_to_string(palette_of(coloring, verdict.collision->first, mode), mode)
      << "]\n";
  return kExitNegative;
}

struct SearchArgs {
  int n = 0;
  std::optional<int> k;
  PaletteMode mode = PaletteMode::Multiset;
  bool proper = false;
  bool minimize = false;
  int jobs = 1;
  std::optional<std::uint64_t> node_limit;
  std::optional<double> time_limit;  // seconds
  std::string emit_witness;          // document path; empty: none
  bool progress = false;
};

inline int cmd_search(const SearchArgs& args, std::ostream& out, std::ostream& err) {
  if (args.n < 3) {
    err << "search: need n >= 3\n";
    return kExitUsage;
  }
  if (args.mode == PaletteMode::RainbowProper && !args.proper) {
    err << "search: rainbow mode requires --proper\n";
    return kExitUsage;
  }
  if (!args.minimize && !args.k) {
    err << "search: give k or --minimize\n";
    return kExitUsage;
  }
  if (args.k && *args.k < 1) {
    err << "search: need k >= 1\n";
    return kExitUsage;
  }
  std::optional<std::chrono::duration<double>> time_limit;
  if (args.time_limit) time_limit = std::chrono::duration<double>(*args.time_limit);

  const auto emit = [&](const EdgeColoring& witness, const std::string& note) {
    if (args.emit_witness.empty()) return true;
    try {
      save_document(ColoringDocument{witness, args.mode, note}, args.emit_witness);
    } catch (const std::exception& e) {
      err << "search: " << e.what() << "\n";
      return false;
    }
    return true;
  };

  if (args.minimize) {
    MinimizeOptions opt{args.node_limit, time_limit, args.jobs};
    const TauResult result = minimize(args.n, args.mode, args.proper, opt);
    if (result.status == SearchStatus::Inconclusive) {
      out << "K_" << args.n << " " << mode_name(args.mode)
          << (args.proper ? " proper" : "") << " minimize: INCONCLUSIVE at k="
          << result.stopped_k << "\n";
      if (result.stopped) {
        out << "stopped: k=" << result.stopped_k << " ";
        detail::print_outcome_stats(*result.stopped, out);
      }
      return kExitLimit;
    }
    out << "K_" << args.n << " " << mode_name(args.mode)
        << (args.proper ? " proper" : "") << " minimize: tau=" << result.tau << "\n";
    out << "sat: k=" << result.tau << " ";
    detail::print_outcome_stats(result.sat, out);
    out << "witness colors: " << detail::color_list(result.sat.witness->colors)
        << "\n";
    if (result.unsat_k >= 1 && result.unsat) {
      out << "below: k=" << result.unsat_k << " status="
          << to_string(result.unsat->status) << " ";
      detail::print_outcome_stats(*result.unsat, out);
    }
    if (!emit(*result.sat.witness,
              "search minimize n=" + std::to_string(args.n) + " mode=" +
                  std::string(mode_name(args.mode)) +
                  (args.proper ? " proper" : "") + " tau=" + std::to_string(result.tau)))
      return kExitUsage;
    return kExitSuccess;
  }

  SearchProblem problem{args.n,      *args.k,         args.mode,
                        args.proper, args.node_limit, time_limit};
  detail::SearchTuning tuning;
  tuning.jobs = args.jobs;
  if (args.progress)
    tuning.progress = [&err](std::uint64_t nodes, int depth, double elapsed) {
      err << "progress nodes=" << nodes << " depth=" << depth << " elapsed=" << elapsed
          << "s\n";
    };
  const SearchOutcome outcome = detail::decide_impl(problem, tuning);
  out << "K_" << args.n << " " << mode_name(args.mode) << " k=" << *args.k
      << (args.proper ? " proper" : "") << ": " << to_string(outcome.status) << "\n";
  detail::print_outcome_stats(outcome, out);
  if (outcome.status == SearchStatus::Sat) {
    out << "witness colors: " << detail::color_list(outcome.witness->colors) << "\n";
    if (!emit(*outcome.witness,
              "search n=" + std::to_string(args.n) + " k=" + std::to_string(*args.k) +
                  " mode=" + std::string(mode_name(args.mode)) +
                  (args.proper ? " proper" : "")))
      return kExitUsage;
    return kExitSuccess;
  }
  return outcome.status == SearchStatus::Unsat ? kExitNegative : kExitLimit;
}

inline int cmd_capacity(int k, std::ostream& out, std::ostream& err) {
  if (k < 1) {
    err << "capacity: need k >= 1\n";
    return kExitUsage;
  }
  out << "k=" << k << " capacities:";
  for (PaletteMode mode : all_modes)
    out << " " << mode_name(mode) << "=" << palette_capacity(k, mode);
  out << "\n";
  return kExitSuccess;
}

inline int cmd_bounds(int n, std::ostream& out, std::ostream& err) {
  if (n < 3) {
    err << "bounds: need n >= 3\n";
    return kExitUsage;
  }
  out << "K_" << n << " (" << triangle_count(n) << " triangles)\n";
  out << "rainbow: tau=" << rainbow_tau(n) << " (exact)\n";
  if (n == 3) {
    out << "set: tau=1 (exact)\n";
    out << "multiset: tau=1 (exact)\n";
  } else {
    const int floor_m = std::max(multiset_lower_bound(n), sweep_floor(n, PaletteMode::Multiset));
    const int floor_s = std::max(multiset_lower_bound(n), sweep_floor(n, PaletteMode::Set));
    out << "set: tau>=" << floor_s << "\n";
    out << "multiset: tau>=" << floor_m << "\n";
  }
  out << "chain: multiset tau <= set tau <= rainbow tau\n";
  return kExitSuccess;
}

inline std::string dot_text(const EdgeColoring& coloring) {
  std::ostringstream out;
  out << "graph K" << coloring.n << " {\n";
  for (Vertex v = 0; v < coloring.n; ++v) out << "  " << v << ";\n";
  for (int e = 0; e < edge_count(coloring.n); ++e) {
    auto [i, j] = edge_endpoints(e, coloring.n);
    out << "  " << i << " -- " << j << " [label=\""
        << coloring.colors[static_cast<std::size_t>(e)] << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

struct ExportArgs {
  std::string file;    // coloring document, for dot/csv
  std::string format;  // dot | csv | dimacs
  std::optional<int> n, k;          // dimacs
  std::optional<PaletteMode> mode;  // dimacs requires; csv may override
  bool proper = false;              // dimacs
  std::string output_path;          // empty: stdout
};

inline int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  std::ostringstream text;
  if (args.format == "dot" || args.format == "csv") {
    if (args.file.empty()) {
      err << "export: " << args.format << " needs a coloring document\n";
      return kExitUsage;
    }
    ColoringDocument doc;
    try {
      doc = load_document(args.file);
    } catch (const std::exception& e) {
      err << "export: " << e.what() << "\n";
      return kExitUsage;
    }
    if (args.format == "dot") {
      text << dot_text(doc.coloring);
    } else {
      const PaletteMode mode = args.mode.value_or(doc.mode);
      try {
        text << census_csv(census(doc.coloring, mode));
      } catch (const std::exception& e) {
        err << "export: " << e.what() << "\n";
        return kExitUsage;
      }
    }
  } else if (args.format == "dimacs") {
    if (!args.n || !args.k || !args.mode) {
      err << "export: dimacs needs -n, -k and --mode\n";
      return kExitUsage;
    }
    if (*args.mode == PaletteMode::RainbowProper && !args.proper) {
      err << "export: rainbow mode requires --proper\n";
      return kExitUsage;
    }
    try {
      SearchProblem problem{*args.n, *args.k, *args.mode, args.proper, {}, {}};
      write_dimacs(encode(problem), text);
    } catch (const std::exception& e) {
      err << "export: " << e.what() << "\n";
      return kExitUsage;
    }
  } else {
    err << "export: unknown format '" << args.format << "' (dot|csv|dimacs)\n";
    return kExitUsage;
  }

  if (args.output_path.empty()) {
    out << text.str();
  } else {
    std::ofstream file(args.output_path);
    if (!file) {
      err << "export: cannot open '" << args.output_path << "' for writing\n";
      return kExitUsage;
    }
    file << text.str();
  }
  return kExitSuccess;
}

}  // namespace tripal
