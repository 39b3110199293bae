#pragma once

// Exact decision engine: does a k-color triangle-distinguishing coloring
// of K_n exist, and what is the minimum k?
//
// Backtracking follows the edge-index order, so coloring edge (i,j)
// closes exactly the triangles {x,i,j} with x < i, whose other two edges
// are already colored. Each closed triangle's palette is checked against
// an occupancy table keyed by palette rank; the first repeat prunes the
// branch. Color-relabeling symmetry is broken by allowing color c on an
// edge only if c <= 1 + the largest color used earlier.
//
// Parallel runs split the tree at a fixed prefix depth chosen
// independently of the worker count; subtree results are merged in
// prefix order, so status, witness and node counts are identical across
// runs and worker counts. Node counts stay reproducible under a node
// limit; a time limit naturally is not.

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "tripal/analysis.hpp"
#include "tripal/core.hpp"

namespace tripal {

struct SearchProblem {
  int n = 0;
  int k = 0;
  PaletteMode mode = PaletteMode::Multiset;
  bool require_proper = false;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::duration<double>> time_limit;

  void validate() const {
    if (n < 3) throw std::invalid_argument("SearchProblem: need n >= 3");
    if (k < 1) throw std::invalid_argument("SearchProblem: need k >= 1");
    if (mode == PaletteMode::RainbowProper && !require_proper)
      throw std::invalid_argument("SearchProblem: rainbow mode implies proper");
  }
};

enum class SearchStatus { Sat, Unsat, Inconclusive };

inline std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Sat: return "SAT";
    case SearchStatus::Unsat: return "UNSAT";
    case SearchStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct SearchOutcome {
  SearchStatus status = SearchStatus::Inconclusive;
  std::optional<EdgeColoring> witness;  // present iff status == Sat
  std::uint64_t nodes_explored = 0;     // committed partial assignments
  std::chrono::duration<double> elapsed{0};
};

namespace detail {

struct SearchTuning {
  int jobs = 1;
  bool canonical_colors = true;  // color symmetry breaking; tests may disable
  std::size_t prefix_target = 256;
  // Progress lines for long sequential runs: (nodes, depth, elapsed s),
  // reported at subtree boundaries.
  std::function<void(std::uint64_t, int, double)> progress;
};

class TriangleSearch {
 public:
  TriangleSearch(const SearchProblem& problem, const SearchTuning& tuning)
      : p_(problem), tuning_(tuning), m_(edge_count(problem.n)) {
    endpoints_.resize(static_cast<std::size_t>(m_));
    closures_.resize(static_cast<std::size_t>(m_));
    for (int e = 0; e < m_; ++e) {
      auto [i, j] = edge_endpoints(e, p_.n);
      endpoints_[static_cast<std::size_t>(e)] = {i, j};
      for (Vertex x = 0; x < i; ++x)
        closures_[static_cast<std::size_t>(e)].push_back(
            {edge_index(x, i, p_.n), edge_index(x, j, p_.n)});
    }
    table_size_ = choose3(p_.k + 2);
    rank_c_.resize(static_cast<std::size_t>(p_.k));
    rank_b_.resize(static_cast<std::size_t>(p_.k));
    for (int c = 0; c < p_.k; ++c) {
      rank_c_[static_cast<std::size_t>(c)] = choose3(c + 2);
      rank_b_[static_cast<std::size_t>(c)] = choose2(c + 1);
    }
  }

  SearchOutcome run() const {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    SearchOutcome out;

    // Pigeonhole: fewer palettes than triangles means no search needed.
    if (!capacity_admits(p_.n, p_.k, p_.mode)) {
      out.status = SearchStatus::Unsat;
      out.elapsed = Clock::now() - t0;
      return out;
    }
    if (p_.require_proper && p_.k > 63)
      throw std::invalid_argument("decide: proper search supports k <= 63");
    if (table_size_ > (std::int64_t{1} << 26))
      throw std::invalid_argument(
          "decide: instance too large for the native engine; use the CNF encoder");

    std::optional<Clock::time_point> deadline;
    if (p_.time_limit)
      deadline = t0 + std::chrono::duration_cast<Clock::duration>(*p_.time_limit);

    PrefixSet prefixes = enumerate_prefixes();
    const std::uint64_t limit =
        p_.node_limit ? *p_.node_limit : std::numeric_limits<std::uint64_t>::max();

    std::vector<TaskResult> results;
    if (tuning_.jobs > 1 && !prefixes.list.empty())
      results = run_parallel(prefixes, limit, deadline);
    else
      results = run_sequential(prefixes, limit, deadline, t0);

    merge(prefixes, results, limit, out);
    if (out.status == SearchStatus::Sat) {
      if (p_.require_proper && !is_proper(*out.witness))
        throw std::logic_error("decide: witness failed the properness re-check");
      if (!distinguishes(*out.witness, p_.mode).distinguishing)
        throw std::logic_error("decide: witness failed re-verification");
    }
    out.elapsed = Clock::now() - t0;
    return out;
  }

 private:
  enum class Step { Committed, Rejected, CapReached };

  struct State {
    std::vector<Color> colors;               // -1 where unassigned
    std::vector<std::uint64_t> vertex_used;  // color bitmask per vertex
    std::vector<std::uint8_t> occupied;      // palette rank -> taken
    std::vector<std::vector<std::int64_t>> trail;  // ranks marked per edge
    std::vector<Color> max_before;           // max color among edges < d
    std::uint64_t nodes = 0;
    std::uint64_t ticks = 0;
    bool counting = true;
  };

  struct TaskResult {
    enum class Kind { Unsat, Sat, CappedNodes, CappedTime, Skipped };
    Kind kind = Kind::Unsat;
    std::uint64_t nodes = 0;
    std::vector<Color> witness;
  };

  struct PrefixSet {
    std::vector<std::vector<Color>> list;
    std::uint64_t nodes = 0;
    int depth = 0;
  };

  using Clock = std::chrono::steady_clock;

  State make_state() const {
    State s;
    s.colors.assign(static_cast<std::size_t>(m_), -1);
    s.vertex_used.assign(static_cast<std::size_t>(p_.n), 0);
    s.occupied.assign(static_cast<std::size_t>(table_size_), 0);
    s.trail.assign(static_cast<std::size_t>(m_), {});
    s.max_before.assign(static_cast<std::size_t>(m_) + 1, -1);
    return s;
  }

  std::int64_t rank_of(Color x, Color y, Color z) const {
    if (x > y) std::swap(x, y);
    if (y > z) std::swap(y, z);
    if (x > y) std::swap(x, y);
    if (p_.mode == PaletteMode::Set && x == y && y != z) y = z;  // {a,c} as (a,c,c)
    return rank_c_[static_cast<std::size_t>(z)] +
           rank_b_[static_cast<std::size_t>(y)] + x;
  }

  Step try_commit(State& s, int d, Color c, std::uint64_t cap) const {
    const auto [i, j] = endpoints_[static_cast<std::size_t>(d)];
    if (p_.require_proper) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      if ((s.vertex_used[static_cast<std::size_t>(i)] |
           s.vertex_used[static_cast<std::size_t>(j)]) &
          bit)
        return Step::Rejected;
    }
    auto& marks = s.trail[static_cast<std::size_t>(d)];
    for (const auto& [e1, e2] : closures_[static_cast<std::size_t>(d)]) {
      const std::int64_t rank = rank_of(s.colors[static_cast<std::size_t>(e1)],
                                        s.colors[static_cast<std::size_t>(e2)], c);
      if (s.occupied[static_cast<std::size_t>(rank)]) {
        for (std::int64_t r : marks) s.occupied[static_cast<std::size_t>(r)] = 0;
        marks.clear();
        return Step::Rejected;
      }
      s.occupied[static_cast<std::size_t>(rank)] = 1;
      marks.push_back(rank);
    }
    if (s.counting && s.nodes >= cap) {
      for (std::int64_t r : marks) s.occupied[static_cast<std::size_t>(r)] = 0;
      marks.clear();
      return Step::CapReached;
    }
    s.colors[static_cast<std::size_t>(d)] = c;
    if (p_.require_proper) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      s.vertex_used[static_cast<std::size_t>(i)] |= bit;
      s.vertex_used[static_cast<std::size_t>(j)] |= bit;
    }
    s.max_before[static_cast<std::size_t>(d) + 1] =
        std::max(s.max_before[static_cast<std::size_t>(d)], c);
    if (s.counting) ++s.nodes;
    return Step::Committed;
  }

  void undo(State& s, int d) const {
    const auto [i, j] = endpoints_[static_cast<std::size_t>(d)];
    auto& marks = s.trail[static_cast<std::size_t>(d)];
    for (std::int64_t r : marks) s.occupied[static_cast<std::size_t>(r)] = 0;
    marks.clear();
    if (p_.require_proper) {
      const std::uint64_t bit =
          std::uint64_t{1} << s.colors[static_cast<std::size_t>(d)];
      s.vertex_used[static_cast<std::size_t>(i)] &= ~bit;
      s.vertex_used[static_cast<std::size_t>(j)] &= ~bit;
    }
    s.colors[static_cast<std::size_t>(d)] = -1;
  }

  Color color_bound(const State& s, int d) const {
    Color cmax = p_.k - 1;
    if (tuning_.canonical_colors)
      cmax = std::min(cmax, s.max_before[static_cast<std::size_t>(d)] + 1);
    return cmax;
  }

  void replay(State& s, const std::vector<Color>& prefix) const {
    s.counting = false;
    for (int d = 0; d < static_cast<int>(prefix.size()); ++d) {
      Step st = try_commit(s, d, prefix[static_cast<std::size_t>(d)], 0);
      assert(st == Step::Committed);
      (void)st;
    }
    s.counting = true;
  }

  // Splits the tree at a fixed depth: grow layers until there are enough
  // consistent prefixes to keep any worker count busy. Every committed
  // prefix extension counts as one node, exactly once.
  PrefixSet enumerate_prefixes() const {
    PrefixSet out;
    out.list.push_back({});
    while (out.depth < m_ - 1 && out.list.size() < tuning_.prefix_target &&
           !out.list.empty()) {
      std::vector<std::vector<Color>> next;
      for (const auto& prefix : out.list) {
        State s = make_state();
        replay(s, prefix);
        const Color cmax = color_bound(s, out.depth);
        for (Color c = 0; c <= cmax; ++c) {
          Step st = try_commit(s, out.depth, c,
                               std::numeric_limits<std::uint64_t>::max());
          if (st != Step::Committed) continue;
          auto ext = prefix;
          ext.push_back(c);
          next.push_back(std::move(ext));
          undo(s, out.depth);
        }
        out.nodes += s.nodes;
      }
      out.list = std::move(next);
      ++out.depth;
    }
    return out;
  }

  TaskResult::Kind dfs(State& s, int d, std::uint64_t cap,
                       const std::optional<Clock::time_point>& deadline,
                       const std::atomic<std::size_t>* abort_above,
                       std::size_t rank, TaskResult& out) const {
    if (d == m_) {
      out.witness = s.colors;
      return TaskResult::Kind::Sat;
    }
    const Color cmax = color_bound(s, d);
    for (Color c = 0; c <= cmax; ++c) {
      if ((++s.ticks & 0xFFF) == 0) {
        if (deadline && Clock::now() > *deadline) return TaskResult::Kind::CappedTime;
        if (abort_above && rank > abort_above->load(std::memory_order_relaxed))
          return TaskResult::Kind::Skipped;
      }
      const Step st = try_commit(s, d, c, cap);
      if (st == Step::Rejected) continue;
      if (st == Step::CapReached) return TaskResult::Kind::CappedNodes;
      const auto r = dfs(s, d + 1, cap, deadline, abort_above, rank, out);
      if (r != TaskResult::Kind::Unsat) return r;  // Sat and caps abandon the state
      undo(s, d);
    }
    return TaskResult::Kind::Unsat;
  }

  TaskResult explore(const std::vector<Color>& prefix, int depth, std::uint64_t cap,
                     const std::optional<Clock::time_point>& deadline,
                     const std::atomic<std::size_t>* abort_above,
                     std::size_t rank) const {
    State s = make_state();
    replay(s, prefix);
    TaskResult res;
    res.kind = dfs(s, depth, cap, deadline, abort_above, rank, res);
    res.nodes = s.nodes;
    return res;
  }

  std::vector<TaskResult> run_sequential(
      const PrefixSet& prefixes, std::uint64_t limit,
      const std::optional<Clock::time_point>& deadline, Clock::time_point t0) const {
    std::vector<TaskResult> results(prefixes.list.size());
    std::uint64_t acc = prefixes.nodes;
    for (std::size_t r = 0; r < prefixes.list.size(); ++r) {
      const std::uint64_t rem = limit > acc ? limit - acc : 0;
      results[r] = explore(prefixes.list[r], prefixes.depth, rem, deadline, nullptr, r);
      if (results[r].kind != TaskResult::Kind::Unsat) break;  // terminal
      acc += results[r].nodes;
      if (tuning_.progress)
        tuning_.progress(acc, prefixes.depth,
                         std::chrono::duration<double>(Clock::now() - t0).count());
    }
    return results;
  }

  std::vector<TaskResult> run_parallel(
      const PrefixSet& prefixes, std::uint64_t limit,
      const std::optional<Clock::time_point>& deadline) const {
    const std::size_t count = prefixes.list.size();
    std::vector<TaskResult> results(count);
    std::atomic<std::size_t> next{0};
    // Workers run every prefix with the full remaining budget; the merge
    // re-derives the exact sequential accounting from the per-task counts.
    const std::uint64_t cap = limit > prefixes.nodes ? limit - prefixes.nodes : 0;
    std::atomic<std::size_t> first_terminal{std::numeric_limits<std::size_t>::max()};
    auto worker = [&] {
      while (true) {
        const std::size_t r = next.fetch_add(1);
        if (r >= count) return;
        if (r > first_terminal.load(std::memory_order_relaxed)) {
          results[r].kind = TaskResult::Kind::Skipped;
          continue;
        }
        TaskResult res =
            explore(prefixes.list[r], prefixes.depth, cap, deadline, &first_terminal, r);
        if (res.kind == TaskResult::Kind::Sat ||
            res.kind == TaskResult::Kind::CappedNodes ||
            res.kind == TaskResult::Kind::CappedTime) {
          std::size_t cur = first_terminal.load();
          while (r < cur && !first_terminal.compare_exchange_weak(cur, r)) {
          }
        }
        results[r] = std::move(res);
      }
    };
    std::vector<std::thread> pool;
    const int threads = std::max(1, tuning_.jobs);
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
  }

  // Rank-ordered accounting; identical totals no matter how many workers
  // produced the task results.
  void merge(const PrefixSet& prefixes, const std::vector<TaskResult>& results,
             std::uint64_t limit, SearchOutcome& out) const {
    std::uint64_t acc = prefixes.nodes;
    for (const TaskResult& res : results) {
      const std::uint64_t rem = limit > acc ? limit - acc : 0;
      switch (res.kind) {
        case TaskResult::Kind::Sat:
          if (res.nodes <= rem) {
            out.status = SearchStatus::Sat;
            out.nodes_explored = acc + res.nodes;
            out.witness = EdgeColoring(p_.n, p_.k, res.witness);
            return;
          }
          out.status = SearchStatus::Inconclusive;
          out.nodes_explored = acc + rem;
          return;
        case TaskResult::Kind::Unsat:
          if (res.nodes <= rem) {
            acc += res.nodes;
            continue;
          }
          out.status = SearchStatus::Inconclusive;
          out.nodes_explored = acc + rem;
          return;
        case TaskResult::Kind::CappedNodes:
          out.status = SearchStatus::Inconclusive;
          out.nodes_explored = acc + std::min(res.nodes, rem);
          return;
        case TaskResult::Kind::CappedTime:
          out.status = SearchStatus::Inconclusive;
          out.nodes_explored = acc + std::min(res.nodes, rem);
          return;
        case TaskResult::Kind::Skipped:
          assert(false && "merge reached a skipped task");
          out.status = SearchStatus::Inconclusive;
          out.nodes_explored = acc;
          return;
      }
    }
    out.status = SearchStatus::Unsat;
    out.nodes_explored = acc;
  }

  SearchProblem p_;
  SearchTuning tuning_;
  int m_;
  std::vector<std::pair<Vertex, Vertex>> endpoints_;
  std::vector<std::vector<std::pair<int, int>>> closures_;
  std::int64_t table_size_ = 0;
  std::vector<std::int64_t> rank_c_;
  std::vector<std::int64_t> rank_b_;
};

inline SearchOutcome decide_impl(const SearchProblem& problem,
                                 const SearchTuning& tuning) {
  problem.validate();
  return TriangleSearch(problem, tuning).run();
}

}  // namespace detail

inline SearchOutcome decide(const SearchProblem& problem, int jobs = 1) {
  detail::SearchTuning tuning;
  tuning.jobs = jobs;
  return detail::decide_impl(problem, tuning);
}

struct MinimizeOptions {
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::duration<double>> time_limit;
  int jobs = 1;
};

// Minimal k admitting a distinguishing coloring, with certificates on
// both sides of the threshold.
struct TauResult {
  int n = 0;
  PaletteMode mode{};
  bool require_proper = false;
  SearchStatus status = SearchStatus::Inconclusive;  // Sat once tau is found
  int tau = -1;
  SearchOutcome sat;                   // decide at k = tau, witness inside
  int unsat_k = -1;                    // tau - 1, or -1 at the trivial floor
  std::optional<SearchOutcome> unsat;  // certificate at unsat_k
  int stopped_k = -1;                  // sweep k where a limit bound
  std::optional<SearchOutcome> stopped;

  // SAT at tau and UNSAT verified at tau-1 (vacuous at the trivial floor).
  bool definite() const {
    return status == SearchStatus::Sat &&
           (unsat_k < 1 || (unsat && unsat->status == SearchStatus::Unsat));
  }
};

// Lowest k worth trying: palette capacity must cover C(n,3), and
// multiset mode additionally respects the n-1 counting bound.
inline int sweep_floor(int n, PaletteMode mode) {
  int k = 1;
  while (!capacity_admits(n, k, mode)) ++k;
  if (mode == PaletteMode::Multiset) k = std::max(k, multiset_lower_bound(n));
  return k;
}

inline TauResult minimize(int n, PaletteMode mode, bool require_proper,
                          const MinimizeOptions& opt = {}) {
  TauResult result;
  result.n = n;
  result.mode = mode;
  result.require_proper = require_proper;
  const int floor_k = sweep_floor(n, mode);
  std::optional<SearchOutcome> previous;
  for (int k = floor_k; k <= edge_count(n); ++k) {
    SearchProblem problem{n, k, mode, require_proper, opt.node_limit, opt.time_limit};
    SearchOutcome outcome = decide(problem, opt.jobs);
    if (outcome.status == SearchStatus::Inconclusive) {
      result.status = SearchStatus::Inconclusive;
      result.stopped_k = k;
      result.stopped = std::move(outcome);
      return result;
    }
    if (outcome.status == SearchStatus::Unsat) {
      previous = std::move(outcome);
      continue;
    }
    result.status = SearchStatus::Sat;
    result.tau = k;
    result.sat = std::move(outcome);
    if (k > floor_k) {
      result.unsat_k = k - 1;
      result.unsat = std::move(previous);
    } else if (k > 1) {
      // SAT at the sweep floor: certify the step below it by search
      // (the capacity pre-check answers instantly where it applies).
      result.unsat_k = k - 1;
      SearchProblem below{n, k - 1, mode, require_proper, opt.node_limit,
                          opt.time_limit};
      result.unsat = decide(below, opt.jobs);
    }
    return result;
  }
  throw std::logic_error("minimize: no SAT up to C(n,2) colors");
}

struct ConjectureEntry {
  int n = 0;
  TauResult result;

  bool decided() const { return result.status == SearchStatus::Sat; }
  bool supports_conjecture() const { return decided() && result.tau == n - 1; }
};

// Desk-scale test of tau(n) = n-1 for general colorings, n = 4..n_max.
inline std::vector<ConjectureEntry> conjecture_check(int n_max, PaletteMode mode,
                                                     const MinimizeOptions& opt = {}) {
  if (n_max < 4) throw std::invalid_argument("conjecture_check: need n_max >= 4");
  std::vector<ConjectureEntry> rows;
  for (int n = 4; n <= n_max; ++n)
    rows.push_back(ConjectureEntry{n, minimize(n, mode, false, opt)});
  return rows;
}

}  // namespace tripal
