#ifndef DIGITOP_SEARCH_HPP
#define DIGITOP_SEARCH_HPP

#include <atomic>
#include <cstddef>
#include <utility>
#include <vector>

#include "digitop/lattice.hpp"

namespace digitop {

// A search state is a flat assignment of value-image point indices, one per
// position. For homotopy search the positions are the domain points in
// lexicographic order; for EC-homotopy search they are the rows of one grid
// column.
using SearchState = std::vector<Index>;

struct SearchStats {
  std::size_t visited_states = 0;
  std::size_t expanded_states = 0;
  int forward_depth = 0;
  int backward_depth = 0;
  bool frontier_exhausted = false;

  bool operator==(const SearchStats& o) const {
    return visited_states == o.visited_states && expanded_states == o.expanded_states &&
           forward_depth == o.forward_depth && backward_depth == o.backward_depth &&
           frontier_exhausted == o.frontier_exhausted;
  }
};

// The single-step evolution relation shared by every witness search: each
// position may stay or move to an adjacent value, subject to equal-or-adjacent
// constraints between paired positions. A continuous map is exactly a state
// whose constraint edges (the domain adjacencies) all hold.
class StepSpace {
public:
  StepSpace(DigitalImage values, int positions, std::vector<std::pair<int, int>> constraint_edges);

  const DigitalImage& values() const { return values_; }
  int positions() const { return positions_; }

  // forced: optional per-position pins (-1 = free), length == positions.
  bool valid(const SearchState& s, const std::vector<Index>* forced = nullptr) const;

  // All states reachable in one step, in canonical (lexicographic) order,
  // excluding the input state. forced pins apply to the successors.
  void successors(const SearchState& s, const std::vector<Index>* forced,
                  std::vector<SearchState>& out) const;

  // Same, but stops once `produced` crosses `cap`; returns false in that
  // case. Successor fanout is exponential in the positions, so every search
  // loop must bound it to fail with budget_error instead of exhausting
  // memory.
  bool successors_bounded(const SearchState& s, const std::vector<Index>* forced,
                          std::vector<SearchState>& out, std::atomic<std::size_t>& produced,
                          std::size_t cap) const;

  // Sorted closed neighborhood {v} + adjacent values, by index.
  const std::vector<Index>& closed_neighborhood(Index v) const;

private:
  DigitalImage values_;
  int positions_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> partners_before_;  // constraint partners j < i per position i
  std::vector<std::vector<Index>> closed_nbhd_;
};

// One BFS level: successors of an ordered frontier, sorted and deduplicated,
// each tagged with the index of the first frontier state that produced it.
// The OpenMP path partitions the frontier statically and merges buckets in
// frontier order, so output is schedule-independent; the serial path is the
// reference it must agree with.
std::vector<std::pair<SearchState, int>> expand_level(const StepSpace& space,
                                                      const std::vector<SearchState>& frontier,
                                                      const std::vector<Index>* forced);
std::vector<std::pair<SearchState, int>> expand_level_serial(const StepSpace& space,
                                                             const std::vector<SearchState>& frontier,
                                                             const std::vector<Index>* forced);

struct PathSearchResult {
  bool found = false;
  std::vector<SearchState> path;  // start..goal inclusive when found
  SearchStats stats;
};

// Bidirectional level-synchronous BFS between two valid states. Returns a
// shortest path when one exists within max_steps; otherwise the NotFound
// outcome is an exhaustive statement for that budget. Throws budget_error
// when visited states exceed cap.
PathSearchResult bidirectional_path_search(const StepSpace& space, const SearchState& start,
                                           const SearchState& goal, int max_steps,
                                           std::size_t cap);

// Layered reachability for EC-homotopy grids. Columns are searched left to
// right: layer n holds the feasible assignments of grid column n, where rows
// 0 and k are pinned to the two loops and interior cells evolve. Reaching the
// all-basepoint column at layer `columns-1` proves the grid exists.
struct GridSpec {
  DigitalImage values;
  int rows = 0;                // k+1 grid rows
  std::vector<Index> top;      // row 0 pin per column (loop f)
  std::vector<Index> bottom;   // row k pin per column (loop g)
  Index basepoint = 0;
};

struct GridSearchResult {
  bool reached = false;
  std::vector<std::vector<Index>> grid;  // [row][column] when reached
  SearchStats stats;
};

GridSearchResult grid_column_search(const GridSpec& spec, std::size_t cap);

}  // namespace digitop

#endif
