#include "digitop/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "digitop/check.hpp"
#include "digitop/runtime.hpp"

namespace digitop {

namespace {

std::size_t hash_span(const Index* begin, int length) {
  std::size_t h = 1469598103934665603ull;
  for (int i = 0; i < length; ++i) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(begin[i]));
    h *= 1099511628211ull;
  }
  return h;
}

struct StateHash {
  std::size_t operator()(const SearchState& s) const {
    return hash_span(s.data(), static_cast<int>(s.size()));
  }
};

// Flat arena of fixed-stride states with a hash index; one contiguous block
// instead of one heap vector per state keeps multi-million-state searches
// inside the budget the cap implies.
class StatePool {
public:
  explicit StatePool(int stride) : stride_(stride), set_(16, Hash{this}, Eq{this}) {}

  int size() const { return count_; }

  const Index* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * stride_; }
  int parent(int i) const { return parent_[static_cast<std::size_t>(i)]; }
  int depth(int i) const { return depth_[static_cast<std::size_t>(i)]; }

  SearchState state(int i) const {
    return SearchState(row(i), row(i) + stride_);
  }

  // -1 when absent. Uses a tentative row so the set can hash incoming states.
  int find(const SearchState& s) {
    push_row(s);
    auto it = set_.find(count_);
    pop_row();
    return it == set_.end() ? -1 : *it;
  }

  int insert(const SearchState& s, int parent, int depth) {
    push_row(s);
    parent_.push_back(parent);
    depth_.push_back(depth);
    int idx = count_++;
    set_.insert(idx);
    return idx;
  }

private:
  struct Hash {
    const StatePool* pool;
    std::size_t operator()(int i) const { return hash_span(pool->row(i), pool->stride_); }
  };
  struct Eq {
    const StatePool* pool;
    bool operator()(int a, int b) const {
      return std::equal(pool->row(a), pool->row(a) + pool->stride_, pool->row(b));
    }
  };

  void push_row(const SearchState& s) { data_.insert(data_.end(), s.begin(), s.end()); }
  void pop_row() { data_.resize(data_.size() - static_cast<std::size_t>(stride_)); }

  int stride_;
  int count_ = 0;
  std::vector<Index> data_;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::unordered_set<int, Hash, Eq> set_;
};

}  // namespace

StepSpace::StepSpace(DigitalImage values, int positions,
                     std::vector<std::pair<int, int>> constraint_edges)
    : values_(std::move(values)), positions_(positions), edges_(std::move(constraint_edges)) {
  partners_before_.assign(static_cast<std::size_t>(positions_), {});
  for (auto [a, b] : edges_) {
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    partners_before_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& row : partners_before_) std::sort(row.begin(), row.end());
  closed_nbhd_.assign(static_cast<std::size_t>(values_.size()), {});
  for (Index v = 0; v < values_.size(); ++v) {
    auto& row = closed_nbhd_[static_cast<std::size_t>(v)];
    row = values_.neighbor_indices(v);
    row.insert(std::lower_bound(row.begin(), row.end(), v), v);
  }
}

const std::vector<Index>& StepSpace::closed_neighborhood(Index v) const {
  return closed_nbhd_[static_cast<std::size_t>(v)];
}

bool StepSpace::valid(const SearchState& s, const std::vector<Index>* forced) const {
  if (static_cast<int>(s.size()) != positions_) return false;
  for (int i = 0; i < positions_; ++i) {
    Index v = s[static_cast<std::size_t>(i)];
    if (v < 0 || v >= values_.size()) return false;
    if (forced && (*forced)[static_cast<std::size_t>(i)] >= 0 &&
        (*forced)[static_cast<std::size_t>(i)] != v) {
      return false;
    }
  }
  for (const auto& [a, b] : edges_) {
    Index va = s[static_cast<std::size_t>(a)];
    Index vb = s[static_cast<std::size_t>(b)];
    if (va == vb) continue;
    const auto& nb = values_.neighbor_indices(va);
    if (!std::binary_search(nb.begin(), nb.end(), vb)) return false;
  }
  return true;
}

bool StepSpace::successors_bounded(const SearchState& s, const std::vector<Index>* forced,
                                   std::vector<SearchState>& out,
                                   std::atomic<std::size_t>& produced, std::size_t cap) const {
  // Depth-first assignment position by position; constraint edges to earlier
  // positions prune most of the per-position fanout immediately. Candidate
  // order is ascending by value index, so the output is already sorted.
  SearchState cur(static_cast<std::size_t>(positions_));
  bool within_cap = true;
  auto rec = [&](auto&& self, int pos) -> void {
    if (!within_cap) return;
    if (pos == positions_) {
      if (cur != s) {
        if (produced.fetch_add(1, std::memory_order_relaxed) >= cap) {
          within_cap = false;
          return;
        }
        out.push_back(cur);
      }
      return;
    }
    Index base = s[static_cast<std::size_t>(pos)];
    Index pin = forced ? (*forced)[static_cast<std::size_t>(pos)] : -1;
    for (Index cand : closed_nbhd_[static_cast<std::size_t>(base)]) {
      if (pin >= 0 && cand != pin) continue;
      bool ok = true;
      for (int j : partners_before_[static_cast<std::size_t>(pos)]) {
        Index vj = cur[static_cast<std::size_t>(j)];
        if (vj == cand) continue;
        const auto& nb = values_.neighbor_indices(vj);
        if (!std::binary_search(nb.begin(), nb.end(), cand)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      cur[static_cast<std::size_t>(pos)] = cand;
      self(self, pos + 1);
      if (!within_cap) return;
    }
  };
  rec(rec, 0);
  return within_cap;
}

void StepSpace::successors(const SearchState& s, const std::vector<Index>* forced,
                           std::vector<SearchState>& out) const {
  std::atomic<std::size_t> produced{0};
  successors_bounded(s, forced, out, produced, SIZE_MAX);
}

namespace {

// Unique successors of an ordered frontier, each tagged with the first
// frontier position that produced it. The frontier is processed in fixed
// chunks; inside a chunk the OpenMP path fans out per state, and the merge
// into the dedup map walks chunk results in frontier order, so the outcome
// never depends on the schedule. Unique states beyond `cap` raise
// budget_error rather than exhausting memory.
std::vector<std::pair<SearchState, int>> expand_level_impl(
    const StepSpace& space, const std::vector<SearchState>& frontier,
    const std::vector<Index>* forced, std::size_t cap, bool parallel) {
  std::unordered_map<SearchState, int, StateHash> emitted;
  constexpr std::size_t kChunk = 2048;

  // Generated-state counter shared across the whole level, duplicates
  // included: it bounds the transient memory of a level, while the map-size
  // check below bounds the unique states. Either overflow is a budget error.
  std::atomic<std::size_t> produced{0};
  const std::size_t produced_cap = cap;

  std::vector<std::vector<SearchState>> buckets;
  for (std::size_t begin = 0; begin < frontier.size(); begin += kChunk) {
    const std::size_t end = std::min(frontier.size(), begin + kChunk);
    buckets.assign(end - begin, {});
    bool within_cap = true;
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8) reduction(&& : within_cap)
      for (long i = 0; i < static_cast<long>(end - begin); ++i) {
        within_cap = space.successors_bounded(frontier[begin + static_cast<std::size_t>(i)],
                                              forced, buckets[static_cast<std::size_t>(i)],
                                              produced, produced_cap) &&
                     within_cap;
      }
    } else {
      for (std::size_t i = 0; i < end - begin && within_cap; ++i) {
        within_cap =
            space.successors_bounded(frontier[begin + i], forced, buckets[i], produced,
                                     produced_cap);
      }
    }
    if (!within_cap) {
      throw budget_error("level expansion generated more than " +
                         std::to_string(produced_cap) + " candidate states");
    }
    for (std::size_t i = 0; i < buckets.size(); ++i) {
      for (auto& s : buckets[i]) {
        emitted.emplace(std::move(s), static_cast<int>(begin + i));
      }
      buckets[i].clear();
      buckets[i].shrink_to_fit();
    }
    if (emitted.size() > cap) {
      throw budget_error("level expansion exceeded the state cap of " + std::to_string(cap));
    }
    // Duplicates do not occupy the map; release their count so long frontiers
    // with heavy overlap are not charged twice.
    produced.store(emitted.size(), std::memory_order_relaxed);
  }

  std::vector<std::pair<SearchState, int>> out;
  out.reserve(emitted.size());
  for (auto it = emitted.begin(); it != emitted.end();) {
    auto node = emitted.extract(it++);
    out.emplace_back(std::move(node.key()), node.mapped());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

std::vector<std::pair<SearchState, int>> expand_level_serial(
    const StepSpace& space, const std::vector<SearchState>& frontier,
    const std::vector<Index>* forced) {
  return expand_level_impl(space, frontier, forced, state_cap(), false);
}

std::vector<std::pair<SearchState, int>> expand_level(const StepSpace& space,
                                                      const std::vector<SearchState>& frontier,
                                                      const std::vector<Index>* forced) {
  if (!parallel_enabled() || frontier.size() < 32) {
    return expand_level_impl(space, frontier, forced, state_cap(), false);
  }
  return expand_level_impl(space, frontier, forced, state_cap(), true);
}

namespace {

// One direction of the bidirectional search.
struct Side {
  StatePool pool;
  std::vector<SearchState> frontier;
  std::vector<int> frontier_idx;
  int level = 0;

  explicit Side(int stride) : pool(stride) {}

  void init(const SearchState& root) {
    pool.insert(root, -1, 0);
    frontier.push_back(root);
    frontier_idx.push_back(0);
  }

  std::vector<SearchState> chain_from_root(int idx) const {
    std::vector<SearchState> out;
    for (int cur = idx; cur >= 0; cur = pool.parent(cur)) out.push_back(pool.state(cur));
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace

PathSearchResult bidirectional_path_search(const StepSpace& space, const SearchState& start,
                                           const SearchState& goal, int max_steps,
                                           std::size_t cap) {
  if (!space.valid(start)) throw std::invalid_argument("search start state is not valid");
  if (!space.valid(goal)) throw std::invalid_argument("search goal state is not valid");

  PathSearchResult res;
  res.stats.visited_states = (start == goal) ? 1 : 2;
  if (start == goal) {
    res.found = true;
    res.path = {start};
    return res;
  }
  if (max_steps <= 0) return res;

  Side fwd(space.positions()), bwd(space.positions());
  fwd.init(start);
  bwd.init(goal);

  while (fwd.level + bwd.level < max_steps) {
    const bool expand_fwd = fwd.level <= bwd.level;
    Side& side = expand_fwd ? fwd : bwd;
    Side& other = expand_fwd ? bwd : fwd;

    auto level_states = expand_level(space, side.frontier, nullptr);
    side.level += 1;
    res.stats.expanded_states += side.frontier.size();

    std::vector<SearchState> next_frontier;
    std::vector<int> next_frontier_idx;
    struct Meet {
      int total;
      int side_idx;
      int other_idx;
    };
    std::vector<Meet> meets;

    for (auto& [state, src] : level_states) {
      if (side.pool.find(state) >= 0) continue;
      int idx = side.pool.insert(state, side.frontier_idx[static_cast<std::size_t>(src)],
                                 side.level);
      ++res.stats.visited_states;
      if (res.stats.visited_states > cap) {
        throw budget_error("witness search exceeded state cap of " + std::to_string(cap) +
                           " visited states");
      }
      int hit = other.pool.find(state);
      if (hit >= 0) {
        meets.push_back({side.level + other.pool.depth(hit), idx, hit});
      }
      next_frontier.push_back(std::move(state));
      next_frontier_idx.push_back(idx);
    }

    if (!meets.empty()) {
      const Meet* best = &meets.front();
      for (const Meet& m : meets) {
        if (m.total < best->total ||
            (m.total == best->total && side.pool.state(m.side_idx) < side.pool.state(best->side_idx))) {
          best = &m;
        }
      }
      std::vector<SearchState> here = side.chain_from_root(best->side_idx);
      std::vector<SearchState> there = other.chain_from_root(best->other_idx);
      std::vector<SearchState> path = std::move(here);
      for (std::size_t i = there.size() - 1; i-- > 0;) path.push_back(there[i]);
      if (!expand_fwd) std::reverse(path.begin(), path.end());
      res.found = true;
      res.path = std::move(path);
      res.stats.forward_depth = fwd.level;
      res.stats.backward_depth = bwd.level;
      return res;
    }

    side.frontier = std::move(next_frontier);
    side.frontier_idx = std::move(next_frontier_idx);
    if (side.frontier.empty()) {
      res.stats.frontier_exhausted = true;
      break;
    }
  }

  res.stats.forward_depth = fwd.level;
  res.stats.backward_depth = bwd.level;
  return res;
}

GridSearchResult grid_column_search(const GridSpec& spec, std::size_t cap) {
  const int k1 = spec.rows;
  if (k1 < 1) throw std::invalid_argument("grid search needs at least one row");
  if (spec.top.size() != spec.bottom.size() || spec.top.empty()) {
    throw std::invalid_argument("grid search: pinned rows must be nonempty and equal length");
  }
  const int columns = static_cast<int>(spec.top.size());
  if (k1 == 1 && spec.top != spec.bottom) return {};  // one row must be both loops

  std::vector<std::pair<int, int>> vertical;
  for (int s = 0; s + 1 < k1; ++s) vertical.emplace_back(s, s + 1);
  StepSpace space(spec.values, k1, std::move(vertical));

  auto forced_at = [&](int n) {
    std::vector<Index> forced(static_cast<std::size_t>(k1), -1);
    forced[0] = spec.top[static_cast<std::size_t>(n)];
    forced[static_cast<std::size_t>(k1 - 1)] = spec.bottom[static_cast<std::size_t>(n)];
    return forced;
  };

  GridSearchResult res;
  SearchState first_column(static_cast<std::size_t>(k1), spec.basepoint);
  {
    auto forced0 = forced_at(0);
    if (!space.valid(first_column, &forced0)) return res;  // loops disagree at 0
  }

  StatePool pool(k1);  // parent links across layers; depth = layer
  pool.insert(first_column, -1, 0);
  std::vector<SearchState> frontier{first_column};
  std::vector<int> frontier_idx{0};
  res.stats.visited_states = 1;

  for (int n = 1; n < columns && !frontier.empty(); ++n) {
    auto forced = forced_at(n);
    auto level_states = expand_level(space, frontier, &forced);
    res.stats.expanded_states += frontier.size();

    // A column may also stay unchanged between layers; expand_level omits
    // the identity step, so re-add frontier columns that remain feasible.
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      if (space.valid(frontier[i], &forced)) {
        level_states.emplace_back(frontier[i], static_cast<int>(i));
      }
    }
    std::sort(level_states.begin(), level_states.end());
    level_states.erase(
        std::unique(level_states.begin(), level_states.end(),
                    [](const auto& a, const auto& b) { return a.first == b.first; }),
        level_states.end());

    std::vector<SearchState> next;
    std::vector<int> next_idx;
    for (auto& [state, src] : level_states) {
      int idx = pool.insert(state, frontier_idx[static_cast<std::size_t>(src)], n);
      ++res.stats.visited_states;
      if (res.stats.visited_states > cap) {
        throw budget_error("EC-homotopy search exceeded state cap of " + std::to_string(cap));
      }
      next.push_back(std::move(state));
      next_idx.push_back(idx);
    }
    frontier = std::move(next);
    frontier_idx = std::move(next_idx);
    res.stats.forward_depth = n;
  }

  if (frontier.empty()) {
    res.stats.frontier_exhausted = true;
    return res;
  }

  // The final column must be constant at the basepoint.
  SearchState last_column(static_cast<std::size_t>(k1), spec.basepoint);
  int final_idx = -1;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    if (frontier[i] == last_column) {
      final_idx = frontier_idx[i];
      break;
    }
  }
  if (final_idx < 0) return res;

  res.reached = true;
  res.grid.assign(static_cast<std::size_t>(k1),
                  std::vector<Index>(static_cast<std::size_t>(columns)));
  int cur = final_idx;
  for (int n = columns - 1; n >= 0; --n) {
    SearchState col = pool.state(cur);
    for (int s = 0; s < k1; ++s) {
      res.grid[static_cast<std::size_t>(s)][static_cast<std::size_t>(n)] =
          col[static_cast<std::size_t>(s)];
    }
    cur = pool.parent(cur);
  }
  return res;
}

}  // namespace digitop
