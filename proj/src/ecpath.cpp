#include "digitop/ecpath.hpp"

#include <algorithm>
#include <stdexcept>

#include "digitop/runtime.hpp"

namespace digitop {

ECPath ECPath::from_indices(DigitalImage image, std::vector<Index> values, Index tail) {
  while (!values.empty() && values.back() == tail) values.pop_back();
  for (std::size_t n = 0; n < values.size(); ++n) {
    Index a = values[n];
    Index b = n + 1 < values.size() ? values[n + 1] : tail;
    if (a != b && !adjacent(image.point(a), image.point(b), image.kind())) {
      throw std::invalid_argument("EC path jumps between positions " + std::to_string(n) +
                                  " and " + std::to_string(n + 1) + ": " + image.point(a).str() +
                                  " -> " + image.point(b).str());
    }
  }
  ECPath p;
  p.image_ = std::move(image);
  p.prefix_ = std::move(values);
  p.tail_ = tail;
  return p;
}

ECPath::ECPath(DigitalImage image, const std::vector<Point>& prefix, const Point& tail) {
  std::vector<Index> values;
  values.reserve(prefix.size());
  for (const Point& p : prefix) {
    auto i = image.index_of(p);
    if (!i) throw std::invalid_argument("EC path value " + p.str() + " not in image");
    values.push_back(*i);
  }
  auto t = image.index_of(tail);
  if (!t) throw std::invalid_argument("EC path tail " + tail.str() + " not in image");
  *this = from_indices(std::move(image), std::move(values), *t);
}

ECPath ECPath::constant(DigitalImage image, const Point& value) {
  return ECPath(std::move(image), {}, value);
}

std::vector<Point> ECPath::prefix_points() const {
  std::vector<Point> out;
  out.reserve(prefix_.size());
  for (Index i : prefix_) out.push_back(image_.point(i));
  return out;
}

int stabilization_index(const ECPath& f) { return f.stabilization_index(); }

ECPath concat(const ECPath& f0, const ECPath& f1) {
  if (f0.image() != f1.image()) throw std::invalid_argument("concat: paths in different images");
  if (f0.tail_ != f1.value_index_at(0)) {
    throw std::invalid_argument("concat: endpoint mismatch, " + f0.tail().str() + " vs " +
                                f1.start().str());
  }
  std::vector<Index> values = f0.prefix_;
  values.insert(values.end(), f1.prefix_.begin(), f1.prefix_.end());
  return ECPath::from_indices(f0.image_, std::move(values), f1.tail_);
}

ECPath ec_inverse(const ECPath& f) {
  if (!f.is_loop()) throw std::invalid_argument("ec_inverse: not a loop");
  const int N = f.stabilization_index();
  std::vector<Index> values;
  values.reserve(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) values.push_back(f.value_index_at(N - n));
  return ECPath::from_indices(f.image_, std::move(values), f.value_index_at(0));
}

ECPath rebase_path(const ECPath& f, const DigitalImage& target) {
  if (target.kind() != f.image().kind()) {
    throw std::invalid_argument("rebase_path: adjacency kind mismatch");
  }
  std::vector<Index> values;
  values.reserve(f.prefix_.size());
  for (Index i : f.prefix_) {
    auto t = target.index_of(f.image().point(i));
    if (!t) throw std::invalid_argument("rebase_path: value not in target image");
    values.push_back(*t);
  }
  auto tail = target.index_of(f.tail());
  if (!tail) throw std::invalid_argument("rebase_path: tail not in target image");
  return ECPath::from_indices(target, std::move(values), *tail);
}

ECPath push_loop(const DigitalMap& h, const ECPath& L) {
  ECPath base = (L.image() == h.domain()) ? L : rebase_path(L, h.domain());
  if (!check_continuity_edges(h)) throw std::invalid_argument("push_loop: map not continuous");
  std::vector<Index> values;
  values.reserve(base.prefix_.size());
  for (Index i : base.prefix_) values.push_back(h.value_index(i));
  return ECPath::from_indices(h.codomain(), std::move(values), h.value_index(base.tail_));
}

CheckResult verify_ec_homotopy(const ECHomotopy& H, const ECPath& f, const ECPath& g) {
  if (H.rows.empty()) return CheckResult::fail("EC homotopy has no rows");
  for (std::size_t s = 0; s < H.rows.size(); ++s) {
    if (H.rows[s].image() != f.image()) {
      return CheckResult::fail("row " + std::to_string(s) + " lives in a different image");
    }
  }
  if (H.rows.front() != f) return CheckResult::fail("row 0 differs from the first loop");
  if (H.rows.back() != g) return CheckResult::fail("final row differs from the second loop");

  int horizon = 0;
  for (const ECPath& row : H.rows) horizon = std::max(horizon, row.stabilization_index());
  const DigitalImage& img = f.image();
  for (std::size_t s = 0; s + 1 < H.rows.size(); ++s) {
    for (int n = 0; n <= horizon; ++n) {
      Index a = H.rows[s].value_index_at(n);
      Index b = H.rows[s + 1].value_index_at(n);
      if (a != b && !adjacent(img.point(a), img.point(b), img.kind())) {
        return CheckResult::fail("column adjacency fails at row " + std::to_string(s) +
                                 ", position " + std::to_string(n));
      }
    }
  }

  if (H.endpoints_fixed) {
    Index start = H.rows.front().value_index_at(0);
    Index tail = H.rows.front().value_index_at(horizon);
    for (std::size_t s = 0; s < H.rows.size(); ++s) {
      if (H.rows[s].value_index_at(0) != start) {
        return CheckResult::fail("row " + std::to_string(s) + " moves the start value");
      }
      if (H.rows[s].value_index_at(horizon) != tail) {
        return CheckResult::fail("row " + std::to_string(s) + " has a different tail value");
      }
    }
  }
  return CheckResult::pass();
}

LoopsEqualOutcome loops_equal_within_budget(const ECPath& f, const ECPath& g,
                                            const ECBudget& budget) {
  if (f.image() != g.image()) {
    throw std::invalid_argument("loops_equal: loops in different images");
  }
  if (!f.is_loop() || !g.is_loop()) throw std::invalid_argument("loops_equal: not loops");
  if (f.basepoint() != g.basepoint()) {
    throw std::invalid_argument("loops_equal: basepoint mismatch");
  }
  if (budget.max_rows < 1) throw std::invalid_argument("loops_equal: budget needs >= 1 row");
  const int c = budget.horizon;
  if (c < std::max(f.stabilization_index(), g.stabilization_index())) {
    throw std::invalid_argument("loops_equal: horizon below the loops' stabilization indices");
  }

  LoopsEqualOutcome out;
  if (f == g) {
    out.status = LoopsEqualOutcome::Status::kEqual;
    out.witness = ECHomotopy{{f}, true};
    out.stats.visited_states = 1;
    return out;
  }

  GridSpec spec;
  spec.values = f.image();
  spec.rows = budget.max_rows;
  spec.basepoint = *f.image().index_of(f.basepoint());
  spec.top.resize(static_cast<std::size_t>(c) + 1);
  spec.bottom.resize(static_cast<std::size_t>(c) + 1);
  for (int n = 0; n <= c; ++n) {
    spec.top[static_cast<std::size_t>(n)] = f.value_index_at(n);
    spec.bottom[static_cast<std::size_t>(n)] = g.value_index_at(n);
  }

  GridSearchResult r = grid_column_search(spec, state_cap());
  out.stats = r.stats;
  if (!r.reached) return out;

  ECHomotopy witness;
  witness.endpoints_fixed = true;
  Index base = spec.basepoint;
  for (const auto& row_values : r.grid) {
    witness.rows.push_back(
        ECPath(f.image(), [&] {
          std::vector<Point> pts;
          pts.reserve(row_values.size());
          for (Index v : row_values) pts.push_back(f.image().point(v));
          return pts;
        }(), f.image().point(base)));
  }
  out.status = LoopsEqualOutcome::Status::kEqual;
  out.witness = std::move(witness);
  return out;
}

LoopsEqualOutcome loops_equal_within_budget(const LoopClassQuery& query, const ECPath& other) {
  return loops_equal_within_budget(query.representative, other, query.budget);
}

ECPath pi1_identity(const DigitalImage& image, const Point& basepoint) {
  return ECPath::constant(image, basepoint);
}

ECPath pi1_multiply(const ECPath& f, const ECPath& g) {
  if (!f.is_loop() || !g.is_loop()) throw std::invalid_argument("pi1_multiply: not loops");
  if (f.basepoint() != g.basepoint()) {
    throw std::invalid_argument("pi1_multiply: basepoint mismatch");
  }
  return concat(f, g);
}

ECPath pi1_inverse(const ECPath& f) { return ec_inverse(f); }

}  // namespace digitop
