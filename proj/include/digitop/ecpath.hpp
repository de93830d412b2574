#ifndef DIGITOP_ECPATH_HPP
#define DIGITOP_ECPATH_HPP

#include <optional>
#include <vector>

#include "digitop/check.hpp"
#include "digitop/maps.hpp"
#include "digitop/search.hpp"

namespace digitop {

// An eventually constant path in a digital image: a finite prefix of values
// at 0..N-1 plus the tail value taken at every n >= N. Consecutive values
// are equal or adjacent. The representation is canonical: the prefix never
// ends with the tail value, so N is exactly the stabilization index.
class ECPath {
public:
  ECPath(DigitalImage image, const std::vector<Point>& prefix, const Point& tail);

  static ECPath constant(DigitalImage image, const Point& value);

  const DigitalImage& image() const { return image_; }
  int stabilization_index() const { return static_cast<int>(prefix_.size()); }

  Index value_index_at(int n) const {
    return n < stabilization_index() ? prefix_[static_cast<std::size_t>(n)] : tail_;
  }
  Point value_at(int n) const { return image_.point(value_index_at(n)); }
  Point tail() const { return image_.point(tail_); }
  Point start() const { return value_at(0); }

  bool is_loop() const { return value_index_at(0) == tail_; }
  Point basepoint() const { return start(); }

  std::vector<Point> prefix_points() const;

  bool operator==(const ECPath& o) const {
    return image_ == o.image_ && prefix_ == o.prefix_ && tail_ == o.tail_;
  }
  bool operator!=(const ECPath& o) const { return !(*this == o); }

private:
  ECPath() = default;
  static ECPath from_indices(DigitalImage image, std::vector<Index> values, Index tail);

  DigitalImage image_;
  std::vector<Index> prefix_;
  Index tail_ = 0;

  friend ECPath concat(const ECPath&, const ECPath&);
  friend ECPath ec_inverse(const ECPath&);
  friend ECPath push_loop(const DigitalMap&, const ECPath&);
  friend ECPath rebase_path(const ECPath&, const DigitalImage&);
};

int stabilization_index(const ECPath& f);
ECPath concat(const ECPath& f0, const ECPath& f1);
ECPath ec_inverse(const ECPath& f);

// Moves an EC path into another image containing all of its points.
ECPath rebase_path(const ECPath& f, const DigitalImage& target);

// Composition with a continuous map, re-canonicalized (composition can erase
// trailing moves, so the stabilization index may shrink).
ECPath push_loop(const DigitalMap& h, const ECPath& L);

// A homotopy between EC paths: rows are EC paths, columns step by at most
// one adjacency. endpoints_fixed additionally requires a common start value
// and a common tail across all rows.
struct ECHomotopy {
  std::vector<ECPath> rows;
  bool endpoints_fixed = false;
};

CheckResult verify_ec_homotopy(const ECHomotopy& H, const ECPath& f, const ECPath& g);

struct ECBudget {
  int max_rows = 8;
  int horizon = 0;  // columns 0..horizon are searched; >= horizon is pinned

  static ECBudget defaults_for(const ECPath& f) {
    return {8, 2 * f.stabilization_index() + 4};
  }
};

struct LoopClassQuery {
  ECPath representative;
  ECBudget budget;
};

struct LoopsEqualOutcome {
  enum class Status { kEqual, kUnknown } status = Status::kUnknown;
  std::optional<ECHomotopy> witness;
  SearchStats stats;

  bool equal() const { return status == Status::kEqual; }
};

// Semi-decision for the EC loop class relation. Equal verdicts carry a
// verifying endpoints-fixed witness; Unknown certifies exhaustion of every
// homotopy with at most max_rows rows and common tail index at most horizon,
// never inequality. The search runs over grid columns, not whole rows, so
// budgets with long horizons stay tractable.
LoopsEqualOutcome loops_equal_within_budget(const ECPath& f, const ECPath& g,
                                            const ECBudget& budget);
LoopsEqualOutcome loops_equal_within_budget(const LoopClassQuery& query, const ECPath& other);

ECPath pi1_identity(const DigitalImage& image, const Point& basepoint);
ECPath pi1_multiply(const ECPath& f, const ECPath& g);
ECPath pi1_inverse(const ECPath& f);

}  // namespace digitop

#endif
