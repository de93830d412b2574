#ifndef DIGITOP_HOMOTOPY_HPP
#define DIGITOP_HOMOTOPY_HPP

#include <optional>
#include <vector>

#include "digitop/check.hpp"
#include "digitop/maps.hpp"
#include "digitop/search.hpp"

namespace digitop {

// A finite digital homotopy stored extensionally: m+1 layer maps over the
// time interval [0,m]. Layer 0 and layer m are the endpoints. m = 0 is legal
// only when the endpoints coincide. If pointed_at is set, every layer must
// send that point to the same value.
struct Homotopy {
  std::vector<DigitalMap> layers;
  std::optional<Point> pointed_at;

  int steps() const { return static_cast<int>(layers.size()) - 1; }
  const DigitalMap& from() const { return layers.front(); }
  const DigitalMap& to() const { return layers.back(); }
};

CheckResult verify_homotopy(const Homotopy& F, const DigitalMap& f, const DigitalMap& g);
CheckResult verify_homotopy_serial(const Homotopy& F, const DigitalMap& f, const DigitalMap& g);

Homotopy reverse_homotopy(const Homotopy& F);
Homotopy concat_homotopies(const Homotopy& F, const Homotopy& G);

// Layer-wise pre/post composition: post . F . pre. Continuity of the layers
// is preserved by composition, so the result verifies whenever F does.
Homotopy whisker_homotopy(const DigitalMap& post, const Homotopy& F, const DigitalMap& pre);

// Extends F to exactly `steps` steps by repeating the final layer.
Homotopy pad_homotopy(const Homotopy& F, int steps);

struct SearchOutcome {
  enum class Status { kFound, kNotWithinBudget } status = Status::kNotWithinBudget;
  std::optional<Homotopy> witness;
  SearchStats stats;

  bool found() const { return status == Status::kFound; }
};

// Bounded decision procedure: BFS over the graph whose vertices are the
// continuous maps domain -> codomain and whose edges are single homotopy
// steps. Found witnesses always verify; NotWithinBudget certifies that no
// homotopy of at most max_steps steps exists, nothing more.
SearchOutcome search_homotopy(const DigitalMap& f, const DigitalMap& g, int max_steps);

// Contractibility search: identity vs every constant map, each tried as the
// target. Deterministically returns the witness with the smallest (length,
// target point) pair.
SearchOutcome search_contraction(const DigitalImage& X, int max_steps);

// Both composites homotopic to the identities. H runs from g.f to 1_X,
// K from f.g to 1_Y. Pointed certificates fix basepoints on both sides.
struct EquivalenceCertificate {
  DigitalMap f;  // X -> Y
  DigitalMap g;  // Y -> X
  Homotopy H;    // g.f ~ 1_X, in X
  Homotopy K;    // f.g ~ 1_Y, in Y
  std::optional<std::pair<Point, Point>> pointed;  // (x0, y0)
};

CheckResult verify_equivalence(const EquivalenceCertificate& cert);

}  // namespace digitop

#endif
