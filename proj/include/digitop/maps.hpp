#ifndef DIGITOP_MAPS_HPP
#define DIGITOP_MAPS_HPP

#include <utility>
#include <vector>

#include "digitop/check.hpp"
#include "digitop/lattice.hpp"

namespace digitop {

// A total point assignment between two digital images. The assignment is
// stored as codomain point indices aligned with the domain's lexicographic
// point order, so maps with equal content compare equal. Domain and codomain
// travel with the map; certificates built from maps are self-contained.
class DigitalMap {
public:
  DigitalMap() = default;
  DigitalMap(DigitalImage domain, DigitalImage codomain, std::vector<Index> assignment);
  DigitalMap(DigitalImage domain, DigitalImage codomain,
             const std::vector<std::pair<Point, Point>>& pairs);

  static DigitalMap identity(const DigitalImage& img);
  static DigitalMap constant(const DigitalImage& domain, const DigitalImage& codomain,
                             const Point& value);

  const DigitalImage& domain() const { return domain_; }
  const DigitalImage& codomain() const { return codomain_; }
  const std::vector<Index>& assignment() const { return assignment_; }

  Index value_index(Index domain_index) const {
    return assignment_[static_cast<std::size_t>(domain_index)];
  }
  const Point& value_at_index(Index domain_index) const {
    return codomain_.point(value_index(domain_index));
  }
  Point apply(const Point& p) const;

  bool operator==(const DigitalMap& o) const {
    return domain_ == o.domain_ && codomain_ == o.codomain_ && assignment_ == o.assignment_;
  }
  bool operator!=(const DigitalMap& o) const { return !(*this == o); }

private:
  DigitalImage domain_;
  DigitalImage codomain_;
  std::vector<Index> assignment_;
};

// Edge characterization of digital continuity: every adjacent domain pair
// maps to equal or adjacent points.
bool check_continuity_edges(const DigitalMap& f);
CheckResult check_continuity_edges_explain(const DigitalMap& f);

// Serial reference for the edge check; the public entry point dispatches to
// an OpenMP kernel when enabled and must agree with this on every input.
CheckResult check_continuity_edges_serial(const DigitalMap& f);

// Definitional oracle: the image of every connected subset is connected.
// Enumerates connected subsets exhaustively per domain component; throws
// budget_error above the configured component-size cap instead of sampling.
bool check_continuity_connected(const DigitalMap& f);

DigitalMap compose(const DigitalMap& g, const DigitalMap& f);
bool check_isomorphism(const DigitalMap& f);
DigitalMap inverse(const DigitalMap& f);  // requires check_isomorphism-style bijectivity
DigitalMap restrict(const DigitalMap& f, const DigitalImage& subdomain);

// Rebinds the codomain to a subimage containing every value of f.
DigitalMap retarget(const DigitalMap& f, const DigitalImage& new_codomain);

}  // namespace digitop

#endif
