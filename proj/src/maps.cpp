#include "digitop/maps.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "digitop/runtime.hpp"

namespace digitop {

DigitalMap::DigitalMap(DigitalImage domain, DigitalImage codomain, std::vector<Index> assignment)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), assignment_(std::move(assignment)) {
  if (assignment_.size() != static_cast<std::size_t>(domain_.size())) {
    throw std::invalid_argument("map assignment size does not cover the domain");
  }
  for (Index v : assignment_) {
    if (v < 0 || v >= codomain_.size()) {
      throw std::invalid_argument("map assignment value out of codomain range");
    }
  }
}

DigitalMap::DigitalMap(DigitalImage domain, DigitalImage codomain,
                       const std::vector<std::pair<Point, Point>>& pairs)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  assignment_.assign(static_cast<std::size_t>(domain_.size()), -1);
  std::size_t pos = 0;
  for (const auto& [x, y] : pairs) {
    auto xi = domain_.index_of(x);
    if (!xi) {
      throw std::invalid_argument("pairs[" + std::to_string(pos) + "]: " + x.str() +
                                  " not in domain");
    }
    auto yi = codomain_.index_of(y);
    if (!yi) {
      throw std::invalid_argument("pairs[" + std::to_string(pos) + "]: " + y.str() +
                                  " not in codomain");
    }
    if (assignment_[static_cast<std::size_t>(*xi)] != -1) {
      throw std::invalid_argument("pairs[" + std::to_string(pos) + "]: " + x.str() +
                                  " assigned twice");
    }
    assignment_[static_cast<std::size_t>(*xi)] = *yi;
    ++pos;
  }
  for (Index i = 0; i < domain_.size(); ++i) {
    if (assignment_[static_cast<std::size_t>(i)] == -1) {
      throw std::invalid_argument("map does not assign " + domain_.point(i).str());
    }
  }
}

DigitalMap DigitalMap::identity(const DigitalImage& img) {
  std::vector<Index> a(static_cast<std::size_t>(img.size()));
  for (Index i = 0; i < img.size(); ++i) a[static_cast<std::size_t>(i)] = i;
  return DigitalMap(img, img, std::move(a));
}

DigitalMap DigitalMap::constant(const DigitalImage& domain, const DigitalImage& codomain,
                                const Point& value) {
  auto vi = codomain.index_of(value);
  if (!vi) throw std::invalid_argument("constant map value " + value.str() + " not in codomain");
  return DigitalMap(domain, codomain,
                    std::vector<Index>(static_cast<std::size_t>(domain.size()), *vi));
}

Point DigitalMap::apply(const Point& p) const {
  auto i = domain_.index_of(p);
  if (!i) throw std::invalid_argument("map applied outside its domain: " + p.str());
  return value_at_index(*i);
}

namespace {

// One flattened (point, neighbor) edge task per ordered pair with i < nb.
inline bool edge_ok(const DigitalMap& f, Index i, Index nb) {
  Index a = f.value_index(i);
  Index b = f.value_index(nb);
  return a == b || adjacent(f.codomain().point(a), f.codomain().point(b), f.codomain().kind());
}

CheckResult explain_edge(const DigitalMap& f, Index i, Index nb) {
  return CheckResult::fail("edge (" + f.domain().point(i).str() + "," + f.domain().point(nb).str() +
                           ") maps to non-adjacent distinct points " +
                           f.value_at_index(i).str() + "," + f.value_at_index(nb).str());
}

}  // namespace

CheckResult check_continuity_edges_serial(const DigitalMap& f) {
  const Index n = static_cast<Index>(f.domain().size());
  for (Index i = 0; i < n; ++i) {
    for (Index nb : f.domain().neighbor_indices(i)) {
      if (nb <= i) continue;
      if (!edge_ok(f, i, nb)) return explain_edge(f, i, nb);
    }
  }
  return CheckResult::pass();
}

CheckResult check_continuity_edges_explain(const DigitalMap& f) {
  const Index n = static_cast<Index>(f.domain().size());
  if (!parallel_enabled() || n < 256) return check_continuity_edges_serial(f);

  // Find the first failing point index; the clause is recomputed serially at
  // that index so the report never depends on the schedule.
  Index first_bad = n;
#pragma omp parallel for schedule(static) reduction(min : first_bad)
  for (Index i = 0; i < n; ++i) {
    for (Index nb : f.domain().neighbor_indices(i)) {
      if (nb <= i) continue;
      if (!edge_ok(f, i, nb)) {
        first_bad = std::min(first_bad, i);
        break;
      }
    }
  }
  if (first_bad == n) return CheckResult::pass();
  for (Index nb : f.domain().neighbor_indices(first_bad)) {
    if (nb <= first_bad) continue;
    if (!edge_ok(f, first_bad, nb)) return explain_edge(f, first_bad, nb);
  }
  return CheckResult::fail("edge check raced; unreachable");
}

bool check_continuity_edges(const DigitalMap& f) {
  return check_continuity_edges_explain(f).ok;
}

namespace {

bool subset_connected(const std::vector<Index>& members, const DigitalImage& img) {
  if (members.size() <= 1) return true;
  std::vector<char> in_set(static_cast<std::size_t>(img.size()), 0);
  for (Index m : members) in_set[static_cast<std::size_t>(m)] = 1;
  std::vector<char> seen(static_cast<std::size_t>(img.size()), 0);
  std::queue<Index> q;
  q.push(members[0]);
  seen[static_cast<std::size_t>(members[0])] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    Index cur = q.front();
    q.pop();
    for (Index nb : img.neighbor_indices(cur)) {
      if (in_set[static_cast<std::size_t>(nb)] && !seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = 1;
        ++reached;
        q.push(nb);
      }
    }
  }
  return reached == members.size();
}

}  // namespace

bool check_continuity_connected(const DigitalMap& f) {
  // A connected subset lies inside one domain component, so enumeration is
  // component-wise: all nonempty subsets of each component, filtered down to
  // the connected ones.
  for (const auto& part : components(f.domain())) {
    if (part.size() > oracle_component_cap()) {
      throw budget_error("connected-subset oracle: component of size " +
                         std::to_string(part.size()) + " exceeds cap " +
                         std::to_string(oracle_component_cap()));
    }
    std::vector<Index> member_index;
    for (const Point& p : part) member_index.push_back(*f.domain().index_of(p));
    const std::size_t k = member_index.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<Index> subset;
      for (std::size_t b = 0; b < k; ++b) {
        if (mask & (1u << b)) subset.push_back(member_index[b]);
      }
      if (!subset_connected(subset, f.domain())) continue;
      std::vector<Index> image_indices;
      for (Index m : subset) image_indices.push_back(f.value_index(m));
      std::sort(image_indices.begin(), image_indices.end());
      image_indices.erase(std::unique(image_indices.begin(), image_indices.end()),
                          image_indices.end());
      if (!subset_connected(image_indices, f.codomain())) return false;
    }
  }
  return true;
}

DigitalMap compose(const DigitalMap& g, const DigitalMap& f) {
  if (f.codomain() != g.domain()) {
    throw std::invalid_argument("compose: codomain of inner map differs from domain of outer map");
  }
  std::vector<Index> a(static_cast<std::size_t>(f.domain().size()));
  for (Index i = 0; i < f.domain().size(); ++i) {
    a[static_cast<std::size_t>(i)] = g.value_index(f.value_index(i));
  }
  return DigitalMap(f.domain(), g.codomain(), std::move(a));
}

bool check_isomorphism(const DigitalMap& f) {
  if (f.domain().size() != f.codomain().size()) return false;
  std::vector<char> hit(static_cast<std::size_t>(f.codomain().size()), 0);
  for (Index v : f.assignment()) {
    if (hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = 1;
  }
  if (!check_continuity_edges(f)) return false;
  return check_continuity_edges(inverse(f));
}

DigitalMap inverse(const DigitalMap& f) {
  if (f.domain().size() != f.codomain().size()) {
    throw std::invalid_argument("inverse of a non-bijective map");
  }
  std::vector<Index> a(static_cast<std::size_t>(f.codomain().size()), -1);
  for (Index i = 0; i < f.domain().size(); ++i) {
    Index v = f.value_index(i);
    if (a[static_cast<std::size_t>(v)] != -1) {
      throw std::invalid_argument("inverse of a non-injective map");
    }
    a[static_cast<std::size_t>(v)] = i;
  }
  return DigitalMap(f.codomain(), f.domain(), std::move(a));
}

DigitalMap restrict(const DigitalMap& f, const DigitalImage& subdomain) {
  if (subdomain.kind() != f.domain().kind()) {
    throw std::invalid_argument("restrict: adjacency kind mismatch");
  }
  std::vector<Index> a;
  a.reserve(static_cast<std::size_t>(subdomain.size()));
  for (const Point& p : subdomain.points()) {
    auto i = f.domain().index_of(p);
    if (!i) throw std::invalid_argument("restrict: " + p.str() + " not a domain point");
    a.push_back(f.value_index(*i));
  }
  return DigitalMap(subdomain, f.codomain(), std::move(a));
}

DigitalMap retarget(const DigitalMap& f, const DigitalImage& new_codomain) {
  if (new_codomain.kind() != f.codomain().kind()) {
    throw std::invalid_argument("retarget: adjacency kind mismatch");
  }
  std::vector<Index> a;
  a.reserve(f.assignment().size());
  for (Index i = 0; i < f.domain().size(); ++i) {
    auto v = new_codomain.index_of(f.value_at_index(i));
    if (!v) {
      throw std::invalid_argument("retarget: value " + f.value_at_index(i).str() +
                                  " not in new codomain");
    }
    a.push_back(*v);
  }
  return DigitalMap(f.domain(), new_codomain, std::move(a));
}

}  // namespace digitop
