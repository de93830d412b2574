#ifndef DIGITOP_TESTS_SUPPORT_HPP
#define DIGITOP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "digitop/constructions.hpp"
#include "digitop/ecpath.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/lattice.hpp"
#include "digitop/maps.hpp"
#include "digitop/search.hpp"

namespace digitop::testing {

struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  bool flip() { return (eng() & 1) != 0; }
  Coord coord_in(Coord lo, Coord hi) {
    return lo + static_cast<Coord>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    if (v.empty()) throw std::logic_error("pick from empty vector");
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }
};

// Random image of at most max_points distinct points in a small box.
inline DigitalImage random_image(Rng& rng, int dim, int u, int max_points, Coord span = 3) {
  int count = 1 + rng.below(max_points);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) {
    std::vector<Coord> c;
    for (int d = 0; d < dim; ++d) c.push_back(rng.coord_in(-span, span));
    pts.emplace_back(std::move(c));
  }
  return DigitalImage(std::move(pts), AdjacencyKind(dim, u));
}

// Random continuous map by greedy assignment; restarts when a point has no
// viable value. Small images keep this cheap.
inline DigitalMap random_continuous_map(Rng& rng, const DigitalImage& domain,
                                        const DigitalImage& codomain, int tries = 200) {
  for (int attempt = 0; attempt < tries; ++attempt) {
    std::vector<Index> assignment(static_cast<std::size_t>(domain.size()), -1);
    bool ok = true;
    for (Index i = 0; ok && i < domain.size(); ++i) {
      std::vector<Index> candidates;
      for (Index v = 0; v < codomain.size(); ++v) {
        bool fits = true;
        for (Index nb : domain.neighbor_indices(i)) {
          if (nb >= i) continue;
          Index w = assignment[static_cast<std::size_t>(nb)];
          if (w != v && !adjacent(codomain.point(w), codomain.point(v), codomain.kind())) {
            fits = false;
            break;
          }
        }
        if (fits) candidates.push_back(v);
      }
      if (candidates.empty()) {
        ok = false;
      } else {
        assignment[static_cast<std::size_t>(i)] = rng.pick(candidates);
      }
    }
    if (ok) return DigitalMap(domain, codomain, assignment);
  }
  throw std::runtime_error("random_continuous_map: no continuous map found");
}

// Random homotopy built as a walk in the single-step map graph.
inline Homotopy random_homotopy(Rng& rng, const DigitalMap& from, int steps) {
  std::vector<std::pair<int, int>> edges;
  for (Index i = 0; i < from.domain().size(); ++i) {
    for (Index nb : from.domain().neighbor_indices(i)) {
      if (nb > i) edges.emplace_back(i, nb);
    }
  }
  StepSpace space(from.codomain(), from.domain().size(), std::move(edges));
  Homotopy out;
  out.layers.push_back(from);
  SearchState cur = from.assignment();
  std::vector<SearchState> buf;
  for (int t = 0; t < steps; ++t) {
    buf.clear();
    space.successors(cur, nullptr, buf);
    if (buf.empty()) break;
    cur = rng.pick(buf);
    out.layers.emplace_back(from.domain(), from.codomain(), cur);
  }
  return out;
}

// Random pointed homotopy holding `held` fixed.
inline Homotopy random_pointed_homotopy(Rng& rng, const DigitalMap& from, const Point& held,
                                        int steps) {
  std::vector<std::pair<int, int>> edges;
  for (Index i = 0; i < from.domain().size(); ++i) {
    for (Index nb : from.domain().neighbor_indices(i)) {
      if (nb > i) edges.emplace_back(i, nb);
    }
  }
  StepSpace space(from.codomain(), from.domain().size(), std::move(edges));
  std::vector<Index> forced(static_cast<std::size_t>(from.domain().size()), -1);
  Index held_idx = *from.domain().index_of(held);
  forced[static_cast<std::size_t>(held_idx)] = from.value_index(held_idx);

  Homotopy out;
  out.pointed_at = held;
  out.layers.push_back(from);
  SearchState cur = from.assignment();
  std::vector<SearchState> buf;
  for (int t = 0; t < steps; ++t) {
    buf.clear();
    space.successors(cur, &forced, buf);
    if (buf.empty()) break;
    cur = rng.pick(buf);
    out.layers.emplace_back(from.domain(), from.codomain(), cur);
  }
  return out;
}

// Random tree image grown by attaching points adjacent to exactly one
// existing point.
inline TreeImage random_tree(Rng& rng, int dim, int u, int nodes, Coord span = 6) {
  AdjacencyKind kind(dim, u);
  std::vector<Point> pts;
  pts.emplace_back(std::vector<Coord>(static_cast<std::size_t>(dim), 0));
  int stall = 0;
  while (static_cast<int>(pts.size()) < nodes && stall < 500) {
    const Point& base = pts[static_cast<std::size_t>(rng.below(static_cast<int>(pts.size())))];
    std::vector<Coord> c = base.coords;
    int moved = 0;
    for (int d = 0; d < dim && moved < u; ++d) {
      int delta = rng.below(3) - 1;
      if (delta != 0 && c[static_cast<std::size_t>(d)] + delta >= -span &&
          c[static_cast<std::size_t>(d)] + delta <= span) {
        c[static_cast<std::size_t>(d)] += delta;
        ++moved;
      }
    }
    Point cand(c);
    int adjacent_count = 0;
    bool duplicate = false;
    for (const Point& p : pts) {
      if (p == cand) duplicate = true;
      if (adjacent(p, cand, kind)) ++adjacent_count;
    }
    if (duplicate || adjacent_count != 1) {
      ++stall;
      continue;
    }
    pts.push_back(std::move(cand));
    stall = 0;
  }
  DigitalImage img(pts, kind);
  return TreeImage(img, pts.front());
}

// Loop that walks out from the basepoint and returns along the same track.
// The first step leaves the basepoint whenever a neighbor exists.
inline ECPath random_loop(Rng& rng, const DigitalImage& image, const Point& basepoint,
                          int out_steps) {
  Index base = *image.index_of(basepoint);
  std::vector<Index> walk{base};
  for (int s = 0; s < out_steps; ++s) {
    const auto& nbrs = image.neighbor_indices(walk.back());
    if (nbrs.empty()) break;
    std::vector<Index> options(nbrs.begin(), nbrs.end());
    if (s > 0) options.push_back(walk.back());  // the first step must leave the basepoint
    walk.push_back(rng.pick(options));
  }
  std::vector<Point> prefix;
  for (Index v : walk) prefix.push_back(image.point(v));
  for (std::size_t i = walk.size(); i-- > 1;) prefix.push_back(image.point(walk[i - 1]));
  return ECPath(image, prefix, basepoint);
}

}  // namespace digitop::testing

#endif
