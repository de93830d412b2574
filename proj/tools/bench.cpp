// Compares the OpenMP verifier/search kernels against their serial reference
// implementations on larger instances than the test suite uses, asserting
// along the way that both produce identical results.

#include <chrono>
#include <cstdio>
#include <random>

#include "digitop/constructions.hpp"
#include "digitop/ecpath.hpp"
#include "digitop/runtime.hpp"

using namespace digitop;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename Fn>
double timed(Fn&& fn, int repeats = 3) {
  double best = 1e30;
  for (int i = 0; i < repeats; ++i) {
    auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-34s %10.4fs %10.4fs %8.2fx   %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, agree ? "agree" : "DISAGREE");
}

DigitalImage ring(Coord radius) {
  std::vector<Point> pts;
  for (Coord x = -radius; x <= radius; ++x) {
    for (Coord y = -radius; y <= radius; ++y) {
      if (std::max(std::abs(x), std::abs(y)) == radius) pts.push_back(Point{x, y});
    }
  }
  return DigitalImage(pts, AdjacencyKind(2, 1));
}

}  // namespace

int main() {
  std::printf("%-34s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    // Continuity scan over a dense 3-D window.
    DigitalImage box = zn_window(3, 8, 3);  // 4913 points, c3
    std::mt19937_64 rng(1);
    std::vector<Index> a;
    a.reserve(static_cast<std::size_t>(box.size()));
    for (Index i = 0; i < box.size(); ++i) {
      const auto& nb = box.neighbor_indices(i);
      a.push_back(rng() % 4 == 0 && !nb.empty()
                      ? nb[rng() % nb.size()]
                      : i);
    }
    DigitalMap f(box, box, a);
    CheckResult s_res, p_res;
    double s = timed([&] {
      s_res = check_continuity_edges_serial(f);
    });
    set_parallel_enabled(true);
    double p = timed([&] {
      p_res = check_continuity_edges_explain(f);
    });
    row("continuity edges (4913 pts, c3)", s, p, s_res.ok == p_res.ok && s_res.clause == p_res.clause);
  }

  {
    // Full homotopy verification of a large cube contraction.
    Point center{0, 0, 0};
    LHomotopy lh = cube_contraction_lhomotopy(center, 4, 3);  // 729 points, 12 layers
    Homotopy F;
    F.layers = lh.layers;
    F.pointed_at = center;
    DigitalMap id = DigitalMap::identity(F.layers.front().domain());
    DigitalMap c = DigitalMap::constant(F.layers.front().domain(), F.layers.front().codomain(),
                                        center);
    CheckResult s_res, p_res;
    double s = timed([&] { s_res = verify_homotopy_serial(F, id, c); });
    double p = timed([&] { p_res = verify_homotopy(F, id, c); });
    row("homotopy verify (729 pts x 13)", s, p, s_res.ok == p_res.ok);

    LongHomotopy L = l_to_long(lh);
    double s2 = timed([&] { s_res = verify_long_homotopy_serial(L, id, c); });
    double p2 = timed([&] { p_res = verify_long_homotopy(L, id, c); });
    row("long verify (729 pts, T=12)", s2, p2, s_res.ok == p_res.ok);
  }

  {
    // Witness search on the 8-ring: exhaustive NotWithinBudget both ways.
    DigitalImage r = ring(1);
    DigitalMap id = DigitalMap::identity(r);
    DigitalMap c = DigitalMap::constant(r, r, r.points().front());
    SearchOutcome s_res, p_res;
    set_parallel_enabled(false);
    double s = timed([&] { s_res = search_homotopy(id, c, 6); }, 1);
    set_parallel_enabled(true);
    double p = timed([&] { p_res = search_homotopy(id, c, 6); }, 1);
    row("map search (8-ring, budget 6)", s, p,
        s_res.found() == p_res.found() && s_res.stats == p_res.stats);
  }

  {
    // EC loop class search with a long horizon.
    DigitalImage line = interval(0, 4);
    std::vector<Point> prefix;
    for (Coord x = 0; x <= 4; ++x) prefix.push_back(Point{x});
    for (Coord x = 3; x >= 1; --x) prefix.push_back(Point{x});
    ECPath out_and_back(line, prefix, Point{0});
    ECPath constant = ECPath::constant(line, Point{0});
    ECBudget budget{10, 2 * out_and_back.stabilization_index() + 4};
    LoopsEqualOutcome s_res, p_res;
    set_parallel_enabled(false);
    double s = timed([&] { s_res = loops_equal_within_budget(out_and_back, constant, budget); }, 1);
    set_parallel_enabled(true);
    double p = timed([&] { p_res = loops_equal_within_budget(out_and_back, constant, budget); }, 1);
    row("EC grid search (horizon 20)", s, p,
        s_res.equal() == p_res.equal() && s_res.stats == p_res.stats);
  }

  return 0;
}
