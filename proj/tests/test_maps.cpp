#include <doctest.h>

#include "digitop/constructions.hpp"
#include "digitop/maps.hpp"
#include "support.hpp"

using namespace digitop;
using digitop::testing::Rng;
using digitop::testing::random_continuous_map;
using digitop::testing::random_image;

namespace {

DigitalMap collapse_021() {
  // 0 -> 0, 1 -> 2, 2 -> 2: the edge 0-1 maps to the non-adjacent pair 0,2.
  DigitalImage dom = interval(0, 2);
  return DigitalMap(dom, dom, {{Point{0}, Point{0}}, {Point{1}, Point{2}}, {Point{2}, Point{2}}});
}

}  // namespace

TEST_SUITE("maps") {

TEST_CASE("edge continuity examples") {
  CHECK(check_continuity_edges(DigitalMap::identity(interval(0, 5))));

  DigitalMap squeeze(interval(0, 2), interval(0, 1),
                     {{Point{0}, Point{0}}, {Point{1}, Point{1}}, {Point{2}, Point{1}}});
  CHECK(check_continuity_edges(squeeze));

  CheckResult bad = check_continuity_edges_explain(collapse_021());
  CHECK_FALSE(bad.ok);
  CHECK(bad.clause.find("(0),(1)") != std::string::npos);
}

TEST_CASE("connected-subset oracle agrees with the edge characterization") {
  Rng rng(17);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int u = 1 + rng.below(2);
    DigitalImage dom = random_image(rng, 2, u, 8);
    DigitalImage cod = random_image(rng, 2, u, 8);
    // Arbitrary total assignment, continuous or not.
    std::vector<Index> a;
    for (Index i = 0; i < dom.size(); ++i) {
      a.push_back(static_cast<Index>(rng.below(cod.size())));
    }
    DigitalMap f(dom, cod, a);
    CHECK(check_continuity_edges(f) == check_continuity_connected(f));
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("parallel continuity kernel agrees with the serial reference") {
  // Large enough to cross the kernel's parallel threshold.
  DigitalImage box = cube(Point{0, 0, 0}, 4, 3);
  Rng rng(211);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Index> a;
    for (Index i = 0; i < box.size(); ++i) {
      const auto& nb = box.neighbor_indices(i);
      bool wiggle = rng.below(4) == 0 && !nb.empty();
      a.push_back(wiggle ? nb[static_cast<std::size_t>(rng.below(static_cast<int>(nb.size())))]
                         : i);
    }
    DigitalMap f(box, box, a);
    CheckResult serial = check_continuity_edges_serial(f);
    CheckResult parallel = check_continuity_edges_explain(f);
    CHECK(serial.ok == parallel.ok);
    CHECK(serial.clause == parallel.clause);
  }
}

TEST_CASE("oracle reports budget exhaustion instead of sampling") {
  DigitalImage big = interval(0, 20);
  DigitalMap id = DigitalMap::identity(big);
  CHECK_THROWS_AS(check_continuity_connected(id), budget_error);
}

TEST_CASE("composition") {
  DigitalImage dom = interval(0, 2);
  DigitalMap id = DigitalMap::identity(dom);
  DigitalMap squeeze(dom, dom, {{Point{0}, Point{0}}, {Point{1}, Point{1}}, {Point{2}, Point{1}}});
  CHECK(compose(id, squeeze) == squeeze);
  DigitalMap c = DigitalMap::constant(dom, dom, Point{2});
  CHECK(compose(c, squeeze) == c);
  CHECK_THROWS_AS(compose(squeeze, DigitalMap::identity(interval(0, 5))), std::invalid_argument);
}

TEST_CASE("composites of continuous maps are continuous") {
  Rng rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    int u = 1 + rng.below(2);
    DigitalImage a = random_image(rng, 2, u, 6);
    DigitalImage b = random_image(rng, 2, u, 6);
    DigitalImage c = random_image(rng, 2, u, 6);
    DigitalMap f = random_continuous_map(rng, a, b);
    DigitalMap g = random_continuous_map(rng, b, c);
    CHECK(check_continuity_edges(compose(g, f)));
  }
}

TEST_CASE("composition is associative") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    DigitalImage a = random_image(rng, 1, 1, 5);
    DigitalImage b = random_image(rng, 1, 1, 5);
    DigitalImage c = random_image(rng, 1, 1, 5);
    DigitalImage d = random_image(rng, 1, 1, 5);
    DigitalMap f = random_continuous_map(rng, a, b);
    DigitalMap g = random_continuous_map(rng, b, c);
    DigitalMap h = random_continuous_map(rng, c, d);
    CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
  }
}

TEST_CASE("isomorphism") {
  CHECK(check_isomorphism(DigitalMap::identity(interval(0, 3))));

  DigitalImage from = interval(0, 3);
  DigitalImage to = interval(5, 8);
  std::vector<std::pair<Point, Point>> pairs;
  for (Coord x = 0; x <= 3; ++x) pairs.emplace_back(Point{x}, Point{x + 5});
  DigitalMap translation(from, to, pairs);
  CHECK(check_isomorphism(translation));
  CHECK(check_isomorphism(inverse(translation)));

  DigitalMap squeeze(from, from,
                     {{Point{0}, Point{0}},
                      {Point{1}, Point{1}},
                      {Point{2}, Point{1}},
                      {Point{3}, Point{3}}});
  CHECK_FALSE(check_isomorphism(squeeze));
}

TEST_CASE("restrict") {
  DigitalMap id = DigitalMap::identity(interval(0, 3));
  CHECK(restrict(id, interval(0, 3)) == id);
  DigitalMap cut = restrict(id, interval(0, 1));
  CHECK(cut.domain() == interval(0, 1));
  CHECK(cut.apply(Point{1}) == Point{1});
  CHECK_THROWS_AS(restrict(id, interval(0, 9)), std::invalid_argument);
}

TEST_CASE("restriction of a continuous map is continuous") {
  Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    DigitalImage dom = random_image(rng, 2, 1, 8);
    DigitalImage cod = random_image(rng, 2, 1, 8);
    DigitalMap f = random_continuous_map(rng, dom, cod);
    // Random subimage.
    std::vector<Point> sub;
    for (const Point& p : dom.points()) {
      if (rng.flip()) sub.push_back(p);
    }
    if (sub.empty()) sub.push_back(dom.points().front());
    DigitalMap cut = restrict(f, DigitalImage(sub, dom.kind()));
    CHECK(check_continuity_edges(cut));
  }
}

TEST_CASE("map construction rejects bad pair lists") {
  DigitalImage dom = interval(0, 1);
  CHECK_THROWS_AS(DigitalMap(dom, dom, {{Point{0}, Point{0}}}), std::invalid_argument);
  CHECK_THROWS_AS(DigitalMap(dom, dom,
                             {{Point{0}, Point{0}}, {Point{0}, Point{1}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DigitalMap(dom, dom, {{Point{0}, Point{0}}, {Point{1}, Point{7}}}),
                  std::invalid_argument);
}

}  // TEST_SUITE
