#include <doctest.h>

#include "digitop/constructions.hpp"
#include "digitop/longhtpy.hpp"
#include "support.hpp"

using namespace digitop;
using digitop::testing::Rng;
using digitop::testing::random_continuous_map;
using digitop::testing::random_homotopy;
using digitop::testing::random_image;
using digitop::testing::random_pointed_homotopy;
using digitop::testing::random_tree;

TEST_SUITE("longhtpy") {

TEST_CASE("constant layers verify f ~l f") {
  DigitalMap id = DigitalMap::identity(interval(0, 3));
  LHomotopy F;
  F.layers = {id, id};
  F.per_point_stab.assign(4, 0);
  CHECK(verify_l_homotopy(F, id, id).ok);
}

TEST_CASE("cube contraction l-homotopy verifies") {
  for (int n = 1; n <= 2; ++n) {
    for (Coord r = 1; r <= 2; ++r) {
      Point center(std::vector<Coord>(static_cast<std::size_t>(n), 0));
      LHomotopy F = cube_contraction_lhomotopy(center, r, n);
      DigitalImage box = F.layers.front().domain();
      DigitalMap id = DigitalMap::identity(box);
      DigitalMap c = DigitalMap::constant(box, box, center);
      CHECK(verify_l_homotopy(F, id, c).ok);
    }
  }
}

TEST_CASE("understating a stabilization index is rejected") {
  Point center{0};
  LHomotopy F = cube_contraction_lhomotopy(center, 2, 1);
  DigitalImage box = F.layers.front().domain();
  DigitalMap id = DigitalMap::identity(box);
  DigitalMap c = DigitalMap::constant(box, box, center);
  REQUIRE(verify_l_homotopy(F, id, c).ok);
  // Point {-2} stabilizes only at t=2; claim 1 instead.
  Index corner = *box.index_of(Point{-2});
  F.per_point_stab[static_cast<std::size_t>(corner)] = 1;
  CHECK_FALSE(verify_l_homotopy(F, id, c).ok);
}

TEST_CASE("l_to_long pads negatives with the start map") {
  Point center{0, 0};
  LHomotopy F = cube_contraction_lhomotopy(center, 1, 2);
  LongHomotopy L = l_to_long(F);
  DigitalImage box = F.layers.front().domain();
  DigitalMap id = DigitalMap::identity(box);
  DigitalMap c = DigitalMap::constant(box, box, center);
  CHECK(verify_long_homotopy(L, id, c).ok);
  for (int t = -L.window(); t < 0; ++t) CHECK(L.layer(t) == id);
  CHECK(L.pointed_at == center);
}

TEST_CASE("finite/long round trip") {
  Rng rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    DigitalImage dom = random_image(rng, 2, 1 + rng.below(2), 6);
    DigitalImage cod = random_image(rng, 2, dom.kind().u, 6);
    DigitalMap start = random_continuous_map(rng, dom, cod);
    bool pointed = rng.flip();
    Point held = dom.points()[static_cast<std::size_t>(rng.below(dom.size()))];
    Homotopy F = pointed ? random_pointed_homotopy(rng, start, held, 1 + rng.below(3))
                         : random_homotopy(rng, start, 1 + rng.below(3));
    REQUIRE(verify_homotopy(F, F.from(), F.to()).ok);

    LongHomotopy L = finite_to_long(F);
    CHECK(verify_long_homotopy(L, F.from(), F.to()).ok);
    CHECK(verify_long_homotopy_serial(L, F.from(), F.to()).ok);

    Homotopy back = long_to_finite(L);
    CHECK(verify_homotopy(back, F.from(), F.to()).ok);
    CHECK(back.steps() <= F.steps());
    if (pointed) {
      CHECK(back.pointed_at == held);
    }
  }
}

TEST_CASE("zero-step homotopy becomes a constant long homotopy") {
  DigitalMap id = DigitalMap::identity(interval(0, 2));
  Homotopy F{{id}, std::nullopt};
  LongHomotopy L = finite_to_long(F);
  CHECK(L.window() == 0);
  CHECK(verify_long_homotopy(L, id, id).ok);
}

TEST_CASE("reverse_long") {
  Point center{0};
  LongHomotopy L = l_to_long(cube_contraction_lhomotopy(center, 2, 1));
  DigitalImage box = L.layers.front().domain();
  DigitalMap id = DigitalMap::identity(box);
  DigitalMap c = DigitalMap::constant(box, box, center);

  LongHomotopy R = reverse_long(L);
  CHECK(verify_long_homotopy(R, c, id).ok);
  LongHomotopy RR = reverse_long(R);
  CHECK(RR.layers == L.layers);
  CHECK(RR.t_min == L.t_min);

  LongHomotopy constant = make_long_homotopy({id}, std::nullopt);
  CHECK(reverse_long(constant).layers == constant.layers);
}

TEST_CASE("shift_constant_target") {
  SUBCASE("shift to the same constant pads the tail only") {
    Point center{0};
    LongHomotopy H = l_to_long(cube_contraction_lhomotopy(center, 2, 1));
    DigitalImage box = H.layers.front().domain();
    LongHomotopy G = shift_constant_target(H, center);
    CHECK(verify_long_homotopy(G, DigitalMap::identity(box),
                               DigitalMap::constant(box, box, center))
              .ok);
    for (int t = -H.window(); t <= H.window(); ++t) CHECK(G.layer(t) == H.layer(t));
  }

  SUBCASE("interval contraction shifted to an adjacent target") {
    Point center{0};
    LongHomotopy H = l_to_long(cube_contraction_lhomotopy(center, 3, 1));
    DigitalImage box = H.layers.front().domain();
    LongHomotopy G = shift_constant_target(H, Point{1});
    CHECK(verify_long_homotopy(G, DigitalMap::identity(box),
                               DigitalMap::constant(box, box, Point{1}))
              .ok);

    // The freeze index of x is the max stabilization over x and neighbors.
    std::vector<int> freeze = shift_freeze_indices(H);
    for (Index i = 0; i < box.size(); ++i) {
      int expect = 0;
      auto reach = [&](Index p) {
        int nx = 0;
        for (int t = H.window(); t >= -H.window(); --t) {
          if (H.layer(t).value_index(p) != H.layers.back().value_index(p)) {
            nx = t + 1;
            break;
          }
        }
        return nx;
      };
      expect = reach(i);
      for (Index nb : box.neighbor_indices(i)) expect = std::max(expect, reach(nb));
      CHECK(freeze[static_cast<std::size_t>(i)] == expect);
      for (int t = -G.window(); t <= G.window(); ++t) {
        if (t > freeze[static_cast<std::size_t>(i)]) {
          CHECK(G.layer(t).value_at_index(i) == Point{1});
        } else {
          CHECK(G.layer(t) .value_index(i) == H.layer(t).value_index(i));
        }
      }
    }
  }

  SUBCASE("iterating along a path reaches any target in the component") {
    Point center{0};
    LongHomotopy H = l_to_long(cube_contraction_lhomotopy(center, 3, 1));
    DigitalImage box = H.layers.front().domain();
    // Walk the constant from 0 to 3 one step at a time.
    LongHomotopy cur = H;
    for (Coord d = 1; d <= 3; ++d) {
      cur = shift_constant_target(cur, Point{d});
      CHECK(verify_long_homotopy(cur, DigitalMap::identity(box),
                                 DigitalMap::constant(box, box, Point{d}))
                .ok);
    }
  }

  SUBCASE("non-adjacent targets are rejected") {
    Point center{0};
    LongHomotopy H = l_to_long(cube_contraction_lhomotopy(center, 3, 1));
    CHECK_THROWS_AS(shift_constant_target(H, Point{2}), std::invalid_argument);
  }
}

TEST_CASE("long equivalence certificates") {
  Rng rng(89);
  TreeImage tree = random_tree(rng, 2, 1, 8);
  LongEquivalenceCertificate cert = tree_long_equivalence(tree);
  CHECK(verify_long_equivalence(cert).ok);

  SUBCASE("swapping sides stays valid") {
    CHECK(verify_long_equivalence(swap_long_equivalence(cert)).ok);
  }

  SUBCASE("swapping H and K alone is rejected") {
    LongEquivalenceCertificate bad = cert;
    std::swap(bad.H, bad.K);
    CHECK_FALSE(verify_long_equivalence(bad).ok);
  }

  SUBCASE("composition through a point") {
    // Both random trees are rooted at the origin, so they share the middle
    // one-point image.
    TreeImage other = random_tree(rng, 2, 1, 8);
    LongEquivalenceCertificate glued = compose_long_equiv_through_point(
        tree_long_equivalence(tree), swap_long_equivalence(tree_long_equivalence(other)));
    CHECK(verify_long_equivalence(glued).ok);
    CHECK(glued.pointed.has_value());
  }
}

TEST_CASE("interval and square compose through a point across dimensions") {
  // interval(0,2) in Z^1 and the unit square in Z^2, chained through the
  // one-point image {(0,0)} in Z^2.
  DigitalImage line = interval(0, 2);
  DigitalImage square({Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}}, AdjacencyKind(2, 1));
  DigitalImage pt({Point{0, 0}}, AdjacencyKind(2, 1));

  LongEquivalenceCertificate line_cert;
  line_cert.f = DigitalMap::constant(line, pt, Point{0, 0});
  line_cert.g = DigitalMap::constant(pt, line, Point{0});
  line_cert.H = reverse_long(l_to_long(tree_contraction_lhomotopy(TreeImage(line, Point{0}))));
  line_cert.K = make_long_homotopy({DigitalMap::identity(pt)}, Point{0, 0});
  line_cert.pointed = std::make_pair(Point{0}, Point{0, 0});
  REQUIRE(verify_long_equivalence(line_cert).ok);

  SearchOutcome collapse = search_homotopy(DigitalMap::identity(square),
                                           DigitalMap::constant(square, square, Point{0, 0}), 2);
  REQUIRE(collapse.found());
  collapse.witness->pointed_at = Point{0, 0};
  LongEquivalenceCertificate square_cert;
  square_cert.f = DigitalMap::constant(pt, square, Point{0, 0});
  square_cert.g = DigitalMap::constant(square, pt, Point{0, 0});
  square_cert.H = make_long_homotopy({DigitalMap::identity(pt)}, Point{0, 0});
  square_cert.K = reverse_long(finite_to_long(*collapse.witness));
  square_cert.pointed = std::make_pair(Point{0, 0}, Point{0, 0});
  REQUIRE(verify_long_equivalence(square_cert).ok);

  LongEquivalenceCertificate glued = compose_long_equiv_through_point(line_cert, square_cert);
  CHECK(verify_long_equivalence(glued).ok);
  CHECK(glued.f.domain() == line);
  CHECK(glued.f.codomain() == square);

  SUBCASE("verification rejects a certificate whose K endpoints are swapped") {
    LongEquivalenceCertificate bad = glued;
    bad.K = reverse_long(bad.K);
    CheckResult r = verify_long_equivalence(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.clause.find("K endpoints") != std::string::npos);
  }
}

TEST_CASE("identity certificate on a single point") {
  DigitalImage pt({Point{0, 0}}, AdjacencyKind(2, 1));
  DigitalMap id = DigitalMap::identity(pt);
  LongEquivalenceCertificate cert{id, id, make_long_homotopy({id}, Point{0, 0}),
                                  make_long_homotopy({id}, Point{0, 0}),
                                  std::make_pair(Point{0, 0}, Point{0, 0})};
  CHECK(verify_long_equivalence(cert).ok);
  LongEquivalenceCertificate glued = compose_long_equiv_through_point(cert, cert);
  CHECK(verify_long_equivalence(glued).ok);
}

}  // TEST_SUITE
