#include <doctest.h>

#include <cmath>

#include "digitop/constructions.hpp"
#include "support.hpp"

using namespace digitop;
using digitop::testing::Rng;
using digitop::testing::random_tree;

namespace {

RealEquivalenceCertificate real_cert_for_tree_image(const TreeImage& tree) {
  LongEquivalenceCertificate lc = tree_long_equivalence(tree);
  return RealEquivalenceCertificate{lc.f, lc.g, long_to_real(lc.H), long_to_real(lc.K),
                                    lc.pointed};
}

// Tree grown into the half-plane sign*x >= 1 (plus the origin), so that two
// such trees with opposite signs only meet at the origin and have no other
// cross-adjacencies under c1 or c2.
TreeImage half_plane_tree(Rng& rng, int nodes, Coord sign) {
  std::vector<Point> pts{Point{0, 0}, Point{sign, 0}};
  AdjacencyKind kind(2, 1);
  int stall = 0;
  while (static_cast<int>(pts.size()) < nodes && stall < 300) {
    const Point& base =
        pts[1 + static_cast<std::size_t>(rng.below(static_cast<int>(pts.size()) - 1))];
    Point cand = base;
    if (rng.flip()) {
      cand.coords[0] += sign;
    } else {
      cand.coords[1] += rng.flip() ? 1 : -1;
    }
    if (sign > 0 ? cand[0] < 1 : cand[0] > -1) {
      ++stall;
      continue;
    }
    int adj = 0;
    bool dup = false;
    for (const Point& p : pts) {
      if (p == cand) dup = true;
      if (adjacent(p, cand, kind)) ++adj;
    }
    if (dup || adj != 1) {
      ++stall;
      continue;
    }
    pts.push_back(cand);
    stall = 0;
  }
  return TreeImage(DigitalImage(pts, kind), Point{0, 0});
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("cube point counts") {
  CHECK(cube(Point{0, 0}, 0, 1).size() == 1);
  CHECK(cube(Point{0, 0}, 1, 2).size() == 9);
  Rng rng(149);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + rng.below(3);
    Coord r = rng.below(3);
    Point center(std::vector<Coord>(static_cast<std::size_t>(n), rng.coord_in(-2, 2)));
    CHECK(cube(center, r, 1 + rng.below(n)).size() ==
          static_cast<int>(std::pow(2 * r + 1, n)));
  }
  CHECK(zn_window(2, 1, 1).size() == 9);
}

TEST_CASE("cube contraction of radius zero is a zero-step homotopy") {
  LHomotopy F = cube_contraction_lhomotopy(Point{0, 0}, 0, 1);
  CHECK(F.window() == 0);
  DigitalImage pt = F.layers.front().domain();
  CHECK(pt.size() == 1);
  CHECK(verify_l_homotopy(F, DigitalMap::identity(pt), DigitalMap::identity(pt)).ok);
}

TEST_CASE("cube contraction: layer-by-layer example") {
  // n=1, r=2, track of the point 2: 2,1,0,0,...
  LHomotopy F = cube_contraction_lhomotopy(Point{0}, 2, 1);
  DigitalImage box = F.layers.front().domain();
  Index two = *box.index_of(Point{2});
  CHECK(F.layers[0].value_at_index(two) == Point{2});
  CHECK(F.layers[1].value_at_index(two) == Point{1});
  CHECK(F.layers[2].value_at_index(two) == Point{0});
  CHECK(F.per_point_stab[static_cast<std::size_t>(two)] == 2);
}

TEST_CASE("cube contraction: stabilization bound n*r, tight at corners") {
  for (int n = 1; n <= 3; ++n) {
    for (Coord r = 1; r <= 2; ++r) {
      Point center(std::vector<Coord>(static_cast<std::size_t>(n), 0));
      LHomotopy F = cube_contraction_lhomotopy(center, r, n);
      DigitalImage box = F.layers.front().domain();
      DigitalMap id = DigitalMap::identity(box);
      DigitalMap c = DigitalMap::constant(box, box, center);
      REQUIRE(verify_l_homotopy(F, id, c).ok);
      CHECK(F.pointed_at == center);

      int max_stab = 0;
      for (int s : F.per_point_stab) max_stab = std::max(max_stab, s);
      CHECK(max_stab == n * static_cast<int>(r));

      Point corner(std::vector<Coord>(static_cast<std::size_t>(n), r));
      CHECK(F.per_point_stab[static_cast<std::size_t>(*box.index_of(corner))] ==
            n * static_cast<int>(r));
    }
  }
}

TEST_CASE("cube similarity certificate verifies") {
  CHECK(verify_similarity(cube_similarity_certificate(Point{0, 0}, 3, 1)).ok);
  CHECK(verify_similarity(cube_similarity_certificate(Point{1, -1, 2}, 2, 3)).ok);
}

TEST_CASE("tree image validation") {
  CHECK_THROWS_AS(TreeImage(DigitalImage({Point{0}, Point{2}}, AdjacencyKind(1, 1)), Point{0}),
                  std::invalid_argument);
  // A 2x2 block under c2 has cycles.
  DigitalImage block({Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}}, AdjacencyKind(2, 2));
  CHECK_THROWS_AS(TreeImage(block, Point{0, 0}), std::invalid_argument);
}

TEST_CASE("tree contraction") {
  SUBCASE("single point") {
    TreeImage pt(DigitalImage({Point{0, 0}}, AdjacencyKind(2, 1)), Point{0, 0});
    CHECK(tree_contraction_homotopy(pt).steps() == 0);
  }

  SUBCASE("path tree rooted at the left end") {
    TreeImage path(interval(0, 3), Point{0});
    Homotopy F = tree_contraction_homotopy(path);
    CHECK(F.steps() == 3);
    CHECK(verify_homotopy(F, DigitalMap::identity(path.image()),
                          DigitalMap::constant(path.image(), path.image(), Point{0}))
              .ok);
  }

  SUBCASE("random trees: witness verifies, pointed at the root, length = eccentricity") {
    Rng rng(151);
    for (int trial = 0; trial < 200; ++trial) {
      TreeImage tree = random_tree(rng, 2, 1 + rng.below(2), 3 + rng.below(23));
      Homotopy F = tree_contraction_homotopy(tree);
      CHECK(F.steps() == tree.eccentricity());
      CHECK(F.pointed_at == tree.root());
      CHECK(verify_homotopy(F, DigitalMap::identity(tree.image()),
                            DigitalMap::constant(tree.image(), tree.image(), tree.root()))
                .ok);

      LHomotopy L = tree_contraction_lhomotopy(tree);
      CHECK(verify_l_homotopy(L, DigitalMap::identity(tree.image()),
                              DigitalMap::constant(tree.image(), tree.image(), tree.root()))
                .ok);
    }
  }

  SUBCASE("tree similarity certificates verify") {
    Rng rng(157);
    for (int trial = 0; trial < 20; ++trial) {
      TreeImage tree = random_tree(rng, 2, 1, 10);
      CHECK(verify_similarity(tree_similarity_certificate(tree, 4)).ok);
    }
  }
}

TEST_CASE("t_image windows") {
  TImageWindows w0 = t_image(0);
  CHECK(w0.line.size() == 1);
  CHECK(w0.tee.size() == 1);

  TImageWindows w3 = t_image(3);
  CHECK(w3.line.size() == 7);
  CHECK(w3.tee.size() == 10);  // 2R+1 + R
}

TEST_CASE("t_image certificates verify at depth/window 5") {
  SimilarityCertificate sim = t_image_similarity(5, 5);
  CHECK(sim.depth() == 5);
  CHECK(verify_similarity(sim).ok);
  REQUIRE(sim.pointed.has_value());
  CHECK(sim.pointed->first == Point{0, 0});

  LongEquivalenceCertificate lc = t_image_long_equivalence(5);
  CHECK(verify_long_equivalence(lc).ok);
}

TEST_CASE("wedge construction") {
  DigitalImage left({Point{0, 0}, Point{-1, 0}, Point{-2, 0}}, AdjacencyKind(2, 1));
  DigitalImage right({Point{0, 0}, Point{1, 0}, Point{2, 0}}, AdjacencyKind(2, 1));
  WedgeImage w = wedge(left, right);
  CHECK(w.wedge_point() == Point{0, 0});
  CHECK(w.image().size() == 5);
  CHECK(w.image().connected());

  SUBCASE("parts meeting in two points are rejected") {
    DigitalImage both({Point{0, 0}, Point{1, 0}}, AdjacencyKind(2, 1));
    CHECK_THROWS_AS(wedge(both, both), std::invalid_argument);
  }

  SUBCASE("stray cross adjacencies are rejected") {
    // (0,1) and (1,0) are c2-adjacent, so these parts form no wedge under c2.
    DigitalImage up2({Point{0, 0}, Point{0, 1}}, AdjacencyKind(2, 2));
    DigitalImage flat2({Point{0, 0}, Point{1, 0}}, AdjacencyKind(2, 2));
    CHECK_THROWS_AS(wedge(up2, flat2), std::invalid_argument);
    // Under c1 the same parts form a wedge.
    DigitalImage up({Point{0, 0}, Point{0, 1}}, AdjacencyKind(2, 1));
    DigitalImage flat({Point{0, 0}, Point{1, 0}, Point{2, 0}}, AdjacencyKind(2, 1));
    CHECK(wedge(up, flat).image().size() == 4);
  }
}

TEST_CASE("wedge_map of identities is the identity") {
  DigitalImage left({Point{0, 0}, Point{-1, 0}}, AdjacencyKind(2, 1));
  DigitalImage right({Point{0, 0}, Point{1, 0}}, AdjacencyKind(2, 1));
  WedgeImage w = wedge(left, right);
  DigitalMap glued =
      wedge_map(w, w, DigitalMap::identity(left), DigitalMap::identity(right));
  CHECK(glued == DigitalMap::identity(w.image()));
}

TEST_CASE("wedge_map glues continuous pointed maps") {
  Rng rng(163);
  for (int trial = 0; trial < 100; ++trial) {
    TreeImage a1 = half_plane_tree(rng, 5, 1);
    TreeImage a2 = half_plane_tree(rng, 5, -1);
    WedgeImage dom = wedge(a1.image(), a2.image());
    // Map each part onto itself by its contraction's first step.
    Homotopy c1 = tree_contraction_homotopy(a1);
    Homotopy c2 = tree_contraction_homotopy(a2);
    const DigitalMap& f1 = c1.layers[std::min<std::size_t>(1, c1.layers.size() - 1)];
    const DigitalMap& f2 = c2.layers[std::min<std::size_t>(1, c2.layers.size() - 1)];
    DigitalMap glued = wedge_map(dom, dom, f1, f2);
    CHECK(check_continuity_edges(glued));
    CHECK(glued.apply(dom.wedge_point()) == dom.wedge_point());
  }
}

TEST_CASE("wedge certificates: similarity, long, and real kinds") {
  Rng rng(167);
  for (int trial = 0; trial < 10; ++trial) {
    TreeImage x1 = half_plane_tree(rng, 6, 1);
    TreeImage x2 = half_plane_tree(rng, 6, -1);
    TreeImage y1 = half_plane_tree(rng, 6, 1);
    TreeImage y2 = half_plane_tree(rng, 6, -1);
    WedgeImage wx = wedge(x1.image(), x2.image());

    SUBCASE("similarity kind: tree wedge against a point wedge") {
      // Both Y parts are the one-point image at the origin; their wedge is a
      // single point.
      DigitalImage pt({Point{0, 0}}, AdjacencyKind(2, 1));
      WedgeImage wy = wedge(pt, pt);
      SimilarityCertificate glued = wedge_similarity_certificates(
          wx, wy, tree_similarity_certificate(x1, 3), tree_similarity_certificate(x2, 3));
      CHECK(verify_similarity(glued).ok);
    }

    SUBCASE("long kind") {
      DigitalImage pt({Point{0, 0}}, AdjacencyKind(2, 1));
      WedgeImage wy = wedge(pt, pt);
      LongEquivalenceCertificate glued = wedge_long_certificates(
          wx, wy, tree_long_equivalence(x1), tree_long_equivalence(x2));
      CHECK(verify_long_equivalence(glued).ok);
    }

    SUBCASE("real kind between two tree wedges") {
      WedgeImage wy = wedge(y1.image(), y2.image());
      // X_i ~R {pt} ~R Y_i per part, then wedge the composites.
      RealEquivalenceCertificate r1 = compose_real_equivalences(
          real_cert_for_tree_image(x1), swap_real_equivalence(real_cert_for_tree_image(y1)));
      RealEquivalenceCertificate r2 = compose_real_equivalences(
          real_cert_for_tree_image(x2), swap_real_equivalence(real_cert_for_tree_image(y2)));
      RealEquivalenceCertificate glued = wedge_real_certificates(wx, wy, r1, r2);
      CHECK(verify_real_equivalence(glued).ok);
    }
  }
}

TEST_CASE("products") {
  SUBCASE("product of single points") {
    DigitalImage pt1({Point{0}}, AdjacencyKind(1, 1));
    ProductImage p({pt1, pt1});
    CHECK(p.image().size() == 1);
    CHECK(p.image().kind() == AdjacencyKind(2, 2));
  }

  SUBCASE("non-maximal factor adjacencies are rejected") {
    DigitalImage plane({Point{0, 0}, Point{1, 0}}, AdjacencyKind(2, 1));
    CHECK_THROWS_AS(ProductImage({plane}), std::invalid_argument);
  }

  SUBCASE("interval x interval equivalence certificate with padding") {
    TreeImage a(interval(0, 2), Point{0});
    TreeImage b(interval(0, 1), Point{0});
    EquivalenceCertificate ca = [&] {
      DigitalImage pt({Point{0}}, AdjacencyKind(1, 1));
      EquivalenceCertificate c;
      c.f = DigitalMap::constant(a.image(), pt, Point{0});
      c.g = DigitalMap::constant(pt, a.image(), Point{0});
      c.H = reverse_homotopy(tree_contraction_homotopy(a));
      c.K = Homotopy{{DigitalMap::identity(pt)}, Point{0}};
      c.pointed = std::make_pair(Point{0}, Point{0});
      return c;
    }();
    EquivalenceCertificate cb = [&] {
      DigitalImage pt({Point{0}}, AdjacencyKind(1, 1));
      EquivalenceCertificate c;
      c.f = DigitalMap::constant(b.image(), pt, Point{0});
      c.g = DigitalMap::constant(pt, b.image(), Point{0});
      c.H = reverse_homotopy(tree_contraction_homotopy(b));
      c.K = Homotopy{{DigitalMap::identity(pt)}, Point{0}};
      c.pointed = std::make_pair(Point{0}, Point{0});
      return c;
    }();
    EquivalenceCertificate prod = product_equivalence({ca, cb});
    CHECK(prod.f.domain().size() == 6);
    CHECK(prod.H.steps() == std::max(ca.H.steps(), cb.H.steps()));
    CHECK(verify_equivalence(prod).ok);
  }

  SUBCASE("three-factor similarity product at depth 3") {
    std::vector<SimilarityCertificate> certs;
    certs.push_back(cube_similarity_certificate(Point{0}, 3, 1));
    certs.push_back(cube_similarity_certificate(Point{0}, 3, 1));
    certs.push_back(cube_similarity_certificate(Point{0, 0}, 3, 2));
    SimilarityCertificate prod = product_similarity(certs);
    CHECK(prod.depth() == 3);
    CHECK(prod.fx.levels.front().kind() == AdjacencyKind(4, 4));
    CHECK(verify_similarity(prod).ok);
  }

  SUBCASE("long and real products") {
    Rng rng(173);
    TreeImage a = random_tree(rng, 1, 1, 4);
    TreeImage b = random_tree(rng, 2, 2, 5);
    LongEquivalenceCertificate pl = product_long_equivalence(
        {tree_long_equivalence(a), tree_long_equivalence(b)});
    CHECK(verify_long_equivalence(pl).ok);

    RealEquivalenceCertificate pr = product_real_equivalence(
        {real_cert_for_tree_image(a), real_cert_for_tree_image(b)});
    CHECK(verify_real_equivalence(pr).ok);
  }

  SUBCASE("product commutes with forgetting basepoints") {
    Rng rng(179);
    TreeImage a = random_tree(rng, 1, 1, 4);
    TreeImage b = random_tree(rng, 2, 2, 4);
    LongEquivalenceCertificate ca = tree_long_equivalence(a);
    LongEquivalenceCertificate cb = tree_long_equivalence(b);
    LongEquivalenceCertificate pointed = product_long_equivalence({ca, cb});

    auto strip = [](LongEquivalenceCertificate c) {
      c.pointed = std::nullopt;
      c.H.pointed_at = std::nullopt;
      c.K.pointed_at = std::nullopt;
      return c;
    };
    LongEquivalenceCertificate unpointed = product_long_equivalence({strip(ca), strip(cb)});
    CHECK(unpointed.f == pointed.f);
    CHECK(unpointed.g == pointed.g);
    CHECK(unpointed.H.layers == pointed.H.layers);
    CHECK(unpointed.K.layers == pointed.K.layers);
    CHECK_FALSE(unpointed.pointed.has_value());
    CHECK(verify_long_equivalence(unpointed).ok);
  }

  SUBCASE("mixed pointing is rejected") {
    TreeImage a(interval(0, 1), Point{0});
    DigitalImage pt({Point{0}}, AdjacencyKind(1, 1));
    EquivalenceCertificate pointed;
    pointed.f = DigitalMap::constant(a.image(), pt, Point{0});
    pointed.g = DigitalMap::constant(pt, a.image(), Point{0});
    pointed.H = reverse_homotopy(tree_contraction_homotopy(a));
    pointed.K = Homotopy{{DigitalMap::identity(pt)}, Point{0}};
    pointed.pointed = std::make_pair(Point{0}, Point{0});
    EquivalenceCertificate unpointed = pointed;
    unpointed.pointed = std::nullopt;
    unpointed.H.pointed_at = std::nullopt;
    unpointed.K.pointed_at = std::nullopt;
    CHECK_THROWS_AS(product_equivalence({pointed, unpointed}), std::invalid_argument);
  }
}

}  // TEST_SUITE
