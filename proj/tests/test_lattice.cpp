#include <doctest.h>

#include <cmath>
#include <set>

#include "digitop/lattice.hpp"
#include "support.hpp"

using namespace digitop;
using digitop::testing::Rng;

TEST_SUITE("lattice") {

TEST_CASE("c_u adjacency on Z^2") {
  AdjacencyKind c1(2, 1), c2(2, 2);
  CHECK(adjacent(Point{0, 0}, Point{1, 0}, c1));
  CHECK_FALSE(adjacent(Point{0, 0}, Point{0, 0}, c1));
  CHECK_FALSE(adjacent(Point{0, 0}, Point{1, 1}, c1));
  CHECK(adjacent(Point{0, 0}, Point{1, 1}, c2));
  CHECK_FALSE(adjacent(Point{0, 0}, Point{2, 0}, c2));
  CHECK_THROWS_AS(adjacent(Point{0}, Point{1, 0}, c1), std::invalid_argument);
}

TEST_CASE("neighbor counts match the c_u names") {
  // c1=2 on Z, c1=4 and c2=8 on Z^2, c1=6, c2=18, c3=26 on Z^3.
  auto count = [](int dim, int u) {
    DigitalImage window = [&] {
      std::vector<Point> pts;
      std::vector<Coord> c(static_cast<std::size_t>(dim), -1);
      while (true) {
        pts.emplace_back(c);
        int i = 0;
        for (; i < dim; ++i) {
          if (c[static_cast<std::size_t>(i)] < 1) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = 0; j < i; ++j) c[static_cast<std::size_t>(j)] = -1;
            break;
          }
        }
        if (i == dim) break;
      }
      return DigitalImage(pts, AdjacencyKind(dim, u));
    }();
    Point origin(std::vector<Coord>(static_cast<std::size_t>(dim), 0));
    return neighbors(window, origin).size();
  };
  CHECK(count(1, 1) == 2);
  CHECK(count(2, 1) == 4);
  CHECK(count(2, 2) == 8);
  CHECK(count(3, 1) == 6);
  CHECK(count(3, 2) == 18);
  CHECK(count(3, 3) == 26);
}

TEST_CASE("adjacency is symmetric and irreflexive on samples") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = 1 + rng.below(3);
    AdjacencyKind kind(dim, 1 + rng.below(dim));
    std::vector<Coord> a, b;
    for (int d = 0; d < dim; ++d) {
      a.push_back(rng.coord_in(-3, 3));
      b.push_back(rng.coord_in(-3, 3));
    }
    Point p(a), q(b);
    CHECK(adjacent(p, q, kind) == adjacent(q, p, kind));
    CHECK_FALSE(adjacent(p, p, kind));
  }
}

TEST_CASE("interval") {
  DigitalImage single = interval(0, 0);
  CHECK(single.size() == 1);

  DigitalImage four = interval(0, 3);
  CHECK(four.size() == 4);
  int edges = 0;
  for (Index i = 0; i < four.size(); ++i) edges += static_cast<int>(four.neighbor_indices(i).size());
  CHECK(edges / 2 == 3);

  DigitalImage sym = interval(-2, 2);
  CHECK(sym.size() == 5);
  CHECK(neighbors(sym, Point{0}) == std::vector<Point>{Point{-1}, Point{1}});
  CHECK_THROWS_AS(interval(1, 0), std::invalid_argument);
}

TEST_CASE("components") {
  CHECK(components(interval(0, 3)).size() == 1);

  DigitalImage split({Point{0}, Point{2}}, AdjacencyKind(1, 1));
  CHECK(components(split).size() == 2);

  // Boundary of [0,2]^2: the 8-point c1 ring is one component.
  std::vector<Point> ring_pts;
  for (Coord x = 0; x <= 2; ++x) {
    for (Coord y = 0; y <= 2; ++y) {
      if (x == 1 && y == 1) continue;
      ring_pts.push_back(Point{x, y});
    }
  }
  DigitalImage ring(ring_pts, AdjacencyKind(2, 1));
  CHECK(components(ring).size() == 1);
}

TEST_CASE("components form a maximal partition") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    DigitalImage img = random_image(rng, 2, 1 + rng.below(2), 12);
    auto parts = components(img);
    std::size_t total = 0;
    for (const auto& part : parts) total += part.size();
    CHECK(total == static_cast<std::size_t>(img.size()));
    // No adjacency edge crosses parts, so merging any two parts cannot be
    // connected: check pairwise non-adjacency across parts.
    for (std::size_t a = 0; a < parts.size(); ++a) {
      for (std::size_t b = a + 1; b < parts.size(); ++b) {
        for (const Point& p : parts[a]) {
          for (const Point& q : parts[b]) {
            CHECK_FALSE(adjacent(p, q, img.kind()));
          }
        }
      }
    }
  }
}

TEST_CASE("neighbors") {
  CHECK(neighbors(interval(0, 3), Point{0}) == std::vector<Point>{Point{1}});

  DigitalImage square({Point{0, 0}, Point{0, 1}, Point{1, 0}, Point{1, 1}}, AdjacencyKind(2, 2));
  auto nb = neighbors(square, Point{0, 0});
  CHECK(nb == std::vector<Point>{Point{0, 1}, Point{1, 0}, Point{1, 1}});

  DigitalImage split({Point{0}, Point{2}}, AdjacencyKind(1, 1));
  CHECK(neighbors(split, Point{0}).empty());
  CHECK_THROWS_AS(neighbors(split, Point{1}), std::invalid_argument);
}

TEST_CASE("neighbor count bound 3^n - 1") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    int dim = 1 + rng.below(3);
    DigitalImage img = random_image(rng, dim, dim, 20);
    std::size_t bound = static_cast<std::size_t>(std::pow(3, dim)) - 1;
    for (const Point& p : img.points()) {
      CHECK(neighbors(img, p).size() <= bound);
    }
  }
}

TEST_CASE("pointed image validates membership") {
  CHECK_THROWS_AS(PointedImage(interval(0, 3), Point{9}), std::invalid_argument);
  PointedImage ok(interval(0, 3), Point{2});
  CHECK(ok.basepoint == Point{2});
}

}  // TEST_SUITE
