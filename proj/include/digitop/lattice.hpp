#ifndef DIGITOP_LATTICE_HPP
#define DIGITOP_LATTICE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace digitop {

using Coord = std::int64_t;
using Index = std::int32_t;

// A lattice point in Z^n. Coordinates are exact integers; comparison is
// lexicographic, which fixes iteration order everywhere in the toolkit.
struct Point {
  std::vector<Coord> coords;

  Point() = default;
  Point(std::initializer_list<Coord> cs) : coords(cs) {}
  explicit Point(std::vector<Coord> cs) : coords(std::move(cs)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  Coord operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }

  bool operator==(const Point& o) const { return coords == o.coords; }
  bool operator!=(const Point& o) const { return coords != o.coords; }
  bool operator<(const Point& o) const { return coords < o.coords; }

  std::string str() const;
};

struct PointHash {
  std::size_t operator()(const Point& p) const;
};

// The c_u adjacency on Z^n: distinct points differing by at most one in
// every coordinate and in at most u coordinates. u = n is the maximal
// ("fully diagonal") adjacency.
struct AdjacencyKind {
  int ambient_dim = 1;
  int u = 1;

  AdjacencyKind() = default;
  AdjacencyKind(int dim, int u_);

  bool operator==(const AdjacencyKind& o) const {
    return ambient_dim == o.ambient_dim && u == o.u;
  }
  bool operator!=(const AdjacencyKind& o) const { return !(*this == o); }

  std::string str() const;
};

bool adjacent(const Point& p, const Point& q, const AdjacencyKind& kind);

// A finite digital image: a duplicate-free set of lattice points plus an
// adjacency kind. Immutable after construction; copies share storage, so
// passing images by value is cheap and maps can embed their domain and
// codomain without blowup. Equality compares content.
class DigitalImage {
public:
  DigitalImage();
  DigitalImage(std::vector<Point> points, AdjacencyKind kind);

  const AdjacencyKind& kind() const { return data_->kind; }
  const std::vector<Point>& points() const { return data_->points; }
  int size() const { return static_cast<int>(data_->points.size()); }
  bool empty() const { return data_->points.empty(); }

  bool contains(const Point& p) const { return index_of(p).has_value(); }
  std::optional<Index> index_of(const Point& p) const;
  const Point& point(Index i) const { return data_->points[static_cast<std::size_t>(i)]; }

  // Adjacency list of the point with index i, as sorted indices.
  const std::vector<Index>& neighbor_indices(Index i) const;

  bool is_subset_of(const DigitalImage& other) const;
  bool connected() const;

  bool operator==(const DigitalImage& o) const;
  bool operator!=(const DigitalImage& o) const { return !(*this == o); }

private:
  struct Data {
    AdjacencyKind kind;
    std::vector<Point> points;  // sorted, unique
    std::vector<std::vector<Index>> nbrs;
    std::unordered_map<Point, Index, PointHash> index;
  };
  std::shared_ptr<const Data> data_;
};

struct PointedImage {
  DigitalImage image;
  Point basepoint;

  PointedImage(DigitalImage img, Point base);
};

// Module operations.
bool adjacent_in(const DigitalImage& img, const Point& p, const Point& q);
DigitalImage interval(Coord a, Coord b);
std::vector<std::vector<Point>> components(const DigitalImage& img);
std::vector<Point> neighbors(const DigitalImage& img, const Point& p);

}  // namespace digitop

#endif
