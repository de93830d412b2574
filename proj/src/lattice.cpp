#include "digitop/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace digitop {

std::string Point::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords[i]);
  }
  s += ")";
  return s;
}

std::size_t PointHash::operator()(const Point& p) const {
  std::size_t h = 1469598103934665603ull;
  for (Coord c : p.coords) {
    h ^= static_cast<std::size_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

AdjacencyKind::AdjacencyKind(int dim, int u_) : ambient_dim(dim), u(u_) {
  if (dim < 1) throw std::invalid_argument("ambient dimension must be positive");
  if (u_ < 1 || u_ > dim) throw std::invalid_argument("adjacency requires 1 <= u <= ambient_dim");
}

std::string AdjacencyKind::str() const {
  return "c" + std::to_string(u) + " in Z^" + std::to_string(ambient_dim);
}

bool adjacent(const Point& p, const Point& q, const AdjacencyKind& kind) {
  if (p.dim() != kind.ambient_dim || q.dim() != kind.ambient_dim) {
    throw std::invalid_argument("adjacent: point dimension does not match adjacency kind");
  }
  int differing = 0;
  for (int i = 0; i < kind.ambient_dim; ++i) {
    Coord d = p[i] - q[i];
    if (d < -1 || d > 1) return false;
    if (d != 0) ++differing;
  }
  return differing >= 1 && differing <= kind.u;
}

namespace {

// Offsets with all coordinates in {-1,0,1}, at least one and at most u
// nonzero. Used to enumerate neighbor candidates when 3^n is smaller than
// a full scan of the point set.
std::vector<Point> neighbor_offsets(const AdjacencyKind& kind) {
  std::vector<Point> out;
  const int n = kind.ambient_dim;
  std::vector<Coord> cur(static_cast<std::size_t>(n), -1);
  while (true) {
    int nonzero = 0;
    for (Coord c : cur) nonzero += (c != 0);
    if (nonzero >= 1 && nonzero <= kind.u) out.emplace_back(cur);
    int i = 0;
    for (; i < n; ++i) {
      if (cur[static_cast<std::size_t>(i)] < 1) {
        ++cur[static_cast<std::size_t>(i)];
        break;
      }
      cur[static_cast<std::size_t>(i)] = -1;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace

DigitalImage::DigitalImage() {
  auto d = std::make_shared<Data>();
  d->kind = AdjacencyKind();
  data_ = std::move(d);
}

DigitalImage::DigitalImage(std::vector<Point> points, AdjacencyKind kind) {
  auto d = std::make_shared<Data>();
  d->kind = kind;
  for (const Point& p : points) {
    if (p.dim() != kind.ambient_dim) {
      throw std::invalid_argument("image point " + p.str() + " does not have ambient dimension " +
                                  std::to_string(kind.ambient_dim));
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  d->points = std::move(points);
  const Index n = static_cast<Index>(d->points.size());
  d->index.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) d->index.emplace(d->points[static_cast<std::size_t>(i)], i);

  d->nbrs.assign(static_cast<std::size_t>(n), {});
  const double offset_count = std::pow(3.0, kind.ambient_dim);
  if (n > 0 && offset_count - 1 < static_cast<double>(n)) {
    for (const Point& off : neighbor_offsets(kind)) {
      for (Index i = 0; i < n; ++i) {
        Point q = d->points[static_cast<std::size_t>(i)];
        for (int k = 0; k < kind.ambient_dim; ++k) q.coords[static_cast<std::size_t>(k)] += off[k];
        auto it = d->index.find(q);
        if (it != d->index.end()) d->nbrs[static_cast<std::size_t>(i)].push_back(it->second);
      }
    }
    for (auto& row : d->nbrs) std::sort(row.begin(), row.end());
  } else {
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        if (adjacent(d->points[static_cast<std::size_t>(i)], d->points[static_cast<std::size_t>(j)],
                     kind)) {
          d->nbrs[static_cast<std::size_t>(i)].push_back(j);
          d->nbrs[static_cast<std::size_t>(j)].push_back(i);
        }
      }
    }
    for (auto& row : d->nbrs) std::sort(row.begin(), row.end());
  }
  data_ = std::move(d);
}

std::optional<Index> DigitalImage::index_of(const Point& p) const {
  auto it = data_->index.find(p);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

const std::vector<Index>& DigitalImage::neighbor_indices(Index i) const {
  return data_->nbrs[static_cast<std::size_t>(i)];
}

bool DigitalImage::is_subset_of(const DigitalImage& other) const {
  if (kind() != other.kind()) return false;
  for (const Point& p : points()) {
    if (!other.contains(p)) return false;
  }
  return true;
}

bool DigitalImage::connected() const {
  const Index n = static_cast<Index>(size());
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<Index> q;
  q.push(0);
  seen[0] = 1;
  Index reached = 1;
  while (!q.empty()) {
    Index cur = q.front();
    q.pop();
    for (Index nb : neighbor_indices(cur)) {
      if (!seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = 1;
        ++reached;
        q.push(nb);
      }
    }
  }
  return reached == n;
}

bool DigitalImage::operator==(const DigitalImage& o) const {
  if (data_ == o.data_) return true;
  return data_->kind == o.data_->kind && data_->points == o.data_->points;
}

PointedImage::PointedImage(DigitalImage img, Point base)
    : image(std::move(img)), basepoint(std::move(base)) {
  if (!image.contains(basepoint)) {
    throw std::invalid_argument("basepoint " + basepoint.str() + " not in image");
  }
}

bool adjacent_in(const DigitalImage& img, const Point& p, const Point& q) {
  return adjacent(p, q, img.kind());
}

DigitalImage interval(Coord a, Coord b) {
  if (a > b) throw std::invalid_argument("interval requires a <= b");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(b - a + 1));
  for (Coord z = a; z <= b; ++z) pts.push_back(Point{z});
  return DigitalImage(std::move(pts), AdjacencyKind(1, 1));
}

std::vector<std::vector<Point>> components(const DigitalImage& img) {
  const Index n = static_cast<Index>(img.size());
  std::vector<Index> comp(static_cast<std::size_t>(n), -1);
  Index ncomp = 0;
  for (Index s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::queue<Index> q;
    q.push(s);
    comp[static_cast<std::size_t>(s)] = ncomp;
    while (!q.empty()) {
      Index cur = q.front();
      q.pop();
      for (Index nb : img.neighbor_indices(cur)) {
        if (comp[static_cast<std::size_t>(nb)] < 0) {
          comp[static_cast<std::size_t>(nb)] = ncomp;
          q.push(nb);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::vector<Point>> parts(static_cast<std::size_t>(ncomp));
  for (Index i = 0; i < n; ++i) {
    parts[static_cast<std::size_t>(comp[static_cast<std::size_t>(i)])].push_back(img.point(i));
  }
  return parts;  // parts and members are in lexicographic point order
}

std::vector<Point> neighbors(const DigitalImage& img, const Point& p) {
  auto idx = img.index_of(p);
  if (!idx) throw std::invalid_argument("neighbors: point " + p.str() + " not in image");
  std::vector<Point> out;
  for (Index nb : img.neighbor_indices(*idx)) out.push_back(img.point(nb));
  return out;
}

}  // namespace digitop
