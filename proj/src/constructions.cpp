#include "digitop/constructions.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace digitop {

// --- image families ---------------------------------------------------

DigitalImage cube(const Point& center, Coord radius, int u) {
  if (radius < 0) throw std::invalid_argument("cube: radius must be nonnegative");
  const int n = center.dim();
  AdjacencyKind kind(n, u);
  std::vector<Point> pts;
  std::vector<Coord> cur(center.coords);
  for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] -= radius;
  while (true) {
    pts.emplace_back(cur);
    int i = 0;
    for (; i < n; ++i) {
      if (cur[static_cast<std::size_t>(i)] < center[i] + radius) {
        ++cur[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) cur[static_cast<std::size_t>(j)] = center[j] - radius;
        break;
      }
    }
    if (i == n) break;
  }
  return DigitalImage(std::move(pts), kind);
}

DigitalImage zn_window(int dim, Coord radius, int u) {
  return cube(Point(std::vector<Coord>(static_cast<std::size_t>(dim), 0)), radius, u);
}

TreeImage::TreeImage(DigitalImage image, Point root) : image_(std::move(image)), root_(std::move(root)) {
  auto ri = image_.index_of(root_);
  if (!ri) throw std::invalid_argument("tree root " + root_.str() + " not in image");
  root_index_ = *ri;
  const Index n = static_cast<Index>(image_.size());
  parent_.assign(static_cast<std::size_t>(n), -1);
  depth_.assign(static_cast<std::size_t>(n), -1);
  std::size_t edges = 0;
  for (Index i = 0; i < n; ++i) edges += image_.neighbor_indices(i).size();
  edges /= 2;

  std::queue<Index> q;
  q.push(root_index_);
  depth_[static_cast<std::size_t>(root_index_)] = 0;
  Index reached = 1;
  while (!q.empty()) {
    Index cur = q.front();
    q.pop();
    eccentricity_ = std::max(eccentricity_, depth_[static_cast<std::size_t>(cur)]);
    for (Index nb : image_.neighbor_indices(cur)) {
      if (depth_[static_cast<std::size_t>(nb)] < 0) {
        depth_[static_cast<std::size_t>(nb)] = depth_[static_cast<std::size_t>(cur)] + 1;
        parent_[static_cast<std::size_t>(nb)] = cur;
        ++reached;
        q.push(nb);
      }
    }
  }
  if (reached != n) throw std::invalid_argument("tree image is not connected");
  if (edges != static_cast<std::size_t>(n) - 1) {
    throw std::invalid_argument("tree image contains a cycle");
  }
}

namespace {

DigitalImage union_image(const DigitalImage& a, const DigitalImage& b) {
  if (a.kind() != b.kind()) throw std::invalid_argument("union of images with different kinds");
  std::vector<Point> pts = a.points();
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  return DigitalImage(std::move(pts), a.kind());
}

}  // namespace

WedgeImage::WedgeImage(const DigitalImage& part1, const DigitalImage& part2)
    : part1_(part1), part2_(part2) {
  if (part1.kind() != part2.kind()) {
    throw std::invalid_argument("wedge parts carry different adjacency kinds");
  }
  std::optional<Point> shared;
  for (const Point& p : part1.points()) {
    if (part2.contains(p)) {
      if (shared) throw std::invalid_argument("wedge parts intersect in more than one point");
      shared = p;
    }
  }
  if (!shared) throw std::invalid_argument("wedge parts do not intersect");
  wedge_point_ = *shared;
  for (const Point& p : part1.points()) {
    if (p == wedge_point_) continue;
    for (const Point& q : part2.points()) {
      if (q == wedge_point_) continue;
      if (adjacent(p, q, part1.kind())) {
        throw std::invalid_argument("stray adjacency between wedge parts: " + p.str() + " ~ " +
                                    q.str());
      }
    }
  }
  image_ = union_image(part1, part2);
}

namespace {

void require_maximal(const DigitalImage& img, const char* what) {
  if (img.kind().u != img.kind().ambient_dim) {
    throw std::invalid_argument(std::string(what) +
                                ": factor images must carry their maximal c_n adjacency");
  }
}

}  // namespace

ProductImage::ProductImage(std::vector<DigitalImage> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("product of zero factors");
  int D = 0;
  for (const DigitalImage& f : factors_) {
    require_maximal(f, "product");
    if (f.empty()) throw std::invalid_argument("product with an empty factor");
    D += f.kind().ambient_dim;
  }
  std::vector<Point> pts;
  std::vector<Index> idx(factors_.size(), 0);
  while (true) {
    std::vector<Coord> coords;
    coords.reserve(static_cast<std::size_t>(D));
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Point& p = factors_[i].point(idx[i]);
      coords.insert(coords.end(), p.coords.begin(), p.coords.end());
    }
    pts.emplace_back(std::move(coords));
    std::size_t i = factors_.size();
    while (i > 0) {
      --i;
      if (idx[i] + 1 < factors_[i].size()) {
        ++idx[i];
        for (std::size_t j = i + 1; j < factors_.size(); ++j) idx[j] = 0;
        break;
      }
      if (i == 0) {
        i = factors_.size() + 1;
        break;
      }
    }
    if (i == factors_.size() + 1) break;
  }
  image_ = DigitalImage(std::move(pts), AdjacencyKind(D, D));
}

Point ProductImage::combine(const std::vector<Point>& factor_points) const {
  if (factor_points.size() != factors_.size()) {
    throw std::invalid_argument("combine: wrong number of factor points");
  }
  std::vector<Coord> coords;
  for (std::size_t i = 0; i < factor_points.size(); ++i) {
    coords.insert(coords.end(), factor_points[i].coords.begin(), factor_points[i].coords.end());
  }
  return Point(std::move(coords));
}

// --- cube contraction ---------------------------------------------------

LHomotopy cube_contraction_lhomotopy(const Point& center, Coord radius, int u) {
  DigitalImage box = cube(center, radius, u);
  const int n = center.dim();
  const int total = static_cast<int>(radius) * n;

  LHomotopy out;
  out.pointed_at = center;
  out.layers.push_back(DigitalMap::identity(box));
  for (int t = 1; t <= total; ++t) {
    const int q = t % n;
    const DigitalMap& prev = out.layers.back();
    std::vector<Index> a(static_cast<std::size_t>(box.size()));
    for (Index i = 0; i < box.size(); ++i) {
      Point z = prev.value_at_index(i);
      if (z[q] > center[q]) {
        --z.coords[static_cast<std::size_t>(q)];
      } else if (z[q] < center[q]) {
        ++z.coords[static_cast<std::size_t>(q)];
      }
      a[static_cast<std::size_t>(i)] = *box.index_of(z);
    }
    out.layers.emplace_back(box, box, std::move(a));
  }

  out.per_point_stab.assign(static_cast<std::size_t>(box.size()), 0);
  for (Index i = 0; i < box.size(); ++i) {
    int stab = total;
    while (stab > 0 && out.layers[static_cast<std::size_t>(stab)].value_index(i) ==
                           out.layers[static_cast<std::size_t>(stab - 1)].value_index(i)) {
      --stab;
    }
    out.per_point_stab[static_cast<std::size_t>(i)] = stab;
  }
  return out;
}

namespace {

// Finite contraction homotopy of a cube window, derived from the l-homotopy
// (whose window is already long enough to stabilize everywhere).
Homotopy cube_contraction_finite(const Point& center, Coord radius, int u) {
  LHomotopy lh = cube_contraction_lhomotopy(center, radius, u);
  Homotopy out;
  out.layers = std::move(lh.layers);
  out.pointed_at = center;
  return out;
}

DigitalImage one_point_image(const Point& p, const AdjacencyKind& kind) {
  return DigitalImage({p}, kind);
}

Homotopy single_layer(const DigitalMap& m, std::optional<Point> pointed_at) {
  return Homotopy{{m}, std::move(pointed_at)};
}

}  // namespace

SimilarityCertificate cube_similarity_certificate(const Point& center, int depth, int u) {
  if (depth < 1) throw std::invalid_argument("cube_similarity_certificate: depth must be positive");
  AdjacencyKind kind(center.dim(), u);
  DigitalImage pt = one_point_image(center, kind);

  SimilarityCertificate out;
  out.fx.exhausts = std::nullopt;  // the one-point chain is already everything
  out.fy.exhausts = "zn-window";
  out.pointed = std::make_pair(center, center);
  for (int j = 1; j <= depth; ++j) {
    DigitalImage box = cube(center, j, u);
    out.fx.levels.push_back(pt);
    out.fy.levels.push_back(box);
    DigitalMap inclusion = DigitalMap::constant(pt, box, center);
    DigitalMap collapse = DigitalMap::constant(box, pt, center);
    out.f.push_back(inclusion);
    out.g.push_back(collapse);
    out.h.push_back(single_layer(DigitalMap::identity(pt), center));
    Homotopy contraction = cube_contraction_finite(center, j, u);
    out.k.push_back(reverse_homotopy(contraction));
  }
  for (int v = 1; v <= depth; ++v) {
    for (int w = v; w <= depth; ++w) {
      out.rf.emplace(std::make_pair(v, w),
                     single_layer(out.f[static_cast<std::size_t>(v - 1)], center));
      out.rg.emplace(std::make_pair(v, w),
                     single_layer(out.g[static_cast<std::size_t>(v - 1)], center));
    }
  }
  return out;
}

// --- tree contraction -----------------------------------------------------

namespace {

// layer_t(x) = parent^t(x), clamped at the root. Restricting to any ball
// around the root stays inside the ball, which the similarity levels use.
std::vector<DigitalMap> tree_layers(const TreeImage& tree, const DigitalImage& sub, int steps) {
  const DigitalImage& whole = tree.image();
  std::vector<DigitalMap> layers;
  layers.push_back(DigitalMap::identity(sub));
  std::vector<Index> cur(static_cast<std::size_t>(sub.size()));
  for (Index i = 0; i < sub.size(); ++i) {
    cur[static_cast<std::size_t>(i)] = *whole.index_of(sub.point(i));
  }
  for (int t = 1; t <= steps; ++t) {
    for (Index& v : cur) {
      Index p = tree.parent_index(v);
      if (p >= 0) v = p;
    }
    std::vector<Index> a(static_cast<std::size_t>(sub.size()));
    for (Index i = 0; i < sub.size(); ++i) {
      a[static_cast<std::size_t>(i)] = *sub.index_of(whole.point(cur[static_cast<std::size_t>(i)]));
    }
    layers.emplace_back(sub, sub, std::move(a));
  }
  return layers;
}

DigitalImage tree_ball(const TreeImage& tree, int radius) {
  std::vector<Point> pts;
  for (Index i = 0; i < tree.image().size(); ++i) {
    if (tree.dist_to_root(i) <= radius) pts.push_back(tree.image().point(i));
  }
  return DigitalImage(std::move(pts), tree.image().kind());
}

}  // namespace

Homotopy tree_contraction_homotopy(const TreeImage& tree) {
  Homotopy out;
  out.layers = tree_layers(tree, tree.image(), tree.eccentricity());
  out.pointed_at = tree.root();
  return out;
}

LHomotopy tree_contraction_lhomotopy(const TreeImage& tree) {
  LHomotopy out;
  out.layers = tree_layers(tree, tree.image(), tree.eccentricity());
  out.pointed_at = tree.root();
  out.per_point_stab.assign(static_cast<std::size_t>(tree.image().size()), 0);
  for (Index i = 0; i < tree.image().size(); ++i) {
    out.per_point_stab[static_cast<std::size_t>(i)] = tree.dist_to_root(i);
  }
  return out;
}

SimilarityCertificate tree_similarity_certificate(const TreeImage& tree, int depth) {
  if (depth < 1) throw std::invalid_argument("tree_similarity_certificate: depth must be positive");
  DigitalImage pt = one_point_image(tree.root(), tree.image().kind());

  SimilarityCertificate out;
  out.fx.exhausts = "tree-balls";
  out.fy.exhausts = std::nullopt;
  out.pointed = std::make_pair(tree.root(), tree.root());
  for (int j = 1; j <= depth; ++j) {
    DigitalImage ball = tree_ball(tree, j);
    out.fx.levels.push_back(ball);
    out.fy.levels.push_back(pt);
    out.f.push_back(DigitalMap::constant(ball, pt, tree.root()));
    out.g.push_back(DigitalMap::constant(pt, ball, tree.root()));
    Homotopy contraction;
    contraction.layers = tree_layers(tree, ball, std::min(j, tree.eccentricity()));
    contraction.pointed_at = tree.root();
    out.h.push_back(reverse_homotopy(contraction));
    out.k.push_back(single_layer(DigitalMap::identity(pt), tree.root()));
  }
  for (int v = 1; v <= depth; ++v) {
    for (int w = v; w <= depth; ++w) {
      out.rf.emplace(std::make_pair(v, w),
                     single_layer(out.f[static_cast<std::size_t>(v - 1)], tree.root()));
      out.rg.emplace(std::make_pair(v, w),
                     single_layer(out.g[static_cast<std::size_t>(v - 1)], tree.root()));
    }
  }
  return out;
}

LongEquivalenceCertificate tree_long_equivalence(const TreeImage& tree) {
  DigitalImage pt = one_point_image(tree.root(), tree.image().kind());
  LongEquivalenceCertificate out;
  out.f = DigitalMap::constant(tree.image(), pt, tree.root());
  out.g = DigitalMap::constant(pt, tree.image(), tree.root());
  // The parent contraction runs identity -> constant; H needs the reverse.
  out.H = reverse_long(l_to_long(tree_contraction_lhomotopy(tree)));
  out.K = make_long_homotopy({DigitalMap::identity(pt)}, tree.root());
  out.pointed = std::make_pair(tree.root(), tree.root());
  return out;
}

// --- T-shaped image -------------------------------------------------------

TImageWindows t_image(Coord radius) {
  if (radius < 0) throw std::invalid_argument("t_image: radius must be nonnegative");
  AdjacencyKind kind(2, 1);
  std::vector<Point> line_pts;
  for (Coord x = -radius; x <= radius; ++x) line_pts.push_back(Point{x, 0});
  std::vector<Point> tee_pts = line_pts;
  for (Coord y = 1; y <= radius; ++y) tee_pts.push_back(Point{0, y});
  TImageWindows out;
  out.line = DigitalImage(std::move(line_pts), kind);
  out.tee = DigitalImage(std::move(tee_pts), kind);
  out.basepoint = Point{0, 0};
  return out;
}

SimilarityCertificate t_image_similarity(Coord radius, int depth) {
  TImageWindows w = t_image(radius);
  TreeImage line_tree(w.line, w.basepoint);
  TreeImage tee_tree(w.tee, w.basepoint);
  SimilarityCertificate line_cert = tree_similarity_certificate(line_tree, depth);
  SimilarityCertificate tee_cert = tree_similarity_certificate(tee_tree, depth);
  SimilarityCertificate out = compose_through_finite(line_cert, swap_similarity(tee_cert));
  out.fx.exhausts = "t-image-line";
  out.fy.exhausts = "t-image-tee";
  return out;
}

LongEquivalenceCertificate t_image_long_equivalence(Coord radius) {
  TImageWindows w = t_image(radius);
  LongEquivalenceCertificate line_cert = tree_long_equivalence(TreeImage(w.line, w.basepoint));
  LongEquivalenceCertificate tee_cert = tree_long_equivalence(TreeImage(w.tee, w.basepoint));
  return compose_long_equiv_through_point(line_cert, swap_long_equivalence(tee_cert));
}

// --- wedges -----------------------------------------------------------

WedgeImage wedge(const DigitalImage& part1, const DigitalImage& part2) {
  return WedgeImage(part1, part2);
}

namespace {

// Case-split assignment over a union of parts; values disagreeing at shared
// points are rejected.
DigitalMap glue_map_parts(const DigitalImage& domain_union, const DigitalImage& codomain_union,
                          const DigitalImage& part1, const DigitalMap& m1, const DigitalMap& m2) {
  std::vector<Index> a;
  a.reserve(static_cast<std::size_t>(domain_union.size()));
  for (const Point& p : domain_union.points()) {
    Point value = part1.contains(p) ? m1.apply(p) : m2.apply(p);
    auto vi = codomain_union.index_of(value);
    if (!vi) throw std::invalid_argument("glued map leaves the codomain at " + p.str());
    a.push_back(*vi);
  }
  return DigitalMap(domain_union, codomain_union, a);
}

Homotopy glue_homotopies(const DigitalImage& domain_union, const DigitalImage& codomain_union,
                         const DigitalImage& part1, const Homotopy& h1, const Homotopy& h2,
                         const Point& held) {
  int steps = std::max(h1.steps(), h2.steps());
  Homotopy p1 = pad_homotopy(h1, steps);
  Homotopy p2 = pad_homotopy(h2, steps);
  Homotopy out;
  out.pointed_at = held;
  for (int t = 0; t <= steps; ++t) {
    out.layers.push_back(glue_map_parts(domain_union, codomain_union, part1,
                                        p1.layers[static_cast<std::size_t>(t)],
                                        p2.layers[static_cast<std::size_t>(t)]));
  }
  return out;
}

LongHomotopy glue_long_homotopies(const DigitalImage& domain_union,
                                  const DigitalImage& codomain_union, const DigitalImage& part1,
                                  const LongHomotopy& h1, const LongHomotopy& h2,
                                  const Point& held) {
  int window = std::max(h1.window(), h2.window());
  std::vector<DigitalMap> layers;
  for (int t = -window; t <= window; ++t) {
    layers.push_back(glue_map_parts(domain_union, codomain_union, part1, h1.layer(t), h2.layer(t)));
  }
  return make_long_homotopy(std::move(layers), held);
}

std::vector<Rational> merge_jump_sets(const std::vector<Rational>& a,
                                      const std::vector<Rational>& b) {
  std::vector<Rational> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RealHomotopy glue_real_homotopies(const DigitalImage& domain_union,
                                  const DigitalImage& codomain_union, const DigitalImage& part1,
                                  const RealHomotopy& h1, const RealHomotopy& h2,
                                  const Point& held) {
  std::vector<Rational> jumps = merge_jump_sets(h1.jumps, h2.jumps);
  RealHomotopy a = refine_real(h1, jumps);
  RealHomotopy b = refine_real(h2, jumps);
  RealHomotopy out;
  out.jumps = jumps;
  out.pointed_at = held;
  out.at0 = glue_map_parts(domain_union, codomain_union, part1, a.at0, b.at0);
  out.at1 = glue_map_parts(domain_union, codomain_union, part1, a.at1, b.at1);
  for (std::size_t j = 0; j < a.open_layers.size(); ++j) {
    out.open_layers.push_back(
        glue_map_parts(domain_union, codomain_union, part1, a.open_layers[j], b.open_layers[j]));
  }
  for (std::size_t j = 0; j < a.jump_layers.size(); ++j) {
    out.jump_layers.push_back(
        glue_map_parts(domain_union, codomain_union, part1, a.jump_layers[j], b.jump_layers[j]));
  }
  return canonicalize_real(std::move(out));
}

void require_wedge_pointing(const WedgeImage& wx, const WedgeImage& wy,
                            const std::optional<std::pair<Point, Point>>& pointed,
                            const char* what) {
  if (!pointed) {
    throw std::invalid_argument(std::string(what) + ": component certificates must be pointed");
  }
  if (pointed->first != wx.wedge_point() || pointed->second != wy.wedge_point()) {
    throw std::invalid_argument(std::string(what) +
                                ": certificate basepoints must be the wedge points");
  }
}

}  // namespace

DigitalMap wedge_map(const WedgeImage& domain, const WedgeImage& codomain, const DigitalMap& f1,
                     const DigitalMap& f2) {
  if (f1.domain() != domain.part1() || f2.domain() != domain.part2()) {
    throw std::invalid_argument("wedge_map: factor domains do not match the wedge parts");
  }
  if (f1.codomain() != codomain.part1() || f2.codomain() != codomain.part2()) {
    throw std::invalid_argument("wedge_map: factor codomains do not match the wedge parts");
  }
  if (f1.apply(domain.wedge_point()) != codomain.wedge_point() ||
      f2.apply(domain.wedge_point()) != codomain.wedge_point()) {
    throw std::invalid_argument("wedge_map: factors are not pointed-compatible at the wedge point");
  }
  DigitalMap glued = glue_map_parts(domain.image(), codomain.image(), domain.part1(), f1, f2);
  CheckResult c = check_continuity_edges_explain(glued);
  if (!c.ok) throw std::invalid_argument("wedge_map: glued map not continuous: " + c.clause);
  return glued;
}

SimilarityCertificate wedge_similarity_certificates(const WedgeImage& wx, const WedgeImage& wy,
                                                    const SimilarityCertificate& c1,
                                                    const SimilarityCertificate& c2) {
  require_wedge_pointing(wx, wy, c1.pointed, "wedge_similarity_certificates");
  require_wedge_pointing(wx, wy, c2.pointed, "wedge_similarity_certificates");
  const int J = std::min(c1.depth(), c2.depth());
  SimilarityCertificate a = truncate_similarity(c1, J);
  SimilarityCertificate b = truncate_similarity(c2, J);
  const Point& x0 = wx.wedge_point();
  const Point& y0 = wy.wedge_point();

  SimilarityCertificate out;
  out.pointed = std::make_pair(x0, y0);
  std::vector<DigitalImage> x_parts, y_parts;
  for (int j = 0; j < J; ++j) {
    const DigitalImage& x1j = a.fx.levels[static_cast<std::size_t>(j)];
    const DigitalImage& x2j = b.fx.levels[static_cast<std::size_t>(j)];
    const DigitalImage& y1j = a.fy.levels[static_cast<std::size_t>(j)];
    const DigitalImage& y2j = b.fy.levels[static_cast<std::size_t>(j)];
    DigitalImage xj = union_image(x1j, x2j);
    DigitalImage yj = union_image(y1j, y2j);
    out.fx.levels.push_back(xj);
    out.fy.levels.push_back(yj);
    x_parts.push_back(x1j);
    y_parts.push_back(y1j);
    out.f.push_back(glue_map_parts(xj, yj, x1j, a.f[static_cast<std::size_t>(j)],
                                   b.f[static_cast<std::size_t>(j)]));
    out.g.push_back(glue_map_parts(yj, xj, y1j, a.g[static_cast<std::size_t>(j)],
                                   b.g[static_cast<std::size_t>(j)]));
    out.h.push_back(glue_homotopies(xj, xj, x1j, a.h[static_cast<std::size_t>(j)],
                                    b.h[static_cast<std::size_t>(j)], x0));
    out.k.push_back(glue_homotopies(yj, yj, y1j, a.k[static_cast<std::size_t>(j)],
                                    b.k[static_cast<std::size_t>(j)], y0));
  }
  for (int v = 1; v <= J; ++v) {
    for (int w = v; w <= J; ++w) {
      const std::size_t vi = static_cast<std::size_t>(v - 1);
      out.rf.emplace(std::make_pair(v, w),
                     glue_homotopies(out.fx.levels[vi], out.fy.levels[vi], x_parts[vi],
                                     a.rf.at({v, w}), b.rf.at({v, w}), x0));
      out.rg.emplace(std::make_pair(v, w),
                     glue_homotopies(out.fy.levels[vi], out.fx.levels[vi], y_parts[vi],
                                     a.rg.at({v, w}), b.rg.at({v, w}), y0));
    }
  }
  return out;
}

LongEquivalenceCertificate wedge_long_certificates(const WedgeImage& wx, const WedgeImage& wy,
                                                   const LongEquivalenceCertificate& c1,
                                                   const LongEquivalenceCertificate& c2) {
  require_wedge_pointing(wx, wy, c1.pointed, "wedge_long_certificates");
  require_wedge_pointing(wx, wy, c2.pointed, "wedge_long_certificates");
  LongEquivalenceCertificate out;
  out.f = glue_map_parts(wx.image(), wy.image(), wx.part1(), c1.f, c2.f);
  out.g = glue_map_parts(wy.image(), wx.image(), wy.part1(), c1.g, c2.g);
  out.H = glue_long_homotopies(wx.image(), wx.image(), wx.part1(), c1.H, c2.H, wx.wedge_point());
  out.K = glue_long_homotopies(wy.image(), wy.image(), wy.part1(), c1.K, c2.K, wy.wedge_point());
  out.pointed = std::make_pair(wx.wedge_point(), wy.wedge_point());
  return out;
}

RealEquivalenceCertificate wedge_real_certificates(const WedgeImage& wx, const WedgeImage& wy,
                                                   const RealEquivalenceCertificate& c1,
                                                   const RealEquivalenceCertificate& c2) {
  require_wedge_pointing(wx, wy, c1.pointed, "wedge_real_certificates");
  require_wedge_pointing(wx, wy, c2.pointed, "wedge_real_certificates");
  RealEquivalenceCertificate out;
  out.f = glue_map_parts(wx.image(), wy.image(), wx.part1(), c1.f, c2.f);
  out.g = glue_map_parts(wy.image(), wx.image(), wy.part1(), c1.g, c2.g);
  out.H = glue_real_homotopies(wx.image(), wx.image(), wx.part1(), c1.H, c2.H, wx.wedge_point());
  out.K = glue_real_homotopies(wy.image(), wy.image(), wy.part1(), c1.K, c2.K, wy.wedge_point());
  out.pointed = std::make_pair(wx.wedge_point(), wy.wedge_point());
  return out;
}

// --- products -----------------------------------------------------------

DigitalMap product_map(const ProductImage& domain, const ProductImage& codomain,
                       const std::vector<DigitalMap>& factors) {
  if (factors.size() != domain.factors().size() || factors.size() != codomain.factors().size()) {
    throw std::invalid_argument("product_map: factor count mismatch");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].domain() != domain.factors()[i] ||
        factors[i].codomain() != codomain.factors()[i]) {
      throw std::invalid_argument("product_map: factor " + std::to_string(i) +
                                  " does not match the product factors");
    }
  }
  std::vector<Index> a;
  a.reserve(static_cast<std::size_t>(domain.image().size()));
  for (const Point& p : domain.image().points()) {
    std::vector<Coord> coords;
    std::size_t off = 0;
    std::vector<Point> values;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      int ni = domain.factors()[i].kind().ambient_dim;
      Point part(std::vector<Coord>(p.coords.begin() + static_cast<long>(off),
                                    p.coords.begin() + static_cast<long>(off + ni)));
      off += static_cast<std::size_t>(ni);
      values.push_back(factors[i].apply(part));
    }
    a.push_back(*codomain.image().index_of(codomain.combine(values)));
  }
  return DigitalMap(domain.image(), codomain.image(), a);
}

namespace {

Homotopy product_homotopies(const ProductImage& domain, const ProductImage& codomain,
                            const std::vector<Homotopy>& hs, std::optional<Point> held) {
  int steps = 0;
  for (const Homotopy& h : hs) steps = std::max(steps, h.steps());
  std::vector<Homotopy> padded;
  for (const Homotopy& h : hs) padded.push_back(pad_homotopy(h, steps));
  Homotopy out;
  out.pointed_at = std::move(held);
  for (int t = 0; t <= steps; ++t) {
    std::vector<DigitalMap> layer_factors;
    for (const Homotopy& h : padded) layer_factors.push_back(h.layers[static_cast<std::size_t>(t)]);
    out.layers.push_back(product_map(domain, codomain, layer_factors));
  }
  return out;
}

LongHomotopy product_long_homotopies(const ProductImage& domain, const ProductImage& codomain,
                                     const std::vector<LongHomotopy>& hs,
                                     std::optional<Point> held) {
  int window = 0;
  for (const LongHomotopy& h : hs) window = std::max(window, h.window());
  std::vector<DigitalMap> layers;
  for (int t = -window; t <= window; ++t) {
    std::vector<DigitalMap> layer_factors;
    for (const LongHomotopy& h : hs) layer_factors.push_back(h.layer(t));
    layers.push_back(product_map(domain, codomain, layer_factors));
  }
  return make_long_homotopy(std::move(layers), std::move(held));
}

RealHomotopy product_real_homotopies(const ProductImage& domain, const ProductImage& codomain,
                                     const std::vector<RealHomotopy>& hs,
                                     std::optional<Point> held) {
  std::vector<Rational> jumps;
  for (const RealHomotopy& h : hs) jumps = merge_jump_sets(jumps, h.jumps);
  std::vector<RealHomotopy> refined;
  for (const RealHomotopy& h : hs) refined.push_back(refine_real(h, jumps));

  auto layer_product = [&](auto&& pick) {
    std::vector<DigitalMap> layer_factors;
    for (const RealHomotopy& h : refined) layer_factors.push_back(pick(h));
    return product_map(domain, codomain, layer_factors);
  };
  RealHomotopy out;
  out.jumps = jumps;
  out.pointed_at = std::move(held);
  out.at0 = layer_product([](const RealHomotopy& h) { return h.at0; });
  out.at1 = layer_product([](const RealHomotopy& h) { return h.at1; });
  for (std::size_t j = 0; j <= jumps.size(); ++j) {
    out.open_layers.push_back(
        layer_product([&](const RealHomotopy& h) { return h.open_layers[j]; }));
  }
  for (std::size_t j = 0; j < jumps.size(); ++j) {
    out.jump_layers.push_back(
        layer_product([&](const RealHomotopy& h) { return h.jump_layers[j]; }));
  }
  return canonicalize_real(std::move(out));
}

// Basepoint of the product when every factor is pointed; throws on a mix.
template <typename Cert>
std::optional<std::pair<Point, Point>> product_pointing(const std::vector<Cert>& certs) {
  std::size_t pointed = 0;
  for (const Cert& c : certs) pointed += c.pointed.has_value();
  if (pointed == 0) return std::nullopt;
  if (pointed != certs.size()) {
    throw std::invalid_argument("product: certificates must be all pointed or all unpointed");
  }
  std::vector<Coord> x0, y0;
  for (const Cert& c : certs) {
    x0.insert(x0.end(), c.pointed->first.coords.begin(), c.pointed->first.coords.end());
    y0.insert(y0.end(), c.pointed->second.coords.begin(), c.pointed->second.coords.end());
  }
  return std::make_pair(Point(std::move(x0)), Point(std::move(y0)));
}

}  // namespace

EquivalenceCertificate product_equivalence(const std::vector<EquivalenceCertificate>& certs) {
  if (certs.empty()) throw std::invalid_argument("product of zero certificates");
  std::vector<DigitalImage> xs, ys;
  std::vector<DigitalMap> fs, gs;
  std::vector<Homotopy> hs, ks;
  for (const EquivalenceCertificate& c : certs) {
    xs.push_back(c.f.domain());
    ys.push_back(c.f.codomain());
    fs.push_back(c.f);
    gs.push_back(c.g);
    hs.push_back(c.H);
    ks.push_back(c.K);
  }
  ProductImage px(xs), py(ys);
  EquivalenceCertificate out;
  out.pointed = product_pointing(certs);
  out.f = product_map(px, py, fs);
  out.g = product_map(py, px, gs);
  out.H = product_homotopies(px, px, hs, out.pointed ? std::optional<Point>(out.pointed->first)
                                                     : std::nullopt);
  out.K = product_homotopies(py, py, ks, out.pointed ? std::optional<Point>(out.pointed->second)
                                                     : std::nullopt);
  return out;
}

SimilarityCertificate product_similarity(const std::vector<SimilarityCertificate>& certs) {
  if (certs.empty()) throw std::invalid_argument("product of zero certificates");
  int J = certs.front().depth();
  for (const SimilarityCertificate& c : certs) J = std::min(J, c.depth());
  std::vector<SimilarityCertificate> cut;
  for (const SimilarityCertificate& c : certs) cut.push_back(truncate_similarity(c, J));

  SimilarityCertificate out;
  out.pointed = product_pointing(cut);
  std::optional<Point> hx = out.pointed ? std::optional<Point>(out.pointed->first) : std::nullopt;
  std::optional<Point> hy = out.pointed ? std::optional<Point>(out.pointed->second) : std::nullopt;

  std::vector<ProductImage> pxs, pys;
  for (int j = 0; j < J; ++j) {
    std::vector<DigitalImage> xjs, yjs;
    std::vector<DigitalMap> fjs, gjs;
    std::vector<Homotopy> hjs, kjs;
    for (const SimilarityCertificate& c : cut) {
      xjs.push_back(c.fx.levels[static_cast<std::size_t>(j)]);
      yjs.push_back(c.fy.levels[static_cast<std::size_t>(j)]);
      fjs.push_back(c.f[static_cast<std::size_t>(j)]);
      gjs.push_back(c.g[static_cast<std::size_t>(j)]);
      hjs.push_back(c.h[static_cast<std::size_t>(j)]);
      kjs.push_back(c.k[static_cast<std::size_t>(j)]);
    }
    ProductImage px(xjs), py(yjs);
    out.fx.levels.push_back(px.image());
    out.fy.levels.push_back(py.image());
    out.f.push_back(product_map(px, py, fjs));
    out.g.push_back(product_map(py, px, gjs));
    out.h.push_back(product_homotopies(px, px, hjs, hx));
    out.k.push_back(product_homotopies(py, py, kjs, hy));
    pxs.push_back(std::move(px));
    pys.push_back(std::move(py));
  }
  for (int v = 1; v <= J; ++v) {
    for (int w = v; w <= J; ++w) {
      std::vector<Homotopy> rfs, rgs;
      for (const SimilarityCertificate& c : cut) {
        rfs.push_back(c.rf.at({v, w}));
        rgs.push_back(c.rg.at({v, w}));
      }
      const std::size_t vi = static_cast<std::size_t>(v - 1);
      out.rf.emplace(std::make_pair(v, w), product_homotopies(pxs[vi], pys[vi], rfs, hx));
      out.rg.emplace(std::make_pair(v, w), product_homotopies(pys[vi], pxs[vi], rgs, hy));
    }
  }
  return out;
}

LongEquivalenceCertificate product_long_equivalence(
    const std::vector<LongEquivalenceCertificate>& certs) {
  if (certs.empty()) throw std::invalid_argument("product of zero certificates");
  std::vector<DigitalImage> xs, ys;
  std::vector<DigitalMap> fs, gs;
  std::vector<LongHomotopy> hs, ks;
  for (const LongEquivalenceCertificate& c : certs) {
    xs.push_back(c.f.domain());
    ys.push_back(c.f.codomain());
    fs.push_back(c.f);
    gs.push_back(c.g);
    hs.push_back(c.H);
    ks.push_back(c.K);
  }
  ProductImage px(xs), py(ys);
  LongEquivalenceCertificate out;
  out.pointed = product_pointing(certs);
  out.f = product_map(px, py, fs);
  out.g = product_map(py, px, gs);
  out.H = product_long_homotopies(px, px, hs,
                                  out.pointed ? std::optional<Point>(out.pointed->first)
                                              : std::nullopt);
  out.K = product_long_homotopies(py, py, ks,
                                  out.pointed ? std::optional<Point>(out.pointed->second)
                                              : std::nullopt);
  return out;
}

RealEquivalenceCertificate product_real_equivalence(
    const std::vector<RealEquivalenceCertificate>& certs) {
  if (certs.empty()) throw std::invalid_argument("product of zero certificates");
  std::vector<DigitalImage> xs, ys;
  std::vector<DigitalMap> fs, gs;
  std::vector<RealHomotopy> hs, ks;
  for (const RealEquivalenceCertificate& c : certs) {
    xs.push_back(c.f.domain());
    ys.push_back(c.f.codomain());
    fs.push_back(c.f);
    gs.push_back(c.g);
    hs.push_back(c.H);
    ks.push_back(c.K);
  }
  ProductImage px(xs), py(ys);
  RealEquivalenceCertificate out;
  out.pointed = product_pointing(certs);
  out.f = product_map(px, py, fs);
  out.g = product_map(py, px, gs);
  out.H = product_real_homotopies(px, px, hs,
                                  out.pointed ? std::optional<Point>(out.pointed->first)
                                              : std::nullopt);
  out.K = product_real_homotopies(py, py, ks,
                                  out.pointed ? std::optional<Point>(out.pointed->second)
                                              : std::nullopt);
  return out;
}

}  // namespace digitop
