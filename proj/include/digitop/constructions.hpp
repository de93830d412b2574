#ifndef DIGITOP_CONSTRUCTIONS_HPP
#define DIGITOP_CONSTRUCTIONS_HPP

#include <optional>
#include <vector>

#include "digitop/homotopy.hpp"
#include "digitop/lattice.hpp"
#include "digitop/longhtpy.hpp"
#include "digitop/realhtpy.hpp"
#include "digitop/similarity.hpp"

namespace digitop {

// --- image families ---------------------------------------------------

// The lattice box with corners center +- r, under c_u adjacency.
DigitalImage cube(const Point& center, Coord radius, int u);
DigitalImage zn_window(int dim, Coord radius, int u);

// A digital image whose adjacency graph is a tree, rooted at a chosen point.
// parent(x) is the unique neighbor toward the root.
class TreeImage {
public:
  TreeImage(DigitalImage image, Point root);

  const DigitalImage& image() const { return image_; }
  const Point& root() const { return root_; }
  Index root_index() const { return root_index_; }
  Index parent_index(Index i) const { return parent_[static_cast<std::size_t>(i)]; }
  int dist_to_root(Index i) const { return depth_[static_cast<std::size_t>(i)]; }
  int eccentricity() const { return eccentricity_; }

private:
  DigitalImage image_;
  Point root_;
  Index root_index_ = 0;
  std::vector<Index> parent_;  // -1 at the root
  std::vector<int> depth_;
  int eccentricity_ = 0;
};

// Two images meeting in exactly one point, with no other cross-adjacency.
class WedgeImage {
public:
  WedgeImage(const DigitalImage& part1, const DigitalImage& part2);

  const DigitalImage& image() const { return image_; }
  const DigitalImage& part1() const { return part1_; }
  const DigitalImage& part2() const { return part2_; }
  const Point& wedge_point() const { return wedge_point_; }

private:
  DigitalImage image_;
  DigitalImage part1_;
  DigitalImage part2_;
  Point wedge_point_;
};

// The Cartesian product of images carrying their maximal adjacencies; the
// product lives in Z^D with c_D, D the sum of the factor dimensions.
class ProductImage {
public:
  explicit ProductImage(std::vector<DigitalImage> factors);

  const DigitalImage& image() const { return image_; }
  const std::vector<DigitalImage>& factors() const { return factors_; }

  Point combine(const std::vector<Point>& factor_points) const;

private:
  DigitalImage image_;
  std::vector<DigitalImage> factors_;
};

// --- explicit contractions --------------------------------------------

// Coordinate-cycling contraction of the radius-r cube onto its center: at
// time t the coordinate t mod n moves one unit toward the center. Stabilizes
// by time n*r, tight at corner points; holds the center fixed.
LHomotopy cube_contraction_lhomotopy(const Point& center, Coord radius, int u);

// Pointed similarity between the one-point image {center} and the window
// family cube(center, j), j = 1..depth.
SimilarityCertificate cube_similarity_certificate(const Point& center, int depth, int u);

// Parent-map contraction of a finite tree; homotopy length equals the root's
// eccentricity, and the root is held fixed.
Homotopy tree_contraction_homotopy(const TreeImage& tree);
LHomotopy tree_contraction_lhomotopy(const TreeImage& tree);

// Pointed similarity between the tree (filtered by balls around the root)
// and its root.
SimilarityCertificate tree_similarity_certificate(const TreeImage& tree, int depth);

// Pointed long equivalence between a tree and its root.
LongEquivalenceCertificate tree_long_equivalence(const TreeImage& tree);

// --- the T-shaped image -----------------------------------------------

struct TImageWindows {
  DigitalImage line;   // [-R,R] x {0}
  DigitalImage tee;    // line plus {0} x [0,R]
  Point basepoint;     // (0,0)
};

TImageWindows t_image(Coord radius);

// Certificates for the two windows, assembled through the one-point middle
// image exactly as the tree results chain together.
SimilarityCertificate t_image_similarity(Coord radius, int depth);
LongEquivalenceCertificate t_image_long_equivalence(Coord radius);

// --- wedges -------------------------------------------------------------

WedgeImage wedge(const DigitalImage& part1, const DigitalImage& part2);

// Glues two pointed-compatible maps along the wedge points; throws when the
// glued map fails the continuity check.
DigitalMap wedge_map(const WedgeImage& domain, const WedgeImage& codomain, const DigitalMap& f1,
                     const DigitalMap& f2);

SimilarityCertificate wedge_similarity_certificates(const WedgeImage& wx, const WedgeImage& wy,
                                                    const SimilarityCertificate& c1,
                                                    const SimilarityCertificate& c2);
LongEquivalenceCertificate wedge_long_certificates(const WedgeImage& wx, const WedgeImage& wy,
                                                   const LongEquivalenceCertificate& c1,
                                                   const LongEquivalenceCertificate& c2);
RealEquivalenceCertificate wedge_real_certificates(const WedgeImage& wx, const WedgeImage& wy,
                                                   const RealEquivalenceCertificate& c1,
                                                   const RealEquivalenceCertificate& c2);

// --- products -----------------------------------------------------------

DigitalMap product_map(const ProductImage& domain, const ProductImage& codomain,
                       const std::vector<DigitalMap>& factors);

EquivalenceCertificate product_equivalence(const std::vector<EquivalenceCertificate>& certs);
SimilarityCertificate product_similarity(const std::vector<SimilarityCertificate>& certs);
LongEquivalenceCertificate product_long_equivalence(
    const std::vector<LongEquivalenceCertificate>& certs);
RealEquivalenceCertificate product_real_equivalence(
    const std::vector<RealEquivalenceCertificate>& certs);

}  // namespace digitop

#endif
