#ifndef DIGITOP_SIMILARITY_HPP
#define DIGITOP_SIMILARITY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "digitop/check.hpp"
#include "digitop/ecpath.hpp"
#include "digitop/homotopy.hpp"

namespace digitop {

// A nested chain of finite subimages. For genuinely infinite images the
// chain is a finite prefix of a built-in exhausting family, named by the
// `exhausts` tag; the certificate is then depth-bounded evidence.
struct Filtration {
  std::vector<DigitalImage> levels;  // X_1 subset X_2 subset ... X_J
  std::optional<std::string> exhausts;

  int depth() const { return static_cast<int>(levels.size()); }
};

// Levelwise homotopy equivalences between two filtrations, compatible under
// restriction up to homotopy. Restriction homotopies are stored for every
// pair v <= w. Homotopy direction conventions: h[j] runs from g_j.f_j to the
// identity, rf[(v,w)] runs from f_w|X_v (retargeted into Y_v) to f_v.
struct SimilarityCertificate {
  Filtration fx;
  Filtration fy;
  std::vector<DigitalMap> f;  // f_j : X_j -> Y_j
  std::vector<DigitalMap> g;  // g_j : Y_j -> X_j
  std::vector<Homotopy> h;    // in X_j
  std::vector<Homotopy> k;    // in Y_j
  std::map<std::pair<int, int>, Homotopy> rf;  // keys (v,w), 1-based, v <= w
  std::map<std::pair<int, int>, Homotopy> rg;
  std::optional<std::pair<Point, Point>> pointed;  // (x1, y1), in level 1

  int depth() const { return fx.depth(); }
};

// Depth-bounded verification of every clause of homotopic similarity: the
// chains nest, the levelwise round trips are homotopic to identities, and
// all restriction squares commute up to the stored homotopies.
CheckResult verify_similarity(const SimilarityCertificate& cert);

SimilarityCertificate truncate_similarity(const SimilarityCertificate& cert, int depth);
SimilarityCertificate swap_similarity(const SimilarityCertificate& cert);

// Constant chains witness that plain homotopy equivalence implies
// homotopic similarity at any depth.
SimilarityCertificate from_equivalence(const EquivalenceCertificate& cert, int depth);

struct ExtractOutcome {
  enum class Status { kStable, kNotStable } status = Status::kNotStable;
  std::optional<EquivalenceCertificate> cert;
  int level = 0;  // first stable level when found

  bool stable() const { return status == Status::kStable; }
};

// For chains that stabilize within the stored depth, the stable level's data
// is already a plain homotopy equivalence.
ExtractOutcome extract_equivalence_when_stable(const SimilarityCertificate& cert);

// Space-saving mode: given a certificate carrying only consecutive
// restriction homotopies (v, v+1), derives the missing (v, w) pairs by
// restricting and concatenating along the chain. The derived witnesses are
// built, not stored, data; they only exist when every intermediate
// restriction stays inside the level-v images, and the result is verified
// like any other certificate.
SimilarityCertificate complete_restrictions_from_consecutive(SimilarityCertificate cert);

// Transitivity through a middle image whose two chains both stabilize to the
// same finite image within depth. The composite reuses levels past the
// stabilization index with whiskered and concatenated homotopies.
SimilarityCertificate compose_through_finite(const SimilarityCertificate& cert1,
                                             const SimilarityCertificate& cert2);

// The induced map on loop classes: pushes an x1-based loop through f_j for
// the smallest level containing it.
ECPath induced_pi1_map(const SimilarityCertificate& cert, const ECPath& loop);

}  // namespace digitop

#endif
