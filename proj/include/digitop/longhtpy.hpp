#ifndef DIGITOP_LONGHTPY_HPP
#define DIGITOP_LONGHTPY_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "digitop/check.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/maps.hpp"

namespace digitop {

// A homotopy over the timeline N*: layers 0..T plus a per-point index n_x
// past which the track of x never moves again. The infinite tail is the
// final layer repeated, so the finite window is a lossless encoding.
struct LHomotopy {
  std::vector<DigitalMap> layers;   // indexed 0..T
  std::vector<int> per_point_stab;  // n_x per domain point, aligned lexicographically
  std::optional<Point> pointed_at;

  int window() const { return static_cast<int>(layers.size()) - 1; }
  const DigitalMap& layer(int t) const {
    return layers[static_cast<std::size_t>(std::min<int>(t, window()))];
  }
};

// A homotopy over the timeline Z: layers -T..T with per-point bounds N_x.
// t <= -N_x freezes the track at f(x), t >= N_x at g(x); both infinite ends
// are therefore recoverable from the window.
struct LongHomotopy {
  int t_min = 0;  // always -T
  std::vector<DigitalMap> layers;
  std::vector<int> per_point_bound;  // N_x per domain point
  std::optional<Point> pointed_at;

  int window() const { return -t_min; }
  const DigitalMap& layer(int t) const {
    int clamped = std::max(t_min, std::min(t, window()));
    return layers[static_cast<std::size_t>(clamped - t_min)];
  }
};

// Assembles a symmetric-window long homotopy from layers, computing the
// minimal valid per-point bounds. layers.size() must be odd.
LongHomotopy make_long_homotopy(std::vector<DigitalMap> layers, std::optional<Point> pointed_at);

// Re-encodes F on a wider symmetric window by extending both constant ends.
LongHomotopy pad_long_window(const LongHomotopy& F, int window);

CheckResult verify_l_homotopy(const LHomotopy& F, const DigitalMap& f, const DigitalMap& g);
CheckResult verify_long_homotopy(const LongHomotopy& F, const DigitalMap& f, const DigitalMap& g);
CheckResult verify_long_homotopy_serial(const LongHomotopy& F, const DigitalMap& f,
                                        const DigitalMap& g);

// Conversion lattice. Each output verifies whenever the input does, with the
// same endpoints; pointedness is preserved.
LongHomotopy l_to_long(const LHomotopy& F);
LongHomotopy finite_to_long(const Homotopy& F);
Homotopy long_to_finite(const LongHomotopy& F);

LongHomotopy reverse_long(const LongHomotopy& F);

// Retargets a long homotopy f ~ constant c' to the constant d, which must be
// equal or adjacent to c'. The new freeze index of x is the maximum of the
// stabilization indices over x and its neighbors, exactly as in the
// transitivity-through-constants construction.
LongHomotopy shift_constant_target(const LongHomotopy& H, const Point& d);

// The per-point freeze indices the shift uses; exposed for exact checks.
std::vector<int> shift_freeze_indices(const LongHomotopy& H);

struct LongEquivalenceCertificate {
  DigitalMap f;     // X -> Y
  DigitalMap g;     // Y -> X
  LongHomotopy H;   // g.f ~L 1_X, in X
  LongHomotopy K;   // f.g ~L 1_Y, in Y
  std::optional<std::pair<Point, Point>> pointed;
};

CheckResult verify_long_equivalence(const LongEquivalenceCertificate& cert);

// Swaps the two sides of a certificate (symmetry of long homotopy type).
LongEquivalenceCertificate swap_long_equivalence(const LongEquivalenceCertificate& cert);

// Transitivity through a one-point middle image: reuses each side's homotopy
// unchanged, since both composites through the point are the same constant
// maps.
LongEquivalenceCertificate compose_long_equiv_through_point(
    const LongEquivalenceCertificate& cert1, const LongEquivalenceCertificate& cert2);

}  // namespace digitop

#endif
