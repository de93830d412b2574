#ifndef DIGITOP_REALHTPY_HPP
#define DIGITOP_REALHTPY_HPP

#include <optional>
#include <vector>

#include "digitop/check.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/longhtpy.hpp"
#include "digitop/maps.hpp"
#include "digitop/rational.hpp"

namespace digitop {

// A piecewise-constant path [0,1] -> X with finitely many jumps at exact
// rational positions. open_values[i] is the constant value on the i-th open
// interval between consecutive jump positions (and the endpoints 0, 1).
struct RealPath {
  DigitalImage image;
  std::vector<Rational> jumps;      // strictly increasing, inside (0,1)
  std::vector<Point> open_values;   // jumps.size() + 1 entries
  Point value_at_0;
  Point value_at_1;
  std::vector<Point> jump_values;   // value taken exactly at each jump
};

CheckResult verify_real_path(const RealPath& p);

// A homotopy over the real interval: one global jump set, constant-in-t
// layer maps on the open intervals, plus the layers taken exactly at 0, at
// each jump, and at 1. Every per-x slice is a RealPath whose jumps are a
// subset of the global set.
struct RealHomotopy {
  std::vector<Rational> jumps;
  DigitalMap at0;
  DigitalMap at1;
  std::vector<DigitalMap> open_layers;  // jumps.size() + 1
  std::vector<DigitalMap> jump_layers;  // jumps.size()
  std::optional<Point> pointed_at;

  const DigitalImage& domain() const { return at0.domain(); }
  const DigitalImage& codomain() const { return at0.codomain(); }
};

CheckResult verify_real_homotopy(const RealHomotopy& F, const DigitalMap& f, const DigitalMap& g);
CheckResult verify_real_homotopy_serial(const RealHomotopy& F, const DigitalMap& f,
                                        const DigitalMap& g);

// Drops global jump entries that are trivial for every x (equal flanking
// layers that also match the jump layer). Constructors route through this,
// so emitted jump sets only record genuine motion.
RealHomotopy canonicalize_real(RealHomotopy F);

// Splits open intervals so the jump set becomes new_jumps (a superset of the
// current one); inserted jumps take the surrounding open layer.
RealHomotopy refine_real(const RealHomotopy& F, const std::vector<Rational>& new_jumps);

RealHomotopy reverse_real(const RealHomotopy& F);
RealHomotopy concat_real(const RealHomotopy& F, const RealHomotopy& G);

// Time reparameterization of a long homotopy onto (0,1): layer j occupies
// the rational interval ((j+T+1)/(2T+3), (j+T+2)/(2T+3)), the jump value at
// a boundary is the layer to its right, and the ends extend to 0 and 1.
RealHomotopy long_to_real(const LongHomotopy& F);

// Samples one layer per open region between global jumps (plus an extra
// sample after 0 when some slice jumps at 0 itself) and reads the finite
// homotopy off those samples.
Homotopy real_to_finite(const RealHomotopy& F);

RealHomotopy whisker_real(const DigitalMap& post, const RealHomotopy& F, const DigitalMap& pre);

struct RealEquivalenceCertificate {
  DigitalMap f;     // X -> Y
  DigitalMap g;     // Y -> X
  RealHomotopy H;   // g.f ~R 1_X, in X
  RealHomotopy K;   // f.g ~R 1_Y, in Y
  std::optional<std::pair<Point, Point>> pointed;
};

CheckResult verify_real_equivalence(const RealEquivalenceCertificate& cert);
RealEquivalenceCertificate swap_real_equivalence(const RealEquivalenceCertificate& cert);

RealEquivalenceCertificate compose_real_equivalences(const RealEquivalenceCertificate& cert1,
                                                     const RealEquivalenceCertificate& cert2);

}  // namespace digitop

#endif
