#include "digitop/longhtpy.hpp"

#include <algorithm>
#include <stdexcept>

#include "digitop/runtime.hpp"

namespace digitop {

namespace {

CheckResult check_common_shapes(const std::vector<DigitalMap>& layers) {
  if (layers.empty()) return CheckResult::fail("homotopy has no layers");
  for (std::size_t t = 1; t < layers.size(); ++t) {
    if (layers[t].domain() != layers.front().domain()) {
      return CheckResult::fail("layer " + std::to_string(t) + " domain mismatch");
    }
    if (layers[t].codomain() != layers.front().codomain()) {
      return CheckResult::fail("layer " + std::to_string(t) + " codomain mismatch");
    }
  }
  return CheckResult::pass();
}

CheckResult check_layers_continuous(const std::vector<DigitalMap>& layers) {
  for (std::size_t t = 0; t < layers.size(); ++t) {
    CheckResult c = check_continuity_edges_explain(layers[t]);
    if (!c.ok) return CheckResult::fail("layer " + std::to_string(t) + " not continuous: " + c.clause);
  }
  return CheckResult::pass();
}

CheckResult check_tracks(const std::vector<DigitalMap>& layers) {
  const DigitalImage& X = layers.front().domain();
  const DigitalImage& Y = layers.front().codomain();
  for (Index i = 0; i < X.size(); ++i) {
    for (std::size_t t = 0; t + 1 < layers.size(); ++t) {
      Index a = layers[t].value_index(i);
      Index b = layers[t + 1].value_index(i);
      if (a != b && !adjacent(Y.point(a), Y.point(b), Y.kind())) {
        return CheckResult::fail("track of " + X.point(i).str() + " jumps at step " +
                                 std::to_string(t));
      }
    }
  }
  return CheckResult::pass();
}

CheckResult check_pointed_layers(const std::vector<DigitalMap>& layers,
                                 const std::optional<Point>& pointed_at) {
  if (!pointed_at) return CheckResult::pass();
  auto xi = layers.front().domain().index_of(*pointed_at);
  if (!xi) return CheckResult::fail("pointed_at " + pointed_at->str() + " not in the domain");
  Index held = layers.front().value_index(*xi);
  for (std::size_t t = 1; t < layers.size(); ++t) {
    if (layers[t].value_index(*xi) != held) {
      return CheckResult::fail("layer " + std::to_string(t) + " moves the held point " +
                               pointed_at->str());
    }
  }
  return CheckResult::pass();
}

}  // namespace

CheckResult verify_l_homotopy(const LHomotopy& F, const DigitalMap& f, const DigitalMap& g) {
  CheckResult shape = check_common_shapes(F.layers);
  if (!shape.ok) return shape;
  const DigitalImage& X = F.layers.front().domain();
  if (F.per_point_stab.size() != static_cast<std::size_t>(X.size())) {
    return CheckResult::fail("per_point_stab does not cover the domain");
  }
  if (F.layers.front() != f) return CheckResult::fail("layer 0 differs from the stated start map");
  if (f.domain() != X || g.domain() != X || f.codomain() != F.layers.front().codomain() ||
      g.codomain() != F.layers.front().codomain()) {
    return CheckResult::fail("endpoint maps do not match the layer shapes");
  }

  CheckResult cont = check_layers_continuous(F.layers);
  if (!cont.ok) return cont;
  CheckResult tracks = check_tracks(F.layers);
  if (!tracks.ok) return tracks;

  const int T = F.window();
  for (Index i = 0; i < X.size(); ++i) {
    int nx = F.per_point_stab[static_cast<std::size_t>(i)];
    if (nx < 0 || nx > T) {
      return CheckResult::fail("stabilization index of " + X.point(i).str() + " outside [0,T]");
    }
    Index frozen = F.layers[static_cast<std::size_t>(nx)].value_index(i);
    for (int t = nx; t <= T; ++t) {
      if (F.layers[static_cast<std::size_t>(t)].value_index(i) != frozen) {
        return CheckResult::fail("track of " + X.point(i).str() + " moves at t=" +
                                 std::to_string(t) + " past its stabilization index " +
                                 std::to_string(nx));
      }
    }
    if (frozen != g.value_index(i)) {
      return CheckResult::fail("stabilized value of " + X.point(i).str() +
                               " differs from the stated end map");
    }
  }
  return check_pointed_layers(F.layers, F.pointed_at);
}

namespace {

CheckResult verify_long_impl(const LongHomotopy& F, const DigitalMap& f, const DigitalMap& g,
                             bool serial) {
  CheckResult shape = check_common_shapes(F.layers);
  if (!shape.ok) return shape;
  const DigitalImage& X = F.layers.front().domain();
  const DigitalImage& Y = F.layers.front().codomain();
  const int T = F.window();
  if (F.t_min > 0 || static_cast<int>(F.layers.size()) != 2 * T + 1) {
    return CheckResult::fail("long homotopy window is not symmetric");
  }
  if (F.per_point_bound.size() != static_cast<std::size_t>(X.size())) {
    return CheckResult::fail("per_point_bound does not cover the domain");
  }
  if (f.domain() != X || g.domain() != X || f.codomain() != Y || g.codomain() != Y) {
    return CheckResult::fail("endpoint maps do not match the layer shapes");
  }

  CheckResult cont = check_layers_continuous(F.layers);
  if (!cont.ok) return cont;

  const long n = X.size();
  auto point_ok = [&](Index i) -> bool {
    int nx = F.per_point_bound[static_cast<std::size_t>(i)];
    if (nx < 0 || nx > T) return false;
    Index fv = f.value_index(i);
    Index gv = g.value_index(i);
    for (int t = -T; t <= T; ++t) {
      Index v = F.layers[static_cast<std::size_t>(t + T)].value_index(i);
      if (t <= -nx && v != fv) return false;
      if (t >= nx && v != gv) return false;
      if (t < T) {
        Index w = F.layers[static_cast<std::size_t>(t + 1 + T)].value_index(i);
        if (v != w && !adjacent(Y.point(v), Y.point(w), Y.kind())) return false;
      }
    }
    return true;
  };

  Index first_bad = static_cast<Index>(n);
  if (serial || !parallel_enabled() || n < 64) {
    for (Index i = 0; i < n; ++i) {
      if (!point_ok(i)) {
        first_bad = i;
        break;
      }
    }
  } else {
#pragma omp parallel for schedule(static) reduction(min : first_bad)
    for (Index i = 0; i < n; ++i) {
      if (!point_ok(i)) first_bad = std::min(first_bad, i);
    }
  }
  if (first_bad < n) {
    Index i = first_bad;
    int nx = F.per_point_bound[static_cast<std::size_t>(i)];
    if (nx < 0 || nx > T) {
      return CheckResult::fail("bound of " + X.point(i).str() + " outside [0,T]");
    }
    for (int t = -T; t <= T; ++t) {
      Index v = F.layers[static_cast<std::size_t>(t + T)].value_index(i);
      if (t <= -nx && v != f.value_index(i)) {
        return CheckResult::fail("track of " + X.point(i).str() + " differs from f at t=" +
                                 std::to_string(t) + " <= -" + std::to_string(nx));
      }
      if (t >= nx && v != g.value_index(i)) {
        return CheckResult::fail("track of " + X.point(i).str() + " differs from g at t=" +
                                 std::to_string(t) + " >= " + std::to_string(nx));
      }
      if (t < T) {
        Index w = F.layers[static_cast<std::size_t>(t + 1 + T)].value_index(i);
        if (v != w && !adjacent(Y.point(v), Y.point(w), Y.kind())) {
          return CheckResult::fail("track of " + X.point(i).str() + " jumps at t=" +
                                   std::to_string(t));
        }
      }
    }
    return CheckResult::fail("long homotopy check raced; unreachable");
  }
  return check_pointed_layers(F.layers, F.pointed_at);
}

// Minimal valid per-point bounds for a symmetric layer window whose ends are
// the stated endpoint values.
std::vector<int> minimal_bounds(const std::vector<DigitalMap>& layers, int T) {
  const DigitalImage& X = layers.front().domain();
  std::vector<int> bounds(static_cast<std::size_t>(X.size()), 0);
  for (Index i = 0; i < X.size(); ++i) {
    Index fv = layers.front().value_index(i);
    Index gv = layers.back().value_index(i);
    int nx = 0;
    for (int t = -T; t <= T; ++t) {
      Index v = layers[static_cast<std::size_t>(t + T)].value_index(i);
      if (t <= 0 && v != fv) nx = std::max(nx, -t + 1);
      if (t >= 0 && v != gv) nx = std::max(nx, t + 1);
    }
    bounds[static_cast<std::size_t>(i)] = nx;
  }
  return bounds;
}

}  // namespace

LongHomotopy make_long_homotopy(std::vector<DigitalMap> layers, std::optional<Point> pointed_at) {
  if (layers.empty() || layers.size() % 2 == 0) {
    throw std::invalid_argument("make_long_homotopy: layer count must be odd");
  }
  const int T = static_cast<int>(layers.size() - 1) / 2;
  LongHomotopy out;
  out.t_min = -T;
  out.per_point_bound = minimal_bounds(layers, T);
  out.layers = std::move(layers);
  out.pointed_at = std::move(pointed_at);
  return out;
}

LongHomotopy pad_long_window(const LongHomotopy& F, int window) {
  if (window < F.window()) {
    throw std::invalid_argument("pad_long_window cannot shrink the window");
  }
  LongHomotopy out;
  out.t_min = -window;
  out.layers.reserve(static_cast<std::size_t>(2 * window + 1));
  for (int t = -window; t <= window; ++t) out.layers.push_back(F.layer(t));
  out.per_point_bound = F.per_point_bound;
  out.pointed_at = F.pointed_at;
  return out;
}

CheckResult verify_long_homotopy(const LongHomotopy& F, const DigitalMap& f, const DigitalMap& g) {
  return verify_long_impl(F, f, g, false);
}

CheckResult verify_long_homotopy_serial(const LongHomotopy& F, const DigitalMap& f,
                                        const DigitalMap& g) {
  return verify_long_impl(F, f, g, true);
}

LongHomotopy l_to_long(const LHomotopy& F) {
  if (F.layers.empty()) throw std::invalid_argument("l_to_long: empty homotopy");
  const int T = F.window();
  LongHomotopy out;
  out.t_min = -T;
  out.layers.reserve(static_cast<std::size_t>(2 * T + 1));
  for (int t = -T; t < 0; ++t) out.layers.push_back(F.layers.front());
  for (int t = 0; t <= T; ++t) out.layers.push_back(F.layers[static_cast<std::size_t>(t)]);
  out.per_point_bound = minimal_bounds(out.layers, T);
  out.pointed_at = F.pointed_at;
  return out;
}

LongHomotopy finite_to_long(const Homotopy& F) {
  if (F.layers.empty()) throw std::invalid_argument("finite_to_long: empty homotopy");
  const int m = F.steps();
  LongHomotopy out;
  out.t_min = -m;
  out.layers.reserve(static_cast<std::size_t>(2 * m + 1));
  for (int t = -m; t <= m; ++t) {
    out.layers.push_back(F.layers[static_cast<std::size_t>(std::max(0, std::min(t, m)))]);
  }
  out.per_point_bound = minimal_bounds(out.layers, m);
  out.pointed_at = F.pointed_at;
  return out;
}

Homotopy long_to_finite(const LongHomotopy& F) {
  if (F.layers.empty()) throw std::invalid_argument("long_to_finite: empty homotopy");
  int m = 0;
  for (int b : F.per_point_bound) m = std::max(m, b);
  Homotopy out;
  out.pointed_at = F.pointed_at;
  // Runs of identical layers carry no motion; keeping one copy of each run
  // shortens the clamp without changing endpoints.
  for (int t = -m; t <= m; ++t) {
    const DigitalMap& layer = F.layer(t);
    if (out.layers.empty() || out.layers.back() != layer) out.layers.push_back(layer);
  }
  return out;
}

LongHomotopy reverse_long(const LongHomotopy& F) {
  LongHomotopy out;
  out.t_min = F.t_min;
  out.layers.assign(F.layers.rbegin(), F.layers.rend());
  out.per_point_bound = F.per_point_bound;
  out.pointed_at = F.pointed_at;
  return out;
}

std::vector<int> shift_freeze_indices(const LongHomotopy& H) {
  const DigitalImage& X = H.layers.front().domain();
  const int T = H.window();
  const DigitalMap& last = H.layers.back();

  // Minimal per-point index past which the track already sits at its final
  // constant value.
  std::vector<int> reach(static_cast<std::size_t>(X.size()), 0);
  for (Index i = 0; i < X.size(); ++i) {
    Index cv = last.value_index(i);
    int nx = 0;
    for (int t = T; t >= -T; --t) {
      if (H.layers[static_cast<std::size_t>(t + T)].value_index(i) != cv) {
        nx = t + 1;
        break;
      }
    }
    reach[static_cast<std::size_t>(i)] = nx;
  }
  std::vector<int> freeze(reach);
  for (Index i = 0; i < X.size(); ++i) {
    for (Index nb : X.neighbor_indices(i)) {
      freeze[static_cast<std::size_t>(i)] =
          std::max(freeze[static_cast<std::size_t>(i)], reach[static_cast<std::size_t>(nb)]);
    }
  }
  return freeze;
}

LongHomotopy shift_constant_target(const LongHomotopy& H, const Point& d) {
  if (H.layers.empty()) throw std::invalid_argument("shift_constant_target: empty homotopy");
  const DigitalImage& X = H.layers.front().domain();
  const DigitalImage& Y = H.layers.front().codomain();
  const DigitalMap& last = H.layers.back();
  Index c_prime = last.value_index(0);
  for (Index i = 1; i < X.size(); ++i) {
    if (last.value_index(i) != c_prime) {
      throw std::invalid_argument("shift_constant_target: homotopy does not end at a constant map");
    }
  }
  auto di = Y.index_of(d);
  if (!di) throw std::invalid_argument("shift_constant_target: " + d.str() + " not in codomain");
  if (*di != c_prime && !adjacent(Y.point(c_prime), d, Y.kind())) {
    throw std::invalid_argument("shift_constant_target: " + d.str() +
                                " neither equals nor is adjacent to the current constant");
  }

  std::vector<int> freeze = shift_freeze_indices(H);
  int max_freeze = 0;
  for (int v : freeze) max_freeze = std::max(max_freeze, v);
  const int T_out = std::max(H.window(), max_freeze + 1);

  LongHomotopy out;
  out.t_min = -T_out;
  // Retargeting moves every track to d eventually, so pointedness is lost.
  for (int t = -T_out; t <= T_out; ++t) {
    const DigitalMap& base = H.layer(t);
    std::vector<Index> a(static_cast<std::size_t>(X.size()));
    for (Index i = 0; i < X.size(); ++i) {
      a[static_cast<std::size_t>(i)] =
          (t > freeze[static_cast<std::size_t>(i)]) ? *di : base.value_index(i);
    }
    out.layers.emplace_back(X, Y, std::move(a));
  }
  out.per_point_bound = minimal_bounds(out.layers, T_out);
  return out;
}

CheckResult verify_long_equivalence(const LongEquivalenceCertificate& cert) {
  const DigitalImage& X = cert.f.domain();
  const DigitalImage& Y = cert.f.codomain();
  if (cert.g.domain() != Y || cert.g.codomain() != X) {
    return CheckResult::fail("g is not a map codomain(f) -> domain(f)");
  }
  CheckResult cf = check_continuity_edges_explain(cert.f);
  if (!cf.ok) return CheckResult::fail("f not continuous: " + cf.clause);
  CheckResult cg = check_continuity_edges_explain(cert.g);
  if (!cg.ok) return CheckResult::fail("g not continuous: " + cg.clause);

  CheckResult h = verify_long_homotopy(cert.H, compose(cert.g, cert.f), DigitalMap::identity(X));
  if (!h.ok) return CheckResult::fail("H endpoints: " + h.clause);
  CheckResult k = verify_long_homotopy(cert.K, compose(cert.f, cert.g), DigitalMap::identity(Y));
  if (!k.ok) return CheckResult::fail("K endpoints: " + k.clause);

  if (cert.pointed) {
    const auto& [x0, y0] = *cert.pointed;
    if (!X.contains(x0)) return CheckResult::fail("basepoint x0 not in X");
    if (!Y.contains(y0)) return CheckResult::fail("basepoint y0 not in Y");
    if (cert.f.apply(x0) != y0) return CheckResult::fail("f does not carry x0 to y0");
    if (cert.g.apply(y0) != x0) return CheckResult::fail("g does not carry y0 to x0");
    if (!cert.H.pointed_at || *cert.H.pointed_at != x0) {
      return CheckResult::fail("H does not hold x0 fixed");
    }
    if (!cert.K.pointed_at || *cert.K.pointed_at != y0) {
      return CheckResult::fail("K does not hold y0 fixed");
    }
  }
  return CheckResult::pass();
}

LongEquivalenceCertificate swap_long_equivalence(const LongEquivalenceCertificate& cert) {
  LongEquivalenceCertificate out{cert.g, cert.f, cert.K, cert.H, std::nullopt};
  if (cert.pointed) out.pointed = std::make_pair(cert.pointed->second, cert.pointed->first);
  return out;
}

LongEquivalenceCertificate compose_long_equiv_through_point(
    const LongEquivalenceCertificate& cert1, const LongEquivalenceCertificate& cert2) {
  const DigitalImage& mid = cert1.f.codomain();
  if (mid.size() != 1) {
    throw std::invalid_argument("compose_long_equiv_through_point: middle image is not a point");
  }
  if (cert2.f.domain() != mid) {
    throw std::invalid_argument("compose_long_equiv_through_point: certificates do not share the "
                                "middle image");
  }
  LongEquivalenceCertificate out;
  out.f = compose(cert2.f, cert1.f);  // X -> {a} -> Y
  out.g = compose(cert1.g, cert2.g);  // Y -> {a} -> X
  // Through a single point, g.f equals cert1's composite and f.g equals
  // cert2's, so both homotopies transfer unchanged.
  out.H = cert1.H;
  out.K = cert2.K;
  if (cert1.pointed && cert2.pointed) {
    out.pointed = std::make_pair(cert1.pointed->first, cert2.pointed->second);
  }
  return out;
}

}  // namespace digitop
