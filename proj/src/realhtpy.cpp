#include "digitop/realhtpy.hpp"

#include <algorithm>
#include <stdexcept>

#include "digitop/runtime.hpp"

namespace digitop {

namespace {

bool strictly_increasing_inside_unit(const std::vector<Rational>& jumps) {
  const Rational zero(0), one(1);
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (!(zero < jumps[i]) || !(jumps[i] < one)) return false;
    if (i > 0 && !(jumps[i - 1] < jumps[i])) return false;
  }
  return true;
}

bool eq_or_adj(const DigitalImage& img, const Point& a, const Point& b) {
  return a == b || adjacent(a, b, img.kind());
}

}  // namespace

CheckResult verify_real_path(const RealPath& p) {
  const std::size_t k = p.jumps.size();
  if (p.open_values.size() != k + 1) {
    return CheckResult::fail("open value count does not match the jump count");
  }
  if (p.jump_values.size() != k) {
    return CheckResult::fail("jump value count does not match the jump count");
  }
  if (!strictly_increasing_inside_unit(p.jumps)) {
    return CheckResult::fail("jump positions are not strictly increasing inside (0,1)");
  }
  auto in_image = [&](const Point& q) { return p.image.contains(q); };
  if (!in_image(p.value_at_0) || !in_image(p.value_at_1)) {
    return CheckResult::fail("endpoint value outside the image");
  }
  for (const Point& q : p.open_values) {
    if (!in_image(q)) return CheckResult::fail("open value outside the image");
  }
  for (const Point& q : p.jump_values) {
    if (!in_image(q)) return CheckResult::fail("jump value outside the image");
  }

  if (!eq_or_adj(p.image, p.open_values.front(), p.value_at_0)) {
    return CheckResult::fail("value near 0 neither equals nor is adjacent to the value at 0");
  }
  if (!eq_or_adj(p.image, p.open_values.back(), p.value_at_1)) {
    return CheckResult::fail("value near 1 neither equals nor is adjacent to the value at 1");
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Point& l = p.open_values[i];
    const Point& r = p.open_values[i + 1];
    if (!eq_or_adj(p.image, l, r)) {
      return CheckResult::fail("jump " + std::to_string(i) + " at " + p.jumps[i].str() +
                               " moves between non-adjacent values");
    }
    if (p.jump_values[i] != l && p.jump_values[i] != r) {
      return CheckResult::fail("jump " + std::to_string(i) + " at " + p.jumps[i].str() +
                               " takes a value matching neither side");
    }
  }
  return CheckResult::pass();
}

namespace {

CheckResult real_shapes(const RealHomotopy& F) {
  const std::size_t k = F.jumps.size();
  if (F.open_layers.size() != k + 1) {
    return CheckResult::fail("open layer count does not match the jump count");
  }
  if (F.jump_layers.size() != k) {
    return CheckResult::fail("jump layer count does not match the jump count");
  }
  if (!strictly_increasing_inside_unit(F.jumps)) {
    return CheckResult::fail("jump positions are not strictly increasing inside (0,1)");
  }
  auto shape_ok = [&](const DigitalMap& m) {
    return m.domain() == F.at0.domain() && m.codomain() == F.at0.codomain();
  };
  if (!shape_ok(F.at1)) return CheckResult::fail("layer at 1 has mismatched shape");
  for (const DigitalMap& m : F.open_layers) {
    if (!shape_ok(m)) return CheckResult::fail("open layer has mismatched shape");
  }
  for (const DigitalMap& m : F.jump_layers) {
    if (!shape_ok(m)) return CheckResult::fail("jump layer has mismatched shape");
  }
  return CheckResult::pass();
}

// Slice validity of one domain point across the region sequence.
bool slice_ok(const RealHomotopy& F, Index i) {
  const DigitalImage& Y = F.codomain();
  const std::size_t k = F.jumps.size();
  auto eq_or_adj_idx = [&](Index a, Index b) {
    return a == b || adjacent(Y.point(a), Y.point(b), Y.kind());
  };
  if (!eq_or_adj_idx(F.open_layers.front().value_index(i), F.at0.value_index(i))) return false;
  if (!eq_or_adj_idx(F.open_layers.back().value_index(i), F.at1.value_index(i))) return false;
  for (std::size_t j = 0; j < k; ++j) {
    Index l = F.open_layers[j].value_index(i);
    Index r = F.open_layers[j + 1].value_index(i);
    Index v = F.jump_layers[j].value_index(i);
    if (!eq_or_adj_idx(l, r)) return false;
    if (v != l && v != r) return false;
  }
  return true;
}

CheckResult explain_slice(const RealHomotopy& F, Index i) {
  const DigitalImage& X = F.domain();
  const DigitalImage& Y = F.codomain();
  auto eq_or_adj_idx = [&](Index a, Index b) {
    return a == b || adjacent(Y.point(a), Y.point(b), Y.kind());
  };
  if (!eq_or_adj_idx(F.open_layers.front().value_index(i), F.at0.value_index(i))) {
    return CheckResult::fail("slice of " + X.point(i).str() + " jumps discontinuously at 0");
  }
  if (!eq_or_adj_idx(F.open_layers.back().value_index(i), F.at1.value_index(i))) {
    return CheckResult::fail("slice of " + X.point(i).str() + " jumps discontinuously at 1");
  }
  for (std::size_t j = 0; j < F.jumps.size(); ++j) {
    Index l = F.open_layers[j].value_index(i);
    Index r = F.open_layers[j + 1].value_index(i);
    Index v = F.jump_layers[j].value_index(i);
    if (!eq_or_adj_idx(l, r)) {
      return CheckResult::fail("slice of " + X.point(i).str() + " moves between non-adjacent " +
                               "values at jump " + F.jumps[j].str());
    }
    if (v != l && v != r) {
      return CheckResult::fail("slice of " + X.point(i).str() + " takes a stray value at jump " +
                               F.jumps[j].str());
    }
  }
  return CheckResult::fail("slice check raced; unreachable");
}

CheckResult verify_real_impl(const RealHomotopy& F, const DigitalMap& f, const DigitalMap& g,
                             bool serial) {
  CheckResult shape = real_shapes(F);
  if (!shape.ok) return shape;
  if (F.at0 != f) return CheckResult::fail("layer at 0 differs from the stated start map");
  if (F.at1 != g) return CheckResult::fail("layer at 1 differs from the stated end map");

  auto check_layer = [&](const DigitalMap& m, const std::string& name) -> CheckResult {
    CheckResult c = check_continuity_edges_explain(m);
    if (!c.ok) return CheckResult::fail(name + " not continuous: " + c.clause);
    return CheckResult::pass();
  };
  CheckResult c = check_layer(F.at0, "layer at 0");
  if (!c.ok) return c;
  c = check_layer(F.at1, "layer at 1");
  if (!c.ok) return c;
  for (std::size_t j = 0; j < F.open_layers.size(); ++j) {
    c = check_layer(F.open_layers[j], "open layer " + std::to_string(j));
    if (!c.ok) return c;
  }
  for (std::size_t j = 0; j < F.jump_layers.size(); ++j) {
    c = check_layer(F.jump_layers[j], "jump layer " + std::to_string(j));
    if (!c.ok) return c;
  }

  const Index n = F.domain().size();
  Index first_bad = n;
  if (serial || !parallel_enabled() || n < 64) {
    for (Index i = 0; i < n; ++i) {
      if (!slice_ok(F, i)) {
        first_bad = i;
        break;
      }
    }
  } else {
#pragma omp parallel for schedule(static) reduction(min : first_bad)
    for (Index i = 0; i < n; ++i) {
      if (!slice_ok(F, i)) first_bad = std::min(first_bad, i);
    }
  }
  if (first_bad < n) return explain_slice(F, first_bad);

  if (F.pointed_at) {
    auto xi = F.domain().index_of(*F.pointed_at);
    if (!xi) return CheckResult::fail("pointed_at " + F.pointed_at->str() + " not in the domain");
    Index held = F.at0.value_index(*xi);
    auto holds = [&](const DigitalMap& m) { return m.value_index(*xi) == held; };
    if (!holds(F.at1)) return CheckResult::fail("layer at 1 moves the held point");
    for (const DigitalMap& m : F.open_layers) {
      if (!holds(m)) return CheckResult::fail("an open layer moves the held point");
    }
    for (const DigitalMap& m : F.jump_layers) {
      if (!holds(m)) return CheckResult::fail("a jump layer moves the held point");
    }
  }
  return CheckResult::pass();
}

}  // namespace

CheckResult verify_real_homotopy(const RealHomotopy& F, const DigitalMap& f, const DigitalMap& g) {
  return verify_real_impl(F, f, g, false);
}

CheckResult verify_real_homotopy_serial(const RealHomotopy& F, const DigitalMap& f,
                                        const DigitalMap& g) {
  return verify_real_impl(F, f, g, true);
}

RealHomotopy canonicalize_real(RealHomotopy F) {
  RealHomotopy out;
  out.at0 = F.at0;
  out.at1 = F.at1;
  out.pointed_at = F.pointed_at;
  out.open_layers.push_back(F.open_layers.front());
  for (std::size_t j = 0; j < F.jumps.size(); ++j) {
    const DigitalMap& left = out.open_layers.back();
    const DigitalMap& right = F.open_layers[j + 1];
    if (left == right && F.jump_layers[j] == left) continue;  // no motion anywhere
    out.jumps.push_back(F.jumps[j]);
    out.jump_layers.push_back(F.jump_layers[j]);
    out.open_layers.push_back(right);
  }
  return out;
}

RealHomotopy refine_real(const RealHomotopy& F, const std::vector<Rational>& new_jumps) {
  if (!strictly_increasing_inside_unit(new_jumps)) {
    throw std::invalid_argument("refine_real: jump positions not strictly increasing in (0,1)");
  }
  RealHomotopy out;
  out.at0 = F.at0;
  out.at1 = F.at1;
  out.pointed_at = F.pointed_at;
  out.jumps = new_jumps;
  std::size_t old = 0;
  out.open_layers.push_back(F.open_layers.front());
  for (const Rational& q : new_jumps) {
    if (old < F.jumps.size() && F.jumps[old] == q) {
      out.jump_layers.push_back(F.jump_layers[old]);
      ++old;
      out.open_layers.push_back(F.open_layers[old]);
    } else if (old < F.jumps.size() && F.jumps[old] < q) {
      throw std::invalid_argument("refine_real: new jump set is not a superset");
    } else {
      // Inside the current open region: no motion at the inserted position.
      out.jump_layers.push_back(F.open_layers[old]);
      out.open_layers.push_back(F.open_layers[old]);
    }
  }
  if (old != F.jumps.size()) {
    throw std::invalid_argument("refine_real: new jump set is not a superset");
  }
  return out;
}

RealHomotopy reverse_real(const RealHomotopy& F) {
  RealHomotopy out;
  out.at0 = F.at1;
  out.at1 = F.at0;
  out.pointed_at = F.pointed_at;
  const Rational one(1);
  for (auto it = F.jumps.rbegin(); it != F.jumps.rend(); ++it) out.jumps.push_back(one - *it);
  out.open_layers.assign(F.open_layers.rbegin(), F.open_layers.rend());
  out.jump_layers.assign(F.jump_layers.rbegin(), F.jump_layers.rend());
  return out;
}

RealHomotopy concat_real(const RealHomotopy& F, const RealHomotopy& G) {
  if (F.at1 != G.at0) {
    throw std::invalid_argument("concat_real: F ends at a different map than G starts");
  }
  const Rational half(1, 2), one(1);
  RealHomotopy out;
  out.at0 = F.at0;
  out.at1 = G.at1;
  if (F.pointed_at && G.pointed_at && *F.pointed_at == *G.pointed_at) {
    out.pointed_at = F.pointed_at;
  }
  for (const Rational& q : F.jumps) out.jumps.push_back(q * half);
  out.jumps.push_back(half);
  for (const Rational& q : G.jumps) out.jumps.push_back((q + one) * half);

  out.open_layers = F.open_layers;
  out.open_layers.insert(out.open_layers.end(), G.open_layers.begin(), G.open_layers.end());
  out.jump_layers = F.jump_layers;
  out.jump_layers.push_back(F.at1);  // the seam takes F(x,1) = G(x,0)
  out.jump_layers.insert(out.jump_layers.end(), G.jump_layers.begin(), G.jump_layers.end());
  return canonicalize_real(std::move(out));
}

RealHomotopy long_to_real(const LongHomotopy& F) {
  if (F.layers.empty()) throw std::invalid_argument("long_to_real: empty homotopy");
  const int T = F.window();
  const std::int64_t den = 2 * static_cast<std::int64_t>(T) + 3;
  RealHomotopy out;
  out.at0 = F.layers.front();
  out.at1 = F.layers.back();
  out.pointed_at = F.pointed_at;

  // Boundaries q_j = (j+T+1)/(2T+3) for j = -T..T+1; layer j sits between
  // q_j and q_{j+1}, the first and last slots extend the endpoint layers.
  out.open_layers.push_back(F.layers.front());
  for (int j = -T; j <= T; ++j) {
    out.jumps.emplace_back(static_cast<std::int64_t>(j) + T + 1, den);
    out.jump_layers.push_back(F.layer(j));
    out.open_layers.push_back(F.layer(j));
  }
  out.jumps.emplace_back(2 * static_cast<std::int64_t>(T) + 2, den);
  out.jump_layers.push_back(F.layers.back());
  out.open_layers.push_back(F.layers.back());
  return canonicalize_real(std::move(out));
}

Homotopy real_to_finite(const RealHomotopy& F) {
  CheckResult shape = real_shapes(F);
  if (!shape.ok) throw std::invalid_argument("real_to_finite: " + shape.clause);
  const std::size_t k = F.jumps.size();
  Homotopy out;
  out.pointed_at = F.pointed_at;
  out.layers.push_back(F.at0);
  if (F.open_layers.front() != F.at0) {
    // Some slice jumps at 0 itself; sample the first open region too.
    out.layers.push_back(F.open_layers.front());
  }
  for (std::size_t j = 1; j <= k; ++j) out.layers.push_back(F.open_layers[j]);
  out.layers.push_back(F.at1);
  return out;
}

RealHomotopy whisker_real(const DigitalMap& post, const RealHomotopy& F, const DigitalMap& pre) {
  RealHomotopy out;
  out.jumps = F.jumps;
  out.at0 = compose(post, compose(F.at0, pre));
  out.at1 = compose(post, compose(F.at1, pre));
  for (const DigitalMap& m : F.open_layers) out.open_layers.push_back(compose(post, compose(m, pre)));
  for (const DigitalMap& m : F.jump_layers) out.jump_layers.push_back(compose(post, compose(m, pre)));
  return canonicalize_real(std::move(out));
}

CheckResult verify_real_equivalence(const RealEquivalenceCertificate& cert) {
  const DigitalImage& X = cert.f.domain();
  const DigitalImage& Y = cert.f.codomain();
  if (cert.g.domain() != Y || cert.g.codomain() != X) {
    return CheckResult::fail("g is not a map codomain(f) -> domain(f)");
  }
  CheckResult cf = check_continuity_edges_explain(cert.f);
  if (!cf.ok) return CheckResult::fail("f not continuous: " + cf.clause);
  CheckResult cg = check_continuity_edges_explain(cert.g);
  if (!cg.ok) return CheckResult::fail("g not continuous: " + cg.clause);

  CheckResult h = verify_real_homotopy(cert.H, compose(cert.g, cert.f), DigitalMap::identity(X));
  if (!h.ok) return CheckResult::fail("H endpoints: " + h.clause);
  CheckResult k = verify_real_homotopy(cert.K, compose(cert.f, cert.g), DigitalMap::identity(Y));
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

RealEquivalenceCertificate swap_real_equivalence(const RealEquivalenceCertificate& cert) {
  RealEquivalenceCertificate out{cert.g, cert.f, cert.K, cert.H, std::nullopt};
  if (cert.pointed) out.pointed = std::make_pair(cert.pointed->second, cert.pointed->first);
  return out;
}

RealEquivalenceCertificate compose_real_equivalences(const RealEquivalenceCertificate& cert1,
                                                     const RealEquivalenceCertificate& cert2) {
  const DigitalImage& Y = cert1.f.codomain();
  if (cert2.f.domain() != Y) {
    throw std::invalid_argument("compose_real_equivalences: middle image mismatch");
  }
  RealEquivalenceCertificate out;
  out.f = compose(cert2.f, cert1.f);
  out.g = compose(cert1.g, cert2.g);

  RealHomotopy h_step = whisker_real(cert1.g, cert2.H, cert1.f);  // g1.(g2.f2).f1 ~ g1.f1
  out.H = concat_real(h_step, cert1.H);
  RealHomotopy k_step = whisker_real(cert2.f, cert1.K, cert2.g);  // f2.(f1.g1).g2 ~ f2.g2
  out.K = concat_real(k_step, cert2.K);

  if (cert1.pointed && cert2.pointed && cert1.pointed->second == cert2.pointed->first) {
    out.pointed = std::make_pair(cert1.pointed->first, cert2.pointed->second);
    out.H.pointed_at = out.pointed->first;
    out.K.pointed_at = out.pointed->second;
  }
  return out;
}

}  // namespace digitop
