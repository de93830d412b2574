#include "digitop/similarity.hpp"

#include <algorithm>
#include <stdexcept>

namespace digitop {

namespace {

std::string level_tag(const char* name, int j) { return std::string(name) + std::to_string(j); }

// The canonical start map of a restriction homotopy: f_w cut down to X_v and
// retargeted into Y_v. Throws when f_w(X_v) is not contained in Y_v.
DigitalMap restriction_start(const DigitalMap& f_w, const DigitalImage& xv,
                             const DigitalImage& yv) {
  return retarget(restrict(f_w, xv), yv);
}

}  // namespace

CheckResult verify_similarity(const SimilarityCertificate& cert) {
  const int J = cert.depth();
  if (J < 1) return CheckResult::fail("certificate has no levels");
  if (cert.fy.depth() != J) return CheckResult::fail("filtration depths differ");
  if (static_cast<int>(cert.f.size()) != J || static_cast<int>(cert.g.size()) != J ||
      static_cast<int>(cert.h.size()) != J || static_cast<int>(cert.k.size()) != J) {
    return CheckResult::fail("level data does not cover depth " + std::to_string(J));
  }

  for (int j = 0; j + 1 < J; ++j) {
    if (!cert.fx.levels[static_cast<std::size_t>(j)].is_subset_of(
            cert.fx.levels[static_cast<std::size_t>(j + 1)])) {
      return CheckResult::fail(level_tag("X", j + 1) + " is not a subset of " +
                               level_tag("X", j + 2));
    }
    if (!cert.fy.levels[static_cast<std::size_t>(j)].is_subset_of(
            cert.fy.levels[static_cast<std::size_t>(j + 1)])) {
      return CheckResult::fail(level_tag("Y", j + 1) + " is not a subset of " +
                               level_tag("Y", j + 2));
    }
  }

  for (int j = 0; j < J; ++j) {
    const DigitalImage& xj = cert.fx.levels[static_cast<std::size_t>(j)];
    const DigitalImage& yj = cert.fy.levels[static_cast<std::size_t>(j)];
    const DigitalMap& fj = cert.f[static_cast<std::size_t>(j)];
    const DigitalMap& gj = cert.g[static_cast<std::size_t>(j)];
    if (fj.domain() != xj || fj.codomain() != yj) {
      return CheckResult::fail(level_tag("f", j + 1) + " is not a map X -> Y at its level");
    }
    if (gj.domain() != yj || gj.codomain() != xj) {
      return CheckResult::fail(level_tag("g", j + 1) + " is not a map Y -> X at its level");
    }
    CheckResult cf = check_continuity_edges_explain(fj);
    if (!cf.ok) return CheckResult::fail(level_tag("f", j + 1) + " not continuous: " + cf.clause);
    CheckResult cg = check_continuity_edges_explain(gj);
    if (!cg.ok) return CheckResult::fail(level_tag("g", j + 1) + " not continuous: " + cg.clause);

    CheckResult ch =
        verify_homotopy(cert.h[static_cast<std::size_t>(j)], compose(gj, fj), DigitalMap::identity(xj));
    if (!ch.ok) return CheckResult::fail(level_tag("H", j + 1) + ": " + ch.clause);
    CheckResult ck =
        verify_homotopy(cert.k[static_cast<std::size_t>(j)], compose(fj, gj), DigitalMap::identity(yj));
    if (!ck.ok) return CheckResult::fail(level_tag("K", j + 1) + ": " + ck.clause);
  }

  for (int v = 1; v <= J; ++v) {
    for (int w = v; w <= J; ++w) {
      auto rf = cert.rf.find({v, w});
      if (rf == cert.rf.end()) {
        return CheckResult::fail("missing restriction homotopy Rf(" + std::to_string(v) + "," +
                                 std::to_string(w) + ")");
      }
      auto rg = cert.rg.find({v, w});
      if (rg == cert.rg.end()) {
        return CheckResult::fail("missing restriction homotopy Rg(" + std::to_string(v) + "," +
                                 std::to_string(w) + ")");
      }
      const DigitalImage& xv = cert.fx.levels[static_cast<std::size_t>(v - 1)];
      const DigitalImage& yv = cert.fy.levels[static_cast<std::size_t>(v - 1)];
      DigitalMap fw_cut, gw_cut;
      try {
        fw_cut = restriction_start(cert.f[static_cast<std::size_t>(w - 1)], xv, yv);
        gw_cut = restriction_start(cert.g[static_cast<std::size_t>(w - 1)], yv, xv);
      } catch (const std::invalid_argument& e) {
        return CheckResult::fail("restriction at (" + std::to_string(v) + "," + std::to_string(w) +
                                 ") leaves its level: " + e.what());
      }
      CheckResult crf = verify_homotopy(rf->second, fw_cut, cert.f[static_cast<std::size_t>(v - 1)]);
      if (!crf.ok) {
        return CheckResult::fail("Rf(" + std::to_string(v) + "," + std::to_string(w) + "): " +
                                 crf.clause);
      }
      CheckResult crg = verify_homotopy(rg->second, gw_cut, cert.g[static_cast<std::size_t>(v - 1)]);
      if (!crg.ok) {
        return CheckResult::fail("Rg(" + std::to_string(v) + "," + std::to_string(w) + "): " +
                                 crg.clause);
      }
    }
  }

  if (cert.pointed) {
    const auto& [x1, y1] = *cert.pointed;
    if (!cert.fx.levels.front().contains(x1)) {
      return CheckResult::fail("basepoint x1 not in the first X level");
    }
    if (!cert.fy.levels.front().contains(y1)) {
      return CheckResult::fail("basepoint y1 not in the first Y level");
    }
    for (int j = 0; j < J; ++j) {
      if (cert.f[static_cast<std::size_t>(j)].apply(x1) != y1) {
        return CheckResult::fail(level_tag("f", j + 1) + " does not carry x1 to y1");
      }
      if (cert.g[static_cast<std::size_t>(j)].apply(y1) != x1) {
        return CheckResult::fail(level_tag("g", j + 1) + " does not carry y1 to x1");
      }
      const auto& hj = cert.h[static_cast<std::size_t>(j)];
      if (!hj.pointed_at || *hj.pointed_at != x1) {
        return CheckResult::fail(level_tag("H", j + 1) + " does not hold x1 fixed");
      }
      const auto& kj = cert.k[static_cast<std::size_t>(j)];
      if (!kj.pointed_at || *kj.pointed_at != y1) {
        return CheckResult::fail(level_tag("K", j + 1) + " does not hold y1 fixed");
      }
    }
    for (const auto& [vw, hom] : cert.rf) {
      if (!hom.pointed_at || *hom.pointed_at != x1) {
        return CheckResult::fail("Rf(" + std::to_string(vw.first) + "," +
                                 std::to_string(vw.second) + ") does not hold x1 fixed");
      }
    }
    for (const auto& [vw, hom] : cert.rg) {
      if (!hom.pointed_at || *hom.pointed_at != y1) {
        return CheckResult::fail("Rg(" + std::to_string(vw.first) + "," +
                                 std::to_string(vw.second) + ") does not hold y1 fixed");
      }
    }
  }
  return CheckResult::pass();
}

SimilarityCertificate truncate_similarity(const SimilarityCertificate& cert, int depth) {
  if (depth < 1 || depth > cert.depth()) {
    throw std::invalid_argument("truncate_similarity: depth out of range");
  }
  SimilarityCertificate out;
  auto cut = [&](const auto& v) {
    return std::vector<typename std::decay_t<decltype(v)>::value_type>(
        v.begin(), v.begin() + depth);
  };
  out.fx.levels = cut(cert.fx.levels);
  out.fx.exhausts = cert.fx.exhausts;
  out.fy.levels = cut(cert.fy.levels);
  out.fy.exhausts = cert.fy.exhausts;
  out.f = cut(cert.f);
  out.g = cut(cert.g);
  out.h = cut(cert.h);
  out.k = cut(cert.k);
  for (const auto& [vw, hom] : cert.rf) {
    if (vw.second <= depth) out.rf.emplace(vw, hom);
  }
  for (const auto& [vw, hom] : cert.rg) {
    if (vw.second <= depth) out.rg.emplace(vw, hom);
  }
  out.pointed = cert.pointed;
  return out;
}

SimilarityCertificate swap_similarity(const SimilarityCertificate& cert) {
  SimilarityCertificate out;
  out.fx = cert.fy;
  out.fy = cert.fx;
  out.f = cert.g;
  out.g = cert.f;
  out.h = cert.k;
  out.k = cert.h;
  out.rf = cert.rg;
  out.rg = cert.rf;
  if (cert.pointed) out.pointed = std::make_pair(cert.pointed->second, cert.pointed->first);
  return out;
}

SimilarityCertificate from_equivalence(const EquivalenceCertificate& cert, int depth) {
  if (depth < 1) throw std::invalid_argument("from_equivalence: depth must be positive");
  SimilarityCertificate out;
  const DigitalImage& X = cert.f.domain();
  const DigitalImage& Y = cert.f.codomain();
  for (int j = 0; j < depth; ++j) {
    out.fx.levels.push_back(X);
    out.fy.levels.push_back(Y);
    out.f.push_back(cert.f);
    out.g.push_back(cert.g);
    out.h.push_back(cert.H);
    out.k.push_back(cert.K);
  }
  for (int v = 1; v <= depth; ++v) {
    for (int w = v; w <= depth; ++w) {
      Homotopy rf{{cert.f}, std::nullopt};
      Homotopy rg{{cert.g}, std::nullopt};
      if (cert.pointed) {
        rf.pointed_at = cert.pointed->first;
        rg.pointed_at = cert.pointed->second;
      }
      out.rf.emplace(std::make_pair(v, w), std::move(rf));
      out.rg.emplace(std::make_pair(v, w), std::move(rg));
    }
  }
  out.pointed = cert.pointed;
  return out;
}

ExtractOutcome extract_equivalence_when_stable(const SimilarityCertificate& cert) {
  // Stability is evidenced by a repeat: some level m strictly before the top
  // already equals the top on both sides. A chain truncated mid-growth never
  // repeats and is NotStable.
  const int J = cert.depth();
  ExtractOutcome out;
  for (int m = 1; m < J; ++m) {
    if (cert.fx.levels[static_cast<std::size_t>(m - 1)] ==
            cert.fx.levels[static_cast<std::size_t>(J - 1)] &&
        cert.fy.levels[static_cast<std::size_t>(m - 1)] ==
            cert.fy.levels[static_cast<std::size_t>(J - 1)]) {
      out.status = ExtractOutcome::Status::kStable;
      out.level = m;
      out.cert = EquivalenceCertificate{cert.f[static_cast<std::size_t>(m - 1)],
                                        cert.g[static_cast<std::size_t>(m - 1)],
                                        cert.h[static_cast<std::size_t>(m - 1)],
                                        cert.k[static_cast<std::size_t>(m - 1)], cert.pointed};
      return out;
    }
  }
  return out;
}

SimilarityCertificate complete_restrictions_from_consecutive(SimilarityCertificate cert) {
  const int J = cert.depth();
  auto derive = [&](std::map<std::pair<int, int>, Homotopy>& store, const DigitalImage& dom,
                    const DigitalImage& cod, int v, int w) {
    // Chain f_w|X_v ~ f_{w-1}|X_v ~ ... ~ f_v: each consecutive homotopy is
    // restricted to X_v and retargeted into Y_v.
    Homotopy chain;
    for (int step = w; step > v; --step) {
      auto it = store.find({step - 1, step});
      if (it == store.end()) {
        throw std::invalid_argument("consecutive restriction homotopy (" +
                                    std::to_string(step - 1) + "," + std::to_string(step) +
                                    ") is missing");
      }
      Homotopy piece;
      piece.pointed_at = it->second.pointed_at;
      for (const DigitalMap& layer : it->second.layers) {
        piece.layers.push_back(retarget(restrict(layer, dom), cod));
      }
      chain = chain.layers.empty() ? piece : concat_homotopies(chain, piece);
    }
    store.emplace(std::make_pair(v, w), std::move(chain));
  };

  for (int v = 1; v <= J; ++v) {
    for (int w = v; w <= J; ++w) {
      const DigitalImage& xv = cert.fx.levels[static_cast<std::size_t>(v - 1)];
      const DigitalImage& yv = cert.fy.levels[static_cast<std::size_t>(v - 1)];
      if (!cert.rf.count({v, w})) {
        if (v == w) {
          Homotopy trivial{{cert.f[static_cast<std::size_t>(v - 1)]}, std::nullopt};
          if (cert.pointed) trivial.pointed_at = cert.pointed->first;
          cert.rf.emplace(std::make_pair(v, w), std::move(trivial));
        } else {
          derive(cert.rf, xv, yv, v, w);
        }
      }
      if (!cert.rg.count({v, w})) {
        if (v == w) {
          Homotopy trivial{{cert.g[static_cast<std::size_t>(v - 1)]}, std::nullopt};
          if (cert.pointed) trivial.pointed_at = cert.pointed->second;
          cert.rg.emplace(std::make_pair(v, w), std::move(trivial));
        } else {
          derive(cert.rg, yv, xv, v, w);
        }
      }
    }
  }
  return cert;
}

SimilarityCertificate compose_through_finite(const SimilarityCertificate& cert1,
                                             const SimilarityCertificate& cert2) {
  const int J = std::min(cert1.depth(), cert2.depth());
  if (J < 1) throw std::invalid_argument("compose_through_finite: empty certificate");
  const DigitalImage& b_top1 = cert1.fy.levels[static_cast<std::size_t>(cert1.depth() - 1)];
  const DigitalImage& b_top2 = cert2.fx.levels[static_cast<std::size_t>(cert2.depth() - 1)];
  if (b_top1 != b_top2) {
    throw std::invalid_argument("compose_through_finite: middle chains stabilize to different "
                                "images");
  }
  // Stabilization must be evidenced by a repeat strictly before the top;
  // a chain still growing at depth J carries no witness that it has stopped.
  int i0 = 0;
  for (int i = 1; i < J; ++i) {
    bool stable = true;
    for (int j = i; j <= J; ++j) {
      if (cert1.fy.levels[static_cast<std::size_t>(j - 1)] != b_top1 ||
          cert2.fx.levels[static_cast<std::size_t>(j - 1)] != b_top1) {
        stable = false;
        break;
      }
    }
    if (stable) {
      i0 = i;
      break;
    }
  }
  if (i0 == 0) {
    throw std::invalid_argument("compose_through_finite: middle chains do not stabilize within "
                                "the shared depth");
  }

  std::optional<Point> a1, c1p;
  if (cert1.pointed && cert2.pointed) {
    if (cert1.pointed->second != cert2.pointed->first) {
      throw std::invalid_argument("compose_through_finite: basepoints do not agree in the middle");
    }
    a1 = cert1.pointed->first;
    c1p = cert2.pointed->second;
  }
  auto point_at = [&](Homotopy& hom, const std::optional<Point>& p) {
    hom.pointed_at = p;
  };

  SimilarityCertificate out;
  out.fx.exhausts = cert1.fx.exhausts;
  out.fy.exhausts = cert2.fy.exhausts;
  const int newJ = J - i0 + 1;
  for (int l = 0; l < newJ; ++l) {
    const std::size_t i = static_cast<std::size_t>(i0 + l - 1);
    const DigitalImage& ai = cert1.fx.levels[i];
    const DigitalImage& ci = cert2.fy.levels[i];
    out.fx.levels.push_back(ai);
    out.fy.levels.push_back(ci);
    out.f.push_back(compose(cert2.f[i], cert1.f[i]));
    out.g.push_back(compose(cert1.g[i], cert2.g[i]));

    Homotopy h_step = whisker_homotopy(cert1.g[i], cert2.h[i], cert1.f[i]);
    point_at(h_step, a1);
    Homotopy h1 = cert1.h[i];
    point_at(h1, a1);
    out.h.push_back(concat_homotopies(h_step, h1));

    Homotopy k_step = whisker_homotopy(cert2.f[i], cert1.k[i], cert2.g[i]);
    point_at(k_step, c1p);
    Homotopy k2 = cert2.k[i];
    point_at(k2, c1p);
    out.k.push_back(concat_homotopies(k_step, k2));
  }

  for (int v = 1; v <= newJ; ++v) {
    for (int w = v; w <= newJ; ++w) {
      const std::size_t a = static_cast<std::size_t>(i0 + v - 2);
      const std::size_t b = static_cast<std::size_t>(i0 + w - 2);
      const DigitalImage& av = cert1.fx.levels[a];
      const DigitalImage& cv = cert2.fy.levels[a];
      const DigitalImage& mid = b_top1;

      // f side: route through cert2's restriction first so every layer stays
      // inside the level-v target image.
      DigitalMap f1b_cut = retarget(restrict(cert1.f[b], av), mid);
      Homotopy rf1 = whisker_homotopy(DigitalMap::identity(cv), cert2.rf.at({v + i0 - 1, w + i0 - 1}),
                                      f1b_cut);
      Homotopy rf2 = whisker_homotopy(cert2.f[a], cert1.rf.at({v + i0 - 1, w + i0 - 1}),
                                      DigitalMap::identity(av));
      point_at(rf1, a1);
      point_at(rf2, a1);
      out.rf.emplace(std::make_pair(v, w), concat_homotopies(rf1, rf2));

      DigitalMap g2b_cut = retarget(restrict(cert2.g[b], cv), mid);
      Homotopy rg1 = whisker_homotopy(DigitalMap::identity(av), cert1.rg.at({v + i0 - 1, w + i0 - 1}),
                                      g2b_cut);
      Homotopy rg2 = whisker_homotopy(cert1.g[a], cert2.rg.at({v + i0 - 1, w + i0 - 1}),
                                      DigitalMap::identity(cv));
      point_at(rg1, c1p);
      point_at(rg2, c1p);
      out.rg.emplace(std::make_pair(v, w), concat_homotopies(rg1, rg2));
    }
  }

  if (a1 && c1p) out.pointed = std::make_pair(*a1, *c1p);
  return out;
}

ECPath induced_pi1_map(const SimilarityCertificate& cert, const ECPath& loop) {
  if (!loop.is_loop()) throw std::invalid_argument("induced_pi1_map: not a loop");
  if (!cert.pointed) throw std::invalid_argument("induced_pi1_map: certificate is not pointed");
  if (loop.basepoint() != cert.pointed->first) {
    throw std::invalid_argument("induced_pi1_map: loop is not based at x1");
  }
  for (int j = 0; j < cert.depth(); ++j) {
    const DigitalImage& xj = cert.fx.levels[static_cast<std::size_t>(j)];
    bool inside = xj.contains(loop.tail());
    for (int n = 0; inside && n < loop.stabilization_index(); ++n) {
      inside = xj.contains(loop.value_at(n));
    }
    if (inside) {
      return push_loop(cert.f[static_cast<std::size_t>(j)], rebase_path(loop, xj));
    }
  }
  throw std::invalid_argument("induced_pi1_map: loop exits the depth-" +
                              std::to_string(cert.depth()) + " filtration");
}

}  // namespace digitop
