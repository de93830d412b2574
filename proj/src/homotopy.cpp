#include "digitop/homotopy.hpp"

#include <algorithm>
#include <stdexcept>

#include "digitop/runtime.hpp"

namespace digitop {

namespace {

CheckResult check_layer_shapes(const Homotopy& F) {
  if (F.layers.empty()) return CheckResult::fail("homotopy has no layers");
  const DigitalImage& X = F.layers.front().domain();
  const DigitalImage& Y = F.layers.front().codomain();
  for (std::size_t t = 1; t < F.layers.size(); ++t) {
    if (F.layers[t].domain() != X) {
      return CheckResult::fail("layer " + std::to_string(t) + " domain mismatch");
    }
    if (F.layers[t].codomain() != Y) {
      return CheckResult::fail("layer " + std::to_string(t) + " codomain mismatch");
    }
  }
  return CheckResult::pass();
}

// Per-layer continuity plus per-point track adjacency, scanned in canonical
// order. The parallel kernel locates the first failing task index and the
// clause is recomputed serially there.
CheckResult check_homotopy_body_serial(const Homotopy& F) {
  const DigitalImage& Y = F.layers.front().codomain();
  for (std::size_t t = 0; t < F.layers.size(); ++t) {
    CheckResult c = check_continuity_edges_serial(F.layers[t]);
    if (!c.ok) return CheckResult::fail("layer " + std::to_string(t) + " not continuous: " + c.clause);
  }
  const DigitalImage& X = F.layers.front().domain();
  for (Index i = 0; i < X.size(); ++i) {
    for (std::size_t t = 0; t + 1 < F.layers.size(); ++t) {
      Index a = F.layers[t].value_index(i);
      Index b = F.layers[t + 1].value_index(i);
      if (a != b && !adjacent(Y.point(a), Y.point(b), Y.kind())) {
        return CheckResult::fail("track of " + X.point(i).str() + " jumps between layers " +
                                 std::to_string(t) + " and " + std::to_string(t + 1) + ": " +
                                 Y.point(a).str() + " -> " + Y.point(b).str());
      }
    }
  }
  return CheckResult::pass();
}

CheckResult check_homotopy_body(const Homotopy& F) {
  const DigitalImage& X = F.layers.front().domain();
  const long layers = static_cast<long>(F.layers.size());
  const long tasks = layers + static_cast<long>(X.size());
  if (!parallel_enabled() || tasks < 64) return check_homotopy_body_serial(F);

  const DigitalImage& Y = F.layers.front().codomain();
  long first_bad = tasks;
#pragma omp parallel for schedule(dynamic, 4) reduction(min : first_bad)
  for (long task = 0; task < tasks; ++task) {
    bool ok = true;
    if (task < layers) {
      ok = check_continuity_edges_serial(F.layers[static_cast<std::size_t>(task)]).ok;
    } else {
      Index i = static_cast<Index>(task - layers);
      for (std::size_t t = 0; ok && t + 1 < F.layers.size(); ++t) {
        Index a = F.layers[t].value_index(i);
        Index b = F.layers[t + 1].value_index(i);
        ok = (a == b) || adjacent(Y.point(a), Y.point(b), Y.kind());
      }
    }
    if (!ok) first_bad = std::min(first_bad, task);
  }
  if (first_bad == tasks) return CheckResult::pass();
  if (first_bad < layers) {
    CheckResult c = check_continuity_edges_serial(F.layers[static_cast<std::size_t>(first_bad)]);
    return CheckResult::fail("layer " + std::to_string(first_bad) + " not continuous: " + c.clause);
  }
  Index i = static_cast<Index>(first_bad - layers);
  for (std::size_t t = 0; t + 1 < F.layers.size(); ++t) {
    Index a = F.layers[t].value_index(i);
    Index b = F.layers[t + 1].value_index(i);
    if (a != b && !adjacent(Y.point(a), Y.point(b), Y.kind())) {
      return CheckResult::fail("track of " + X.point(i).str() + " jumps between layers " +
                               std::to_string(t) + " and " + std::to_string(t + 1) + ": " +
                               Y.point(a).str() + " -> " + Y.point(b).str());
    }
  }
  return CheckResult::fail("homotopy body check raced; unreachable");
}

CheckResult check_pointed(const Homotopy& F) {
  if (!F.pointed_at) return CheckResult::pass();
  const DigitalImage& X = F.layers.front().domain();
  auto xi = X.index_of(*F.pointed_at);
  if (!xi) return CheckResult::fail("pointed_at " + F.pointed_at->str() + " not in the domain");
  Index held = F.layers.front().value_index(*xi);
  for (std::size_t t = 1; t < F.layers.size(); ++t) {
    if (F.layers[t].value_index(*xi) != held) {
      return CheckResult::fail("layer " + std::to_string(t) + " moves the held point " +
                               F.pointed_at->str());
    }
  }
  return CheckResult::pass();
}

CheckResult verify_homotopy_impl(const Homotopy& F, const DigitalMap& f, const DigitalMap& g,
                                 bool serial) {
  CheckResult shape = check_layer_shapes(F);
  if (!shape.ok) return shape;
  if (F.layers.front() != f) return CheckResult::fail("layer 0 differs from the stated start map");
  if (F.layers.back() != g) return CheckResult::fail("final layer differs from the stated end map");
  if (F.layers.size() == 1 && f != g) {
    return CheckResult::fail("m = 0 homotopy between distinct maps");
  }
  CheckResult body = serial ? check_homotopy_body_serial(F) : check_homotopy_body(F);
  if (!body.ok) return body;
  return check_pointed(F);
}

}  // namespace

CheckResult verify_homotopy(const Homotopy& F, const DigitalMap& f, const DigitalMap& g) {
  return verify_homotopy_impl(F, f, g, false);
}

CheckResult verify_homotopy_serial(const Homotopy& F, const DigitalMap& f, const DigitalMap& g) {
  return verify_homotopy_impl(F, f, g, true);
}

Homotopy reverse_homotopy(const Homotopy& F) {
  Homotopy out;
  out.layers.assign(F.layers.rbegin(), F.layers.rend());
  out.pointed_at = F.pointed_at;
  return out;
}

Homotopy concat_homotopies(const Homotopy& F, const Homotopy& G) {
  if (F.layers.empty() || G.layers.empty()) {
    throw std::invalid_argument("concat of an empty homotopy");
  }
  if (F.layers.back() != G.layers.front()) {
    throw std::invalid_argument("concat: F ends at a different map than G starts");
  }
  Homotopy out;
  out.layers = F.layers;
  out.layers.insert(out.layers.end(), G.layers.begin() + 1, G.layers.end());
  if (F.pointed_at && G.pointed_at && *F.pointed_at == *G.pointed_at) {
    out.pointed_at = F.pointed_at;
  }
  return out;
}

Homotopy whisker_homotopy(const DigitalMap& post, const Homotopy& F, const DigitalMap& pre) {
  Homotopy out;
  out.layers.reserve(F.layers.size());
  for (const DigitalMap& layer : F.layers) {
    out.layers.push_back(compose(post, compose(layer, pre)));
  }
  // The held point of the output lives in pre's domain and cannot be derived
  // from F alone; certificate assembly sets it where pointedness is tracked.
  return out;
}

Homotopy pad_homotopy(const Homotopy& F, int steps) {
  if (steps < F.steps()) throw std::invalid_argument("pad_homotopy cannot shorten a homotopy");
  Homotopy out = F;
  while (out.steps() < steps) out.layers.push_back(out.layers.back());
  return out;
}

namespace {

StepSpace map_step_space(const DigitalImage& domain, const DigitalImage& codomain) {
  std::vector<std::pair<int, int>> edges;
  for (Index i = 0; i < domain.size(); ++i) {
    for (Index nb : domain.neighbor_indices(i)) {
      if (nb > i) edges.emplace_back(i, nb);
    }
  }
  return StepSpace(codomain, domain.size(), std::move(edges));
}

Homotopy path_to_homotopy(const std::vector<SearchState>& path, const DigitalImage& domain,
                          const DigitalImage& codomain) {
  Homotopy out;
  out.layers.reserve(path.size());
  for (const SearchState& s : path) out.layers.emplace_back(domain, codomain, s);
  return out;
}

}  // namespace

SearchOutcome search_homotopy(const DigitalMap& f, const DigitalMap& g, int max_steps) {
  if (f.domain() != g.domain() || f.codomain() != g.codomain()) {
    throw std::invalid_argument("search_homotopy requires equal domains and codomains");
  }
  if (!check_continuity_edges(f) || !check_continuity_edges(g)) {
    throw std::invalid_argument("search_homotopy requires continuous endpoints");
  }
  StepSpace space = map_step_space(f.domain(), f.codomain());
  PathSearchResult r =
      bidirectional_path_search(space, f.assignment(), g.assignment(), max_steps, state_cap());
  SearchOutcome out;
  out.stats = r.stats;
  if (r.found) {
    out.status = SearchOutcome::Status::kFound;
    out.witness = path_to_homotopy(r.path, f.domain(), f.codomain());
  }
  return out;
}

SearchOutcome search_contraction(const DigitalImage& X, int max_steps) {
  if (!X.connected()) throw std::invalid_argument("search_contraction requires a connected image");
  StepSpace space = map_step_space(X, X);
  DigitalMap id = DigitalMap::identity(X);

  SearchOutcome best;
  for (Index p = 0; p < X.size(); ++p) {
    SearchState target(static_cast<std::size_t>(X.size()), p);
    PathSearchResult r =
        bidirectional_path_search(space, id.assignment(), target, max_steps, state_cap());
    best.stats.visited_states += r.stats.visited_states;
    best.stats.expanded_states += r.stats.expanded_states;
    if (r.found) {
      int len = static_cast<int>(r.path.size()) - 1;
      if (!best.found() || len < best.witness->steps()) {
        best.status = SearchOutcome::Status::kFound;
        best.witness = path_to_homotopy(r.path, X, X);
      }
    }
  }
  return best;
}

CheckResult verify_equivalence(const EquivalenceCertificate& cert) {
  const DigitalImage& X = cert.f.domain();
  const DigitalImage& Y = cert.f.codomain();
  if (cert.g.domain() != Y || cert.g.codomain() != X) {
    return CheckResult::fail("g is not a map codomain(f) -> domain(f)");
  }
  CheckResult cf = check_continuity_edges_explain(cert.f);
  if (!cf.ok) return CheckResult::fail("f not continuous: " + cf.clause);
  CheckResult cg = check_continuity_edges_explain(cert.g);
  if (!cg.ok) return CheckResult::fail("g not continuous: " + cg.clause);

  DigitalMap gf = compose(cert.g, cert.f);
  DigitalMap fg = compose(cert.f, cert.g);
  CheckResult h = verify_homotopy(cert.H, gf, DigitalMap::identity(X));
  if (!h.ok) return CheckResult::fail("H endpoints: " + h.clause);
  CheckResult k = verify_homotopy(cert.K, fg, DigitalMap::identity(Y));
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

}  // namespace digitop
