// Command-line surface of the digital-topology toolkit: build the stock
// image families and their certificates, check any witness kind, run the
// budgeted searches, and convert between homotopy timelines.
//
// Exit codes: 0 pass/found, 1 fail, 2 budget exhausted or not stable,
// 3 usage or input error. Every run prints one JSON report on stdout;
// reports are byte-identical across reruns with the same inputs.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "digitop/constructions.hpp"
#include "digitop/json_io.hpp"
#include "digitop/runtime.hpp"

namespace {

using namespace digitop;

struct Verdict {
  std::string command;
  std::string status;  // pass | fail | not-within-budget | not-stable
  std::optional<std::string> clause;
  std::optional<std::string> witness_path;
  std::optional<SearchStats> budget_used;
  Json extra = Json::object();

  int exit_code() const {
    if (status == "pass") return 0;
    if (status == "fail") return 1;
    return 2;
  }

  int emit() const {
    Json out = Json::object();
    out["command"] = command;
    out["status"] = status;
    out["clause"] = clause ? Json(*clause) : Json(nullptr);
    out["witness_path"] = witness_path ? Json(*witness_path) : Json(nullptr);
    if (budget_used) {
      Json b = Json::object();
      b["visited_states"] = budget_used->visited_states;
      b["expanded_states"] = budget_used->expanded_states;
      b["frontier_exhausted"] = budget_used->frontier_exhausted;
      out["budget_used"] = std::move(b);
    } else {
      out["budget_used"] = nullptr;
    }
    for (auto& [key, value] : extra.items()) out[key] = value;
    std::cout << out.dump(2) << "\n";
    return exit_code();
  }
};

Verdict from_check(const std::string& command, const CheckResult& r) {
  Verdict v;
  v.command = command;
  v.status = r.ok ? "pass" : "fail";
  if (!r.ok) v.clause = r.clause;
  return v;
}

Point parse_point(const std::string& text) {
  std::vector<Coord> coords;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      coords.push_back(std::stoll(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) coords.push_back(std::stoll(cur));
  if (coords.empty()) throw std::invalid_argument("empty point literal");
  return Point(std::move(coords));
}

// The end map an l-homotopy file itself determines, used by `convert` to
// re-verify its own output.
DigitalMap l_homotopy_end(const LHomotopy& F) {
  const DigitalImage& X = F.layers.front().domain();
  std::vector<Index> a(static_cast<std::size_t>(X.size()));
  for (Index i = 0; i < X.size(); ++i) {
    a[static_cast<std::size_t>(i)] =
        F.layers[static_cast<std::size_t>(F.per_point_stab[static_cast<std::size_t>(i)])]
            .value_index(i);
  }
  return DigitalMap(X, F.layers.front().codomain(), std::move(a));
}

int run_build_cube(const std::string& center_text, int dim, Coord radius, int u,
                   const std::string& out, const std::string& emit_lhomotopy,
                   const std::string& emit_similarity, int depth) {
  Point center = center_text.empty() ? Point(std::vector<Coord>(static_cast<std::size_t>(dim), 0))
                                     : parse_point(center_text);
  DigitalImage box = cube(center, radius, u);
  Verdict v;
  v.command = "build cube";
  v.status = "pass";
  v.extra["points"] = box.size();
  if (!out.empty()) {
    write_json_file(out, image_to_json(box, center));
    v.extra["image"] = out;
  }
  if (!emit_lhomotopy.empty()) {
    write_json_file(emit_lhomotopy, l_homotopy_to_json(cube_contraction_lhomotopy(center, radius, u)));
    v.extra["lhomotopy"] = emit_lhomotopy;
  }
  if (!emit_similarity.empty()) {
    write_json_file(emit_similarity,
                    similarity_to_json(cube_similarity_certificate(center, depth, u)));
    v.extra["similarity"] = emit_similarity;
  }
  return v.emit();
}

TreeImage tree_from_file(const std::string& edges_file, const Point& root) {
  Json j = read_json_file(edges_file);
  int dim = static_cast<int>(j.at("dim").get<long>());
  int u = static_cast<int>(j.at("u").get<long>());
  std::vector<Point> pts;
  if (j.contains("points")) {
    for (const auto& p : j["points"]) pts.push_back(Point(p.get<std::vector<Coord>>()));
  }
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      pts.push_back(Point(e[0].get<std::vector<Coord>>()));
      pts.push_back(Point(e[1].get<std::vector<Coord>>()));
    }
  }
  return TreeImage(DigitalImage(pts, AdjacencyKind(dim, u)), root);
}

int run_build_tree(const std::string& edges_file, const std::string& root_text,
                   const std::string& out, const std::string& emit_homotopy,
                   const std::string& emit_lhomotopy, const std::string& emit_similarity,
                   const std::string& emit_long_equivalence, int depth) {
  TreeImage tree = tree_from_file(edges_file, parse_point(root_text));
  Verdict v;
  v.command = "build tree";
  v.status = "pass";
  v.extra["points"] = tree.image().size();
  v.extra["eccentricity"] = tree.eccentricity();
  if (!out.empty()) {
    write_json_file(out, image_to_json(tree.image(), tree.root()));
    v.extra["image"] = out;
  }
  if (!emit_homotopy.empty()) {
    write_json_file(emit_homotopy, homotopy_to_json(tree_contraction_homotopy(tree)));
    v.extra["homotopy"] = emit_homotopy;
  }
  if (!emit_lhomotopy.empty()) {
    write_json_file(emit_lhomotopy, l_homotopy_to_json(tree_contraction_lhomotopy(tree)));
    v.extra["lhomotopy"] = emit_lhomotopy;
  }
  if (!emit_similarity.empty()) {
    write_json_file(emit_similarity, similarity_to_json(tree_similarity_certificate(tree, depth)));
    v.extra["similarity"] = emit_similarity;
  }
  if (!emit_long_equivalence.empty()) {
    write_json_file(emit_long_equivalence, long_equivalence_to_json(tree_long_equivalence(tree)));
    v.extra["long_equivalence"] = emit_long_equivalence;
  }
  return v.emit();
}

int run_build_t_image(Coord radius, const std::string& line_out, const std::string& tee_out,
                      const std::string& emit_similarity, const std::string& emit_long, int depth) {
  TImageWindows w = t_image(radius);
  Verdict v;
  v.command = "build t-image";
  v.status = "pass";
  v.extra["line_points"] = w.line.size();
  v.extra["tee_points"] = w.tee.size();
  if (!line_out.empty()) {
    write_json_file(line_out, image_to_json(w.line, w.basepoint));
    v.extra["line"] = line_out;
  }
  if (!tee_out.empty()) {
    write_json_file(tee_out, image_to_json(w.tee, w.basepoint));
    v.extra["tee"] = tee_out;
  }
  if (!emit_similarity.empty()) {
    write_json_file(emit_similarity, similarity_to_json(t_image_similarity(radius, depth)));
    v.extra["similarity"] = emit_similarity;
  }
  if (!emit_long.empty()) {
    write_json_file(emit_long, long_equivalence_to_json(t_image_long_equivalence(radius)));
    v.extra["long_equivalence"] = emit_long;
  }
  return v.emit();
}

int run_build_wedge(const std::string& kind, const std::string& left_file,
                    const std::string& right_file, const std::string& out) {
  Json left = read_json_file(left_file);
  Json right = read_json_file(right_file);
  Verdict v;
  v.command = "build wedge";
  v.status = "pass";
  if (kind == "similarity") {
    SimilarityCertificate c1 = similarity_from_json(left);
    SimilarityCertificate c2 = similarity_from_json(right);
    WedgeImage wx = wedge(c1.fx.levels.back(), c2.fx.levels.back());
    WedgeImage wy = wedge(c1.fy.levels.back(), c2.fy.levels.back());
    write_json_file(out, similarity_to_json(wedge_similarity_certificates(wx, wy, c1, c2)));
  } else if (kind == "long") {
    LongEquivalenceCertificate c1 = long_equivalence_from_json(left);
    LongEquivalenceCertificate c2 = long_equivalence_from_json(right);
    WedgeImage wx = wedge(c1.f.domain(), c2.f.domain());
    WedgeImage wy = wedge(c1.f.codomain(), c2.f.codomain());
    write_json_file(out, long_equivalence_to_json(wedge_long_certificates(wx, wy, c1, c2)));
  } else if (kind == "real") {
    RealEquivalenceCertificate c1 = real_equivalence_from_json(left);
    RealEquivalenceCertificate c2 = real_equivalence_from_json(right);
    WedgeImage wx = wedge(c1.f.domain(), c2.f.domain());
    WedgeImage wy = wedge(c1.f.codomain(), c2.f.codomain());
    write_json_file(out, real_equivalence_to_json(wedge_real_certificates(wx, wy, c1, c2)));
  } else {
    throw std::invalid_argument("wedge kind must be similarity, long, or real");
  }
  v.witness_path = out;
  return v.emit();
}

int run_build_product(const std::string& kind, const std::vector<std::string>& cert_files,
                      const std::string& out) {
  Verdict v;
  v.command = "build product";
  v.status = "pass";
  if (kind == "plain") {
    std::vector<EquivalenceCertificate> certs;
    for (const auto& f : cert_files) certs.push_back(equivalence_from_json(read_json_file(f)));
    write_json_file(out, equivalence_to_json(product_equivalence(certs)));
  } else if (kind == "similarity") {
    std::vector<SimilarityCertificate> certs;
    for (const auto& f : cert_files) certs.push_back(similarity_from_json(read_json_file(f)));
    write_json_file(out, similarity_to_json(product_similarity(certs)));
  } else if (kind == "long") {
    std::vector<LongEquivalenceCertificate> certs;
    for (const auto& f : cert_files) certs.push_back(long_equivalence_from_json(read_json_file(f)));
    write_json_file(out, long_equivalence_to_json(product_long_equivalence(certs)));
  } else if (kind == "real") {
    std::vector<RealEquivalenceCertificate> certs;
    for (const auto& f : cert_files) certs.push_back(real_equivalence_from_json(read_json_file(f)));
    write_json_file(out, real_equivalence_to_json(product_real_equivalence(certs)));
  } else {
    throw std::invalid_argument("product kind must be plain, similarity, long, or real");
  }
  v.witness_path = out;
  return v.emit();
}

int run_check_continuity(const std::string& map_file, bool with_oracle) {
  DigitalMap f = map_from_json(read_json_file(map_file));
  CheckResult edges = check_continuity_edges_explain(f);
  Verdict v = from_check("check continuity", edges);
  if (with_oracle) {
    try {
      bool oracle = check_continuity_connected(f);
      v.extra["oracle"] = oracle ? "pass" : "fail";
      if (oracle != edges.ok) {
        v.status = "fail";
        v.clause = "edge characterization disagrees with the connected-subset oracle";
      }
    } catch (const budget_error& e) {
      v.status = "not-within-budget";
      v.clause = e.what();
    }
  }
  return v.emit();
}

int run_check_homotopy(const std::string& witness, const std::string& from,
                       const std::string& to) {
  Homotopy F = homotopy_from_json(read_json_file(witness));
  DigitalMap f = map_from_json(read_json_file(from));
  DigitalMap g = map_from_json(read_json_file(to));
  return from_check("check homotopy", verify_homotopy(F, f, g)).emit();
}

int run_check_equivalence(const std::string& cert_file) {
  Json j = read_json_file(cert_file);
  std::string kind = j.value("kind", "plain");
  CheckResult r;
  if (kind == "plain") {
    r = verify_equivalence(equivalence_from_json(j));
  } else if (kind == "long") {
    r = verify_long_equivalence(long_equivalence_from_json(j));
  } else if (kind == "real") {
    r = verify_real_equivalence(real_equivalence_from_json(j));
  } else if (kind == "similarity") {
    r = verify_similarity(similarity_from_json(j));
  } else {
    throw std::invalid_argument("unknown certificate kind \"" + kind + "\"");
  }
  Verdict v = from_check("check equivalence", r);
  v.extra["kind"] = kind;
  return v.emit();
}

int run_check_l_homotopy(const std::string& witness, const std::string& from,
                         const std::string& to) {
  LHomotopy F = l_homotopy_from_json(read_json_file(witness));
  DigitalMap f = map_from_json(read_json_file(from));
  DigitalMap g = map_from_json(read_json_file(to));
  return from_check("check l-homotopy", verify_l_homotopy(F, f, g)).emit();
}

int run_check_long(const std::string& witness, const std::string& from, const std::string& to) {
  LongHomotopy F = long_homotopy_from_json(read_json_file(witness));
  DigitalMap f = map_from_json(read_json_file(from));
  DigitalMap g = map_from_json(read_json_file(to));
  return from_check("check long", verify_long_homotopy(F, f, g)).emit();
}

int run_check_real(const std::string& witness, const std::string& from, const std::string& to) {
  RealHomotopy F = real_homotopy_from_json(read_json_file(witness));
  DigitalMap f = map_from_json(read_json_file(from));
  DigitalMap g = map_from_json(read_json_file(to));
  return from_check("check real", verify_real_homotopy(F, f, g)).emit();
}

int run_check_similarity(const std::string& cert_file, int depth, const std::string& extract) {
  SimilarityCertificate cert = similarity_from_json(read_json_file(cert_file));
  if (depth > 0 && depth < cert.depth()) cert = truncate_similarity(cert, depth);
  Verdict v = from_check("check similarity", verify_similarity(cert));
  v.extra["depth"] = cert.depth();
  v.extra["note"] = "depth-bounded evidence, not a proof for all levels";
  if (v.status == "pass" && !extract.empty()) {
    // Finite chains that stabilize collapse back to a plain equivalence.
    ExtractOutcome out = extract_equivalence_when_stable(cert);
    if (out.stable()) {
      write_json_file(extract, equivalence_to_json(*out.cert));
      v.witness_path = extract;
      v.extra["stable_level"] = out.level;
    } else {
      v.status = "not-stable";
      v.clause = "no level strictly before the top repeats the top images";
    }
  }
  return v.emit();
}

int run_check_ec_homotopy(const std::string& witness, const std::string& left,
                          const std::string& right) {
  ECHomotopy H = ec_homotopy_from_json(read_json_file(witness));
  const DigitalImage& image = H.rows.front().image();
  ECPath f = ec_path_from_json(read_json_file(left), image);
  ECPath g = ec_path_from_json(read_json_file(right), image);
  return from_check("check ec-homotopy", verify_ec_homotopy(H, f, g)).emit();
}

int run_search_homotopy(const std::string& from, const std::string& to, int max_steps,
                        const std::string& witness_out) {
  DigitalMap f = map_from_json(read_json_file(from));
  DigitalMap g = map_from_json(read_json_file(to));
  Verdict v;
  v.command = "search homotopy";
  try {
    SearchOutcome r = search_homotopy(f, g, max_steps);
    v.budget_used = r.stats;
    if (r.found()) {
      v.status = "pass";
      v.extra["steps"] = r.witness->steps();
      if (!witness_out.empty()) {
        CheckResult ok = verify_homotopy(*r.witness, f, g);
        if (!ok.ok) throw std::logic_error("found witness failed verification: " + ok.clause);
        write_json_file(witness_out, homotopy_to_json(*r.witness));
        v.witness_path = witness_out;
      }
    } else {
      v.status = "not-within-budget";
      v.clause = "no homotopy of at most " + std::to_string(max_steps) + " steps exists";
    }
  } catch (const budget_error& e) {
    v.status = "not-within-budget";
    v.clause = e.what();
  }
  return v.emit();
}

int run_search_contraction(const std::string& image_file, int max_steps,
                           const std::string& witness_out) {
  LoadedImage img = image_from_json(read_json_file(image_file));
  Verdict v;
  v.command = "search contraction";
  try {
    SearchOutcome r = search_contraction(img.image, max_steps);
    v.budget_used = r.stats;
    if (r.found()) {
      v.status = "pass";
      v.extra["steps"] = r.witness->steps();
      v.extra["target"] = r.witness->to().value_at_index(0).str();
      if (!witness_out.empty()) {
        write_json_file(witness_out, homotopy_to_json(*r.witness));
        v.witness_path = witness_out;
      }
    } else {
      v.status = "not-within-budget";
      v.clause = "no contraction of at most " + std::to_string(max_steps) + " steps exists";
    }
  } catch (const budget_error& e) {
    v.status = "not-within-budget";
    v.clause = e.what();
  }
  return v.emit();
}

int run_convert(const std::string& from_kind, const std::string& to_kind,
                const std::string& input, const std::string& output) {
  Verdict v;
  v.command = "convert";
  v.extra["direction"] = from_kind + " -> " + to_kind;

  auto refuse = [&](const std::string& why) {
    std::cerr << "convert: " << from_kind << " -> " << to_kind << " refused: " << why << "\n";
    return 3;
  };
  if (to_kind == "l") {
    return refuse("nothing converts into l-homotopies; their symmetry and transitivity are open");
  }
  if (from_kind == "real" && to_kind != "finite") {
    return refuse("real converts to finite only; real -> long is not a proven direction");
  }
  if (from_kind == to_kind) return refuse("identity conversions are not in the lattice");

  Json in = read_json_file(input);
  if (from_kind == "real") {
    RealHomotopy F = real_homotopy_from_json(in);
    Homotopy out = real_to_finite(F);
    CheckResult ok = verify_homotopy(out, F.at0, F.at1);
    if (!ok.ok) {
      v.status = "fail";
      v.clause = "converted witness does not verify: " + ok.clause;
      return v.emit();
    }
    write_json_file(output, homotopy_to_json(out));
    v.status = "pass";
    v.witness_path = output;
    return v.emit();
  }

  LongHomotopy as_long;
  DigitalMap f, g;
  if (from_kind == "finite") {
    Homotopy F = homotopy_from_json(in);
    f = F.from();
    g = F.to();
    as_long = finite_to_long(F);
  } else if (from_kind == "l") {
    LHomotopy F = l_homotopy_from_json(in);
    f = F.layers.front();
    g = l_homotopy_end(F);
    as_long = l_to_long(F);
  } else if (from_kind == "long") {
    as_long = long_homotopy_from_json(in);
    f = as_long.layers.front();
    g = as_long.layers.back();
  } else {
    return refuse("unknown source kind");
  }

  CheckResult ok;
  if (to_kind == "long") {
    ok = verify_long_homotopy(as_long, f, g);
    if (ok.ok) write_json_file(output, long_homotopy_to_json(as_long));
  } else if (to_kind == "finite") {
    Homotopy out = long_to_finite(as_long);
    ok = verify_homotopy(out, f, g);
    if (ok.ok) write_json_file(output, homotopy_to_json(out));
  } else if (to_kind == "real") {
    RealHomotopy out = long_to_real(as_long);
    ok = verify_real_homotopy(out, f, g);
    if (ok.ok) write_json_file(output, real_homotopy_to_json(out));
  } else {
    return refuse("unknown target kind");
  }
  if (!ok.ok) {
    v.status = "fail";
    v.clause = "converted witness does not verify: " + ok.clause;
    return v.emit();
  }
  v.status = "pass";
  v.witness_path = output;
  return v.emit();
}

int run_pi1_check_equal(const std::string& image_file, const std::string& left,
                        const std::string& right, int rows, int horizon,
                        const std::string& witness_out) {
  LoadedImage img = image_from_json(read_json_file(image_file));
  ECPath f = ec_path_from_json(read_json_file(left), img.image);
  ECPath g = ec_path_from_json(read_json_file(right), img.image);
  ECBudget budget{rows, horizon > 0 ? horizon : 2 * f.stabilization_index() + 4};
  Verdict v;
  v.command = "pi1 check-equal";
  v.extra["rows"] = budget.max_rows;
  v.extra["horizon"] = budget.horizon;
  try {
    LoopsEqualOutcome r = loops_equal_within_budget(f, g, budget);
    v.budget_used = r.stats;
    if (r.equal()) {
      v.status = "pass";
      if (!witness_out.empty()) {
        CheckResult ok = verify_ec_homotopy(*r.witness, f, g);
        if (!ok.ok) throw std::logic_error("emitted witness failed verification: " + ok.clause);
        write_json_file(witness_out, ec_homotopy_to_json(*r.witness));
        v.witness_path = witness_out;
      }
    } else {
      v.status = "not-within-budget";
      v.clause = "no EC homotopy within " + std::to_string(budget.max_rows) +
                 " rows and horizon " + std::to_string(budget.horizon) +
                 "; loop inequality is never claimed";
    }
  } catch (const budget_error& e) {
    v.status = "not-within-budget";
    v.clause = e.what();
  }
  return v.emit();
}

int run_pi1_push(const std::string& map_file, const std::string& loop_file,
                 const std::string& out) {
  DigitalMap h = map_from_json(read_json_file(map_file));
  ECPath loop = ec_path_from_json(read_json_file(loop_file), h.domain());
  ECPath pushed = push_loop(h, loop);
  Verdict v;
  v.command = "pi1 push";
  v.status = "pass";
  if (!out.empty()) {
    write_json_file(out, ec_path_to_json(pushed));
    v.witness_path = out;
  }
  v.extra["stabilization_index"] = pushed.stabilization_index();
  return v.emit();
}

int run_pi1_induced(const std::string& cert_file, const std::string& loop_file,
                    const std::string& out) {
  SimilarityCertificate cert = similarity_from_json(read_json_file(cert_file));
  ECPath loop = ec_path_from_json(read_json_file(loop_file), cert.fx.levels.back());
  ECPath pushed = induced_pi1_map(cert, loop);
  Verdict v;
  v.command = "pi1 induced";
  v.status = "pass";
  if (!out.empty()) {
    write_json_file(out, ec_path_to_json(pushed));
    v.witness_path = out;
  }
  v.extra["stabilization_index"] = pushed.stabilization_index();
  return v.emit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digitop: exact verification and witness search for digital homotopy"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "construct stock images and certificates");
  build->require_subcommand(1);

  auto* bc = build->add_subcommand("cube", "lattice box with its contraction");
  int bc_dim = 2, bc_u = 1, bc_depth = 3;
  Coord bc_radius = 1;
  std::string bc_center, bc_out, bc_lh, bc_sim;
  bc->add_option("--dim", bc_dim, "ambient dimension")->check(CLI::PositiveNumber);
  bc->add_option("--radius", bc_radius)->check(CLI::NonNegativeNumber);
  bc->add_option("--u", bc_u, "adjacency parameter");
  bc->add_option("--center", bc_center, "comma-separated coordinates, default origin");
  bc->add_option("-o,--out", bc_out, "image JSON output");
  bc->add_option("--emit-lhomotopy", bc_lh, "write the coordinate-cycling contraction");
  bc->add_option("--emit-similarity", bc_sim, "write the point-vs-windows certificate");
  bc->add_option("--depth", bc_depth, "similarity certificate depth");

  auto* bt = build->add_subcommand("tree", "tree image with its parent contraction");
  std::string bt_edges, bt_root, bt_out, bt_h, bt_lh, bt_sim, bt_long;
  int bt_depth = 3;
  bt->add_option("--edges", bt_edges, "JSON with dim, u, edges (and optional points)")->required();
  bt->add_option("--root", bt_root, "root point, comma-separated")->required();
  bt->add_option("-o,--out", bt_out);
  bt->add_option("--emit-homotopy", bt_h);
  bt->add_option("--emit-lhomotopy", bt_lh);
  bt->add_option("--emit-similarity", bt_sim);
  bt->add_option("--emit-long-equivalence", bt_long);
  bt->add_option("--depth", bt_depth);

  auto* bti = build->add_subcommand("t-image", "line and T windows with their certificates");
  Coord bti_radius = 3;
  int bti_depth = 3;
  std::string bti_line, bti_tee, bti_sim, bti_long;
  bti->add_option("--radius", bti_radius)->check(CLI::NonNegativeNumber);
  bti->add_option("-o,--line-out", bti_line);
  bti->add_option("--tee-out", bti_tee);
  bti->add_option("--emit-similarity", bti_sim);
  bti->add_option("--emit-long-equivalence", bti_long);
  bti->add_option("--depth", bti_depth);

  auto* bw = build->add_subcommand("wedge", "glue two pointed certificates at their basepoints");
  std::string bw_kind, bw_left, bw_right, bw_out;
  bw->add_option("--kind", bw_kind, "similarity | long | real")->required();
  bw->add_option("--left", bw_left, "left certificate JSON")->required();
  bw->add_option("--right", bw_right, "right certificate JSON")->required();
  bw->add_option("-o,--out", bw_out)->required();

  auto* bp = build->add_subcommand("product", "componentwise certificate product");
  std::string bp_kind, bp_out;
  std::vector<std::string> bp_certs;
  bp->add_option("--kind", bp_kind, "plain | similarity | long | real")->required();
  bp->add_option("--certs", bp_certs, "factor certificate files")->required()->expected(-1);
  bp->add_option("-o,--out", bp_out)->required();

  auto* check = app.add_subcommand("check", "verify a witness or certificate");
  check->require_subcommand(1);

  auto* cc = check->add_subcommand("continuity", "edge characterization, optional subset oracle");
  std::string cc_map;
  bool cc_oracle = false;
  cc->add_option("--map", cc_map)->required();
  cc->add_flag("--oracle", cc_oracle, "also run the connected-subset oracle");

  auto* ch = check->add_subcommand("homotopy");
  std::string ch_w, ch_f, ch_g;
  ch->add_option("--witness", ch_w)->required();
  ch->add_option("--from", ch_f)->required();
  ch->add_option("--to", ch_g)->required();

  auto* ce = check->add_subcommand("equivalence", "plain, long, real, or similarity by kind");
  std::string ce_cert;
  ce->add_option("--cert", ce_cert)->required();

  auto* cl = check->add_subcommand("l-homotopy");
  std::string cl_w, cl_f, cl_g;
  cl->add_option("--witness", cl_w)->required();
  cl->add_option("--from", cl_f)->required();
  cl->add_option("--to", cl_g)->required();

  auto* cg = check->add_subcommand("long");
  std::string cg_w, cg_f, cg_g;
  cg->add_option("--witness", cg_w)->required();
  cg->add_option("--from", cg_f)->required();
  cg->add_option("--to", cg_g)->required();

  auto* cr = check->add_subcommand("real");
  std::string cr_w, cr_f, cr_g;
  cr->add_option("--witness", cr_w)->required();
  cr->add_option("--from", cr_f)->required();
  cr->add_option("--to", cr_g)->required();

  auto* cs = check->add_subcommand("similarity");
  std::string cs_cert, cs_extract;
  int cs_depth = 0;
  cs->add_option("--cert", cs_cert)->required();
  cs->add_option("--depth", cs_depth, "verify a truncation at this depth");
  cs->add_option("--extract", cs_extract,
                 "write the stable level as a plain equivalence; not-stable otherwise");

  auto* cec = check->add_subcommand("ec-homotopy");
  std::string cec_w, cec_l, cec_r;
  cec->add_option("--witness", cec_w)->required();
  cec->add_option("--left", cec_l)->required();
  cec->add_option("--right", cec_r)->required();

  auto* search = app.add_subcommand("search", "budgeted witness search");
  search->require_subcommand(1);

  auto* sh = search->add_subcommand("homotopy");
  std::string sh_f, sh_g, sh_out;
  int sh_steps = 0;
  sh->add_option("--from", sh_f)->required();
  sh->add_option("--to", sh_g)->required();
  sh->add_option("--max-steps", sh_steps)->required();
  sh->add_option("--witness-out", sh_out);

  auto* sc = search->add_subcommand("contraction");
  std::string sc_img, sc_out;
  int sc_steps = 0;
  sc->add_option("--image", sc_img)->required();
  sc->add_option("--max-steps", sc_steps)->required();
  sc->add_option("--witness-out", sc_out);

  auto* conv = app.add_subcommand("convert", "move a witness along a proven direction");
  std::string cv_from, cv_to, cv_in, cv_out;
  conv->add_option("--from-kind", cv_from, "finite | l | long | real")->required();
  conv->add_option("--to-kind", cv_to, "finite | long | real")->required();
  conv->add_option("--input", cv_in)->required();
  conv->add_option("--output", cv_out)->required();

  auto* pi1 = app.add_subcommand("pi1", "loop class operations");
  pi1->require_subcommand(1);

  auto* pe = pi1->add_subcommand("check-equal", "budgeted EC loop class equality");
  std::string pe_img, pe_l, pe_r, pe_out;
  int pe_rows = 8, pe_horizon = 0;
  pe->add_option("--image", pe_img)->required();
  pe->add_option("--left", pe_l)->required();
  pe->add_option("--right", pe_r)->required();
  pe->add_option("--rows", pe_rows);
  pe->add_option("--horizon", pe_horizon, "default 2*N_left + 4");
  pe->add_option("--witness-out", pe_out);

  auto* pp = pi1->add_subcommand("push", "compose a loop with a continuous map");
  std::string pp_map, pp_loop, pp_out;
  pp->add_option("--map", pp_map)->required();
  pp->add_option("--loop", pp_loop)->required();
  pp->add_option("-o,--out", pp_out);

  auto* pind = pi1->add_subcommand("induced", "push a loop through a similarity certificate");
  std::string pi_cert, pi_loop, pi_out;
  pind->add_option("--cert", pi_cert)->required();
  pind->add_option("--loop", pi_loop)->required();
  pind->add_option("-o,--out", pi_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bc->parsed()) {
      return run_build_cube(bc_center, bc_dim, bc_radius, bc_u, bc_out, bc_lh, bc_sim, bc_depth);
    }
    if (bt->parsed()) {
      return run_build_tree(bt_edges, bt_root, bt_out, bt_h, bt_lh, bt_sim, bt_long, bt_depth);
    }
    if (bti->parsed()) {
      return run_build_t_image(bti_radius, bti_line, bti_tee, bti_sim, bti_long, bti_depth);
    }
    if (bw->parsed()) return run_build_wedge(bw_kind, bw_left, bw_right, bw_out);
    if (bp->parsed()) return run_build_product(bp_kind, bp_certs, bp_out);
    if (cc->parsed()) return run_check_continuity(cc_map, cc_oracle);
    if (ch->parsed()) return run_check_homotopy(ch_w, ch_f, ch_g);
    if (ce->parsed()) return run_check_equivalence(ce_cert);
    if (cl->parsed()) return run_check_l_homotopy(cl_w, cl_f, cl_g);
    if (cg->parsed()) return run_check_long(cg_w, cg_f, cg_g);
    if (cr->parsed()) return run_check_real(cr_w, cr_f, cr_g);
    if (cs->parsed()) return run_check_similarity(cs_cert, cs_depth, cs_extract);
    if (cec->parsed()) return run_check_ec_homotopy(cec_w, cec_l, cec_r);
    if (sh->parsed()) return run_search_homotopy(sh_f, sh_g, sh_steps, sh_out);
    if (sc->parsed()) return run_search_contraction(sc_img, sc_steps, sc_out);
    if (conv->parsed()) return run_convert(cv_from, cv_to, cv_in, cv_out);
    if (pe->parsed()) return run_pi1_check_equal(pe_img, pe_l, pe_r, pe_rows, pe_horizon, pe_out);
    if (pp->parsed()) return run_pi1_push(pp_map, pp_loop, pp_out);
    if (pind->parsed()) return run_pi1_induced(pi_cert, pi_loop, pi_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  std::cerr << "no subcommand selected\n";
  return 3;
}
