#include "digitop/json_io.hpp"

#include <fstream>

namespace digitop {

namespace {

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(path, std::string("missing key \"") + key + "\"");
  return *it;
}

long require_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw schema_error(path, "expected an integer");
  return j.get<long>();
}

Point point_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw schema_error(path, "expected a nonempty coordinate array");
  std::vector<Coord> coords;
  for (std::size_t i = 0; i < j.size(); ++i) {
    coords.push_back(require_int(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return Point(std::move(coords));
}

Json point_to_json(const Point& p) {
  Json out = Json::array();
  for (Coord c : p.coords) out.push_back(c);
  return out;
}

std::optional<Point> optional_point(const Json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return point_from_json(*it, path + "." + key);
}

std::optional<std::pair<Point, Point>> optional_pointing(const Json& j, const std::string& path) {
  auto it = j.find("pointed");
  if (it == j.end() || it->is_null()) return std::nullopt;
  return std::make_pair(point_from_json(require(*it, "x", path + ".pointed"), path + ".pointed.x"),
                        point_from_json(require(*it, "y", path + ".pointed"), path + ".pointed.y"));
}

Json pointing_to_json(const std::optional<std::pair<Point, Point>>& p) {
  if (!p) return nullptr;
  Json out = Json::object();
  out["x"] = point_to_json(p->first);
  out["y"] = point_to_json(p->second);
  return out;
}

}  // namespace

Json image_to_json(const DigitalImage& img, const std::optional<Point>& basepoint) {
  Json out = Json::object();
  out["dim"] = img.kind().ambient_dim;
  out["u"] = img.kind().u;
  Json pts = Json::array();
  for (const Point& p : img.points()) pts.push_back(point_to_json(p));
  out["points"] = std::move(pts);
  if (basepoint) out["basepoint"] = point_to_json(*basepoint);
  return out;
}

LoadedImage image_from_json(const Json& j, const std::string& path) {
  int dim = static_cast<int>(require_int(require(j, "dim", path), path + ".dim"));
  int u = static_cast<int>(require_int(require(j, "u", path), path + ".u"));
  if (dim < 1) throw schema_error(path + ".dim", "dimension must be positive");
  if (u < 1 || u > dim) throw schema_error(path + ".u", "adjacency requires 1 <= u <= dim");
  const Json& pts = require(j, "points", path);
  if (!pts.is_array()) throw schema_error(path + ".points", "expected an array");
  std::vector<Point> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string ppath = path + ".points[" + std::to_string(i) + "]";
    Point p = point_from_json(pts[i], ppath);
    if (p.dim() != dim) throw schema_error(ppath, "coordinate count differs from dim");
    points.push_back(std::move(p));
  }
  // Duplicates are schema violations, not silently merged.
  {
    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t k = i + 1; k < points.size(); ++k) {
          if (points[i] == points[k]) {
            throw schema_error(path + ".points[" + std::to_string(k) + "]",
                               "duplicates points[" + std::to_string(i) + "]");
          }
        }
      }
    }
  }
  LoadedImage out{DigitalImage(std::move(points), AdjacencyKind(dim, u)),
                  optional_point(j, "basepoint", path)};
  if (out.basepoint && !out.image.contains(*out.basepoint)) {
    throw schema_error(path + ".basepoint", "basepoint is not one of the points");
  }
  return out;
}

Json map_to_json(const DigitalMap& m) {
  Json out = Json::object();
  out["domain"] = image_to_json(m.domain());
  out["codomain"] = image_to_json(m.codomain());
  Json pairs = Json::array();
  for (Index i = 0; i < m.domain().size(); ++i) {
    Json pair = Json::array();
    pair.push_back(point_to_json(m.domain().point(i)));
    pair.push_back(point_to_json(m.value_at_index(i)));
    pairs.push_back(std::move(pair));
  }
  out["pairs"] = std::move(pairs);
  return out;
}

DigitalMap map_from_json(const Json& j, const std::string& path) {
  LoadedImage dom = image_from_json(require(j, "domain", path), path + ".domain");
  LoadedImage cod = image_from_json(require(j, "codomain", path), path + ".codomain");
  const Json& pairs = require(j, "pairs", path);
  if (!pairs.is_array()) throw schema_error(path + ".pairs", "expected an array");
  std::vector<std::pair<Point, Point>> assignment;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string ppath = path + ".pairs[" + std::to_string(i) + "]";
    if (!pairs[i].is_array() || pairs[i].size() != 2) {
      throw schema_error(ppath, "expected a [domain point, value point] pair");
    }
    assignment.emplace_back(point_from_json(pairs[i][0], ppath + "[0]"),
                            point_from_json(pairs[i][1], ppath + "[1]"));
  }
  try {
    return DigitalMap(dom.image, cod.image, assignment);
  } catch (const std::invalid_argument& e) {
    throw schema_error(path + ".pairs", e.what());
  }
}

Json homotopy_to_json(const Homotopy& F) {
  Json out = Json::object();
  Json layers = Json::array();
  for (const DigitalMap& m : F.layers) layers.push_back(map_to_json(m));
  out["layers"] = std::move(layers);
  if (F.pointed_at) out["pointed_at"] = point_to_json(*F.pointed_at);
  return out;
}

Homotopy homotopy_from_json(const Json& j, const std::string& path) {
  const Json& layers = require(j, "layers", path);
  if (!layers.is_array() || layers.empty()) {
    throw schema_error(path + ".layers", "expected a nonempty array");
  }
  Homotopy out;
  for (std::size_t t = 0; t < layers.size(); ++t) {
    out.layers.push_back(map_from_json(layers[t], path + ".layers[" + std::to_string(t) + "]"));
  }
  out.pointed_at = optional_point(j, "pointed_at", path);
  return out;
}

namespace {

// stab/bounds entries: [[coords...], n]
std::vector<int> per_point_from_json(const Json& j, const DigitalImage& domain,
                                     const std::string& path) {
  if (!j.is_array()) throw schema_error(path, "expected an array");
  std::vector<int> out(static_cast<std::size_t>(domain.size()), -1);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string epath = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) {
      throw schema_error(epath, "expected a [point, index] pair");
    }
    Point p = point_from_json(j[i][0], epath + "[0]");
    auto idx = domain.index_of(p);
    if (!idx) throw schema_error(epath + "[0]", "point not in the domain");
    out[static_cast<std::size_t>(*idx)] =
        static_cast<int>(require_int(j[i][1], epath + "[1]"));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0) {
      throw schema_error(path, "no entry for domain point " +
                                   domain.point(static_cast<Index>(i)).str());
    }
  }
  return out;
}

Json per_point_to_json(const std::vector<int>& values, const DigitalImage& domain) {
  Json out = Json::array();
  for (Index i = 0; i < domain.size(); ++i) {
    Json entry = Json::array();
    entry.push_back(point_to_json(domain.point(i)));
    entry.push_back(values[static_cast<std::size_t>(i)]);
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

Json l_homotopy_to_json(const LHomotopy& F) {
  Json out = Json::object();
  Json layers = Json::array();
  for (const DigitalMap& m : F.layers) layers.push_back(map_to_json(m));
  out["layers"] = std::move(layers);
  out["stab"] = per_point_to_json(F.per_point_stab, F.layers.front().domain());
  if (F.pointed_at) out["pointed_at"] = point_to_json(*F.pointed_at);
  return out;
}

LHomotopy l_homotopy_from_json(const Json& j, const std::string& path) {
  const Json& layers = require(j, "layers", path);
  if (!layers.is_array() || layers.empty()) {
    throw schema_error(path + ".layers", "expected a nonempty array");
  }
  LHomotopy out;
  for (std::size_t t = 0; t < layers.size(); ++t) {
    out.layers.push_back(map_from_json(layers[t], path + ".layers[" + std::to_string(t) + "]"));
  }
  out.per_point_stab =
      per_point_from_json(require(j, "stab", path), out.layers.front().domain(), path + ".stab");
  out.pointed_at = optional_point(j, "pointed_at", path);
  return out;
}

Json long_homotopy_to_json(const LongHomotopy& F) {
  Json out = Json::object();
  out["t_min"] = F.t_min;
  Json layers = Json::array();
  for (const DigitalMap& m : F.layers) layers.push_back(map_to_json(m));
  out["layers"] = std::move(layers);
  out["bounds"] = per_point_to_json(F.per_point_bound, F.layers.front().domain());
  if (F.pointed_at) out["pointed_at"] = point_to_json(*F.pointed_at);
  return out;
}

LongHomotopy long_homotopy_from_json(const Json& j, const std::string& path) {
  const Json& layers = require(j, "layers", path);
  if (!layers.is_array() || layers.empty()) {
    throw schema_error(path + ".layers", "expected a nonempty array");
  }
  LongHomotopy out;
  out.t_min = static_cast<int>(require_int(require(j, "t_min", path), path + ".t_min"));
  for (std::size_t t = 0; t < layers.size(); ++t) {
    out.layers.push_back(map_from_json(layers[t], path + ".layers[" + std::to_string(t) + "]"));
  }
  if (out.t_min != -(static_cast<int>(layers.size()) - 1) / 2 || layers.size() % 2 == 0) {
    throw schema_error(path + ".t_min", "window must be symmetric: t_min = -(layers-1)/2");
  }
  out.per_point_bound =
      per_point_from_json(require(j, "bounds", path), out.layers.front().domain(), path + ".bounds");
  out.pointed_at = optional_point(j, "pointed_at", path);
  return out;
}

Json real_homotopy_to_json(const RealHomotopy& F) {
  Json out = Json::object();
  Json jumps = Json::array();
  for (const Rational& q : F.jumps) jumps.push_back(q.str());
  out["jumps"] = std::move(jumps);
  out["at0"] = map_to_json(F.at0);
  Json opens = Json::array();
  for (const DigitalMap& m : F.open_layers) opens.push_back(map_to_json(m));
  out["open"] = std::move(opens);
  Json atjump = Json::array();
  for (const DigitalMap& m : F.jump_layers) atjump.push_back(map_to_json(m));
  out["atjump"] = std::move(atjump);
  out["at1"] = map_to_json(F.at1);
  if (F.pointed_at) out["pointed_at"] = point_to_json(*F.pointed_at);
  return out;
}

RealHomotopy real_homotopy_from_json(const Json& j, const std::string& path) {
  RealHomotopy out;
  const Json& jumps = require(j, "jumps", path);
  if (!jumps.is_array()) throw schema_error(path + ".jumps", "expected an array");
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    const std::string qpath = path + ".jumps[" + std::to_string(i) + "]";
    if (!jumps[i].is_string()) throw schema_error(qpath, "expected a \"num/den\" string");
    try {
      out.jumps.push_back(Rational::parse(jumps[i].get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw schema_error(qpath, e.what());
    }
  }
  out.at0 = map_from_json(require(j, "at0", path), path + ".at0");
  out.at1 = map_from_json(require(j, "at1", path), path + ".at1");
  const Json& opens = require(j, "open", path);
  if (!opens.is_array() || opens.size() != out.jumps.size() + 1) {
    throw schema_error(path + ".open", "expected jumps+1 open layers");
  }
  for (std::size_t i = 0; i < opens.size(); ++i) {
    out.open_layers.push_back(map_from_json(opens[i], path + ".open[" + std::to_string(i) + "]"));
  }
  const Json& atjump = require(j, "atjump", path);
  if (!atjump.is_array() || atjump.size() != out.jumps.size()) {
    throw schema_error(path + ".atjump", "expected one layer per jump");
  }
  for (std::size_t i = 0; i < atjump.size(); ++i) {
    out.jump_layers.push_back(
        map_from_json(atjump[i], path + ".atjump[" + std::to_string(i) + "]"));
  }
  out.pointed_at = optional_point(j, "pointed_at", path);
  return out;
}

Json ec_path_to_json(const ECPath& p) {
  Json out = Json::object();
  Json prefix = Json::array();
  for (const Point& q : p.prefix_points()) prefix.push_back(point_to_json(q));
  out["prefix"] = std::move(prefix);
  out["tail"] = point_to_json(p.tail());
  return out;
}

ECPath ec_path_from_json(const Json& j, const DigitalImage& image, const std::string& path) {
  const Json& prefix = require(j, "prefix", path);
  if (!prefix.is_array()) throw schema_error(path + ".prefix", "expected an array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    pts.push_back(point_from_json(prefix[i], path + ".prefix[" + std::to_string(i) + "]"));
  }
  Point tail = point_from_json(require(j, "tail", path), path + ".tail");
  try {
    return ECPath(image, pts, tail);
  } catch (const std::invalid_argument& e) {
    throw schema_error(path, e.what());
  }
}

Json ec_homotopy_to_json(const ECHomotopy& H) {
  Json out = Json::object();
  out["image"] = image_to_json(H.rows.front().image());
  Json rows = Json::array();
  for (const ECPath& r : H.rows) rows.push_back(ec_path_to_json(r));
  out["rows"] = std::move(rows);
  out["endpoints_fixed"] = H.endpoints_fixed;
  return out;
}

ECHomotopy ec_homotopy_from_json(const Json& j, const std::string& path) {
  LoadedImage img = image_from_json(require(j, "image", path), path + ".image");
  const Json& rows = require(j, "rows", path);
  if (!rows.is_array() || rows.empty()) {
    throw schema_error(path + ".rows", "expected a nonempty array");
  }
  ECHomotopy out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.rows.push_back(
        ec_path_from_json(rows[i], img.image, path + ".rows[" + std::to_string(i) + "]"));
  }
  const Json& fixed = require(j, "endpoints_fixed", path);
  if (!fixed.is_boolean()) throw schema_error(path + ".endpoints_fixed", "expected a boolean");
  out.endpoints_fixed = fixed.get<bool>();
  return out;
}

Json equivalence_to_json(const EquivalenceCertificate& c) {
  Json out = Json::object();
  out["kind"] = "plain";
  out["f"] = map_to_json(c.f);
  out["g"] = map_to_json(c.g);
  out["h"] = homotopy_to_json(c.H);
  out["k"] = homotopy_to_json(c.K);
  out["pointed"] = pointing_to_json(c.pointed);
  return out;
}

EquivalenceCertificate equivalence_from_json(const Json& j, const std::string& path) {
  EquivalenceCertificate out;
  out.f = map_from_json(require(j, "f", path), path + ".f");
  out.g = map_from_json(require(j, "g", path), path + ".g");
  out.H = homotopy_from_json(require(j, "h", path), path + ".h");
  out.K = homotopy_from_json(require(j, "k", path), path + ".k");
  out.pointed = optional_pointing(j, path);
  return out;
}

Json long_equivalence_to_json(const LongEquivalenceCertificate& c) {
  Json out = Json::object();
  out["kind"] = "long";
  out["f"] = map_to_json(c.f);
  out["g"] = map_to_json(c.g);
  out["h"] = long_homotopy_to_json(c.H);
  out["k"] = long_homotopy_to_json(c.K);
  out["pointed"] = pointing_to_json(c.pointed);
  return out;
}

LongEquivalenceCertificate long_equivalence_from_json(const Json& j, const std::string& path) {
  LongEquivalenceCertificate out;
  out.f = map_from_json(require(j, "f", path), path + ".f");
  out.g = map_from_json(require(j, "g", path), path + ".g");
  out.H = long_homotopy_from_json(require(j, "h", path), path + ".h");
  out.K = long_homotopy_from_json(require(j, "k", path), path + ".k");
  out.pointed = optional_pointing(j, path);
  return out;
}

Json real_equivalence_to_json(const RealEquivalenceCertificate& c) {
  Json out = Json::object();
  out["kind"] = "real";
  out["f"] = map_to_json(c.f);
  out["g"] = map_to_json(c.g);
  out["h"] = real_homotopy_to_json(c.H);
  out["k"] = real_homotopy_to_json(c.K);
  out["pointed"] = pointing_to_json(c.pointed);
  return out;
}

RealEquivalenceCertificate real_equivalence_from_json(const Json& j, const std::string& path) {
  RealEquivalenceCertificate out;
  out.f = map_from_json(require(j, "f", path), path + ".f");
  out.g = map_from_json(require(j, "g", path), path + ".g");
  out.H = real_homotopy_from_json(require(j, "h", path), path + ".h");
  out.K = real_homotopy_from_json(require(j, "k", path), path + ".k");
  out.pointed = optional_pointing(j, path);
  return out;
}

Json similarity_to_json(const SimilarityCertificate& c) {
  Json out = Json::object();
  out["kind"] = "similarity";
  out["depth"] = c.depth();
  auto images = [](const std::vector<DigitalImage>& v) {
    Json arr = Json::array();
    for (const DigitalImage& img : v) arr.push_back(image_to_json(img));
    return arr;
  };
  auto maps = [](const std::vector<DigitalMap>& v) {
    Json arr = Json::array();
    for (const DigitalMap& m : v) arr.push_back(map_to_json(m));
    return arr;
  };
  auto homs = [](const std::vector<Homotopy>& v) {
    Json arr = Json::array();
    for (const Homotopy& h : v) arr.push_back(homotopy_to_json(h));
    return arr;
  };
  out["x_levels"] = images(c.fx.levels);
  out["y_levels"] = images(c.fy.levels);
  if (c.fx.exhausts) out["x_exhausts"] = *c.fx.exhausts;
  if (c.fy.exhausts) out["y_exhausts"] = *c.fy.exhausts;
  out["f"] = maps(c.f);
  out["g"] = maps(c.g);
  out["h"] = homs(c.h);
  out["k"] = homs(c.k);
  auto restriction = [](const std::map<std::pair<int, int>, Homotopy>& r) {
    Json arr = Json::array();
    for (const auto& [vw, hom] : r) {
      Json entry = Json::object();
      entry["v"] = vw.first;
      entry["w"] = vw.second;
      entry["homotopy"] = homotopy_to_json(hom);
      arr.push_back(std::move(entry));
    }
    return arr;
  };
  out["rf"] = restriction(c.rf);
  out["rg"] = restriction(c.rg);
  out["pointed"] = pointing_to_json(c.pointed);
  return out;
}

SimilarityCertificate similarity_from_json(const Json& j, const std::string& path) {
  SimilarityCertificate out;
  auto load_images = [&](const char* key, std::vector<DigitalImage>& dst) {
    const Json& arr = require(j, key, path);
    if (!arr.is_array() || arr.empty()) {
      throw schema_error(path + "." + key, "expected a nonempty array");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      dst.push_back(
          image_from_json(arr[i], path + "." + key + "[" + std::to_string(i) + "]").image);
    }
  };
  auto load_maps = [&](const char* key, std::vector<DigitalMap>& dst) {
    const Json& arr = require(j, key, path);
    if (!arr.is_array()) throw schema_error(path + "." + key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      dst.push_back(map_from_json(arr[i], path + "." + key + "[" + std::to_string(i) + "]"));
    }
  };
  auto load_homs = [&](const char* key, std::vector<Homotopy>& dst) {
    const Json& arr = require(j, key, path);
    if (!arr.is_array()) throw schema_error(path + "." + key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      dst.push_back(homotopy_from_json(arr[i], path + "." + key + "[" + std::to_string(i) + "]"));
    }
  };
  load_images("x_levels", out.fx.levels);
  load_images("y_levels", out.fy.levels);
  if (j.contains("x_exhausts") && !j["x_exhausts"].is_null()) {
    out.fx.exhausts = j["x_exhausts"].get<std::string>();
  }
  if (j.contains("y_exhausts") && !j["y_exhausts"].is_null()) {
    out.fy.exhausts = j["y_exhausts"].get<std::string>();
  }
  load_maps("f", out.f);
  load_maps("g", out.g);
  load_homs("h", out.h);
  load_homs("k", out.k);
  auto load_restriction = [&](const char* key, std::map<std::pair<int, int>, Homotopy>& dst) {
    const Json& arr = require(j, key, path);
    if (!arr.is_array()) throw schema_error(path + "." + key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string epath = path + "." + key + "[" + std::to_string(i) + "]";
      int v = static_cast<int>(require_int(require(arr[i], "v", epath), epath + ".v"));
      int w = static_cast<int>(require_int(require(arr[i], "w", epath), epath + ".w"));
      if (v < 1 || w < v) throw schema_error(epath, "requires 1 <= v <= w");
      if (!dst.emplace(std::make_pair(v, w),
                       homotopy_from_json(require(arr[i], "homotopy", epath), epath + ".homotopy"))
               .second) {
        throw schema_error(epath, "duplicate (v,w) entry");
      }
    }
  };
  load_restriction("rf", out.rf);
  load_restriction("rg", out.rg);
  out.pointed = optional_pointing(j, path);
  return out;
}

Json read_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::invalid_argument("cannot open " + filename);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(filename + ": " + e.what());
  }
}

void write_json_file(const std::string& filename, const Json& j) {
  std::ofstream out(filename);
  if (!out) throw std::invalid_argument("cannot open " + filename + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace digitop
