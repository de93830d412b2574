#ifndef DIGITOP_JSON_IO_HPP
#define DIGITOP_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "digitop/constructions.hpp"
#include "digitop/ecpath.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/lattice.hpp"
#include "digitop/longhtpy.hpp"
#include "digitop/maps.hpp"
#include "digitop/realhtpy.hpp"
#include "digitop/similarity.hpp"

namespace digitop {

// Ordered JSON keeps key order stable so emitted reports and witness files
// are byte-identical across runs.
using Json = nlohmann::ordered_json;

// Schema violations carry the JSON path of the offending element.
class schema_error : public std::invalid_argument {
public:
  schema_error(const std::string& path, const std::string& what)
      : std::invalid_argument(path + ": " + what) {}
};

struct LoadedImage {
  DigitalImage image;
  std::optional<Point> basepoint;
};

Json image_to_json(const DigitalImage& img, const std::optional<Point>& basepoint = std::nullopt);
LoadedImage image_from_json(const Json& j, const std::string& path = "$");

Json map_to_json(const DigitalMap& m);
DigitalMap map_from_json(const Json& j, const std::string& path = "$");

Json homotopy_to_json(const Homotopy& F);
Homotopy homotopy_from_json(const Json& j, const std::string& path = "$");

Json l_homotopy_to_json(const LHomotopy& F);
LHomotopy l_homotopy_from_json(const Json& j, const std::string& path = "$");

Json long_homotopy_to_json(const LongHomotopy& F);
LongHomotopy long_homotopy_from_json(const Json& j, const std::string& path = "$");

Json real_homotopy_to_json(const RealHomotopy& F);
RealHomotopy real_homotopy_from_json(const Json& j, const std::string& path = "$");

Json ec_path_to_json(const ECPath& p);
ECPath ec_path_from_json(const Json& j, const DigitalImage& image, const std::string& path = "$");

Json ec_homotopy_to_json(const ECHomotopy& H);
ECHomotopy ec_homotopy_from_json(const Json& j, const std::string& path = "$");

Json equivalence_to_json(const EquivalenceCertificate& c);
EquivalenceCertificate equivalence_from_json(const Json& j, const std::string& path = "$");

Json long_equivalence_to_json(const LongEquivalenceCertificate& c);
LongEquivalenceCertificate long_equivalence_from_json(const Json& j,
                                                      const std::string& path = "$");

Json real_equivalence_to_json(const RealEquivalenceCertificate& c);
RealEquivalenceCertificate real_equivalence_from_json(const Json& j,
                                                      const std::string& path = "$");

Json similarity_to_json(const SimilarityCertificate& c);
SimilarityCertificate similarity_from_json(const Json& j, const std::string& path = "$");

// File helpers used by the CLI; parse errors carry byte positions.
Json read_json_file(const std::string& filename);
void write_json_file(const std::string& filename, const Json& j);

}  // namespace digitop

#endif
