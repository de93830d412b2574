#include <doctest.h>

#include "digitop/constructions.hpp"
#include "digitop/json_io.hpp"
#include "support.hpp"

using namespace digitop;
using digitop::testing::Rng;
using digitop::testing::random_continuous_map;
using digitop::testing::random_homotopy;
using digitop::testing::random_image;
using digitop::testing::random_loop;
using digitop::testing::random_tree;

TEST_SUITE("json_io") {

TEST_CASE("image round trip and schema rejection") {
  Rng rng(179);
  for (int trial = 0; trial < 50; ++trial) {
    DigitalImage img = random_image(rng, 1 + rng.below(3), 1, 10);
    LoadedImage back = image_from_json(image_to_json(img));
    CHECK(back.image == img);
  }

  SUBCASE("duplicate points carry a positional error") {
    Json j = image_to_json(interval(0, 2));
    j["points"].push_back(j["points"][0]);
    try {
      image_from_json(j);
      FAIL("expected schema_error");
    } catch (const schema_error& e) {
      CHECK(std::string(e.what()).find("points[3]") != std::string::npos);
    }
  }

  SUBCASE("basepoint must be a point of the image") {
    Json j = image_to_json(interval(0, 2));
    j["basepoint"] = Json::array({9});
    CHECK_THROWS_AS(image_from_json(j), schema_error);
  }

  SUBCASE("u out of range") {
    Json j = image_to_json(interval(0, 2));
    j["u"] = 2;
    CHECK_THROWS_AS(image_from_json(j), schema_error);
  }
}

TEST_CASE("map round trip and pair validation") {
  Rng rng(181);
  for (int trial = 0; trial < 50; ++trial) {
    DigitalImage dom = random_image(rng, 2, 1 + rng.below(2), 6);
    DigitalImage cod = random_image(rng, 2, dom.kind().u, 6);
    DigitalMap f = random_continuous_map(rng, dom, cod);
    CHECK(map_from_json(map_to_json(f)) == f);
  }

  SUBCASE("pairs must cover the domain exactly once") {
    DigitalMap id = DigitalMap::identity(interval(0, 1));
    Json j = map_to_json(id);
    Json missing = j;
    missing["pairs"].erase(0);
    CHECK_THROWS_AS(map_from_json(missing), schema_error);
    Json doubled = j;
    doubled["pairs"].push_back(doubled["pairs"][0]);
    CHECK_THROWS_AS(map_from_json(doubled), schema_error);
  }
}

TEST_CASE("homotopy, l-homotopy, long, real, EC round trips") {
  Rng rng(191);
  DigitalImage dom = random_image(rng, 2, 1, 5);
  DigitalImage cod = random_image(rng, 2, 1, 5);
  Homotopy F = random_homotopy(rng, random_continuous_map(rng, dom, cod), 3);
  F.pointed_at = std::nullopt;

  Homotopy F2 = homotopy_from_json(homotopy_to_json(F));
  CHECK(F2.layers == F.layers);

  LHomotopy L = cube_contraction_lhomotopy(Point{0, 0}, 1, 2);
  LHomotopy L2 = l_homotopy_from_json(l_homotopy_to_json(L));
  CHECK(L2.layers == L.layers);
  CHECK(L2.per_point_stab == L.per_point_stab);
  CHECK(L2.pointed_at == L.pointed_at);

  LongHomotopy G = l_to_long(L);
  LongHomotopy G2 = long_homotopy_from_json(long_homotopy_to_json(G));
  CHECK(G2.layers == G.layers);
  CHECK(G2.per_point_bound == G.per_point_bound);
  CHECK(G2.t_min == G.t_min);

  RealHomotopy R = long_to_real(G);
  RealHomotopy R2 = real_homotopy_from_json(real_homotopy_to_json(R));
  CHECK(R2.jumps == R.jumps);
  CHECK(R2.open_layers == R.open_layers);
  CHECK(R2.jump_layers == R.jump_layers);
  CHECK(R2.at0 == R.at0);
  CHECK(R2.at1 == R.at1);

  TreeImage tree = random_tree(rng, 2, 1, 6);
  ECPath loop = random_loop(rng, tree.image(), tree.root(), 3);
  ECPath loop2 = ec_path_from_json(ec_path_to_json(loop), tree.image());
  CHECK(loop2 == loop);

  ECHomotopy H{{loop, loop}, true};
  ECHomotopy H2 = ec_homotopy_from_json(ec_homotopy_to_json(H));
  CHECK(H2.rows == H.rows);
  CHECK(H2.endpoints_fixed == H.endpoints_fixed);
}

TEST_CASE("certificate round trips") {
  Rng rng(193);
  TreeImage tree = random_tree(rng, 2, 1, 6);

  LongEquivalenceCertificate lc = tree_long_equivalence(tree);
  LongEquivalenceCertificate lc2 = long_equivalence_from_json(long_equivalence_to_json(lc));
  CHECK(lc2.f == lc.f);
  CHECK(lc2.g == lc.g);
  CHECK(lc2.H.layers == lc.H.layers);
  CHECK(lc2.pointed == lc.pointed);
  CHECK(verify_long_equivalence(lc2).ok);

  RealEquivalenceCertificate rc{lc.f, lc.g, long_to_real(lc.H), long_to_real(lc.K), lc.pointed};
  RealEquivalenceCertificate rc2 = real_equivalence_from_json(real_equivalence_to_json(rc));
  CHECK(verify_real_equivalence(rc2).ok);

  SimilarityCertificate sim = tree_similarity_certificate(tree, 3);
  SimilarityCertificate sim2 = similarity_from_json(similarity_to_json(sim));
  CHECK(sim2.depth() == sim.depth());
  CHECK(sim2.fx.levels == sim.fx.levels);
  CHECK(sim2.rf.size() == sim.rf.size());
  CHECK(verify_similarity(sim2).ok);
}

TEST_CASE("serialization is deterministic") {
  SimilarityCertificate sim = cube_similarity_certificate(Point{0, 0}, 2, 1);
  CHECK(similarity_to_json(sim).dump(2) == similarity_to_json(sim).dump(2));
}

}  // TEST_SUITE
