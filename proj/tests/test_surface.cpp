#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "curvex/surface.hpp"
#include "doctest.h"

using namespace curvex;

static void check_preset(int g, int r, int chi, size_t vertices) {
  Surface s = build_surface(g, r);
  auto info = s.classify();
  REQUIRE(info.size() == 1);
  CHECK(info[0].genus == g);
  CHECK(info[0].boundary == r);
  CHECK(s.euler_characteristic() == chi);
  CHECK(s.vertices().size() == vertices);
  for (auto& f : s.faces()) {
    if (!s.on_hole(f[0])) CHECK(f.size() == 3);
  }
  s.validate();
}

TEST_CASE("presets classify to their requested signature") {
  check_preset(1, 0, 0, 1);
  check_preset(1, 1, -1, 1);
  // boundary circles never share a point, so two circles force two vertices
  check_preset(1, 2, -2, 2);
  check_preset(2, 0, -2, 1);
  check_preset(3, 0, -4, 1);
  check_preset(2, 1, -3, 1);
}

TEST_CASE("torus preset cell counts") {
  Surface t = build_surface(1, 0);
  CHECK(t.edge_count() == 3);  // a, b, one diagonal
  CHECK(t.faces().size() == 2);
  CHECK(t.boundary_cycles().empty());
  CHECK(t.named_dart("a") != t.named_dart("b"));
}

TEST_CASE("boundary loops are one-edge circles at the vertex") {
  Surface s = build_surface(1, 2);
  auto cycles = s.boundary_cycles();
  REQUIRE(cycles.size() == 2);
  CHECK(cycles[0].size() == 1);
  CHECK(cycles[1].size() == 1);
  CHECK(s.on_hole(s.alpha(s.named_dart("h1"))));
  CHECK(s.on_hole(s.alpha(s.named_dart("h2"))));
}

TEST_CASE("polygon word builder covers the annulus and the disk") {
  Surface ann = polygon_word_surface({"a", "h1", "A", "h2"});
  auto ai = ann.classify();
  REQUIRE(ai.size() == 1);
  CHECK(ai[0].genus == 0);
  CHECK(ai[0].boundary == 2);
  CHECK(ann.vertices().size() == 2);

  Surface disk = polygon_word_surface({"s0", "s1", "s2", "s3"});
  auto di = disk.classify();
  REQUIRE(di.size() == 1);
  CHECK(di[0].genus == 0);
  CHECK(di[0].boundary == 1);
  CHECK(disk.euler_characteristic() == 1);
}

TEST_CASE("genus 0 presets are rejected") {
  CHECK_THROWS_WITH_AS(build_surface(0, 2), "unsupported: positive genus required", Error);
  try {
    build_surface(0, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::UnsupportedSurface);
  }
}

TEST_CASE("construction is deterministic and hashes agree") {
  Surface a = build_surface(2, 0);
  Surface b = build_surface(2, 0);
  CHECK(a.hash() == b.hash());
  CHECK(a.n() == b.n());
  for (int d = 0; d < a.n(); ++d) {
    CHECK(a.alpha(d) == b.alpha(d));
    CHECK(a.sigma(d) == b.sigma(d));
  }
}

TEST_CASE("serialization round-trips exactly") {
  for (auto [g, r] : {std::pair{1, 0}, {1, 2}, {2, 0}, {3, 0}}) {
    Surface s = build_surface(g, r);
    std::string doc = surface_to_json(s);
    Surface back = surface_from_json(doc);
    CHECK(back.n() == s.n());
    for (int d = 0; d < s.n(); ++d) {
      CHECK(back.alpha(d) == s.alpha(d));
      CHECK(back.sigma(d) == s.sigma(d));
      CHECK(back.on_hole(d) == s.on_hole(d));
    }
    CHECK(surface_to_json(back) == doc);
  }
}

TEST_CASE("malformed documents are refused") {
  CHECK_THROWS_AS(surface_from_json("not json at all"), Error);
  Surface s = build_surface(1, 0);
  std::string doc = surface_to_json(s);
  // corrupt the genus field
  auto pos = doc.find("\"genus\": 1");
  REQUIRE(pos != std::string::npos);
  doc.replace(pos, 10, "\"genus\": 2");
  try {
    surface_from_json(doc);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::FormatError);
  }
}

TEST_CASE("assembly rejects reused side tokens") {
  CHECK_THROWS_AS(assemble_from_faces({{1, 2, 1}}, {}), Error);
}

TEST_CASE("two triangles glued along one edge form a disk") {
  auto a = assemble_from_faces({{10, 11, 12}, {20, 21, 22}}, {{10, 20}});
  auto info = a.surface.classify();
  REQUIRE(info.size() == 1);
  CHECK(info[0].genus == 0);
  CHECK(info[0].boundary == 1);
  auto cycles = a.surface.boundary_cycles();
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].size() == 4);
}
