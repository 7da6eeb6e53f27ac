#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "curvex/overlay.hpp"
#include "curvex/strands.hpp"
#include "curvex/surface.hpp"

using namespace curvex;

namespace {

Config config_on(Surface s) {
  Config c;
  c.surface = share(std::move(s));
  return c;
}

long long total_chi(const Surface& s) {
  long long chi = 0;
  for (auto& comp : s.classify()) chi += 2 - 2 * comp.genus - comp.boundary;
  return chi;
}

std::multiset<std::pair<int, int>> component_types(const Surface& s) {
  std::multiset<std::pair<int, int>> out;
  for (auto& comp : s.classify()) out.insert({comp.genus, comp.boundary});
  return out;
}

}  // namespace

TEST_CASE("torus pushoff of a crosses the other two edges once each") {
  Config c = config_on(build_surface(1, 0));
  const Surface& s = *c.surface;
  append_pushoff(c, s.named_dart("a"));
  REQUIRE(c.strands.size() == 1);
  const Strand& t = c.strands[0];
  CHECK(t.closed);
  REQUIRE(t.pts.size() == 2);
  std::multiset<int> crossed;
  for (int e : corridor_edges(s, t)) crossed.insert(e);
  std::multiset<int> expect{s.edge_of(s.named_dart("b")), s.edge_of(s.named_dart("diag2"))};
  CHECK(crossed == expect);
}

TEST_CASE("overlay of one torus pushoff refines without changing the topology") {
  Config c = config_on(build_surface(1, 0));
  append_pushoff(c, c.surface->named_dart("a"));
  Overlay ov = build_overlay(c);
  CHECK(component_types(ov.o) == component_types(*c.surface));
  CHECK(ov.crossings.empty());
  CHECK(ov.crossings_between(0, 0) == 0);

  // one base vertex plus an edge point per strand crossing
  int base = 0, pts = 0, xing = 0;
  for (auto k : ov.vkind) {
    if (k == OVertKind::BaseVertex) ++base;
    if (k == OVertKind::EdgePoint) ++pts;
    if (k == OVertKind::Crossing) ++xing;
  }
  CHECK(base == 1);
  CHECK(pts == 2);
  CHECK(xing == 0);
  CHECK(ov.vertex_of_point.size() == 2);
  CHECK(ov.vertex_of_point.count({0, 0}) == 1);
  CHECK(ov.vertex_of_point.count({0, 1}) == 1);
  // 3 base edges pick up 2 subdivision points, plus one wall segment per corridor
  CHECK(ov.o.edge_count() == 7);

  Overlay again = build_overlay(c);
  CHECK(again.o.hash() == ov.o.hash());
}

TEST_CASE("cutting the torus along a pushoff gives an annulus and reglues back") {
  Config c = config_on(build_surface(1, 0));
  append_pushoff(c, c.surface->named_dart("a"));
  Overlay ov = build_overlay(c);
  CutResult cut = cut_overlay(ov, {0});
  CHECK(component_types(cut.surf) == std::multiset<std::pair<int, int>>{{0, 2}});
  CHECK(cut.new_cycles.size() == 2);
  CHECK(component_types(reglue(cut)) == std::multiset<std::pair<int, int>>{{1, 0}});
}

TEST_CASE("two torus pushoffs cross once and cut the torus into a square") {
  Config c = config_on(build_surface(1, 0));
  append_pushoff(c, c.surface->named_dart("a"));
  append_pushoff(c, c.surface->named_dart("b"));
  Overlay ov = build_overlay(c);
  CHECK(ov.crossings_between(0, 0) == 0);
  CHECK(ov.crossings_between(1, 1) == 0);
  REQUIRE(ov.crossings_between(0, 1) == 1);

  CutResult cut = cut_overlay(ov, {0, 1});
  CHECK(component_types(cut.surf) == std::multiset<std::pair<int, int>>{{0, 1}});
  CHECK(cut.new_cycles.size() == 1);
  CHECK(component_types(reglue(cut)) == std::multiset<std::pair<int, int>>{{1, 0}});
}

TEST_CASE("neighborhood boundary of a torus pushoff is two disjoint parallel copies") {
  Config c = config_on(build_surface(1, 0));
  append_pushoff(c, c.surface->named_dart("a"));
  Overlay ov = build_overlay(c);
  std::vector<Strand> sides = neighborhood_boundary_strands(ov, {0});
  REQUIRE(sides.size() == 2);

  Config copies = config_on(*c.surface);
  copies.surface = c.surface;
  copies.strands = sides;
  validate_config(copies);
  for (auto& t : copies.strands) {
    CHECK(t.closed);
    CHECK(t.pts.size() == 2);
  }

  Overlay ov2 = build_overlay(copies);
  CHECK(ov2.crossings_between(0, 1) == 0);

  // both copies stay parallel: cutting along them splits off two annuli
  CutResult cut = cut_overlay(ov2, {0, 1});
  CHECK(component_types(cut.surf) ==
        std::multiset<std::pair<int, int>>{{0, 2}, {0, 2}});
  CHECK(cut.new_cycles.size() == 4);
  CHECK(component_types(reglue(cut)) == std::multiset<std::pair<int, int>>{{1, 0}});
}

TEST_CASE("copies can share a configuration with the scaled originals") {
  Config c = config_on(build_surface(1, 0));
  append_pushoff(c, c.surface->named_dart("a"));
  Overlay ov = build_overlay(c);
  std::vector<Strand> sides = neighborhood_boundary_strands(ov, {0});

  Config joint = ov.cfg;  // renormalized positions
  for (auto& t : joint.strands)
    for (auto& p : t.pts) p.pos *= 4;
  for (auto& t : sides) joint.strands.push_back(t);
  validate_config(joint);

  Overlay ov3 = build_overlay(joint);
  CHECK(ov3.crossings_between(0, 1) == 0);
  CHECK(ov3.crossings_between(0, 2) == 0);
  CHECK(ov3.crossings_between(1, 2) == 0);
}

TEST_CASE("genus two cuts along handle pushoffs behave like honest curves") {
  Config c = config_on(build_surface(2, 0));
  const Surface& s = *c.surface;
  append_pushoff(c, s.named_dart("a"));

  {
    Overlay ov = build_overlay(c);
    CutResult cut = cut_overlay(ov, {0});
    CHECK(component_types(cut.surf) == std::multiset<std::pair<int, int>>{{1, 2}});
    CHECK(cut.new_cycles.size() == 2);
    CHECK(component_types(reglue(cut)) == std::multiset<std::pair<int, int>>{{2, 0}});
  }

  append_pushoff(c, s.named_dart("b"));
  Overlay ov = build_overlay(c);
  CHECK(ov.crossings_between(0, 0) == 0);
  CHECK(ov.crossings_between(1, 1) == 0);
  int x = ov.crossings_between(0, 1);
  CHECK(x % 2 == 1);  // the handles are dual, so the parity is forced

  CutResult cut = cut_overlay(ov, {0, 1});
  CHECK(total_chi(cut.surf) == total_chi(s) + x);
  CHECK(component_types(reglue(cut)) == std::multiset<std::pair<int, int>>{{2, 0}});
}

TEST_CASE("pushoffs on a one holed torus, including a boundary parallel one") {
  Config c = config_on(build_surface(1, 1));
  const Surface& s = *c.surface;
  append_pushoff(c, s.named_dart("a"));
  CHECK(c.strands.size() == 1);

  append_pushoff(c, s.named_dart("h1"));
  REQUIRE(c.strands.size() == 2);
  CHECK(c.strands[1].closed);

  Overlay ov = build_overlay(c);
  CHECK(component_types(ov.o) == component_types(s));

  // cutting along the boundary parallel curve splits off an annulus collar
  CutResult cut = cut_overlay(ov, {1});
  CHECK(component_types(cut.surf) ==
        std::multiset<std::pair<int, int>>{{1, 1}, {0, 2}});
  CHECK(component_types(reglue(cut)) == std::multiset<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("reversal flips every crossing and reverses the order") {
  Config c = config_on(build_surface(2, 0));
  const Surface& s = *c.surface;
  append_pushoff(c, s.named_dart("c"));
  Strand orig = c.strands[0];
  Strand rev = reversed(s, orig);
  c.strands.push_back(rev);
  // reversed copy collides with the original positions, so check it alone
  Config alone = config_on(s);
  alone.surface = c.surface;
  alone.strands = {rev};
  validate_config(alone);

  Strand back = reversed(s, rev);
  REQUIRE(back.pts.size() == orig.pts.size());
  bool same = true;
  for (size_t i = 0; i < back.pts.size(); ++i)
    same = same && back.pts[i].into == orig.pts[i].into && back.pts[i].pos == orig.pts[i].pos;
  CHECK(same);
}

TEST_CASE("renormalize keeps the crossing order and becomes idempotent") {
  Config c = config_on(build_surface(2, 0));
  const Surface& s = *c.surface;
  append_pushoff(c, s.named_dart("a"));
  append_pushoff(c, s.named_dart("b"));
  append_pushoff(c, s.named_dart("d"));

  std::map<int, std::vector<std::pair<int, int>>> before;
  for (int e : s.edge_reps()) before[e] = points_on_edge(c, e);
  renormalize(c);
  validate_config(c);
  for (int e : s.edge_reps()) CHECK(before[e] == points_on_edge(c, e));
  for (auto& t : c.strands)
    for (auto& p : t.pts) CHECK(p.pos >= 0);

  Config again = c;
  renormalize(again);
  for (size_t ti = 0; ti < c.strands.size(); ++ti)
    for (size_t pi = 0; pi < c.strands[ti].pts.size(); ++pi)
      CHECK(again.strands[ti].pts[pi].pos == c.strands[ti].pts[pi].pos);
}

TEST_CASE("pushoff rejects an edge that is not a loop") {
  Config c = config_on(polygon_word_surface({"s0", "s1", "s2", "s3"}));
  CHECK_THROWS_AS(append_pushoff(c, c.surface->named_dart("s0")), Error);
}
