#pragma once

#include <map>
#include <vector>

#include "curvex/strands.hpp"
#include "curvex/surface.hpp"

namespace curvex {

// The overlay refines a surface along a strand configuration: strand points
// and strand-strand crossings become vertices, base edges split into
// segments, strand corridors split into wall segments, and the arrangement
// regions become the faces of a new Surface. Every downstream operation that
// needs honest topology (minimal position checks, cutting along curves,
// neighborhood boundaries, region tests) reads it off this structure.
//
// Chords inside a face are realized as straight segments between boundary
// nodes in convex position; crossings and their cyclic order are computed
// with exact integer arithmetic. If three chords happen to run through one
// point, the embedding is retried with fresh jitter until the arrangement is
// simple.

enum class OEdgeKind { Base, Wall };

struct ODartInfo {
  OEdgeKind kind = OEdgeKind::Base;
  // Base segments: the base-surface dart this O-dart runs along, and the
  // segment index counted along the edge's canonical orientation.
  int base_dart = -1;
  int seg = -1;
  // Wall segments: strand index, corridor (index of the strand point the
  // corridor leaves from), segment index along the corridor, and which side
  // this dart bounds (0 = region left of the forward direction).
  int strand = -1;
  int corridor = -1;
  int side = 0;
};

enum class OVertKind { BaseVertex, EdgePoint, Crossing, HoleStitch };

struct OCrossing {
  int vertex = -1;
  int strand_a = -1, corridor_a = -1, seg_a = -1;
  int strand_b = -1, corridor_b = -1, seg_b = -1;
};

struct Overlay {
  Config cfg;  // the configuration the overlay was built from
  Surface o;

  std::vector<ODartInfo> dart;         // per O-dart; hole darts inherit their partner's entry
  std::vector<int> vert_of;            // O-dart -> vertex id
  std::vector<std::vector<int>> verts; // vertex id -> sigma orbit
  std::vector<OVertKind> vkind;
  std::vector<std::pair<int, int>> vpoint;  // EdgePoint vertices: (strand, point)
  std::vector<OCrossing> crossings;
  std::map<std::pair<int, int>, std::vector<int>> corridor_xings;  // (strand, corridor) -> crossing ids in order
  std::map<std::pair<int, int>, int> vertex_of_point;

  int crossings_between(int strand_a, int strand_b) const;  // a == b counts self-crossings
};

Overlay build_overlay(const Config& c);

// Cutting along a set of strands (closed curves or arcs): the wall edges of
// those strands are left unglued, so each becomes a boundary edge of the
// result. `image` maps real O-darts to darts of the cut surface; `new_cycles`
// lists the boundary circles touched by the cut as walks of cut-surface hole
// darts, and `repair` remembers which dart pairs to identify to undo the cut.
struct CutResult {
  Surface surf;
  std::vector<int> image;
  std::vector<std::vector<int>> new_cycles;
  std::vector<std::pair<int, int>> repair;
};

CutResult cut_overlay(const Overlay& ov, const std::vector<int>& wall_strands);

// Undoes a cut: reglues along `repair` and returns the recovered surface.
Surface reglue(const CutResult& cut);

// The boundary circles of a regular neighborhood of the named strands, as
// strands on the base surface. Each returned point sits at position
// 4 * rank +/- 1, where rank is the renormalized position of the original
// point it runs beside, so the copies are valid on their own and can also
// share a configuration with the originals once original positions are
// multiplied by four. Input strands must be closed.
std::vector<Strand> neighborhood_boundary_strands(const Overlay& ov,
                                                  const std::vector<int>& wall_strands);

}  // namespace curvex
