#pragma once

#include <memory>
#include <vector>

#include "curvex/surface.hpp"

namespace curvex {

// Curves and arcs are stored as transversal strands: the sequence of edge
// crossings, nothing else. A crossing records the dart whose face the strand
// enters ("into") and a position along the edge. Positions are measured along
// the edge's canonical orientation (tail of the smaller dart toward its head)
// and only their relative order matters; renormalize() compacts them whenever
// surgery has produced rational-looking gaps.
//
// Between crossings i and i+1 the strand runs inside face(into_i) as an
// embedded corridor chord, so a whole configuration is determined by these
// sequences plus the per-edge crossing orders.
struct StrandPoint {
  int into = -1;
  long long pos = 0;
};

struct Strand {
  std::vector<StrandPoint> pts;
  bool closed = true;
  // Open strands are proper arcs: the first crossing enters a real face from
  // the boundary, the last one leaves into a hole face.
};

struct Config {
  std::shared_ptr<const Surface> surface;
  std::vector<Strand> strands;
};

std::shared_ptr<const Surface> share(Surface s);

// Structural validation: chain constraints, distinct (edge, position) pairs,
// arcs anchored on the boundary. Throws on violation.
void validate_config(const Config& c);

// Rewrites every position to its rank on its edge (0, 1, 2, ...).
void renormalize(Config& c);

// All crossings on one edge in position order, as (strand, point) indices.
std::vector<std::pair<int, int>> points_on_edge(const Config& c, int edge);

Strand reversed(const Surface& s, const Strand& t);

// Cyclic sequence of edge ids a closed strand crosses; for arcs, the plain
// sequence from one endpoint to the other.
std::vector<int> corridor_edges(const Surface& s, const Strand& t);

// The curve running parallel to an edge loop: it shadows the edge inside the
// face to the left of `dart` and swings around the vertex past every germ
// strictly between alpha(dart) and dart in rotation order. Appends the strand
// to c, placing its crossings outermost (nearest the vertex end) on each edge.
void append_pushoff(Config& c, int dart);

}  // namespace curvex
