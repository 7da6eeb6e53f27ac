#pragma once

#include <vector>

#include "curvex/overlay.hpp"

namespace curvex {

// Minimal-position engine. Every routine here edits a configuration in place
// through moves that are isotopies of individual strands, so the isotopy class
// of each strand is preserved while redundant crossings go away.
//
// Two kinds of redundancy are handled. A strand can waste crossings against
// the edges of the surface itself (a corridor that dips across an edge and
// comes straight back, or an arc hugging a vertex the long way around), and a
// pair of strands can waste crossings against each other (a disk bounded by
// one piece of each). The detectors below find an innermost instance by
// tracing the regions of the arrangement, apply one move, and leave the
// configuration renormalized.

// Innermost strand-edge bigon anywhere in the configuration: a corridor that
// enters and leaves a face through the same stretch of one edge with nothing
// inside. Removing it drops two crossings. A closed strand whose last bigon
// removal would empty it bounds a disk and is reported as a trivial curve;
// the same happens for an arc that can be pushed entirely into the boundary.
bool remove_return(Config& c);

// A run of corridors cornering the same interior vertex, where going around
// the other side of the vertex is strictly cheaper. Applies the swap.
bool remove_vertex_fan(Config& c);

// Innermost disk bounded by one piece of strand sa and one piece of strand
// sb. The sb piece slides across the disk to run beside the sa piece,
// dropping two crossings between them.
bool remove_pair_bigon(Config& c, int sa, int sb);

// Run strand-edge moves to exhaustion: afterwards no strand has a removable
// return or a reducing vertex fan.
void tighten_self(Config& c);

// Minimal position of the pair (sa, sb): self-moves plus bigon removal until
// nothing fires. The resulting crossing count between sa and sb is the
// geometric intersection number of their classes.
void tighten_pair(Config& c, int sa, int sb);

// Crossing count between two strands as currently drawn (no tightening).
int pair_crossings(const Config& c, int sa, int sb);

// Identity key for a tightened strand: the sequence of darts it crosses into,
// minimized over all rotations (for closed strands) and over reversal. Two
// tight strands with equal keys are the same combinatorial curve.
std::vector<int> corridor_key(const Surface& s, const Strand& t);

}  // namespace curvex
