#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "curvex/strands.hpp"
#include "curvex/surface.hpp"

namespace curvex {

// An isotopy class of essential simple closed curves. The class is pinned by
// a taut representative: make_curve pulls the drawing tight, rejects anything
// that bounds a disk, is parallel to a boundary circle, or crosses itself,
// and then rotates the strand so that its crossing sequence is the
// lexicographically least over all rotations and the reversal. Two classes on
// the same surface are equal exactly when those least sequences agree.
//
// The representative is kept around because every operation below works on
// honest drawings: intersection numbers come from minimal position of the two
// reps, twists from surgery on them.
struct CurveClass {
  std::shared_ptr<const Surface> home;
  std::uint64_t home_hash = 0;
  Strand rep;            // tight, embedded, rotated into canonical phase
  std::vector<int> key;  // least crossing sequence of rep, the identity

  bool operator==(const CurveClass& o) const {
    return home_hash == o.home_hash && key == o.key;
  }
  bool operator!=(const CurveClass& o) const { return !(*this == o); }
  bool operator<(const CurveClass& o) const {
    return home_hash != o.home_hash ? home_hash < o.home_hash : key < o.key;
  }
};

// Tightens and canonicalizes a drawing of a closed curve. Throws
// Errc::TrivialCurve when the curve is null-homotopic or boundary-parallel,
// Errc::GeneralPosition when two crossings of the drawing share an edge
// position, and Errc::ConfigError for structurally broken drawings or curves
// that still cross themselves when tight.
CurveClass make_curve(std::shared_ptr<const Surface> s, Strand draw);

// The curve running parallel to a named edge loop of a preset surface.
CurveClass pushoff_curve(std::shared_ptr<const Surface> s, const std::string& edge_name);

// Both reps in one configuration (a = strand 0, b = strand 1), already in
// minimal pair position, so the crossing count is i(a, b).
Config pair_config(const CurveClass& a, const CurveClass& b);

int intersection_number(const CurveClass& a, const CurveClass& b);

// Dual means crossing exactly once.
bool is_dual(const CurveClass& a, const CurveClass& b);

// Whether the complement of the curve is connected.
bool is_nonseparating(const CurveClass& c);

// Equality with a built-in cross-examination: the key comparison is checked
// against the geometric criterion (zero crossings in minimal position plus a
// complement component that is an annulus cobounded by the two curves).
// Disagreement between the two answers is an internal error.
bool same_curve_checked(const CurveClass& a, const CurveClass& b);

// Right-handed Dehn twist about `about`, applied |sign| times; negative sign
// means the inverse twist. The result is re-tightened and canonicalized.
CurveClass dehn_twist(const CurveClass& about, int sign, const CurveClass& target);

// A composite of twists. Letters act in order: the first letter is the first
// twist applied to the curve.
struct TwistLetter {
  CurveClass about;
  int sign = 1;
};
using TwistWord = std::vector<TwistLetter>;

CurveClass apply_twist_word(const TwistWord& w, CurveClass c);

// Boundary circles of a regular neighborhood of the union of two classes in
// minimal position, as classes of their own; inessential circles are
// dropped. Two dual curves yield the single circle enclosing the handle they
// span, two disjoint nonseparating curves the walls of the pipe between them.
std::vector<CurveClass> neighborhood_boundary(const CurveClass& a, const CurveClass& b);

// Genus-one surfaces only. Classes are written in the basis of the preset
// loops: pushoff of "a" is (1, 0), pushoff of "b" is (0, 1), and the twist of
// the second about the first is (1, 1). The pair is primitive and returned
// with p > 0, or (0, 1) when p = 0.
//
// The frame carries the three reference classes so that a sweep over many
// curves prices them once.
struct TorusFrame {
  CurveClass a, b, d;  // (1,0), (0,1), (1,1)
};
TorusFrame torus_frame(std::shared_ptr<const Surface> s);

std::pair<long long, long long> torus_coordinates(const TorusFrame& f, const CurveClass& c);
std::pair<long long, long long> torus_coordinates(const CurveClass& c);

// Builds the class with the given coordinates out of twists of the basis
// loops. Rejects non-primitive pairs.
CurveClass torus_curve(std::shared_ptr<const Surface> s, long long p, long long q);

// Stable text form: the face-by-face steps (face, entering dart, leaving
// dart) of the canonical rep, its per-edge crossing ranks, the home surface
// hash, and the (p, q) pair on genus-one surfaces.
std::string curve_to_json_text(const CurveClass& c);
CurveClass curve_from_json_text(std::shared_ptr<const Surface> s, const std::string& text);

}  // namespace curvex
