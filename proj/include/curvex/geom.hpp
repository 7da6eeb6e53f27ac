#pragma once

#include <cstdint>

#include "curvex/error.hpp"

// Exact planar primitives used by the face arrangement code. Everything is
// integer arithmetic; the widest intermediate products need around 110 bits,
// so comparisons go through __int128 and nothing ever touches floating point.
//
// Nodes on a face boundary are modelled in convex position along a parabola:
// node i sits at (i, 16*i^2 + jitter) where jitter is a small deterministic
// hash value. The 16x scale dominates the jitter in the second difference, so
// the points stay strictly convex for every jitter round. Changing the round
// re-breaks any three-chord concurrency the previous embedding happened to
// produce.

namespace curvex {

using i128 = __int128;

struct Pt {
  long long x = 0;
  long long y = 0;
};

inline int sign_of(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Orientation of the triangle (a, b, c): +1 counterclockwise, -1 clockwise,
// 0 collinear.
inline int orient(Pt a, Pt b, Pt c) {
  i128 v = (i128)(b.x - a.x) * (c.y - a.y) - (i128)(b.y - a.y) * (c.x - a.x);
  return sign_of(v);
}

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Position of boundary node i in jitter round r. Strict convexity: the second
// difference of 16*i^2 is 32 and the jitter contributes at most |7 + 14 + 7|,
// leaving a positive gap.
inline Pt node_pos(long long i, std::uint64_t round) {
  std::uint64_t h = mix64(round * 0x100000001b3ULL + (std::uint64_t)i) & 7u;
  return Pt{i, 16 * i * i + (long long)h};
}

// Chords of a convex polygon cross iff their endpoints strictly interleave on
// the boundary circle. Pure combinatorics, no coordinates involved.
inline bool chords_interleave(long long n, long long a1, long long a2, long long b1,
                              long long b2) {
  auto between = [&](long long lo, long long hi, long long x) {
    // true if x lies strictly inside the ccw arc from lo to hi
    long long span = (hi - lo + n) % n;
    long long off = (x - lo + n) % n;
    return off > 0 && off < span;
  };
  if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) return false;
  return between(a1, a2, b1) != between(a1, a2, b2);
}

// Parameter of the intersection point of segment AB with line CD, as the
// exact fraction t = num/den with den != 0 for properly crossing chords.
struct CrossParam {
  i128 num;
  i128 den;
};

inline CrossParam cross_param(Pt a, Pt b, Pt c, Pt d) {
  i128 num = (i128)(c.x - a.x) * (d.y - c.y) - (i128)(c.y - a.y) * (d.x - c.x);
  i128 den = (i128)(b.x - a.x) * (d.y - c.y) - (i128)(b.y - a.y) * (d.x - c.x);
  require(den != 0, "crossing chords cannot be parallel");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return CrossParam{num, den};
}

// Order of two crossing points along the same oriented segment: compares the
// exact parameters p and q. Returns -1, 0, +1.
inline int cmp_params(CrossParam p, CrossParam q) {
  return sign_of(p.num * q.den - q.num * p.den);
}

}  // namespace curvex
