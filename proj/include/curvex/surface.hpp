#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "curvex/error.hpp"

namespace curvex {

// A surface is stored as a rotation system. Darts are half-edges indexed
// 0..n-1; alpha swaps the two darts of an edge and sigma is the
// counterclockwise successor among the darts leaving a vertex. Faces are the
// orbits of d -> sigma(alpha(d)), the face lying to the left of each of its
// darts.
//
// Boundary circles are represented as marked faces rather than unpaired
// darts: every boundary edge carries a second dart whose face is flagged as a
// hole. Keeping alpha total means cutting and regluing never special-case the
// boundary, and a hole's dart cycle doubles as the walk of the boundary
// circle itself.
class Surface {
 public:
  Surface() = default;
  Surface(std::vector<int> alpha, std::vector<int> sigma, std::vector<char> hole);

  int n() const { return (int)alpha_.size(); }
  int alpha(int d) const { return alpha_[d]; }
  int sigma(int d) const { return sigma_[d]; }
  int sigma_inv(int d) const { return sigma_inv_[d]; }
  int next_in_face(int d) const { return sigma_[alpha_[d]]; }
  int prev_in_face(int d) const { return alpha_[sigma_inv_[d]]; }
  bool on_hole(int d) const { return hole_[d] != 0; }
  // A dart "lies on the boundary" when the other side of its edge is a hole.
  bool boundary_edge(int d) const { return hole_[d] || hole_[alpha_[d]]; }
  int edge_of(int d) const { return d < alpha_[d] ? d : alpha_[d]; }
  int edge_count() const { return n() / 2; }

  std::vector<std::vector<int>> faces() const;     // every phi orbit, holes included
  std::vector<std::vector<int>> vertices() const;  // sigma orbits
  std::vector<std::vector<int>> boundary_cycles() const;
  std::vector<int> edge_reps() const;  // smallest dart of every edge, ascending
  // Face label per dart: the smallest dart of its phi orbit.
  std::vector<int> face_ids() const;

  struct ComponentInfo {
    int genus = 0;
    int boundary = 0;
    int darts = 0;
  };
  // One entry per connected component, ordered by smallest dart id.
  std::vector<ComponentInfo> classify() const;
  bool connected() const;
  int genus() const;           // connected surfaces only
  int boundary_count() const;  // connected surfaces only
  int euler_characteristic() const;

  void validate() const;
  std::uint64_t hash() const;

  // Named edges are a convenience for the preset cell structures ("a", "b",
  // boundary loops "h1", ...). The name points at one specific dart, which
  // also fixes an orientation of the edge.
  const std::map<std::string, int>& named_darts() const { return names_; }
  int named_dart(const std::string& name) const;
  void set_name(const std::string& name, int dart);

 private:
  std::vector<int> alpha_;
  std::vector<int> sigma_;
  std::vector<int> sigma_inv_;
  std::vector<char> hole_;
  std::map<std::string, int> names_;
};

// Glues a surface out of disk faces. Each face is a closed walk of side
// tokens; every token appears exactly once overall, and `pairing` matches the
// tokens of sides glued to each other (walk directions end up opposite, as
// they do along any interior edge of an oriented surface). Sides left
// unmatched become boundary: a hole-side dart is created for each, and the
// hole faces are stitched together by walking around the complement of the
// matching.
struct Assembled {
  Surface surface;
  std::unordered_map<long long, int> dart_of_side;
};
Assembled assemble_from_faces(const std::vector<std::vector<long long>>& faces,
                              const std::vector<std::pair<long long, long long>>& pairing);

// Preset cell structure for the connected orientable surface of genus g >= 1
// with r boundary circles: the standard 4g-gon identification, fan
// triangulated, with r one-edge boundary loops grafted at the base vertex.
// Every real face is a triangle and there is exactly one vertex. Edges are
// named: handle edges "a","b" (then "c","d","e","f" for higher genus),
// boundary loops "h1".."hr", plus the triangulation diagonals.
Surface build_surface(int genus, int boundary);

// General polygon-gluing builder used by tests: single-letter tokens pair
// lowercase with uppercase, multi-character tokens stay unmatched (boundary).
// The polygon is fan triangulated from its first corner.
Surface polygon_word_surface(const std::vector<std::string>& word);

std::string surface_to_json(const Surface& s);
Surface surface_from_json(const std::string& text);

}  // namespace curvex
