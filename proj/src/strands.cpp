#include "curvex/strands.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace curvex {

std::shared_ptr<const Surface> share(Surface s) {
  return std::make_shared<const Surface>(std::move(s));
}

void validate_config(const Config& c) {
  require(c.surface != nullptr, "configuration needs a surface");
  const Surface& s = *c.surface;
  auto fid = s.face_ids();
  std::set<std::pair<int, long long>> seen;
  for (auto& t : c.strands) {
    int m = (int)t.pts.size();
    require(m >= 1, "empty strand");
    for (int i = 0; i < m; ++i) {
      int into = t.pts[i].into;
      require(into >= 0 && into < s.n(), "crossing dart out of range");
      bool fresh = seen.emplace(s.edge_of(into), t.pts[i].pos).second;
      require(fresh, "two crossings share an edge position");
    }
    if (t.closed) {
      for (auto& p : t.pts)
        require(!s.boundary_edge(p.into), "closed strand cannot cross a boundary edge");
    } else {
      require(m >= 2, "an arc has an entry and an exit crossing");
      require(!s.on_hole(t.pts[0].into) && s.on_hole(s.alpha(t.pts[0].into)),
              "arc must enter from a boundary edge");
      require(s.on_hole(t.pts[m - 1].into), "arc must exit into a hole");
      for (int i = 1; i + 1 < m; ++i)
        require(!s.boundary_edge(t.pts[i].into), "arc interior cannot touch the boundary");
    }
    int corridors = t.closed ? m : m - 1;
    for (int i = 0; i < corridors; ++i) {
      int j = (i + 1) % m;
      require(fid[s.alpha(t.pts[j].into)] == fid[t.pts[i].into],
              "consecutive crossings must bound a common face");
    }
  }
}

void renormalize(Config& c) {
  const Surface& s = *c.surface;
  std::map<int, std::vector<std::pair<long long, StrandPoint*>>> by_edge;
  for (auto& t : c.strands)
    for (auto& p : t.pts) by_edge[s.edge_of(p.into)].emplace_back(p.pos, &p);
  for (auto& [e, pts] : by_edge) {
    std::sort(pts.begin(), pts.end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    for (int i = 0; i < (int)pts.size(); ++i) pts[i].second->pos = i;
  }
}

std::vector<std::pair<int, int>> points_on_edge(const Config& c, int edge) {
  const Surface& s = *c.surface;
  std::vector<std::tuple<long long, int, int>> found;
  for (int ti = 0; ti < (int)c.strands.size(); ++ti) {
    auto& pts = c.strands[ti].pts;
    for (int pi = 0; pi < (int)pts.size(); ++pi)
      if (s.edge_of(pts[pi].into) == edge) found.emplace_back(pts[pi].pos, ti, pi);
  }
  std::sort(found.begin(), found.end());
  std::vector<std::pair<int, int>> out;
  for (auto& [pos, ti, pi] : found) out.emplace_back(ti, pi);
  return out;
}

Strand reversed(const Surface& s, const Strand& t) {
  Strand r;
  r.closed = t.closed;
  for (auto it = t.pts.rbegin(); it != t.pts.rend(); ++it)
    r.pts.push_back(StrandPoint{s.alpha(it->into), it->pos});
  return r;
}

std::vector<int> corridor_edges(const Surface& s, const Strand& t) {
  std::vector<int> out;
  for (auto& p : t.pts) out.push_back(s.edge_of(p.into));
  return out;
}

namespace {

bool same_vertex(const Surface& s, int a, int b) {
  int g = a;
  do {
    if (g == b) return true;
    g = s.sigma(g);
  } while (g != a);
  return false;
}

// The rotation arc strictly between alpha(d) and d, or nothing if a boundary
// edge interrupts it.
std::vector<int> swing_germs(const Surface& s, int d) {
  std::vector<int> germs;
  for (int g = s.sigma(s.alpha(d)); g != d; g = s.sigma(g)) {
    if (s.boundary_edge(g)) return {};
    germs.push_back(g);
  }
  return germs;
}

}  // namespace

void append_pushoff(Config& c, int dart) {
  const Surface& s = *c.surface;
  require(same_vertex(s, dart, s.alpha(dart)), "pushoff is defined for edge loops");

  std::vector<int> germs = swing_germs(s, dart);
  if (germs.empty()) germs = swing_germs(s, s.alpha(dart));
  if (germs.empty())
    fail(Errc::TrivialCurve, "pushoff of this loop bounds a disk or is blocked by the boundary");

  // Track extremes per edge so each crossing lands beyond everything already
  // on its edge, on the proper end.
  std::map<int, std::pair<long long, long long>> range;  // edge -> (min, max)
  for (auto& t : c.strands)
    for (auto& p : t.pts) {
      int e = s.edge_of(p.into);
      auto it = range.find(e);
      if (it == range.end())
        range[e] = {p.pos, p.pos};
      else {
        it->second.first = std::min(it->second.first, p.pos);
        it->second.second = std::max(it->second.second, p.pos);
      }
    }

  Strand t;
  t.closed = true;
  for (int g : germs) {
    int e = s.edge_of(g);
    long long pos;
    auto it = range.find(e);
    if (g == e) {  // crossing near the tail of the canonical dart
      pos = it == range.end() ? 0 : it->second.first - 1;
    } else {
      pos = it == range.end() ? 0 : it->second.second + 1;
    }
    if (it == range.end())
      range[e] = {pos, pos};
    else {
      it->second.first = std::min(it->second.first, pos);
      it->second.second = std::max(it->second.second, pos);
    }
    t.pts.push_back(StrandPoint{s.alpha(g), pos});
  }
  c.strands.push_back(std::move(t));
  validate_config(c);
}

}  // namespace curvex
