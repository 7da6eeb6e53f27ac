#include "curvex/overlay.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <tuple>

#include "curvex/geom.hpp"

namespace curvex {

namespace {

struct RetryEmbedding {};

constexpr int kTokArc = 0;
constexpr int kTokWall = 1;
using TokKey = std::array<int, 5>;  // (kind, a, b, c, d)

struct TokenTable {
  std::map<TokKey, long long> ids;
  std::vector<TokKey> keys;
  long long intern(TokKey k) {
    auto [it, fresh] = ids.emplace(k, (long long)keys.size());
    if (fresh) keys.push_back(k);
    return it->second;
  }
};

struct Chord {
  int u, v;        // node indices in this face
  int strand, corridor;
};

// One strand-strand meeting inside a face, before global ids exist.
struct LocalXing {
  int ca, cb;  // chord indices in this face's chord list
};

struct FacePlan {
  std::vector<std::vector<long long>> regions;
};

int corridor_count(const Strand& t) {
  return t.closed ? (int)t.pts.size() : (int)t.pts.size() - 1;
}

// Arrangement of one face: boundary nodes in convex position, corridors as
// straight chords, regions traced through an explicit local rotation system.
FacePlan build_face(const Surface& S, const Config& cfg, const std::vector<int>& sides,
                    const std::vector<std::vector<std::pair<long long, int>>>& edge_pts,
                    const std::vector<int>& fid, TokenTable& tok, std::uint64_t round) {
  struct Node {
    int side_idx;
    int rank;  // 0 for the corner, then 1.. for points along the side
    int ti = -1, pi = -1;
  };
  std::vector<Node> nodes;
  std::map<std::tuple<int, int, int>, int> node_of;  // (side dart, strand, point) -> node
  std::vector<int> pts_on_side(sides.size(), 0);

  for (int si = 0; si < (int)sides.size(); ++si) {
    int d = sides[si];
    nodes.push_back(Node{si, 0, -1, -1});
    int e = S.edge_of(d);
    auto run = edge_pts[e];  // (pos, flat point id) ascending along canonical direction
    if (d != e) std::reverse(run.begin(), run.end());
    pts_on_side[si] = (int)run.size();
    int rank = 1;
    for (auto& [pos, flat] : run) {
      int ti = flat >> 20, pi = flat & ((1 << 20) - 1);
      node_of[{d, ti, pi}] = (int)nodes.size();
      nodes.push_back(Node{si, rank++, ti, pi});
    }
  }
  int M = (int)nodes.size();

  std::vector<Chord> chords;
  for (int ti = 0; ti < (int)cfg.strands.size(); ++ti) {
    const Strand& t = cfg.strands[ti];
    int m = (int)t.pts.size();
    for (int ci = 0; ci < corridor_count(t); ++ci) {
      int into = t.pts[ci].into;
      if (fid[into] != fid[sides[0]]) continue;
      int nj = (ci + 1) % m;
      int exit = S.alpha(t.pts[nj].into);
      auto iu = node_of.find({into, ti, ci});
      auto iv = node_of.find({exit, ti, nj});
      require(iu != node_of.end() && iv != node_of.end(),
              "corridor endpoints missing from face boundary");
      chords.push_back(Chord{iu->second, iv->second, ti, ci});
    }
  }

  // Local darts: arcs between consecutive boundary nodes come first, chord
  // segments after. Even ids run forward, odd ids backward.
  std::vector<LocalXing> xings;
  std::vector<std::vector<int>> on_chord(chords.size());  // xing ids crossing each chord
  for (int a = 0; a < (int)chords.size(); ++a)
    for (int b = a + 1; b < (int)chords.size(); ++b)
      if (chords_interleave(M, chords[a].u, chords[a].v, chords[b].u, chords[b].v)) {
        int id = (int)xings.size();
        xings.push_back(LocalXing{a, b});
        on_chord[a].push_back(id);
        on_chord[b].push_back(id);
      }

  auto P = [&](int node) { return node_pos(node, round); };
  // Sort the crossings along each chord by exact parameter; ties mean three
  // chords meet in one point and we re-embed.
  std::vector<std::map<int, int>> seg_after(xings.size());  // xing -> chord -> position
  for (int a = 0; a < (int)chords.size(); ++a) {
    auto& list = on_chord[a];
    std::vector<std::pair<CrossParam, int>> ordered;
    for (int id : list) {
      int other = xings[id].ca == a ? xings[id].cb : xings[id].ca;
      ordered.push_back(
          {cross_param(P(chords[a].u), P(chords[a].v), P(chords[other].u), P(chords[other].v)),
           id});
    }
    std::sort(ordered.begin(), ordered.end(), [](auto& x, auto& y) {
      return cmp_params(x.first, y.first) < 0;
    });
    for (size_t i = 0; i + 1 < ordered.size(); ++i)
      if (cmp_params(ordered[i].first, ordered[i + 1].first) == 0) throw RetryEmbedding{};
    list.clear();
    for (int i = 0; i < (int)ordered.size(); ++i) {
      list.push_back(ordered[i].second);
      seg_after[ordered[i].second][a] = i;  // crossing sits between segment i and i+1
    }
  }

  int arc_darts = 2 * M;
  std::vector<int> chord_base(chords.size());
  int next_dart = arc_darts;
  for (int a = 0; a < (int)chords.size(); ++a) {
    chord_base[a] = next_dart;
    next_dart += 2 * ((int)on_chord[a].size() + 1);
  }
  int total = next_dart;
  auto arc_fwd = [](int i) { return 2 * i; };
  auto arc_bwd = [](int i) { return 2 * i + 1; };
  auto seg_fwd = [&](int ch, int j) { return chord_base[ch] + 2 * j; };
  auto seg_bwd = [&](int ch, int j) { return chord_base[ch] + 2 * j + 1; };

  std::vector<int> sigma(total, -1), alpha(total, -1);
  for (int i = 0; i < M; ++i) {
    alpha[arc_fwd(i)] = arc_bwd(i);
    alpha[arc_bwd(i)] = arc_fwd(i);
  }
  for (int a = 0; a < (int)chords.size(); ++a)
    for (int j = 0; j <= (int)on_chord[a].size(); ++j) {
      alpha[seg_fwd(a, j)] = seg_bwd(a, j);
      alpha[seg_bwd(a, j)] = seg_fwd(a, j);
    }

  // Germ lists are given counterclockwise. Region tracing walks faces on the
  // left via sigma(alpha(d)), which wants sigma to step clockwise, so install
  // each cycle reversed.
  auto close_cycle = [&](const std::vector<int>& germs) {
    for (size_t i = 0; i < germs.size(); ++i) sigma[germs[(i + 1) % germs.size()]] = germs[i];
  };
  std::vector<int> chord_at_node(M, -1), chord_end_at_node(M, -1);
  for (int a = 0; a < (int)chords.size(); ++a) {
    require(chord_at_node[chords[a].u] == -1 && chord_at_node[chords[a].v] == -1,
            "two corridors share a boundary node");
    chord_at_node[chords[a].u] = a;
    chord_end_at_node[chords[a].u] = 0;
    chord_at_node[chords[a].v] = a;
    chord_end_at_node[chords[a].v] = 1;
  }
  for (int i = 0; i < M; ++i) {
    std::vector<int> germs{arc_fwd(i)};
    if (chord_at_node[i] >= 0) {
      int a = chord_at_node[i];
      germs.push_back(chord_end_at_node[i] == 0 ? seg_fwd(a, 0)
                                                : seg_bwd(a, (int)on_chord[a].size()));
    }
    germs.push_back(arc_bwd((i + M - 1) % M));
    close_cycle(germs);
  }
  for (int x = 0; x < (int)xings.size(); ++x) {
    int a = xings[x].ca, b = xings[x].cb;
    int ja = seg_after[x][a], jb = seg_after[x][b];
    Pt da{P(chords[a].v).x - P(chords[a].u).x, P(chords[a].v).y - P(chords[a].u).y};
    Pt db{P(chords[b].v).x - P(chords[b].u).x, P(chords[b].v).y - P(chords[b].u).y};
    int s = sign_of((i128)da.x * db.y - (i128)da.y * db.x);
    require(s != 0, "crossing chords cannot be parallel");
    if (s > 0)
      close_cycle({seg_fwd(a, ja + 1), seg_fwd(b, jb + 1), seg_bwd(a, ja), seg_bwd(b, jb)});
    else
      close_cycle({seg_fwd(a, ja + 1), seg_bwd(b, jb), seg_bwd(a, ja), seg_fwd(b, jb + 1)});
  }

  // Trace regions; the orbit of the backward side of arc 0 is the outside.
  auto token_of = [&](int dart) -> long long {
    if (dart < arc_darts) {
      int i = dart / 2;
      require(dart % 2 == 0, "outer-face dart leaked into a region");
      const Node& nd = nodes[i];
      int d = sides[nd.side_idx];
      int e = S.edge_of(d);
      int seg = d == e ? nd.rank : pts_on_side[nd.side_idx] - nd.rank;
      return tok.intern({kTokArc, d, seg, 0, 0});
    }
    for (int a = (int)chords.size() - 1; a >= 0; --a) {
      if (dart >= chord_base[a]) {
        int off = dart - chord_base[a];
        return tok.intern({kTokWall, chords[a].strand, chords[a].corridor, off / 2, off % 2});
      }
    }
    require(false, "dart outside any chord range");
    return -1;
  };

  FacePlan plan;
  std::vector<char> seen(total, 0);
  int outer = arc_bwd(0);
  {
    int d = outer;
    while (!seen[d]) {
      seen[d] = 1;
      d = sigma[alpha[d]];
    }
  }
  for (int start = 0; start < total; ++start) {
    if (seen[start]) continue;
    std::vector<long long> walk;
    int d = start;
    while (!seen[d]) {
      seen[d] = 1;
      walk.push_back(token_of(d));
      d = sigma[alpha[d]];
    }
    plan.regions.push_back(std::move(walk));
  }
  return plan;
}

Overlay build_attempt(const Config& cfg, std::uint64_t round) {
  const Surface& S = *cfg.surface;
  auto fid = S.face_ids();

  // flat point ids pack (strand, point) so they can ride in one int
  std::vector<std::vector<std::pair<long long, int>>> edge_pts(S.n());
  for (int ti = 0; ti < (int)cfg.strands.size(); ++ti) {
    auto& pts = cfg.strands[ti].pts;
    require(pts.size() < (1 << 20), "strand too large for packed point ids");
    for (int pi = 0; pi < (int)pts.size(); ++pi)
      edge_pts[S.edge_of(pts[pi].into)].push_back({pts[pi].pos, (ti << 20) | pi});
  }
  for (auto& v : edge_pts) std::sort(v.begin(), v.end());

  TokenTable tok;
  std::vector<std::vector<long long>> region_faces;
  for (auto& f : S.faces()) {
    if (S.on_hole(f[0])) continue;
    FacePlan plan = build_face(S, cfg, f, edge_pts, fid, tok, round);
    for (auto& r : plan.regions) region_faces.push_back(std::move(r));
  }

  std::vector<std::pair<long long, long long>> pairing;
  for (auto& [key, id] : tok.ids) {
    if (key[0] == kTokArc) {
      int d = key[1], seg = key[2];
      if (d < S.alpha(d)) {
        auto it = tok.ids.find({kTokArc, S.alpha(d), seg, 0, 0});
        if (it != tok.ids.end()) pairing.emplace_back(id, it->second);
      }
    } else if (key[4] == 0) {
      auto it = tok.ids.find({kTokWall, key[1], key[2], key[3], 1});
      require(it != tok.ids.end(), "wall segment missing its other side");
      pairing.emplace_back(id, it->second);
    }
  }

  Assembled asm_out = assemble_from_faces(region_faces, pairing);

  Overlay ov;
  ov.cfg = cfg;
  ov.o = std::move(asm_out.surface);
  int N = ov.o.n();
  ov.dart.assign(N, ODartInfo{});
  std::vector<char> resolved(N, 0);
  for (auto& [key, id] : tok.ids) {
    int d = asm_out.dart_of_side.at(id);
    ODartInfo inf;
    if (key[0] == kTokArc) {
      inf.kind = OEdgeKind::Base;
      inf.base_dart = key[1];
      inf.seg = key[2];
    } else {
      inf.kind = OEdgeKind::Wall;
      inf.strand = key[1];
      inf.corridor = key[2];
      inf.seg = key[3];
      inf.side = key[4];
    }
    ov.dart[d] = inf;
    resolved[d] = 1;
  }
  for (int d = 0; d < N; ++d)
    if (!resolved[d]) {
      require(ov.o.on_hole(d), "unresolved non-hole dart");
      ov.dart[d] = ov.dart[ov.o.alpha(d)];
    }

  ov.verts = ov.o.vertices();
  ov.vert_of.assign(N, -1);
  for (int vi = 0; vi < (int)ov.verts.size(); ++vi)
    for (int d : ov.verts[vi]) ov.vert_of[d] = vi;

  // Per-corridor segment counts tell the exit point of backward germs.
  std::map<std::pair<int, int>, int> seg_count;
  for (int d = 0; d < N; ++d) {
    if (ov.o.on_hole(d) || ov.dart[d].kind != OEdgeKind::Wall) continue;
    auto key = std::make_pair(ov.dart[d].strand, ov.dart[d].corridor);
    auto it = seg_count.find(key);
    int v = ov.dart[d].seg + 1;
    if (it == seg_count.end())
      seg_count[key] = v;
    else
      it->second = std::max(it->second, v);
  }

  ov.vkind.assign(ov.verts.size(), OVertKind::BaseVertex);
  ov.vpoint.assign(ov.verts.size(), {-1, -1});
  for (int vi = 0; vi < (int)ov.verts.size(); ++vi) {
    bool any_wall = false, any_arc = false, any_hole = false;
    for (int d : ov.verts[vi]) {
      if (ov.o.on_hole(d)) {
        any_hole = true;
        continue;
      }
      (ov.dart[d].kind == OEdgeKind::Wall ? any_wall : any_arc) = true;
    }
    if (any_wall && any_arc)
      ov.vkind[vi] = OVertKind::EdgePoint;
    else if (any_wall)
      ov.vkind[vi] = OVertKind::Crossing;
    else if (any_hole && !any_arc)
      ov.vkind[vi] = OVertKind::HoleStitch;
    if (ov.vkind[vi] != OVertKind::EdgePoint) continue;
    for (int d : ov.verts[vi]) {
      if (ov.o.on_hole(d) || ov.dart[d].kind != OEdgeKind::Wall) continue;
      int ti = ov.dart[d].strand, ci = ov.dart[d].corridor;
      int m = (int)ov.cfg.strands[ti].pts.size();
      int point;
      if (ov.dart[d].side == 0 && ov.dart[d].seg == 0)
        point = ci;  // corridor leaves its start point here
      else if (ov.dart[d].side == 1 && ov.dart[d].seg == seg_count[{ti, ci}] - 1)
        point = (ci + 1) % m;
      else
        continue;
      auto cur = ov.vpoint[vi];
      require(cur.first == -1 || cur == std::make_pair(ti, point),
              "edge point resolves to two different strand points");
      ov.vpoint[vi] = {ti, point};
    }
    require(ov.vpoint[vi].first != -1, "edge point with no identifiable strand point");
    ov.vertex_of_point[ov.vpoint[vi]] = vi;
  }

  for (int vi = 0; vi < (int)ov.verts.size(); ++vi) {
    if (ov.vkind[vi] != OVertKind::Crossing) continue;
    // the two backward germs carry the segment index before the crossing
    std::vector<std::array<int, 3>> back;
    for (int d : ov.verts[vi])
      if (ov.dart[d].side == 1) back.push_back({ov.dart[d].strand, ov.dart[d].corridor, ov.dart[d].seg});
    require(back.size() == 2, "crossing vertex must join exactly two corridors");
    std::sort(back.begin(), back.end());
    OCrossing x;
    x.vertex = vi;
    x.strand_a = back[0][0];
    x.corridor_a = back[0][1];
    x.seg_a = back[0][2];
    x.strand_b = back[1][0];
    x.corridor_b = back[1][1];
    x.seg_b = back[1][2];
    ov.crossings.push_back(x);
  }
  for (int id = 0; id < (int)ov.crossings.size(); ++id) {
    auto& x = ov.crossings[id];
    ov.corridor_xings[{x.strand_a, x.corridor_a}].push_back(id);
    ov.corridor_xings[{x.strand_b, x.corridor_b}].push_back(id);
  }
  for (auto& [key, list] : ov.corridor_xings) {
    auto seg_on = [&](int id) {
      auto& x = ov.crossings[id];
      return std::make_pair(
          x.strand_a == key.first && x.corridor_a == key.second ? x.seg_a : x.seg_b, id);
    };
    std::sort(list.begin(), list.end(),
              [&](int p, int q) { return seg_on(p) < seg_on(q); });
  }

  // The refinement must not change the topology.
  auto before = S.classify();
  auto after = ov.o.classify();
  require(before.size() == after.size(), "overlay changed the component count");
  for (size_t i = 0; i < before.size(); ++i)
    require(before[i].genus == after[i].genus && before[i].boundary == after[i].boundary,
            "overlay changed the surface type");
  return ov;
}

}  // namespace

int Overlay::crossings_between(int strand_a, int strand_b) const {
  int lo = std::min(strand_a, strand_b), hi = std::max(strand_a, strand_b);
  int n = 0;
  for (auto& x : crossings)
    if (std::min(x.strand_a, x.strand_b) == lo && std::max(x.strand_a, x.strand_b) == hi) ++n;
  return n;
}

Overlay build_overlay(const Config& c0) {
  validate_config(c0);
  Config c = c0;
  renormalize(c);
  for (std::uint64_t round = 0; round < 64; ++round) {
    try {
      return build_attempt(c, round);
    } catch (const RetryEmbedding&) {
      continue;
    }
  }
  fail(Errc::Internal, "face embedding kept producing triple points");
}

CutResult cut_overlay(const Overlay& ov, const std::vector<int>& wall_strands) {
  std::set<int> W(wall_strands.begin(), wall_strands.end());
  for (int s : W)
    require(s >= 0 && s < (int)ov.cfg.strands.size(), "cut strand index out of range");
  const Surface& O = ov.o;
  std::vector<std::vector<long long>> faces;
  for (auto& f : O.faces()) {
    if (O.on_hole(f[0])) continue;
    std::vector<long long> walk(f.begin(), f.end());
    faces.push_back(std::move(walk));
  }
  std::vector<std::pair<long long, long long>> pairing;
  std::vector<std::pair<int, int>> unglued;
  for (int d = 0; d < O.n(); ++d) {
    int ad = O.alpha(d);
    if (d > ad || O.on_hole(d) || O.on_hole(ad)) continue;
    bool is_cut_wall = ov.dart[d].kind == OEdgeKind::Wall && W.count(ov.dart[d].strand) > 0;
    if (is_cut_wall)
      unglued.emplace_back(d, ad);
    else
      pairing.emplace_back(d, ad);
  }
  Assembled out = assemble_from_faces(faces, pairing);

  CutResult cr;
  cr.image.assign(O.n(), -1);
  for (auto& [side, dart] : out.dart_of_side) cr.image[(int)side] = dart;
  for (auto& [a, b] : unglued) cr.repair.emplace_back(cr.image[a], cr.image[b]);
  std::map<int, int> pre;
  for (int d = 0; d < O.n(); ++d)
    if (cr.image[d] >= 0) pre[cr.image[d]] = d;
  for (auto& cyc : out.surface.boundary_cycles()) {
    // cutting along an arc can splice wall copies into a pre-existing hole
    // cycle, so a cycle counts as new if any of its edges came from a wall
    bool touches_wall = false;
    for (int h : cyc) {
      auto it = pre.find(out.surface.alpha(h));
      require(it != pre.end(), "boundary copy without a source dart");
      if (ov.dart[it->second].kind == OEdgeKind::Wall) touches_wall = true;
    }
    if (touches_wall) cr.new_cycles.push_back(cyc);
  }
  cr.surf = std::move(out.surface);
  return cr;
}

Surface reglue(const CutResult& cut) {
  const Surface& C = cut.surf;
  std::vector<std::vector<long long>> faces;
  for (auto& f : C.faces()) {
    if (C.on_hole(f[0])) continue;
    faces.push_back(std::vector<long long>(f.begin(), f.end()));
  }
  std::vector<std::pair<long long, long long>> pairing;
  for (auto& [a, b] : cut.repair) pairing.emplace_back(a, b);
  for (int d = 0; d < C.n(); ++d) {
    int ad = C.alpha(d);
    if (d > ad || C.on_hole(d) || C.on_hole(ad)) continue;
    pairing.emplace_back(d, ad);
  }
  return assemble_from_faces(faces, pairing).surface;
}

std::vector<Strand> neighborhood_boundary_strands(const Overlay& ov,
                                                  const std::vector<int>& wall_strands) {
  for (int s : wall_strands)
    require(ov.cfg.strands[s].closed, "neighborhood boundaries are taken around closed strands");
  CutResult cr = cut_overlay(ov, wall_strands);
  const Surface& S = *ov.cfg.surface;
  const Surface& C = cr.surf;

  // invert image for the darts we need
  std::map<int, int> pre;
  for (int d = 0; d < (int)cr.image.size(); ++d)
    if (cr.image[d] >= 0) pre[cr.image[d]] = d;

  auto fid = S.face_ids();
  std::vector<Strand> out;
  for (auto& cyc : cr.new_cycles) {
    Strand t;
    t.closed = true;
    for (int h : cyc) {
      // vertex at the tail of this hole dart, seen in the overlay
      int w = pre.at(C.alpha(h));      // the O-dart whose copy we walk beside
      int ov_vertex = ov.vert_of[ov.o.alpha(w)];
      if (ov.vkind[ov_vertex] != OVertKind::EdgePoint) continue;
      auto [ti, pi] = ov.vpoint[ov_vertex];
      require(ti == ov.dart[w].strand, "pass-through point of a foreign strand on a wall cycle");
      const StrandPoint& orig = ov.cfg.strands[ti].pts[pi];
      // the copy crosses into the face holding the segment it walks next
      int corridor_face_dart = ov.cfg.strands[ti].pts[ov.dart[w].corridor].into;
      int into = fid[orig.into] == fid[corridor_face_dart] ? orig.into : S.alpha(orig.into);
      bool canon = orig.into == S.edge_of(orig.into);
      int side = ov.dart[w].side;
      long long offset = (side == 0) == canon ? -1 : +1;
      t.pts.push_back(StrandPoint{into, orig.pos * 4 + offset});
    }
    require(!t.pts.empty(), "neighborhood boundary circle crosses no edges");
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace curvex
