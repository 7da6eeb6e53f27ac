#include "curvex/tighten.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace curvex {

namespace {

std::vector<std::vector<int>> real_regions(const Overlay& ov) {
  std::vector<std::vector<int>> out;
  for (auto& f : ov.o.faces())
    if (!ov.o.on_hole(f[0])) out.push_back(f);
  return out;
}

// Replaces a cyclically contiguous block of points with new ones. A closed
// strand comes back rotated so the replacement sits at the end; only the
// cyclic order matters downstream.
Strand replace_block(const Strand& t, int start, int count,
                     const std::vector<StrandPoint>& repl) {
  int m = (int)t.pts.size();
  Strand out;
  out.closed = t.closed;
  if (t.closed) {
    for (int i = 0; i < m - count; ++i) out.pts.push_back(t.pts[(start + count + i) % m]);
    out.pts.insert(out.pts.end(), repl.begin(), repl.end());
  } else {
    require(start >= 0 && count >= 0 && start + count <= m, "point block out of range");
    out.pts.assign(t.pts.begin(), t.pts.begin() + start);
    out.pts.insert(out.pts.end(), repl.begin(), repl.end());
    out.pts.insert(out.pts.end(), t.pts.begin() + start + count, t.pts.end());
  }
  return out;
}

struct RegionShape {
  int wall = -1;  // the lone wall dart when nwall == 1
  int nwall = 0;
  int base_corners = 0;
  bool plain = true;  // corners are only edge points and base vertices
};

RegionShape shape_of(const Overlay& ov, const std::vector<int>& walk) {
  RegionShape r;
  for (int d : walk) {
    if (ov.dart[d].kind == OEdgeKind::Wall) {
      ++r.nwall;
      r.wall = d;
    }
    OVertKind k = ov.vkind[ov.vert_of[d]];
    if (k == OVertKind::BaseVertex)
      ++r.base_corners;
    else if (k != OVertKind::EdgePoint)
      r.plain = false;
  }
  return r;
}

std::vector<int> least_cyclic(const std::vector<int>& v) {
  if (v.empty()) return v;
  int n = (int)v.size();
  std::vector<int> best = v;
  std::vector<int> cand(n);
  for (int s = 1; s < n; ++s) {
    for (int i = 0; i < n; ++i) cand[i] = v[(s + i) % n];
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace

bool remove_return(Config& c) {
  Overlay ov = build_overlay(c);
  for (auto& walk : real_regions(ov)) {
    RegionShape r = shape_of(ov, walk);
    if (r.nwall != 1 || r.base_corners != 0 || !r.plain) continue;
    require((int)walk.size() == 2, "a returning corridor should bound a two-sided region");
    int ti = ov.dart[r.wall].strand, ci = ov.dart[r.wall].corridor;
    Strand& t = c.strands[ti];
    int m = (int)t.pts.size();
    std::set<std::pair<int, int>> corners{ov.vpoint[ov.vert_of[walk[0]]],
                                          ov.vpoint[ov.vert_of[walk[1]]]};
    std::set<std::pair<int, int>> want{{ti, ci}, {ti, (ci + 1) % m}};
    require(corners == want, "return region corners do not match its corridor");
    if (!t.closed) {
      // both return crossings sit on one edge, and an arc only touches a
      // boundary edge at its two anchors, so this is the whole arc
      if (m == 2)
        fail(Errc::TrivialCurve,
             "strand tightened to nothing, so it bounds a disk or retracts into the boundary");
      require(ci >= 1 && ci <= m - 3, "return at the anchored end of an arc");
    }
    t = replace_block(t, ci, 2, {});
    if (t.pts.empty())
      fail(Errc::TrivialCurve,
           "strand tightened to nothing, so it bounds a disk or retracts into the boundary");
    renormalize(c);
    validate_config(c);
    return true;
  }
  return false;
}

namespace {

struct Triangle {
  int v = -1;        // overlay vertex being cornered
  int germ_lo = -1;  // base germ under the corridor's first point
  int germ_hi = -1;  // base germ under its second point
};

}  // namespace

bool remove_vertex_fan(Config& c) {
  const Surface& S = *c.surface;
  Overlay ov = build_overlay(c);

  // Pass 1: find every corner triangle, a region bounded by one chord and the
  // two innermost segments of consecutive germs at a vertex.
  std::map<std::pair<int, int>, Triangle> tri;
  for (auto& walk : real_regions(ov)) {
    RegionShape r = shape_of(ov, walk);
    if (r.nwall != 1 || r.base_corners != 1 || !r.plain) continue;
    require((int)walk.size() == 3, "a corner triangle should have three sides");
    int wi = 0;
    while (ov.dart[walk[wi]].kind != OEdgeKind::Wall) ++wi;
    int W = walk[wi], b1 = walk[(wi + 1) % 3], b2 = walk[(wi + 2) % 3];
    require(ov.vkind[ov.vert_of[b2]] == OVertKind::BaseVertex, "triangle corner placement");
    int v = ov.vert_of[b2];
    bool blocked = false;
    for (int g : ov.verts[v])
      if (ov.o.on_hole(g) || ov.dart[g].kind != OEdgeKind::Base ||
          S.boundary_edge(ov.dart[g].base_dart))
        blocked = true;
    if (blocked) continue;  // no sliding across the boundary
    auto pP = ov.vpoint[ov.vert_of[W]];
    auto pQ = ov.vpoint[ov.vert_of[b1]];
    int ti = ov.dart[W].strand, ci = ov.dart[W].corridor;
    require(pP.first == ti && pQ.first == ti, "triangle chord from a foreign strand");
    int m = (int)c.strands[ti].pts.size();
    int gQ = ov.dart[ov.o.alpha(b1)].base_dart;
    int gP = ov.dart[b2].base_dart;
    Triangle T;
    T.v = v;
    if (pP.second == ci && pQ.second == (ci + 1) % m) {
      T.germ_lo = gP;
      T.germ_hi = gQ;
    } else if (pQ.second == ci && pP.second == (ci + 1) % m) {
      T.germ_lo = gQ;
      T.germ_hi = gP;
    } else {
      require(false, "triangle corners do not match its corridor");
    }
    // a loop edge can corner the same vertex from both ends; that is not a fan
    if (S.edge_of(T.germ_lo) == S.edge_of(T.germ_hi)) continue;
    tri[{ti, ci}] = T;
  }

  // Pass 2: chain consecutive triangles around one vertex and swap any run
  // whose far side is strictly cheaper.
  for (int ti = 0; ti < (int)c.strands.size(); ++ti) {
    const Strand& t = c.strands[ti];
    int m = (int)t.pts.size();
    int ncor = t.closed ? m : m - 1;
    if (ncor <= 0) continue;
    auto get = [&](int cc) -> const Triangle* {
      auto it = tri.find({ti, cc});
      return it == tri.end() ? nullptr : &it->second;
    };
    auto chained = [&](int c1, int c2) {
      const Triangle* x = get(c1);
      const Triangle* y = get(c2);
      return x && y && x->v == y->v && x->germ_hi == y->germ_lo;
    };
    std::vector<int> starts;
    if (t.closed) {
      bool full = true;
      for (int cc = 0; cc < ncor && full; ++cc)
        if (!chained(cc, (cc + 1) % ncor)) full = false;
      if (full && get(0))
        fail(Errc::TrivialCurve, "curve winds around a single vertex and bounds a disk");
      for (int cc = 0; cc < ncor; ++cc)
        if (get(cc) && !chained((cc - 1 + ncor) % ncor, cc)) starts.push_back(cc);
    } else {
      for (int cc = 0; cc < ncor; ++cc)
        if (get(cc) && (cc == 0 || !chained(cc - 1, cc))) starts.push_back(cc);
    }
    for (int cc : starts) {
      int len = 1;
      while (len < ncor) {
        int a = (cc + len - 1) % ncor, b = (cc + len) % ncor;
        bool ok = t.closed ? chained(a, b) : (cc + len < ncor && chained(a, b));
        if (!ok) break;
        ++len;
      }
      const Triangle& T0 = *get(cc);
      int v = T0.v;
      std::vector<int> G;
      for (int g : ov.verts[v]) G.push_back(ov.dart[g].base_dart);
      int deg = (int)G.size();
      std::map<int, int> idx;
      for (int i = 0; i < deg; ++i) idx[G[i]] = i;
      int mrun = len + 1;
      require(mrun <= deg, "fan longer than the vertex degree");
      if (deg - 2 * mrun >= 0) continue;
      std::vector<int> f(mrun);
      f[0] = T0.germ_lo;
      for (int i = 0; i < len; ++i) f[i + 1] = get((cc + i) % ncor)->germ_hi;
      std::set<int> fs(f.begin(), f.end());
      require((int)fs.size() == mrun, "fan crosses a germ twice");
      int step = (idx.at(f[1]) - idx.at(f[0]) + deg) % deg;
      require(step == 1 || step == deg - 1, "fan germs are not consecutive at the vertex");
      int dir = step == 1 ? 1 : -1;
      for (int i = 0; i + 1 < mrun; ++i)
        require((idx.at(f[i + 1]) - idx.at(f[i]) + deg) % deg == (dir == 1 ? 1 : deg - 1),
                "fan changes direction midway");
      for (int i = 0; i < mrun; ++i) {
        int p = (cc + i) % m;
        require(t.pts[p].into == (dir == 1 ? S.alpha(f[i]) : f[i]),
                "fan crossing darts disagree with the rotation direction");
      }
      std::map<int, std::pair<long long, long long>> range;
      for (auto& st : c.strands)
        for (auto& p : st.pts) {
          int e = S.edge_of(p.into);
          auto it = range.find(e);
          if (it == range.end())
            range[e] = {p.pos, p.pos};
          else {
            it->second.first = std::min(it->second.first, p.pos);
            it->second.second = std::max(it->second.second, p.pos);
          }
        }
      // the swapped arc crosses every other germ, innermost, sweeping from
      // the entry side around the far side of the vertex
      std::vector<StrandPoint> repl;
      for (int k = 1; k <= deg - mrun; ++k) {
        int at = ((idx.at(f[0]) + (dir == 1 ? -k : k)) % deg + deg) % deg;
        int h = G[at];
        StrandPoint np;
        np.into = dir == 1 ? h : S.alpha(h);
        int e = S.edge_of(h);
        auto it = range.find(e);
        if (it == range.end()) {
          np.pos = 0;
          range[e] = {0, 0};
        } else if (h == e) {
          np.pos = --it->second.first;
        } else {
          np.pos = ++it->second.second;
        }
        repl.push_back(np);
      }
      c.strands[ti] = replace_block(t, cc, mrun, repl);
      if (c.strands[ti].pts.empty())
        fail(Errc::TrivialCurve, "curve winds around a single vertex and bounds a disk");
      renormalize(c);
      validate_config(c);
      return true;
    }
  }
  return false;
}

bool remove_pair_bigon(Config& c, int sa, int sb) {
  require(sa != sb, "pair moves need two distinct strands");
  const Surface& S = *c.surface;
  Overlay ov = build_overlay(c);
  if (ov.crossings_between(sa, sb) == 0) return false;
  CutResult cut = cut_overlay(ov, {sa, sb});
  const Surface& C = cut.surf;

  std::vector<int> comp(C.n(), -1);
  int ncomp = 0;
  for (int d = 0; d < C.n(); ++d) {
    if (comp[d] >= 0) continue;
    std::vector<int> st{d};
    comp[d] = ncomp;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : {C.alpha(x), C.sigma(x)})
        if (comp[y] < 0) {
          comp[y] = ncomp;
          st.push_back(y);
        }
    }
    ++ncomp;
  }
  auto infos = C.classify();
  require((int)infos.size() == ncomp, "component count mismatch after cutting");

  std::vector<int> pre(C.n(), -1);
  for (int d = 0; d < (int)cut.image.size(); ++d)
    if (cut.image[d] >= 0) pre[cut.image[d]] = d;

  std::map<int, int> cross_at;
  for (int i = 0; i < (int)ov.crossings.size(); ++i) cross_at[ov.crossings[i].vertex] = i;

  int mA = (int)c.strands[sa].pts.size();
  int mB = (int)c.strands[sb].pts.size();

  for (auto& cyc : cut.new_cycles) {
    int cid = comp[cyc[0]];
    if (infos[cid].genus != 0 || infos[cid].boundary != 1) continue;
    int n = (int)cyc.size();
    std::vector<int> strand_at(n, -1), wdart(n, -1), vtx(n, -1);
    bool allwall = true;
    for (int i = 0; i < n; ++i) {
      int w = pre[C.alpha(cyc[i])];
      require(w >= 0, "cycle dart without a source");
      if (ov.dart[w].kind != OEdgeKind::Wall) {
        allwall = false;
        break;
      }
      strand_at[i] = ov.dart[w].strand;
      wdart[i] = w;
      vtx[i] = ov.vert_of[ov.o.alpha(w)];  // vertex at the tail of cyc[i]
    }
    if (!allwall) continue;
    int changes = 0;
    for (int i = 0; i < n; ++i)
      if (strand_at[i] != strand_at[(i + 1) % n]) ++changes;
    if (changes != 2) continue;

    // rotate so position 0 opens a run
    int i0 = 0;
    while (strand_at[(i0 - 1 + n) % n] == strand_at[i0]) ++i0;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = (i0 + i) % n;
    int L1 = 1;
    while (strand_at[order[L1]] == strand_at[order[0]]) ++L1;
    int s1 = strand_at[order[0]], s2 = strand_at[order[L1]];
    if (!((s1 == sa && s2 == sb) || (s1 == sb && s2 == sa))) continue;
    int vX0 = vtx[order[0]], vX1 = vtx[order[L1]];
    if (vX0 == vX1) continue;  // a wedge around one crossing is not a bigon
    require(cross_at.count(vX0) && cross_at.count(vX1), "bigon corner is not a crossing");
    const OCrossing& X0 = ov.crossings[cross_at[vX0]];
    const OCrossing& X1 = ov.crossings[cross_at[vX1]];
    auto cor_of = [&](const OCrossing& X, int s) {
      require((X.strand_a == sa && X.strand_b == sb) || (X.strand_a == sb && X.strand_b == sa),
              "corner crossing joins unexpected strands");
      return X.strand_a == s ? X.corridor_a : X.corridor_b;
    };

    std::vector<int> run_first(order.begin(), order.begin() + L1);
    std::vector<int> run_second(order.begin() + L1, order.end());
    std::vector<int>& run_a = s1 == sa ? run_first : run_second;
    std::vector<int>& run_b = s1 == sa ? run_second : run_first;

    // points of sb inside the bigon, in walk order
    std::vector<int> doomed;
    for (size_t j = 1; j < run_b.size(); ++j) {
      int vv = vtx[run_b[j]];
      if (ov.vkind[vv] == OVertKind::EdgePoint) {
        auto [ps, pi] = ov.vpoint[vv];
        require(ps == sb, "foreign point on a bigon side");
        doomed.push_back(pi);
      }
    }
    int count_b = (int)doomed.size();
    int p_prev, p_next, start_b;
    if (count_b > 0) {
      // When every point of sb lies on the disk, sliding sb across it has no
      // anchor to hang on to; the same disk is removable from the other side,
      // so leave it for the call with the roles swapped.
      if (count_b >= mB) continue;
      int dstep = count_b == 1 ? 1 : (doomed[1] - doomed[0] + mB) % mB;
      require(dstep == 1 || dstep == mB - 1, "bigon side is not a contiguous block");
      bool asc = dstep == 1;
      for (int j = 0; j + 1 < count_b; ++j)
        require((doomed[j + 1] - doomed[j] + mB) % mB == (asc ? 1 : mB - 1),
                "bigon side is not a contiguous block");
      start_b = asc ? doomed.front() : doomed.back();
      p_prev = (start_b - 1 + mB) % mB;
      p_next = (start_b + count_b) % mB;
    } else {
      int cb0 = cor_of(X0, sb), cb1 = cor_of(X1, sb);
      require(cb0 == cb1, "empty bigon side spanning two corridors");
      p_prev = cb0;
      p_next = (cb0 + 1) % mB;
      start_b = p_next;
    }
    if (!c.strands[sb].closed)
      require(start_b >= 1 && start_b + count_b <= mB - 1, "bigon side touches an arc endpoint");

    int cb_enter = p_prev;
    int cb_exit = (p_next - 1 + mB) % mB;
    int v_enter;
    if (count_b > 0) {
      int c0 = cor_of(X0, sb), c1 = cor_of(X1, sb);
      require((c0 == cb_enter && c1 == cb_exit) || (c0 == cb_exit && c1 == cb_enter),
              "corner corridors do not flank the bigon side");
      v_enter = c0 == cb_enter ? vX0 : vX1;
    } else {
      const auto& along = ov.corridor_xings.at({sb, p_prev});
      int id0 = cross_at[vX0], id1 = cross_at[vX1];
      auto pos0 = std::find(along.begin(), along.end(), id0);
      auto pos1 = std::find(along.begin(), along.end(), id1);
      require(pos0 != along.end() && pos1 != along.end(), "corner missing from its corridor");
      v_enter = pos0 < pos1 ? vX0 : vX1;
    }

    // the sa side: its points, walk annotations, and which side faces the disk
    std::vector<int> srcpts;
    std::vector<std::pair<int, int>> awalk;
    int side_piece = -1;
    for (size_t j = 0; j < run_a.size(); ++j) {
      int w = wdart[run_a[j]];
      awalk.emplace_back(ov.dart[w].corridor, ov.dart[w].seg);
      if (side_piece < 0) side_piece = ov.dart[w].side;
      require(ov.dart[w].side == side_piece, "bigon side flips sides");
      if (j > 0) {
        int vv = vtx[run_a[j]];
        if (ov.vkind[vv] == OVertKind::EdgePoint) {
          auto [ps, pi] = ov.vpoint[vv];
          require(ps == sa, "foreign point on a bigon side");
          srcpts.push_back(pi);
        }
      }
    }
    require(count_b > 0 || !srcpts.empty(), "empty bigon between two straight chords");
    bool copies_along_walk = vtx[run_a[0]] == v_enter;
    std::vector<int> path = srcpts;
    if (!copies_along_walk) std::reverse(path.begin(), path.end());
    int dir_walk = 0;
    for (size_t j = 0; j + 1 < awalk.size() && dir_walk == 0; ++j) {
      auto [ca1, sg1] = awalk[j];
      auto [ca2, sg2] = awalk[j + 1];
      if (ca1 == ca2) {
        dir_walk = sg2 > sg1 ? 1 : -1;
      } else {
        // the corridor change pivots on one of sa's own crossings, and which
        // one it is tells forward from backward
        int vv = vtx[run_a[j + 1]];
        require(ov.vkind[vv] == OVertKind::EdgePoint, "corridor change away from an edge");
        int pi = ov.vpoint[vv].second;
        require(pi == ca1 || pi == (ca1 + 1) % mA, "pivot crossing off its corridor");
        dir_walk = pi == (ca1 + 1) % mA ? 1 : -1;
      }
    }
    if (dir_walk == 0) dir_walk = 1;  // single-dart side carries no points
    bool parallel = copies_along_walk ? dir_walk == 1 : dir_walk == -1;

    // slide sb's piece to run beside sa, one notch away from the disk
    for (auto& st : c.strands)
      for (auto& p : st.pts) p.pos *= 4;
    std::vector<StrandPoint> repl;
    for (int p : path) {
      const StrandPoint& orig = c.strands[sa].pts[p];
      StrandPoint np;
      np.into = parallel ? orig.into : S.alpha(orig.into);
      bool canon = orig.into == S.edge_of(orig.into);
      np.pos = orig.pos + (((1 - side_piece) == 0) == canon ? -1 : +1);
      repl.push_back(np);
    }
    c.strands[sb] = replace_block(c.strands[sb], start_b, count_b, repl);
    renormalize(c);
    validate_config(c);
    return true;
  }
  return false;
}

void tighten_self(Config& c) {
  for (int guard = 0; guard < 100000; ++guard) {
    if (remove_return(c)) continue;
    if (remove_vertex_fan(c)) continue;
    return;
  }
  require(false, "self-tightening did not stabilize");
}

void tighten_pair(Config& c, int sa, int sb) {
  for (int guard = 0; guard < 100000; ++guard) {
    if (remove_return(c)) continue;
    if (remove_vertex_fan(c)) continue;
    if (remove_pair_bigon(c, sa, sb)) continue;
    if (remove_pair_bigon(c, sb, sa)) continue;
    return;
  }
  require(false, "pair tightening did not stabilize");
}

int pair_crossings(const Config& c, int sa, int sb) {
  Overlay ov = build_overlay(c);
  return ov.crossings_between(sa, sb);
}

std::vector<int> corridor_key(const Surface& s, const Strand& t) {
  std::vector<int> fwd;
  for (auto& p : t.pts) fwd.push_back(p.into);
  Strand rv = reversed(s, t);
  std::vector<int> bwd;
  for (auto& p : rv.pts) bwd.push_back(p.into);
  if (t.closed) return std::min(least_cyclic(fwd), least_cyclic(bwd));
  return std::min(fwd, bwd);
}

}  // namespace curvex
