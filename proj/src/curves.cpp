#include "curvex/curves.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "curvex/error.hpp"
#include "curvex/overlay.hpp"
#include "curvex/tighten.hpp"
#include "json.hpp"

namespace curvex {

namespace {

// User drawings arrive here before validate_config so that mistakes surface
// as ConfigError / GeneralPosition instead of internal-invariant failures.
void check_drawing(const Surface& s, const Strand& t) {
  auto fid = s.face_ids();
  int m = (int)t.pts.size();
  std::set<std::pair<int, long long>> seen;
  for (int i = 0; i < m; ++i) {
    int into = t.pts[i].into;
    if (into < 0 || into >= s.n())
      fail(Errc::ConfigError, "crossing dart out of range");
    if (s.on_hole(into)) fail(Errc::ConfigError, "curve cannot enter a hole");
    if (s.boundary_edge(into))
      fail(Errc::ConfigError, "closed curve cannot cross a boundary edge");
    if (!seen.emplace(s.edge_of(into), t.pts[i].pos).second)
      fail(Errc::GeneralPosition, "general position required");
  }
  for (int i = 0; i < m; ++i) {
    int j = (i + 1) % m;
    if (fid[s.alpha(t.pts[j].into)] != fid[t.pts[i].into])
      fail(Errc::ConfigError, "consecutive crossings do not bound a common face");
  }
}

// Component label per dart, seeded in ascending dart order so the labels
// line up with Surface::classify().
std::vector<int> component_of_darts(const Surface& s) {
  std::vector<int> comp(s.n(), -1);
  int next = 0;
  for (int d0 = 0; d0 < s.n(); ++d0) {
    if (comp[d0] != -1) continue;
    comp[d0] = next;
    std::vector<int> stack{d0};
    while (!stack.empty()) {
      int d = stack.back();
      stack.pop_back();
      for (int e : {s.alpha(d), s.sigma(d)})
        if (comp[e] == -1) {
          comp[e] = next;
          stack.push_back(e);
        }
    }
    ++next;
  }
  return comp;
}

// The curve is already tight and embedded; throw it out if its complement
// shows it bounds a disk or cobounds an annulus with a hole.
void reject_inessential(const Overlay& ov) {
  CutResult cut = cut_overlay(ov, {0});
  auto comp = component_of_darts(cut.surf);
  auto info = cut.surf.classify();
  int ncomp = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
  require(ncomp == (int)info.size(), "component labels disagree with classify");
  std::vector<int> cut_cycles(info.size(), 0);
  for (auto& cyc : cut.new_cycles) {
    require(!cyc.empty(), "cut produced an empty boundary cycle");
    cut_cycles[comp[cyc[0]]]++;
  }
  for (int i = 0; i < (int)info.size(); ++i) {
    if (info[i].genus != 0 || cut_cycles[i] != 1) continue;
    if (info[i].boundary == 1) fail(Errc::TrivialCurve, "curve bounds a disk");
    if (info[i].boundary == 2)
      fail(Errc::TrivialCurve, "curve is parallel to a boundary circle");
  }
}

// Rotates (or reverses, then rotates) the strand so its crossing sequence
// starts exactly at the key.
void rotate_into_phase(const Surface& s, Strand& t, const std::vector<int>& key) {
  int m = (int)t.pts.size();
  auto try_rotations = [&](Strand& u) {
    for (int r = 0; r < m; ++r) {
      bool hit = true;
      for (int i = 0; i < m && hit; ++i) hit = u.pts[(r + i) % m].into == key[i];
      if (hit) {
        std::rotate(u.pts.begin(), u.pts.begin() + r, u.pts.end());
        return true;
      }
    }
    return false;
  };
  if (try_rotations(t)) return;
  Strand rv = reversed(s, t);
  require(try_rotations(rv), "key matches neither orientation of its own strand");
  t = rv;
}

}  // namespace

CurveClass make_curve(std::shared_ptr<const Surface> s, Strand draw) {
  if (!s) fail(Errc::ConfigError, "curve needs a surface");
  if (s->classify().size() != 1)
    fail(Errc::ConfigError, "curves live on connected surfaces");
  if (!draw.closed) fail(Errc::ConfigError, "expected a closed curve, not an arc");
  if (draw.pts.empty()) fail(Errc::ConfigError, "a curve must cross at least one edge");
  check_drawing(*s, draw);
  Config c{s, {std::move(draw)}};
  validate_config(c);
  tighten_self(c);
  Overlay ov = build_overlay(c);
  if (ov.crossings_between(0, 0) != 0)
    fail(Errc::ConfigError, "curve crosses itself; only embedded curves are supported");
  reject_inessential(ov);

  CurveClass out;
  out.home = s;
  out.home_hash = s->hash();
  out.key = corridor_key(*s, c.strands[0]);
  rotate_into_phase(*s, c.strands[0], out.key);
  Config canon{s, {c.strands[0]}};
  renormalize(canon);
  out.rep = canon.strands[0];
  return out;
}

CurveClass pushoff_curve(std::shared_ptr<const Surface> s, const std::string& edge_name) {
  if (!s) fail(Errc::ConfigError, "curve needs a surface");
  Config c{s, {}};
  append_pushoff(c, s->named_dart(edge_name));
  return make_curve(s, c.strands[0]);
}

Config pair_config(const CurveClass& a, const CurveClass& b) {
  if (a.home_hash != b.home_hash)
    fail(Errc::DomainMismatch, "curves live on different surfaces");
  Config c{a.home, {a.rep, b.rep}};
  for (auto& p : c.strands[0].pts) p.pos = p.pos * 2;
  for (auto& p : c.strands[1].pts) p.pos = p.pos * 2 + 1;
  validate_config(c);
  tighten_pair(c, 0, 1);
  return c;
}

int intersection_number(const CurveClass& a, const CurveClass& b) {
  if (a.home_hash != b.home_hash)
    fail(Errc::DomainMismatch, "curves live on different surfaces");
  if (a == b) return 0;
  Config c = pair_config(a, b);
  return pair_crossings(c, 0, 1);
}

bool is_dual(const CurveClass& a, const CurveClass& b) {
  return intersection_number(a, b) == 1;
}

bool is_nonseparating(const CurveClass& c) {
  Config cfg{c.home, {c.rep}};
  Overlay ov = build_overlay(cfg);
  CutResult cut = cut_overlay(ov, {0});
  return cut.surf.classify().size() == 1;
}

bool same_curve_checked(const CurveClass& a, const CurveClass& b) {
  if (a.home_hash != b.home_hash) return false;
  bool by_key = a == b;

  Config c = pair_config(a, b);
  bool cobound = false;
  if (pair_crossings(c, 0, 1) == 0) {
    Overlay ov = build_overlay(c);
    CutResult cut = cut_overlay(ov, {0, 1});
    std::vector<int> pre(cut.surf.n(), -1);
    for (int d = 0; d < (int)cut.image.size(); ++d)
      if (cut.image[d] != -1) pre[cut.image[d]] = d;
    auto comp = component_of_darts(cut.surf);
    auto info = cut.surf.classify();
    // which strand each cut circle came from, and in which component it sits
    std::map<int, std::set<int>> strands_in_comp;
    std::map<int, int> circles_in_comp;
    for (auto& cyc : cut.new_cycles) {
      int strand = -1;
      for (int h : cyc) {
        int w = pre[cut.surf.alpha(h)];
        if (w == -1) continue;
        int sw = ov.dart[w].strand;
        require(strand == -1 || strand == sw, "cut circle mixes two disjoint strands");
        strand = sw;
      }
      require(strand != -1, "cut circle with no strand attached");
      strands_in_comp[comp[cyc[0]]].insert(strand);
      circles_in_comp[comp[cyc[0]]]++;
    }
    for (auto& [ci, strands] : strands_in_comp) {
      if (info[ci].genus != 0 || info[ci].boundary != 2) continue;
      if (circles_in_comp[ci] == 2 && strands.count(0) && strands.count(1)) cobound = true;
    }
  }
  require(cobound == by_key, "canonical keys and the annulus test disagree");
  return by_key;
}

namespace {

struct Graft {
  int ca = -1, sa = -1;  // crossing slot along the twist curve
  int cb = -1, sb = -1;  // crossing slot along the target
  int u_side = -1;       // side of the twist curve the target arrives from
};

// One right- or left-handed twist of `target` about `about`, both embedded
// closed strands on the same surface. The two are first put in minimal
// position; each of the k crossings is then replaced by a full circuit of
// the twist curve. Heights realize the usual annulus shear: a circuit enters
// on the innermost track and climbs one track each time it passes another
// crossing, so the k circuits spiral around each other without meeting.
Strand twist_once(const std::shared_ptr<const Surface>& home, const Strand& about,
                  Strand target, bool forward_winding) {
  const Surface& S = *home;
  Config c{home, {about, std::move(target)}};
  for (auto& p : c.strands[0].pts) p.pos = p.pos * 2;
  for (auto& p : c.strands[1].pts) p.pos = p.pos * 2 + 1;
  validate_config(c);
  tighten_pair(c, 0, 1);
  Overlay ov = build_overlay(c);
  int k = ov.crossings_between(0, 1);
  if (k == 0) return c.strands[1];

  const Strand& C = c.strands[0];
  const int mc = (int)C.pts.size();
  const long long scale = 4LL * k + 4;

  auto xings_on = [&](int strand, int cor) -> const std::vector<int>* {
    auto it = ov.corridor_xings.find({strand, cor});
    return it == ov.corridor_xings.end() ? nullptr : &it->second;
  };
  auto xcount = [&](int cor) {
    const auto* v = xings_on(0, cor);
    return v ? (int)v->size() : 0;
  };

  std::map<int, Graft> grafts;
  for (int id = 0; id < (int)ov.crossings.size(); ++id) {
    const OCrossing& x = ov.crossings[id];
    require(x.strand_a == 0 && x.strand_b == 1, "unexpected crossing between embedded curves");
    Graft g;
    g.ca = x.corridor_a;
    g.sa = x.seg_a;
    g.cb = x.corridor_b;
    g.sb = x.seg_b;
    // germs at the crossing: the onward germ of the twist curve has its left
    // region ahead of it, so its sigma-successor is the target germ on the
    // right of the forward direction
    int c_post = -1, b_pre = -1;
    for (int d : ov.verts[x.vertex]) {
      const ODartInfo& di = ov.dart[d];
      require(di.kind == OEdgeKind::Wall, "crossing vertex touches a base edge");
      if (di.strand == 0 && di.side == 0) c_post = d;
      if (di.strand == 1 && di.side == 1) b_pre = d;
    }
    require(c_post != -1 && b_pre != -1, "crossing vertex is missing a germ");
    g.u_side = ov.o.sigma(c_post) == b_pre ? 1 : 0;
    grafts[id] = g;
  }
  require((int)grafts.size() == k, "graft bookkeeping lost a crossing");

  for (auto& s : c.strands)
    for (auto& p : s.pts) p.pos *= scale;

  // Track index of one circuit at every point of the twist curve, walking in
  // the winding direction from the crossing it replaces.
  auto circuit_ranks = [&](const Graft& g) {
    std::vector<int> rank_at(mc, 0);
    int acc = forward_winding ? xcount(g.ca) - 1 - g.sa : g.sa;
    for (int t = 1; t <= mc; ++t) {
      int p = forward_winding ? (g.ca + t) % mc : ((g.ca - t + 1) % mc + mc) % mc;
      if (t > 1) acc += xcount(forward_winding ? (p - 1 + mc) % mc : p);
      rank_at[p] = 1 + acc;
      require(rank_at[p] >= 1 && rank_at[p] <= k, "circuit track out of range");
    }
    return rank_at;
  };

  auto graft_seq = [&](const Graft& g) {
    std::vector<int> rank_at = circuit_ranks(g);
    // the circuit is entered at its low end, which is the start of the
    // winding walk; arriving from side 0 means running it the other way
    bool along = (g.u_side == 1) == forward_winding;
    std::vector<StrandPoint> seq;
    for (int t = 1; t <= mc; ++t) {
      int p = along ? (g.ca + t) % mc : ((g.ca - t + 1) % mc + mc) % mc;
      int gin = C.pts[p].into;
      int toward0 = gin == S.edge_of(gin) ? -1 : +1;
      StrandPoint np;
      np.into = along ? gin : S.alpha(gin);
      np.pos = C.pts[p].pos + (long long)toward0 * (4LL * rank_at[p] - 2LL * k - 1);
      seq.push_back(np);
    }
    return seq;
  };

  Strand out;
  out.closed = true;
  const Strand& B = c.strands[1];
  for (int j = 0; j < (int)B.pts.size(); ++j) {
    out.pts.push_back(B.pts[j]);
    const auto* list = xings_on(1, j);
    if (!list) continue;
    for (int id : *list) {
      auto seq = graft_seq(grafts.at(id));
      out.pts.insert(out.pts.end(), seq.begin(), seq.end());
    }
  }

  Config done{home, {c.strands[0], out}};
  validate_config(done);
  renormalize(done);
  Overlay verify = build_overlay(done);
  require(verify.crossings_between(1, 1) == 0, "twisted curve crosses itself");
  require(verify.crossings_between(0, 1) == k, "twist changed the crossing count");
  return done.strands[1];
}

}  // namespace

CurveClass dehn_twist(const CurveClass& about, int sign, const CurveClass& target) {
  if (about.home_hash != target.home_hash)
    fail(Errc::DomainMismatch, "curves live on different surfaces");
  if (sign == 0) return target;
  Strand b = target.rep;
  for (int i = 0; i < std::abs(sign); ++i)
    b = twist_once(target.home, about.rep, std::move(b), sign > 0);
  return make_curve(target.home, std::move(b));
}

CurveClass apply_twist_word(const TwistWord& w, CurveClass c) {
  for (const auto& letter : w) c = dehn_twist(letter.about, letter.sign, c);
  return c;
}

std::vector<CurveClass> neighborhood_boundary(const CurveClass& a, const CurveClass& b) {
  Config c = pair_config(a, b);
  Overlay ov = build_overlay(c);
  auto walls = neighborhood_boundary_strands(ov, {0, 1});
  std::vector<CurveClass> out;
  for (auto& s : walls) {
    try {
      out.push_back(make_curve(a.home, s));
    } catch (const Error& e) {
      if (e.code != Errc::TrivialCurve) throw;
    }
  }
  return out;
}

TorusFrame torus_frame(std::shared_ptr<const Surface> s) {
  if (!s) fail(Errc::ConfigError, "curve needs a surface");
  auto info = s->classify();
  if (info.size() != 1 || info[0].genus != 1)
    fail(Errc::DomainMismatch, "coordinates are defined on connected genus-one surfaces");
  TorusFrame f;
  f.a = pushoff_curve(s, "a");
  f.b = pushoff_curve(s, "b");
  f.d = dehn_twist(f.a, +1, f.b);
  return f;
}

std::pair<long long, long long> torus_coordinates(const TorusFrame& f, const CurveClass& c) {
  if (c.home_hash != f.a.home_hash)
    fail(Errc::DomainMismatch, "curve does not live on the frame's surface");
  long long q = intersection_number(c, f.a);
  long long p = intersection_number(c, f.b);
  long long m = intersection_number(c, f.d);
  if (p == 0) {
    require(q == 1 && m == 1, "crossing data does not fit any embedded class");
    return {0, 1};
  }
  if (q == 0) {
    require(p == 1 && m == 1, "crossing data does not fit any embedded class");
    return {1, 0};
  }
  require(std::gcd(p, q) == 1, "crossing data describes a nonprimitive class");
  bool same = m == std::llabs(p - q);
  bool opposite = m == p + q;
  require(same != opposite, "crossing data does not fit any embedded class");
  return {p, same ? q : -q};
}

std::pair<long long, long long> torus_coordinates(const CurveClass& c) {
  return torus_coordinates(torus_frame(c.home), c);
}

CurveClass torus_curve(std::shared_ptr<const Surface> s, long long p, long long q) {
  if (p == 0 && q == 0) fail(Errc::ConfigError, "curve coordinates cannot both vanish");
  if (std::gcd(std::llabs(p), std::llabs(q)) != 1)
    fail(Errc::ConfigError, "coordinates must be primitive");
  if (p < 0 || (p == 0 && q < 0)) {
    p = -p;
    q = -q;
  }
  TorusFrame f = torus_frame(s);
  std::pair<long long, long long> want{p, q};
  long long bound = std::max(std::llabs(p), std::llabs(q));

  // Twists of the basis loops reach every primitive pair, and the mediant
  // ladder to (p, q) never overshoots its larger entry, so the search can
  // prune hard at the bound.
  std::map<std::pair<long long, long long>, CurveClass> seen;
  std::deque<std::pair<long long, long long>> frontier;
  auto admit = [&](const CurveClass& x) {
    auto pq = torus_coordinates(f, x);
    if (std::max(std::llabs(pq.first), std::llabs(pq.second)) > bound) return false;
    if (seen.count(pq)) return false;
    seen.emplace(pq, x);
    frontier.push_back(pq);
    return true;
  };
  admit(f.a);
  admit(f.b);
  admit(f.d);
  while (!frontier.empty()) {
    auto at = frontier.front();
    frontier.pop_front();
    if (auto it = seen.find(want); it != seen.end()) return it->second;
    const CurveClass& cur = seen.at(at);
    for (const CurveClass* gen : {&f.a, &f.b})
      for (int sgn : {+1, -1}) admit(dehn_twist(*gen, sgn, cur));
  }
  if (auto it = seen.find(want); it != seen.end()) return it->second;
  fail(Errc::Internal, "twist search missed a primitive class inside its bound");
}

std::string curve_to_json_text(const CurveClass& c) {
  const Surface& s = *c.home;
  auto fid = s.face_ids();
  nlohmann::json j;
  j["surface"] = c.home_hash;
  nlohmann::json steps = nlohmann::json::array();
  nlohmann::json order = nlohmann::json::array();
  int m = (int)c.rep.pts.size();
  for (int i = 0; i < m; ++i) {
    int enter = c.rep.pts[i].into;
    int leave = s.alpha(c.rep.pts[(i + 1) % m].into);
    steps.push_back({fid[enter], enter, leave});
    order.push_back(c.rep.pts[i].pos);
  }
  j["steps"] = steps;
  j["order"] = order;
  auto info = s.classify();
  if (info.size() == 1 && info[0].genus == 1) {
    auto pq = torus_coordinates(c);
    j["torus"] = {pq.first, pq.second};
  }
  return j.dump(2) + "\n";
}

CurveClass curve_from_json_text(std::shared_ptr<const Surface> s, const std::string& text) {
  if (!s) fail(Errc::ConfigError, "curve needs a surface");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
    fail(Errc::ConfigError, "curve text is not valid JSON");
  }
  if (!j.is_object() || !j.contains("surface") || !j.contains("steps") || !j.contains("order"))
    fail(Errc::ConfigError, "curve text is missing surface, steps, or order");
  if (j["surface"].get<std::uint64_t>() != s->hash())
    fail(Errc::DomainMismatch, "drawing belongs to a different surface");
  const auto& steps = j["steps"];
  const auto& order = j["order"];
  if (!steps.is_array() || !order.is_array() || steps.size() != order.size() || steps.empty())
    fail(Errc::ConfigError, "steps and order must be parallel nonempty lists");
  auto fid = s->face_ids();
  Strand t;
  t.closed = true;
  int m = (int)steps.size();
  for (int i = 0; i < m; ++i) {
    const auto& st = steps[i];
    if (!st.is_array() || st.size() != 3) fail(Errc::ConfigError, "each step is a triple");
    StrandPoint p;
    p.into = st[1].get<int>();
    p.pos = order[i].get<long long>();
    t.pts.push_back(p);
  }
  for (int i = 0; i < m; ++i) {
    const auto& st = steps[i];
    int into = t.pts[i].into;
    if (into < 0 || into >= s->n()) fail(Errc::ConfigError, "crossing dart out of range");
    if (st[0].get<int>() != fid[into] ||
        st[2].get<int>() != s->alpha(t.pts[(i + 1) % m].into))
      fail(Errc::ConfigError, "steps do not chain through the faces they claim");
  }
  return make_curve(s, std::move(t));
}

}  // namespace curvex
