// scratch probe for the complexes module, not part of the build for long
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "curvex/curves.hpp"
#include "curvex/overlay.hpp"
#include "curvex/strands.hpp"
#include "curvex/surface.hpp"
#include "curvex/tighten.hpp"

using namespace curvex;

static std::string dart_name(const Surface& s, int d) {
  for (auto& [nm, id] : s.named_darts()) {
    if (id == d) return nm;
    if (s.alpha(id) == d) return nm + "'";
  }
  return "#" + std::to_string(d);
}

static void dump_preset(const Surface& s) {
  auto fid = s.face_ids();
  std::printf("darts=%d faces:\n", s.n());
  for (auto& walk : s.faces()) {
    std::printf("  f%d:", fid[walk[0]]);
    for (int d : walk) std::printf(" %s(%d)", dart_name(s, d).c_str(), d);
    std::printf("\n");
  }
  std::printf("named:");
  for (auto& [nm, id] : s.named_darts())
    std::printf(" %s=%d(f%d,af%d)", nm.c_str(), id, fid[id], fid[s.alpha(id)]);
  std::printf("\n");
}

// Build a closed strand from a list of edge names: at each step pick the dart
// copy whose alpha-face matches the face we are currently in.
static Strand route_strand(const Surface& s, const std::vector<std::string>& names) {
  auto fid = s.face_ids();
  // try both faces adjacent to the first edge as the starting room
  for (int start_side = 0; start_side < 2; ++start_side) {
    int d0 = s.named_darts().at(names[0]);
    if (start_side == 1) d0 = s.alpha(d0);
    int cur = fid[s.alpha(d0)];
    Strand t;
    t.closed = true;
    bool ok = true;
    for (size_t i = 0; i < names.size(); ++i) {
      int nd = s.named_darts().at(names[i]);
      int into = -1;
      if (fid[s.alpha(nd)] == cur)
        into = nd;
      else if (fid[nd] == cur)
        into = s.alpha(nd);
      if (into < 0) {
        ok = false;
        break;
      }
      t.pts.push_back({into, (long long)i});
      cur = fid[into];
    }
    if (ok && !t.pts.empty() && fid[s.alpha(t.pts[0].into)] == cur) return t;
  }
  std::printf("route failed\n");
  std::exit(1);
}

static void show_curve(const Surface& s, const char* nm, const CurveClass& c) {
  std::printf("%s: key=[", nm);
  for (size_t i = 0; i < c.key.size(); ++i) std::printf("%s%d", i ? " " : "", c.key[i]);
  std::printf("] pts=");
  for (auto& p : c.rep.pts) std::printf("%s ", dart_name(s, p.into).c_str());
  std::printf("nonsep=%d\n", (int)is_nonseparating(c));
}

static int components_when_cut_together(const CurveClass& a, const CurveClass& b) {
  Config c = pair_config(a, b);
  Overlay ov = build_overlay(c);
  CutResult cut = cut_overlay(ov, {0, 1});
  return (int)cut.surf.classify().size();
}

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  auto s = share(build_surface(2, 0));
  std::printf("== P1 genus-2 preset ==\n");
  dump_preset(*s);

  std::printf("== P2 frame pushoffs ==\n");
  CurveClass A1 = pushoff_curve(s, "a"), B1 = pushoff_curve(s, "b");
  CurveClass A2 = pushoff_curve(s, "c"), B2 = pushoff_curve(s, "d");
  show_curve(*s, "a1", A1);
  show_curve(*s, "b1", B1);
  show_curve(*s, "a2", A2);
  show_curve(*s, "b2", B2);
  auto nb = neighborhood_boundary(A1, B1);
  std::printf("waist circles=%zu\n", nb.size());
  CurveClass W0 = nb[0];

  std::printf("== P3 bridge ==\n");
  Strand raw = route_strand(*s, {"b", "diag4", "diag5", "d", "diag6", "diag5", "diag4", "diag3", "diag2"});
  CurveClass w = make_curve(s, raw);
  show_curve(*s, "w", w);
  std::printf("i(w,a1)=%d i(w,b1)=%d i(w,a2)=%d i(w,b2)=%d i(w,waist)=%d\n",
              intersection_number(w, A1), intersection_number(w, B1), intersection_number(w, A2),
              intersection_number(w, B2), intersection_number(w, W0));

  std::printf("== P4 pentagon fifth curve ==\n");
  // want q with i(q,b2)=1, i(q,a1)=1, i(q,b1)=0, i(q,w)=0
  std::vector<std::pair<std::string, CurveClass>> alpha = {
      {"a1", A1}, {"b1", B1}, {"a2", A2}, {"b2", B2}, {"w", w}};
  struct Item {
    std::string word;
    CurveClass c;
  };
  std::vector<Item> layer = {{"w", w}};
  bool found = false;
  for (int depth = 1; depth <= 3 && !found; ++depth) {
    std::vector<Item> next;
    for (auto& it : layer) {
      for (auto& [nm, g] : alpha) {
        for (int sgn : {+1, -1}) {
          if (intersection_number(g, it.c) == 0) continue;
          Item ni{nm + (sgn > 0 ? "+" : "-") + " " + it.word, dehn_twist(g, sgn, it.c)};
          int ib2 = intersection_number(ni.c, B2);
          int ia1 = intersection_number(ni.c, A1);
          if (ib2 == 1 && ia1 == 1 && intersection_number(ni.c, B1) == 0 &&
              intersection_number(ni.c, w) == 0) {
            std::printf("  c5 = [%s](w) key size=%zu\n", ni.word.c_str(), ni.c.key.size());
            show_curve(*s, "c5", ni.c);
            found = true;
          }
          next.push_back(std::move(ni));
          if (found) break;
        }
        if (found) break;
      }
      if (found) break;
    }
    layer = std::move(next);
  }
  if (!found) std::printf("  no c5 within depth 3\n");

  std::printf("== P5 homologous disjoint partner of a1 ==\n");
  // a1's loop with a commutator detour around handle 2: same homology class,
  // different isotopy class, and the union should split the surface in two.
  std::vector<int> seq = {3, 6, 9, 16, 13, 15, 10, 12, 15, 14, 17, 14, 11, 8, 1};
  std::map<int, std::vector<int>> slots;  // edge -> indices in seq
  for (int i = 0; i < (int)seq.size(); ++i) slots[std::min(seq[i], s->alpha(seq[i]))].push_back(i);
  std::vector<std::vector<int>> multi;
  for (auto& [e, idx] : slots)
    if (idx.size() > 1) multi.push_back(idx);
  std::vector<int> perm_pick(multi.size(), 0);
  auto build_try = [&](const std::vector<std::vector<int>>& orders) -> bool {
    Strand t;
    t.closed = true;
    std::vector<long long> pos(seq.size());
    for (size_t i = 0; i < seq.size(); ++i) pos[i] = (long long)i;
    for (auto& ord : orders)
      for (size_t r = 0; r < ord.size(); ++r) pos[ord[r]] = 100 + (long long)r;
    // keep distinct positions per edge only; reuse of values across edges is fine
    for (size_t i = 0; i < seq.size(); ++i) t.pts.push_back({seq[i], pos[i]});
    try {
      CurveClass cand = make_curve(s, t);
      if (cand == A1) return false;
      if (!is_nonseparating(cand)) return false;
      if (intersection_number(cand, A1) != 0) return false;
      if (components_when_cut_together(A1, cand) != 2) return false;
      std::printf("  found: key=[");
      for (size_t i = 0; i < cand.key.size(); ++i) std::printf("%s%d", i ? " " : "", cand.key[i]);
      std::printf("] orders:");
      for (auto& ord : orders) {
        std::printf(" (");
        for (size_t r = 0; r < ord.size(); ++r) std::printf("%s%d", r ? " " : "", ord[r]);
        std::printf(")");
      }
      std::printf("\n");
      Config pc = pair_config(A1, cand);
      Overlay po = build_overlay(pc);
      CutResult pcut = cut_overlay(po, {0, 1});
      for (auto& ci : pcut.surf.classify())
        std::printf("  piece genus=%d boundary=%d\n", ci.genus, ci.boundary);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  bool got = false;
  std::vector<std::vector<int>> orders(multi.size());
  std::function<void(size_t)> rec = [&](size_t k) {
    if (got) return;
    if (k == multi.size()) {
      got = build_try(orders);
      return;
    }
    std::vector<int> idx = multi[k];
    std::sort(idx.begin(), idx.end());
    do {
      orders[k] = idx;
      rec(k + 1);
      if (got) return;
    } while (std::next_permutation(idx.begin(), idx.end()));
  };
  rec(0);
  if (!got) std::printf("  no embedded assignment worked\n");

  std::printf("== P6 standard system complement ==\n");
  Config sys = pair_config(A1, A2);
  Overlay ov = build_overlay(sys);
  std::printf("a1-a2 crossings=%d\n", ov.crossings_between(0, 1));
  CutResult cut = cut_overlay(ov, {0, 1});
  for (auto& ci : cut.surf.classify())
    std::printf("  comp genus=%d boundary=%d\n", ci.genus, ci.boundary);
  return 0;
}
