#include "curvex/surface.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "curvex/hash.hpp"
#include "json.hpp"

namespace curvex {

Surface::Surface(std::vector<int> alpha, std::vector<int> sigma, std::vector<char> hole)
    : alpha_(std::move(alpha)), sigma_(std::move(sigma)), hole_(std::move(hole)) {
  require(alpha_.size() == sigma_.size() && alpha_.size() == hole_.size(),
          "surface permutation arrays must have equal length");
  sigma_inv_.assign(sigma_.size(), -1);
  for (int d = 0; d < (int)sigma_.size(); ++d) {
    int s = sigma_[d];
    require(s >= 0 && s < (int)sigma_.size() && sigma_inv_[s] == -1,
            "rotation must be a permutation");
    sigma_inv_[s] = d;
  }
  validate();
}

int Surface::named_dart(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) fail(Errc::ConfigError, "unknown edge name: " + name);
  return it->second;
}

void Surface::set_name(const std::string& name, int dart) {
  require(dart >= 0 && dart < n(), "edge name points outside the surface");
  names_[name] = dart;
}

static std::vector<std::vector<int>> orbits_of(int n, const std::function<int(int)>& step) {
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int d = 0; d < n; ++d) {
    if (seen[d]) continue;
    std::vector<int> orbit;
    int x = d;
    while (!seen[x]) {
      seen[x] = 1;
      orbit.push_back(x);
      x = step(x);
    }
    require(x == d, "orbit walk must return to its start");
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<std::vector<int>> Surface::faces() const {
  return orbits_of(n(), [this](int d) { return next_in_face(d); });
}

std::vector<std::vector<int>> Surface::vertices() const {
  return orbits_of(n(), [this](int d) { return sigma_[d]; });
}

std::vector<std::vector<int>> Surface::boundary_cycles() const {
  std::vector<std::vector<int>> out;
  for (auto& f : faces())
    if (hole_[f[0]]) out.push_back(f);
  return out;
}

std::vector<int> Surface::edge_reps() const {
  std::vector<int> out;
  for (int d = 0; d < n(); ++d)
    if (d < alpha_[d]) out.push_back(d);
  return out;
}

std::vector<int> Surface::face_ids() const {
  std::vector<int> id(n(), -1);
  for (auto& f : faces()) {
    int m = *std::min_element(f.begin(), f.end());
    for (int d : f) id[d] = m;
  }
  return id;
}

std::vector<Surface::ComponentInfo> Surface::classify() const {
  // Flood over both permutations to find components, then count orbits per
  // component and read genus off the Euler characteristic.
  std::vector<int> comp(n(), -1);
  int ncomp = 0;
  for (int d = 0; d < n(); ++d) {
    if (comp[d] != -1) continue;
    std::vector<int> stack{d};
    comp[d] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : {alpha_[x], sigma_[x]}) {
        if (comp[y] == -1) {
          comp[y] = ncomp;
          stack.push_back(y);
        }
      }
    }
    ++ncomp;
  }
  std::vector<int> verts(ncomp, 0), edges(ncomp, 0), realf(ncomp, 0), holes(ncomp, 0),
      darts(ncomp, 0);
  for (auto& v : vertices()) verts[comp[v[0]]]++;
  for (int d : edge_reps()) edges[comp[d]]++;
  for (auto& f : faces()) (hole_[f[0]] ? holes : realf)[comp[f[0]]]++;
  for (int d = 0; d < n(); ++d) darts[comp[d]]++;

  std::vector<ComponentInfo> out(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    int chi = verts[c] - edges[c] + realf[c];
    int twog = 2 - chi - holes[c];
    require(twog >= 0 && twog % 2 == 0, "Euler characteristic incompatible with an orientable surface");
    out[c] = ComponentInfo{twog / 2, holes[c], darts[c]};
  }
  return out;
}

bool Surface::connected() const { return classify().size() == 1; }

int Surface::genus() const {
  auto c = classify();
  require(c.size() == 1, "genus of a disconnected surface is undefined");
  return c[0].genus;
}

int Surface::boundary_count() const {
  auto c = classify();
  require(c.size() == 1, "boundary count of a disconnected surface is undefined");
  return c[0].boundary;
}

int Surface::euler_characteristic() const {
  int realf = 0;
  for (auto& f : faces())
    if (!hole_[f[0]]) realf++;
  return (int)vertices().size() - edge_count() + realf;
}

void Surface::validate() const {
  int N = n();
  require(N % 2 == 0, "dart count must be even");
  for (int d = 0; d < N; ++d) {
    require(alpha_[d] >= 0 && alpha_[d] < N, "involution out of range");
    require(alpha_[alpha_[d]] == d, "involution must be an involution");
    require(alpha_[d] != d, "involution must have no fixed darts");
    require(!(hole_[d] && hole_[alpha_[d]]), "an edge cannot have holes on both sides");
  }
  for (auto& f : faces()) {
    for (int d : f) require(hole_[d] == hole_[f[0]], "hole marking must be constant on a face");
  }
  classify();  // throws if any component fails the characteristic check
}

std::uint64_t Surface::hash() const {
  std::string bytes;
  bytes.reserve(alpha_.size() * 8);
  auto put = [&](int v) {
    bytes += std::to_string(v);
    bytes += ',';
  };
  put(n());
  for (int d = 0; d < n(); ++d) put(alpha_[d]);
  for (int d = 0; d < n(); ++d) put(sigma_[d]);
  for (int d = 0; d < n(); ++d) put(hole_[d]);
  return fnv1a64(bytes);
}

Assembled assemble_from_faces(const std::vector<std::vector<long long>>& faces,
                              const std::vector<std::pair<long long, long long>>& pairing) {
  std::unordered_map<long long, int> dart_of;
  std::vector<int> phi_real;  // successor within the input walk
  for (auto& walk : faces) {
    require(walk.size() >= 1, "face walk cannot be empty");
    int first = (int)phi_real.size();
    for (long long tok : walk) {
      auto [it, fresh] = dart_of.emplace(tok, (int)phi_real.size());
      require(fresh, "side token used twice");
      (void)it;
      phi_real.push_back((int)phi_real.size() + 1);
    }
    phi_real.back() = first;
  }
  int R = (int)phi_real.size();

  std::vector<int> mate(R, -1);
  for (auto& [s, t] : pairing) {
    auto is = dart_of.find(s), it = dart_of.find(t);
    require(is != dart_of.end() && it != dart_of.end(), "pairing refers to an unknown side");
    int ds = is->second, dt = it->second;
    require(ds != dt, "side cannot be glued to itself");
    require(mate[ds] == -1 && mate[dt] == -1, "side glued twice");
    mate[ds] = dt;
    mate[dt] = ds;
  }

  std::vector<int> hole_id(R, -1);
  int H = 0;
  for (int d = 0; d < R; ++d)
    if (mate[d] == -1) hole_id[d] = R + H++;

  int N = R + H;
  std::vector<int> alpha(N, -1), phi(N, -1);
  std::vector<char> hole(N, 0);
  for (int d = 0; d < R; ++d) {
    phi[d] = phi_real[d];
    if (mate[d] != -1) {
      alpha[d] = mate[d];
    } else {
      alpha[d] = hole_id[d];
      alpha[hole_id[d]] = d;
      hole[hole_id[d]] = 1;
    }
  }
  // Stitch the hole faces: from an unmatched side, the next boundary side
  // around the walk direction is found by pivoting through glued corners.
  for (int u = 0; u < R; ++u) {
    if (mate[u] != -1) continue;
    int s = phi_real[u];
    while (mate[s] != -1) s = phi_real[mate[s]];
    require(phi[hole_id[s]] == -1, "boundary walk visited a side twice");
    phi[hole_id[s]] = hole_id[u];
  }

  std::vector<int> sigma(N, -1);
  for (int d = 0; d < N; ++d) sigma[d] = phi[alpha[d]];

  Assembled out{Surface(std::move(alpha), std::move(sigma), std::move(hole)),
                std::move(dart_of)};
  return out;
}

namespace {

// Token ranges for the preset builder; walks are small so flat offsets do.
constexpr long long kSide = 0;
constexpr long long kDiagFwd = 1000;
constexpr long long kDiagRev = 2000;

struct PolygonPlan {
  std::vector<std::vector<long long>> faces;
  std::vector<std::pair<long long, long long>> pairing;
};

PolygonPlan fan_triangulate(int k) {
  require(k >= 3, "polygon needs at least 3 sides");
  PolygonPlan p;
  if (k == 3) {
    p.faces.push_back({kSide + 0, kSide + 1, kSide + 2});
    return p;
  }
  p.faces.push_back({kSide + 0, kSide + 1, kDiagRev + 2});
  for (int j = 2; j <= k - 3; ++j) {
    p.faces.push_back({kDiagFwd + j, kSide + j, kDiagRev + j + 1});
    p.pairing.emplace_back(kDiagFwd + j, kDiagRev + j);
  }
  p.faces.push_back({kDiagFwd + (k - 2), kSide + (k - 2), kSide + (k - 1)});
  p.pairing.emplace_back(kDiagFwd + (k - 2), kDiagRev + (k - 2));
  return p;
}

// Handle pairs use these letters; "h" is reserved for boundary edges and the
// connector letters come from the end of the alphabet.
const char* handle_letters[6] = {"ab", "cd", "ef", "gi", "jk", "lm"};
const char* connector_letters = "zyxwvutsrqpon";

}  // namespace

Surface build_surface(int genus, int boundary) {
  if (genus <= 0) fail(Errc::UnsupportedSurface, "unsupported: positive genus required");
  require(boundary >= 0, "boundary count cannot be negative");
  if (genus > 6 || boundary > 13)
    fail(Errc::UnsupportedSurface, "preset range is genus <= 6 with at most 13 boundary circles");

  // The polygon word: handle commutators a b A B ..., then the boundary
  // edges. A single boundary edge can share the base vertex, but circles
  // after the first are kept apart by interior connector edges; a boundary
  // point of a manifold lies on exactly one circle, so distinct circles can
  // never share a vertex and each connector contributes the fresh vertex its
  // circle needs.
  std::vector<std::string> word;
  for (int m = 0; m < genus; ++m) {
    word.push_back(std::string(1, handle_letters[m][0]));
    word.push_back(std::string(1, handle_letters[m][1]));
    word.push_back(std::string(1, (char)std::toupper((unsigned char)handle_letters[m][0])));
    word.push_back(std::string(1, (char)std::toupper((unsigned char)handle_letters[m][1])));
  }
  if (boundary >= 1) word.push_back("h1");
  for (int j = 2; j <= boundary; ++j) {
    char c = connector_letters[j - 2];
    word.push_back(std::string(1, c));
    word.push_back("h" + std::to_string(j));
    word.push_back(std::string(1, (char)std::toupper((unsigned char)c)));
  }

  Surface s = polygon_word_surface(word);
  for (int j = 2; j <= boundary; ++j)
    s.set_name("link" + std::to_string(j), s.named_dart(std::string(1, connector_letters[j - 2])));

  auto info = s.classify();
  require(info.size() == 1 && info[0].genus == genus && info[0].boundary == boundary,
          "preset failed its own classification");
  size_t expected_vertices = boundary <= 1 ? 1 : (size_t)boundary;
  require(s.vertices().size() == expected_vertices, "preset vertex count drifted");
  return s;
}

Surface polygon_word_surface(const std::vector<std::string>& word) {
  int k = (int)word.size();
  PolygonPlan plan = fan_triangulate(k);
  std::map<char, int> lower_at, upper_at;
  for (int i = 0; i < k; ++i) {
    const std::string& t = word[i];
    require(!t.empty(), "empty token in polygon word");
    if (t.size() == 1 && std::islower((unsigned char)t[0])) {
      require(!lower_at.count(t[0]), "letter repeated in polygon word");
      lower_at[t[0]] = i;
    } else if (t.size() == 1 && std::isupper((unsigned char)t[0])) {
      char c = (char)std::tolower((unsigned char)t[0]);
      require(!upper_at.count(c), "letter repeated in polygon word");
      upper_at[c] = i;
    }
    // multi-character tokens stay unmatched
  }
  require(lower_at.size() == upper_at.size(), "unbalanced letters in polygon word");
  for (auto& [c, i] : lower_at) {
    require(upper_at.count(c), "letter missing its partner in polygon word");
    plan.pairing.emplace_back(kSide + i, kSide + upper_at[c]);
  }
  Assembled a = assemble_from_faces(plan.faces, plan.pairing);
  Surface s = std::move(a.surface);
  for (int i = 0; i < k; ++i) {
    const std::string& t = word[i];
    bool is_upper = t.size() == 1 && std::isupper((unsigned char)t[0]);
    if (!is_upper) s.set_name(t, a.dart_of_side.at(kSide + i));
  }
  for (int j = 2; j <= k - 2; ++j)
    s.set_name("diag" + std::to_string(j), a.dart_of_side.at(kDiagFwd + j));
  return s;
}

std::string surface_to_json(const Surface& s) {
  auto comps = s.classify();
  if (comps.size() != 1)
    fail(Errc::DomainMismatch, "cannot serialize a disconnected surface; split it first");
  nlohmann::json j;
  j["version"] = 1;
  j["darts"] = s.n();
  std::vector<int> alpha(s.n()), sigma(s.n());
  for (int d = 0; d < s.n(); ++d) {
    alpha[d] = s.alpha(d);
    sigma[d] = s.sigma(d);
  }
  j["involution"] = alpha;
  j["rotation"] = sigma;
  auto cycles = s.boundary_cycles();
  for (auto& c : cycles) std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  std::sort(cycles.begin(), cycles.end());
  j["boundary"] = cycles;
  j["genus"] = comps[0].genus;
  j["r"] = comps[0].boundary;
  return j.dump(2) + "\n";
}

Surface surface_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::FormatError, std::string("surface document is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != 1)
      fail(Errc::FormatError, "unknown surface document version");
    int n = j.at("darts").get<int>();
    auto alpha = j.at("involution").get<std::vector<int>>();
    auto sigma = j.at("rotation").get<std::vector<int>>();
    if ((int)alpha.size() != n || (int)sigma.size() != n)
      fail(Errc::FormatError, "permutation arrays disagree with the dart count");
    std::vector<char> hole(n, 0);
    for (auto& cyc : j.at("boundary")) {
      for (auto& d : cyc) {
        int dd = d.get<int>();
        if (dd < 0 || dd >= n) fail(Errc::FormatError, "boundary dart out of range");
        hole[dd] = 1;
      }
    }
    Surface s(std::move(alpha), std::move(sigma), std::move(hole));
    auto comps = s.classify();
    if (comps.size() != 1 || comps[0].genus != j.at("genus").get<int>() ||
        comps[0].boundary != j.at("r").get<int>())
      fail(Errc::FormatError, "stored genus/boundary disagree with the permutation data");
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::FormatError, std::string("malformed surface document: ") + e.what());
  } catch (const Error& e) {
    if (e.code == Errc::Internal)
      fail(Errc::FormatError, std::string("surface document fails validation: ") + e.what());
    throw;
  }
}

}  // namespace curvex
