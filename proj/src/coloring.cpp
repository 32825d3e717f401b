#include "hexcol/coloring.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>

#include "hexcol/congruence.hpp"
#include "hexcol/errors.hpp"

namespace hexcol {

bool verify_proper(const PlanarMap& m, const std::vector<int>& colors,
                   int max_colors) {
  if ((int)colors.size() != m.n_faces()) return false;
  for (FaceId f = 0; f < m.n_faces(); f++) {
    if (!m.face_bounded(f)) continue;
    if (colors[f] < 1 || colors[f] > max_colors) return false;
    for (Dart d : m.faces[f]) {
      FaceId g = m.dart_face[PlanarMap::twin(d)];
      if (g == f || (m.face_bounded(g) && colors[g] == colors[f])) return false;
    }
  }
  return true;
}

bool verify_zoned(const PlanarMap& m, const Coloring& col) {
  if (!verify_proper(m, col.colors)) return false;
  if ((int)col.zones.size() != m.n_faces()) return false;
  std::map<int, std::set<int>> palette;
  for (FaceId f = 0; f < m.n_faces(); f++) {
    if (!m.face_bounded(f)) continue;
    if (col.zones[f] < 0) return false;
    palette[col.zones[f]].insert(col.colors[f]);
  }
  for (auto& [z, pal] : palette) {
    if (pal.size() > 3) return false;
    if (!col.subsets.empty()) {
      if (z < 0 || z >= (int)col.subsets.size()) return false;
      for (int c : pal)
        if (!std::count(col.subsets[z].begin(), col.subsets[z].end(), c))
          return false;
    }
  }
  for (const Separator& sep : col.separators) {
    if (sep.faces.empty()) return false;
    std::set<int> used;
    for (size_t i = 0; i < sep.faces.size(); i++) {
      FaceId f = sep.faces[i];
      if (f < 0 || f >= m.n_faces() || !m.face_bounded(f)) return false;
      used.insert(col.colors[f]);
      if (i == 0) continue;
      bool touching = false;
      for (Dart d : m.faces[f])
        touching |= m.dart_face[PlanarMap::twin(d)] == sep.faces[i - 1];
      if (!touching) return false;
    }
    std::set<int> declared(sep.colors.begin(), sep.colors.end());
    if (declared.size() != 2) return false;
    for (int c : used)
      if (!declared.count(c)) return false;
    if (sep.faces.size() > 1 && used.size() != 2) return false;
    for (int z : sep.zones)
      if (z < 0 || z >= (int)col.subsets.size()) return false;
    std::set<int> common;
    for (int c : col.subsets[sep.zones[0]])
      if (std::count(col.subsets[sep.zones[1]].begin(),
                     col.subsets[sep.zones[1]].end(), c))
        common.insert(c);
    if (common != declared) return false;
  }
  return true;
}

Coloring color3_region(const PlanarMap& m, const std::vector<FaceId>& region,
                       FaceId base) {
  auto labels = classify_region(m, region, base);
  Coloring col{"three", std::vector<int>(m.n_faces(), 0),
               std::vector<int>(m.n_faces(), -1)};
  for (FaceId f : region) col.colors[f] = labels[f] + 1;
  return col;
}

namespace {

void require_closed_cubic(const PlanarMap& m) {
  require(m.n_bounded_faces() == m.n_faces(), "InvalidSpec",
          "needs a closed map");
  for (auto& v : m.vertices)
    require(v.size() == 3, "InvalidSpec", "needs a cubic map");
}

// Faces around a vertex in rotation order.
std::array<FaceId, 3> vertex_faces(const PlanarMap& m,
                                   const std::vector<Dart>& v) {
  return {m.dart_face[v[0]], m.dart_face[v[1]], m.dart_face[v[2]]};
}

} // namespace

Coloring color3_closed(const PlanarMap& m) {
  require_closed_cubic(m);
  std::vector<int> colors(m.n_faces(), 0);
  auto seed = vertex_faces(m, m.vertices[0]);
  require(seed[0] != seed[1] && seed[1] != seed[2] && seed[0] != seed[2],
          "Not3Colorable", "seed vertex sees a repeated face");
  for (int i = 0; i < 3; i++) colors[seed[i]] = i + 1;

  bool moved = true;
  while (moved) {
    moved = false;
    for (auto& v : m.vertices) {
      auto fs = vertex_faces(m, v);
      int known = 0;
      for (FaceId f : fs) known += colors[f] ? 1 : 0;
      if (known == 2) {
        int a = 0, b = 0, open = -1;
        for (int i = 0; i < 3; i++) {
          if (colors[fs[i]] == 0)
            open = i;
          else if (!a)
            a = colors[fs[i]];
          else
            b = colors[fs[i]];
        }
        require(a != b, "Not3Colorable", "two faces at a vertex share a color");
        colors[fs[open]] = 6 - a - b;
        moved = true;
      } else if (known == 3) {
        require(colors[fs[0]] != colors[fs[1]] &&
                    colors[fs[1]] != colors[fs[2]] &&
                    colors[fs[0]] != colors[fs[2]],
                "Not3Colorable", "two faces at a vertex share a color");
      }
    }
  }
  for (int c : colors)
    require(c > 0, "Not3Colorable", "propagation left a face uncolored");
  require(verify_proper(m, colors, 3), "Not3Colorable",
          "propagation is inconsistent");
  return {"three-closed", colors, std::vector<int>(m.n_faces(), -1)};
}

Coloring color_r4(const PlanarMap& m) {
  require_closed_cubic(m);
  for (auto& f : m.faces)
    require(f.size() % 3 == 0, "InvalidSpec",
            "face sizes must be divisible by 3");

  // vertex of each dart
  std::vector<int> vert(m.dart_count, -1);
  for (int v = 0; v < (int)m.vertices.size(); v++)
    for (Dart d : m.vertices[v]) vert[d] = v;

  std::vector<int> colors(m.n_faces(), 0);
  auto seed = vertex_faces(m, m.vertices[0]);
  require(seed[0] != seed[1] && seed[1] != seed[2] && seed[0] != seed[2],
          "NotR4Colorable", "seed vertex sees a repeated face");
  for (int i = 0; i < 3; i++) colors[seed[i]] = i + 1;

  // the four faces around edge d: the two sides and the third face at each
  // endpoint vertex
  auto quad = [&](Dart d) {
    FaceId f = m.dart_face[d], g = m.dart_face[PlanarMap::twin(d)];
    std::array<FaceId, 4> out{f, g, -1, -1};
    for (Dart e : m.vertices[vert[d]])
      if (m.dart_face[e] != f && m.dart_face[e] != g) out[2] = m.dart_face[e];
    for (Dart e : m.vertices[vert[PlanarMap::twin(d)]])
      if (m.dart_face[e] != f && m.dart_face[e] != g) out[3] = m.dart_face[e];
    require(out[2] >= 0 && out[3] >= 0, "NotR4Colorable",
            "an edge without distinct side faces");
    return out;
  };

  bool moved = true;
  while (moved) {
    moved = false;
    for (Dart d = 0; d < m.dart_count; d += 2) {
      auto q = quad(d);
      int known = 0, sum = 0, open = -1;
      for (int i = 0; i < 4; i++) {
        if (colors[q[i]]) {
          known++;
          sum += colors[q[i]];
        } else {
          open = i;
        }
      }
      if (known == 3) {
        for (int i = 0; i < 4; i++)
          for (int j = i + 1; j < 4; j++)
            require(colors[q[i]] == 0 || colors[q[j]] == 0 ||
                        colors[q[i]] != colors[q[j]],
                    "NotR4Colorable", "edge quad repeats a color");
        colors[q[open]] = 10 - sum;
        moved = true;
      } else if (known == 4) {
        for (int i = 0; i < 4; i++)
          for (int j = i + 1; j < 4; j++)
            require(colors[q[i]] != colors[q[j]], "NotR4Colorable",
                    "edge quad repeats a color");
      }
    }
  }
  for (int c : colors)
    require(c > 0, "NotR4Colorable", "propagation left a face uncolored");
  require(verify_proper(m, colors, 4), "NotR4Colorable",
          "propagation is inconsistent");
  return {"r4", colors, std::vector<int>(m.n_faces(), -1)};
}

namespace {

Eis meta_center(const nlohmann::json& fm) {
  return {fm["center"][0].get<long long>(), fm["center"][1].get<long long>()};
}

} // namespace

Coloring color_tube(const PlanarMap& m) {
  require(m.meta.contains("kind") && m.meta["kind"] == "tube", "InvalidSpec",
          "needs a tube map");
  long long p = m.meta["spec"]["p"], q = m.meta["spec"]["q"];

  if ((p - q) % 3 == 0) {
    auto col = color3_region(m, hex_faces(m), 0);
    col.scheme = "tube";
    return col;
  }

  Eis s = (2 * p + q) % 3 == 1 ? sigma(1) : sigma(5);
  long long n = (2 * p + q) % 3 == 1 ? 2 * p + q : p + 2 * q;
  require(n > 1, "DegenerateSpec", "tube too thin for chain coloring");
  std::vector<int> colors(m.n_faces(), 0);
  const auto& fm = m.meta["faces"];
  for (FaceId f = 0; f < m.n_faces(); f++) {
    if (!m.face_bounded(f)) continue;
    Eis z = meta_center(fm[f]);
    long long chi = ((cross(s, z) % n) + n) % n;
    colors[f] = chi == n - 1 ? 4 : (int)(chi % 3) + 1;
  }
  return {"tube", colors, std::vector<int>(m.n_faces(), -1)};
}

namespace {

struct ConeCell {
  int s = 0;
  Eis z{};
};

ConeCell cone_canon(ConeCell c, int k) {
  for (int guard = 0; guard < 64; guard++) {
    if (c.z.y < 0) {
      c.z = rot60(c.z);
      c.s = ((c.s - 1) % k + k) % k;
    } else if (c.z.x < 1 && c.z.y >= 1) {
      c.z = rot300(c.z);
      c.s = (c.s + 1) % k;
    } else {
      return c;
    }
  }
  fail("InvalidSpec", "cone cell does not canonicalize");
}

// Darts of the edge between two faces (both directions).
std::vector<Dart> edge_darts(const PlanarMap& m, FaceId a, FaceId b) {
  std::vector<Dart> out;
  for (Dart d : m.faces[a])
    if (m.dart_face[PlanarMap::twin(d)] == b) {
      out.push_back(d);
    }
  return out;
}

struct ConeInfo {
  int k = 0, radius = 0;
  FaceId apex = -1;
  std::vector<FaceId> ring1; // in cyclic sector order
};

ConeInfo cone_info(const PlanarMap& m) {
  require(m.meta.contains("kind") && m.meta["kind"] == "cone", "InvalidSpec",
          "needs a cone map");
  ConeInfo ci;
  ci.k = m.meta["spec"]["k"];
  ci.radius = m.meta["spec"]["radius"];
  require(ci.radius >= 1, "InvalidSpec", "cone needs at least one ring");
  const auto& fm = m.meta["faces"];
  ci.ring1.assign(ci.k, -1);
  for (FaceId f = 0; f < m.n_faces(); f++) {
    if (!m.face_bounded(f)) continue;
    if (fm[f].contains("apex"))
      ci.apex = f;
    else if (fm[f]["ring"] == 1)
      ci.ring1[fm[f]["sector"].get<int>()] = f;
  }
  require(ci.apex >= 0, "InvalidSpec", "cone map without an apex face");
  return ci;
}

// The spiral chain cut: blocked darts around the chain q_1, q_2, ... with
// q_{r+1} = q_r + sigma(1), one face per ring.
void spiral_cut(const PlanarMap& m, const ConeInfo& ci, ConeCell q1,
                std::vector<FaceId>& chain, std::vector<Dart>& blocked) {
  ConeCell q = q1;
  for (int r = 1; r <= ci.radius; r++) {
    FaceId qf = *face_at(m, q.s, q.z);
    chain.push_back(qf);
    // All companions are developed in q's own frame; canonicalising first
    // would rotate the direction vectors along with the sector wrap.
    ConeCell pr = cone_canon({q.s, q.z + dir(2)}, ci.k);
    ConeCell xr = cone_canon({q.s, q.z + dir(1)}, ci.k);
    ConeCell lr = cone_canon({q.s, q.z + dir(2) + dir(2)}, ci.k);
    ConeCell qn = cone_canon({q.s, q.z + sigma(1)}, ci.k);
    auto block = [&](const ConeCell& a, const ConeCell& b) {
      auto fa = face_at(m, a.s, a.z), fb = face_at(m, b.s, b.z);
      if (!fa || !fb) return;
      for (Dart d : edge_darts(m, *fa, *fb)) blocked.push_back(d);
    };
    block(q, pr);
    block(pr, xr);
    block(pr, qn);
    block(lr, qn);
    q = qn;
  }
}

int spare_ring1_color(const ConeInfo& ci,
                      const std::vector<int>& colors) {
  std::set<int> used;
  for (FaceId f : ci.ring1)
    if (colors[f] >= 1 && colors[f] <= 3) used.insert(colors[f]);
  require(used.size() == 2, "InvalidSpec",
          "ring one does not leave exactly one spare color");
  for (int c = 1; c <= 3; c++)
    if (!used.count(c)) return c;
  return 0;
}

} // namespace

Coloring color_cone_3plus1(const PlanarMap& m) {
  ConeInfo ci = cone_info(m);
  auto hexes = hex_faces(m);

  if (ci.k % 2 == 0) {
    auto labels = classify_region(m, hexes, ci.ring1[0]);
    std::vector<int> colors(m.n_faces(), 0);
    for (FaceId f : hexes) colors[f] = labels[f] + 1;
    colors[ci.apex] = spare_ring1_color(ci, colors);
    return {"3plus1", colors, std::vector<int>(m.n_faces(), -1)};
  }

  // odd apex: cut along the spiral chain, class colors elsewhere, chain 4
  FaceId q1f = m.n_faces();
  for (Dart d : m.faces[ci.apex])
    q1f = std::min(q1f, m.dart_face[PlanarMap::twin(d)]);
  int s0 = m.meta["faces"][q1f]["sector"];
  std::vector<FaceId> chain;
  std::vector<Dart> blocked;
  spiral_cut(m, ci, {s0, {1, 0}}, chain, blocked);

  auto ff = develop(m, hexes, {q1f, {0, 0}, 0}, blocked, ClashPolicy::strict);
  std::vector<int> colors(m.n_faces(), 0);
  for (FaceId f : hexes) colors[f] = cls(ff.coord.at(f)) + 1;
  for (FaceId f : chain) colors[f] = 4;
  colors[ci.apex] = spare_ring1_color(ci, colors);
  require(verify_proper(m, colors), "InvalidSpec",
          "spiral cut produced an improper coloring");
  return {"3plus1", colors, std::vector<int>(m.n_faces(), -1)};
}

Coloring color_cone_m3(const PlanarMap& m, const std::vector<FaceId>& partition) {
  ConeInfo ci = cone_info(m);
  auto hexes = hex_faces(m);

  // Shrunk form: all three partition faces coincide, two zones collapse and
  // the colors are exactly the 3plus1 coloring.
  if (partition.size() == 3 && partition[0] == partition[1] &&
      partition[1] == partition[2]) {
    require(std::count(ci.ring1.begin(), ci.ring1.end(), partition[0]) == 1,
            "BadPartition", "partition faces must lie on ring one");
    Coloring base = color_cone_3plus1(m);
    Coloring col{"m3", base.colors, std::vector<int>(m.n_faces(), -1)};
    int spare = base.colors[ci.apex];
    int other = spare == 1 ? 2 : 1;
    for (FaceId f = 0; f < m.n_faces(); f++) {
      if (!m.face_bounded(f)) continue;
      col.zones[f] = base.colors[f] == 4 || f == ci.apex ? 0 : 1;
    }
    std::vector<int> sub{spare, other, 4};
    std::sort(sub.begin(), sub.end());
    col.subsets = {sub, {1, 2, 3}};
    require(verify_zoned(m, col), "BadPartition",
            "shrunk partition produced an improper zoned coloring");
    return col;
  }

  require(ci.k % 2 == 1, "BadPartition", "apex degree must be odd");
  std::vector<FaceId> part = partition;
  if (part.empty()) {
    FaceId anchor = *std::min_element(ci.ring1.begin(), ci.ring1.end());
    int s0 = std::find(ci.ring1.begin(), ci.ring1.end(), anchor) -
             ci.ring1.begin();
    // Most balanced odd split of k, applied ascending from the anchor sector.
    std::array<int, 3> gaps{1, 1, ci.k - 2};
    for (int g1 = 1; g1 <= ci.k; g1 += 2)
      for (int g2 = g1; g1 + g2 < ci.k; g2 += 2) {
        int g3 = ci.k - g1 - g2;
        if (g3 % 2 && g3 >= g2 && g3 - g1 < gaps[2] - gaps[0]) gaps = {g1, g2, g3};
      }
    part = {ci.ring1[s0], ci.ring1[(s0 + gaps[0]) % ci.k],
            ci.ring1[(s0 + gaps[0] + gaps[1]) % ci.k]};
  }
  require(part.size() == 3, "BadPartition",
          "need exactly three partition faces");
  std::array<int, 3> sec{};
  for (int i = 0; i < 3; i++) {
    auto it = std::find(ci.ring1.begin(), ci.ring1.end(), part[i]);
    require(it != ci.ring1.end(), "BadPartition",
            "partition faces must lie on ring one");
    sec[i] = it - ci.ring1.begin();
  }
  std::sort(sec.begin(), sec.end());
  require(sec[0] != sec[1] && sec[1] != sec[2], "BadPartition",
          "partition faces must be distinct");
  std::array<int, 3> gap{sec[1] - sec[0], sec[2] - sec[1],
                         ci.k - sec[2] + sec[0]};
  for (int g : gap)
    require(g % 2 == 1, "BadPartition", "partition paths must all be odd");

  // Partition chain i runs straight inside sector sec[i]: faces q_t at
  // (1+t, t), the parallel fourth-color chain w_t at (1+t, 1+t). The cut
  // passes left of them, along u_t = (t, t+1) and v_t = (t, t+2).
  auto cell_face = [&](int s, Eis z) {
    ConeCell c = cone_canon({s, z}, ci.k);
    return face_at(m, c.s, c.z);
  };
  std::vector<Dart> blocked;
  auto block = [&](std::optional<FaceId> a, std::optional<FaceId> b) {
    if (!a || !b) return;
    for (Dart d : edge_darts(m, *a, *b)) blocked.push_back(d);
  };
  std::array<std::vector<FaceId>, 3> chain, wline;
  for (int i = 0; i < 3; i++) {
    for (int t = 0;; t++) {
      auto q = cell_face(sec[i], {1 + t, t});
      if (!q) break;
      auto w = cell_face(sec[i], {1 + t, 1 + t});
      auto u = cell_face(sec[i], {t, t + 1});
      auto un = cell_face(sec[i], {t + 1, t + 2});
      auto v = cell_face(sec[i], {t, t + 2});
      chain[i].push_back(*q);
      if (w) wline[i].push_back(*w);
      block(q, u);
      block(w, u);
      block(w, v);
      block(w, un);
    }
  }

  std::set<Dart> blockset(blocked.begin(), blocked.end());
  for (Dart d : blocked) blockset.insert(PlanarMap::twin(d));
  std::vector<char> ishex(m.n_faces(), 0);
  for (FaceId f : hexes) ishex[f] = 1;
  std::vector<int> zone(m.n_faces(), -1);
  for (int i = 0; i < 3; i++) {
    require(zone[chain[i][0]] == -1, "BadPartition",
            "partition chains collide");
    std::deque<FaceId> bfs{chain[i][0]};
    zone[chain[i][0]] = i;
    while (!bfs.empty()) {
      FaceId f = bfs.front();
      bfs.pop_front();
      for (Dart d : m.faces[f]) {
        if (blockset.count(d)) continue;
        FaceId g = m.dart_face[PlanarMap::twin(d)];
        if (g < 0 || !ishex[g] || zone[g] != -1) continue;
        zone[g] = i;
        bfs.push_back(g);
      }
    }
  }
  for (FaceId f : hexes)
    require(zone[f] >= 0, "BadPartition",
            "cuts leave a region without a chain");

  // Zone classes from a rigid development anchored on the partition face;
  // theta sends the chain class to c_i, the w class to 4, the rest to the
  // previous chain color, giving zone subsets {c_i, c_{i-1}, 4}.
  std::vector<int> labels(m.n_faces(), -1);
  std::vector<int> colors(m.n_faces(), 0);
  for (int i = 0; i < 3; i++) {
    std::vector<FaceId> zf;
    for (FaceId f : hexes)
      if (zone[f] == i) zf.push_back(f);
    auto ff = develop(m, zf, {chain[i][0], {0, 0}, 0}, blocked,
                      ClashPolicy::strict);
    std::set<int> used;
    for (FaceId f : zf) {
      labels[f] = cls(ff.coord.at(f));
      used.insert(labels[f]);
    }
    int lq = labels[chain[i][0]];
    for (FaceId f : chain[i])
      require(labels[f] == lq, "BadPartition", "chain class drifts");
    int lw = wline[i].empty() ? -1 : labels[wline[i][0]];
    for (FaceId f : wline[i])
      require(labels[f] == lw, "BadPartition", "fourth-color class drifts");
    if (lw < 0)
      for (int l = 0; l < 3 && lw < 0; l++)
        if (l != lq && !used.count(l)) lw = l;
    require(lw >= 0 && lw != lq, "BadPartition",
            "no class left for the fourth color");
    for (FaceId f : zf) {
      int l = labels[f];
      colors[f] = l == lq ? i + 1 : l == lw ? 4 : (i + 2) % 3 + 1;
    }
  }
  zone[ci.apex] = 0;
  colors[ci.apex] = 4;

  Coloring col{"m3", colors, zone};
  for (int i = 0; i < 3; i++) {
    std::vector<int> sub{i + 1, (i + 2) % 3 + 1, 4};
    std::sort(sub.begin(), sub.end());
    col.subsets.push_back(sub);
    Separator sep;
    for (size_t t = 0; t < chain[i].size(); t++) {
      sep.faces.push_back(chain[i][t]);
      if (t < wline[i].size()) sep.faces.push_back(wline[i][t]);
    }
    sep.zones = {i, (i + 1) % 3};
    sep.colors = {i + 1, 4};
    col.separators.push_back(sep);
  }
  require(verify_zoned(m, col), "BadPartition",
          "partition produced an improper zoned coloring");
  return col;
}

namespace {

// Weaving-strip search. Every face is crossed by exactly one strip: hexagons
// straight through (opposite edges), non-hexagons sit at cone points of the
// unfolding and either pass nearly straight or fold, ending the strip. Strips
// close into even cycles or run between two folds; faces of a strip alternate
// two colors and neighbouring strips take the complementary pair.
struct OrbitalSearch {
  const PlanarMap& m;
  std::vector<int> strip_of, pos_of;
  std::vector<char> crossed;
  std::vector<std::vector<FaceId>> strips;
  std::vector<int> colors;

  explicit OrbitalSearch(const PlanarMap& mm)
      : m(mm), strip_of(m.n_faces(), -1), pos_of(m.n_faces(), 0),
        crossed(m.next.size(), 0) {}

  struct Ctx {
    FaceId f0;
    Dart close_dart; // arriving through this dart closes a cycle, -1 = path
    std::vector<FaceId> fwd{}, bwd{};
    bool backward = false;
  };

  static const std::vector<int>& offsets(int n) {
    static const std::vector<int> hex{3}, pent{2, 3}, tri{1, 2};
    if (n == 6) return hex;
    if (n == 5) return pent;
    if (n == 3) return tri;
    fail("UnsupportedFamily", "face size admits no straight crossing");
  }

  void mark(Dart d, char v) { crossed[d] = crossed[PlanarMap::twin(d)] = v; }

  bool solve() {
    FaceId f0 = -1;
    for (FaceId f = 0; f < m.n_faces(); f++)
      if (m.face_bounded(f) && strip_of[f] == -1) {
        f0 = f;
        break;
      }
    if (f0 < 0) return finish();
    const auto& ds = m.faces[f0];
    int n = ds.size();
    int pd = n == 6 ? 3 : n == 5 ? 2 : 1;
    strip_of[f0] = strips.size();
    for (int i = 0; i < n; i++) {
      for (int j = i + 1; j < n; j++) {
        if (std::min(j - i, n - (j - i)) != pd) continue;
        Ctx ctx{f0, ds[j]};
        mark(ds[i], 1);
        mark(ds[j], 1);
        bool ok = walk(ds[i], ctx);
        mark(ds[i], 0);
        mark(ds[j], 0);
        if (ok) return true;
      }
    }
    if (n != 6) {
      for (Dart d : ds) {
        Ctx ctx{f0, -1};
        mark(d, 1);
        bool ok = walk(d, ctx);
        mark(d, 0);
        if (ok) return true;
      }
    }
    strip_of[f0] = -1;
    return false;
  }

  bool walk(Dart exit, Ctx& ctx) {
    Dart e = PlanarMap::twin(exit);
    FaceId g = m.dart_face[e];
    if (strip_of[g] != -1) return false;
    strip_of[g] = strips.size();
    auto& leg = ctx.backward ? ctx.bwd : ctx.fwd;
    leg.push_back(g);
    const auto& ds = m.faces[g];
    int n = ds.size();
    for (int off : offsets(n)) {
      Dart x = ds[(m.dart_pos[e] + off) % n];
      if (crossed[x]) {
        // only the reserved return edge of f0 may be re-crossed: even cycle
        if (!ctx.backward && PlanarMap::twin(x) == ctx.close_dart &&
            ctx.fwd.size() % 2 && commit(ctx, /*cycle=*/true))
          return true;
        continue;
      }
      mark(x, 1);
      if (walk(x, ctx)) return true;
      mark(x, 0);
    }
    if (n != 6) {
      // fold here: this face ends the strip
      if (!ctx.backward && ctx.close_dart >= 0) {
        ctx.backward = true;
        bool ok = walk(ctx.close_dart, ctx);
        ctx.backward = false;
        if (ok) return true;
      } else if (commit(ctx, /*cycle=*/false)) {
        return true;
      }
    }
    leg.pop_back();
    strip_of[g] = -1;
    return false;
  }

  bool commit(Ctx& ctx, bool cycle) {
    std::vector<FaceId> order(ctx.bwd.rbegin(), ctx.bwd.rend());
    order.push_back(ctx.f0);
    order.insert(order.end(), ctx.fwd.begin(), ctx.fwd.end());
    (void)cycle; // even length already enforced at the close
    for (size_t t = 0; t < order.size(); t++) pos_of[order[t]] = (int)t;
    strips.push_back(std::move(order));
    if (consistent(nullptr) && solve()) return true;
    strips.pop_back();
    return false;
  }

  // Lateral edges: same strip needs alternating parity, distinct strips must
  // admit a two-sided pair assignment. Checked over completed strips only.
  bool consistent(std::vector<int>* side_out) {
    int S = strips.size();
    std::vector<std::vector<int>> adj(S);
    for (size_t d = 0; d < m.next.size(); d += 2) {
      if (crossed[d]) continue;
      int su = strip_of[m.dart_face[d]], sv = strip_of[m.dart_face[d ^ 1]];
      if (su < 0 || sv < 0) continue;
      if (su == sv) {
        if (((pos_of[m.dart_face[d]] ^ pos_of[m.dart_face[d ^ 1]]) & 1) == 0)
          return false;
      } else {
        adj[su].push_back(sv);
        adj[sv].push_back(su);
      }
    }
    std::vector<int> side(S, -1);
    for (int s = 0; s < S; s++) {
      if (side[s] != -1) continue;
      side[s] = 0;
      std::deque<int> bfs{s};
      while (!bfs.empty()) {
        int a = bfs.front();
        bfs.pop_front();
        for (int b : adj[a]) {
          if (side[b] == -1) {
            side[b] = side[a] ^ 1;
            bfs.push_back(b);
          } else if (side[b] == side[a]) {
            return false;
          }
        }
      }
    }
    if (side_out) *side_out = std::move(side);
    return true;
  }

  bool finish() {
    std::vector<int> side;
    if (!consistent(&side)) return false;
    colors.assign(m.n_faces(), 0);
    for (size_t s = 0; s < strips.size(); s++) {
      FaceId fmin = *std::min_element(strips[s].begin(), strips[s].end());
      int base = side[s] ? 3 : 1;
      for (FaceId f : strips[s])
        colors[f] = base + ((pos_of[f] ^ pos_of[fmin]) & 1);
    }
    return verify_proper(m, colors, 4);
  }
};

} // namespace

Coloring color_orbital(const PlanarMap& m) {
  require(m.meta.contains("kind") && m.meta["kind"] == "goldberg",
          "InvalidSpec", "needs a goldberg map");
  std::string family = m.meta["spec"]["family"];
  require(family != "octahedral", "UnsupportedFamily",
          "orbital coloring covers icosahedral and tetrahedral families");
  OrbitalSearch s(m);
  require(s.solve(), "OrbitalFailed",
          "no weaving decomposition admits an orbital coloring");
  Coloring col{"orbital", std::move(s.colors),
               std::vector<int>(m.n_faces(), -1)};
  for (FaceId f = 0; f < m.n_faces(); f++)
    if (m.face_bounded(f)) col.zones[f] = s.strip_of[f];
  return col;
}

} // namespace hexcol
