#include "hexcol/combine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hexcol/errors.hpp"
#include "hexcol/oracle.hpp"

namespace hexcol {

std::string ColorPerm::cycles() const {
  if (identity()) return "(1)(2)(3)";
  std::string out;
  std::array<bool, 4> seen{};
  for (int c = 1; c <= 3; c++) {
    if (seen[c] || to[c] == c) continue;
    out += '(';
    out += std::to_string(c);
    seen[c] = true;
    for (int d = to[c]; d != c; d = to[d]) {
      out += ' ';
      out += std::to_string(d);
      seen[d] = true;
    }
    out += ')';
  }
  return out;
}

ColorPerm operator*(const ColorPerm& f, const ColorPerm& g) {
  ColorPerm r;
  for (int c = 1; c <= 3; c++) r.to[c] = f.to[g.to[c]];
  return r;
}

ColorPerm transposition(int a, int b) {
  require(a >= 1 && a <= 3 && b >= 1 && b <= 3 && a != b, "InvalidSpec",
          "transposition wants two distinct colors in 1..3");
  ColorPerm p;
  std::swap(p.to[a], p.to[b]);
  return p;
}

OddFacePermutation face_permutation(const PlanarMap& m, FaceId f,
                                    int class_color) {
  require(class_color >= 1 && class_color <= 3, "InvalidSpec",
          "class color must be in 1..3");
  require(f >= 0 && f < m.n_faces() && m.face_bounded(f), "InvalidSpec",
          "face_permutation wants a bounded face");
  OddFacePermutation r;
  r.source = f;
  if (m.faces[f].size() % 2 == 1)
    r.perm = transposition(class_color == 1 ? 2 : 1, class_color == 3 ? 2 : 3);
  return r;
}

namespace {

// Transposition induced by an odd face of class label 0..2 (color label+1).
ColorPerm tau(int label) {
  return transposition(label == 0 ? 2 : 1, label == 2 ? 2 : 3);
}

bool plain_hex(const PlanarMap& m, FaceId f) {
  return f >= 0 && m.face_bounded(f) && m.faces[f].size() == 6;
}

bool odd_face(const PlanarMap& m, FaceId f) {
  return f >= 0 && f < m.n_faces() && m.face_bounded(f) &&
         m.faces[f].size() % 2 == 1;
}

// Lattice chart grown breadth-first over the hexagons around an odd face,
// anchored at the first free hexagon on its boundary. The odd face itself
// occupies cell a_cell; target odd faces are located when first scanned.
struct Corridor {
  FaceId n0 = -1;
  Eis a_cell{};
  std::unordered_map<FaceId, Eis> coord;
  std::unordered_map<FaceId, int> frame;
  std::unordered_map<FaceId, FaceId> parent;
  std::unordered_map<FaceId, Eis> found;                 // target -> cell
  std::unordered_map<FaceId, std::vector<FaceId>> route; // target -> n0..spot
};

Corridor grow_corridor(const PlanarMap& m, FaceId n0, int q0,
                       const std::set<FaceId>& want,
                       const std::unordered_set<FaceId>& blocked) {
  Corridor c;
  c.n0 = n0;
  c.a_cell = dir(q0);
  c.coord[n0] = {0, 0};
  c.frame[n0] = 0;
  std::deque<FaceId> queue{n0};
  while (!queue.empty()) {
    FaceId f = queue.front();
    queue.pop_front();
    const auto& cyc = m.faces[f];
    for (int j = 0; j < (int)cyc.size(); j++) {
      Dart d = cyc[j];
      FaceId g = m.dart_face[PlanarMap::twin(d)];
      int t = (c.frame[f] + j) % 6;
      if (want.count(g) && !c.found.count(g)) {
        c.found[g] = c.coord[f] + dir(t);
        std::vector<FaceId> path{f};
        for (FaceId p = f; p != c.n0; p = c.parent[p])
          path.push_back(c.parent[p]);
        std::reverse(path.begin(), path.end());
        c.route[g] = std::move(path);
      }
      if (!plain_hex(m, g) || blocked.count(g) || c.coord.count(g)) continue;
      int jq = m.dart_pos[PlanarMap::twin(d)];
      c.coord[g] = c.coord[f] + dir(t);
      c.frame[g] = ((t + 3 - jq) % 6 + 6) % 6;
      c.parent[g] = f;
      queue.push_back(g);
    }
  }
  return c;
}

Corridor odd_corridor(const PlanarMap& m, FaceId a,
                      const std::vector<FaceId>& targets,
                      const std::unordered_set<FaceId>& blocked) {
  std::set<FaceId> want(targets.begin(), targets.end());
  // free hexagons on a's boundary may sit in different pockets once chains
  // wall parts of the map off; grow a chart from each flank until one sees
  // every target, else keep the best-covering one
  Corridor best;
  std::set<FaceId> tried;
  for (Dart d : m.faces[a]) {
    FaceId g = m.dart_face[PlanarMap::twin(d)];
    if (g == a || !plain_hex(m, g) || blocked.count(g) || tried.count(g))
      continue;
    tried.insert(g);
    Corridor c =
        grow_corridor(m, g, m.dart_pos[PlanarMap::twin(d)], want, blocked);
    if (c.found.size() == want.size()) return c;
    if (best.n0 < 0 || c.found.size() > best.found.size()) best = std::move(c);
  }
  require(best.n0 >= 0, "NoHexCorridor",
          "no free hexagon borders face " + std::to_string(a));
  return best;
}

// Shortest face path from a neighbor of `a` to a neighbor of `b` whose chart
// classes relative to a's cell alternate s,0,s,... and end on `endcls`.
std::vector<FaceId> route_chain(const PlanarMap& m, const Corridor& cor,
                                FaceId a, FaceId b, int s, int endcls,
                                const std::unordered_set<FaceId>& blocked) {
  auto rel = [&](FaceId f) { return cls(cor.coord.at(f) - cor.a_cell); };
  std::set<FaceId> near_b;
  for (Dart d : m.faces[b]) near_b.insert(m.dart_face[PlanarMap::twin(d)]);
  std::unordered_map<FaceId, FaceId> parent;
  std::deque<FaceId> queue;
  for (Dart d : m.faces[a]) {
    FaceId g = m.dart_face[PlanarMap::twin(d)];
    if (g == a || !cor.coord.count(g) || blocked.count(g) || parent.count(g))
      continue;
    if (rel(g) != s) continue;
    parent[g] = -1;
    queue.push_back(g);
  }
  while (!queue.empty()) {
    FaceId f = queue.front();
    queue.pop_front();
    if (rel(f) == endcls && near_b.count(f)) {
      std::vector<FaceId> chain{f};
      for (FaceId p = f; parent[p] != -1; p = parent[p])
        chain.push_back(parent[p]);
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
    int nextc = rel(f) == s ? 0 : s;
    for (Dart d : m.faces[f]) {
      FaceId g = m.dart_face[PlanarMap::twin(d)];
      if (g == f || !cor.coord.count(g) || blocked.count(g) || parent.count(g))
        continue;
      if (rel(g) != nextc) continue;
      parent[g] = f;
      queue.push_back(g);
    }
  }
  return {};
}

struct VerdictPlus {
  PairVerdict v;
  std::vector<FaceId> raw; // the corridor path the verdict was read from
};

VerdictPlus pair_verdict(const PlanarMap& m, FaceId a, FaceId b,
                         const std::unordered_set<FaceId>& blocked) {
  FaceId lo = std::min(a, b), hi = std::max(a, b);
  Corridor cor = odd_corridor(m, lo, {hi}, blocked);
  require(cor.found.count(hi), "NoHexCorridor",
          "no hexagon corridor joins faces " + std::to_string(lo) + " and " +
              std::to_string(hi));
  VerdictPlus r;
  Eis d = cor.found[hi] - cor.a_cell;
  r.v.offset = coxeter_of(d);
  r.v.nice = cls(d) == 0;
  r.raw = cor.route[hi];
  if (r.v.nice) {
    for (int s : {1, 2}) {
      r.v.corridor = route_chain(m, cor, lo, hi, s, s, blocked);
      if (!r.v.corridor.empty()) break;
    }
    if (!r.v.corridor.empty()) {
      r.v.witness.a = lo;
      r.v.witness.b = hi;
      for (size_t i = 0; i < r.v.corridor.size(); i += 2)
        r.v.witness.connector.push_back(r.v.corridor[i]);
    }
  } else {
    r.v.corridor = route_chain(m, cor, lo, hi, cls(d), 0, blocked);
  }
  return r;
}

} // namespace

PairVerdict is_nice_pair(const PlanarMap& m, FaceId a, FaceId b) {
  require(odd_face(m, a) && odd_face(m, b) && a != b, "NotOddFaces",
          "is_nice_pair wants two distinct bounded odd faces");
  return pair_verdict(m, a, b, {}).v;
}

std::vector<NicePair> pair_all_odd_faces(const PlanarMap& m) {
  std::vector<FaceId> left;
  for (FaceId f = 0; f < m.n_faces(); f++)
    if (odd_face(m, f)) left.push_back(f);
  if (left.empty()) return {};
  require(left.size() % 2 == 0, "PairingFailed",
          std::to_string(left.size()) + " odd faces cannot pair up");
  std::unordered_set<FaceId> claimed;
  std::vector<NicePair> out;
  auto accept = [&](const PairVerdict& v) {
    for (FaceId f : v.corridor) claimed.insert(f);
    out.push_back(v.witness);
    left.erase(std::find(left.begin(), left.end(), v.witness.a));
    left.erase(std::find(left.begin(), left.end(), v.witness.b));
  };
  while (!left.empty()) {
    // closest nice pair first
    std::array<long long, 3> best_key{};
    PairVerdict best;
    bool have = false;
    std::vector<std::array<long long, 3>> stuck;
    for (size_t i = 0; i < left.size(); i++)
      for (size_t j = i + 1; j < left.size(); j++) {
        VerdictPlus r;
        try {
          r = pair_verdict(m, left[i], left[j], claimed);
        } catch (const Error&) {
          continue;
        }
        std::array<long long, 3> key{r.v.offset.p + r.v.offset.q,
                                     (long long)left[i], (long long)left[j]};
        if (r.v.nice && !r.v.corridor.empty()) {
          if (!have || key < best_key) {
            best_key = key;
            best = r.v;
            have = true;
          }
        } else {
          stuck.push_back(key);
        }
      }
    if (have) {
      accept(best);
      continue;
    }
    // Detours: fence off the straight corridor so the next one bends around
    // a neighboring odd face, shifting the congruence class it reads.
    std::sort(stuck.begin(), stuck.end());
    bool found = false;
    for (const auto& s : stuck) {
      FaceId a = (FaceId)s[1], b = (FaceId)s[2];
      std::unordered_set<FaceId> fence = claimed;
      for (int attempt = 0; attempt < 4 && !found; attempt++) {
        VerdictPlus r;
        try {
          r = pair_verdict(m, a, b, fence);
        } catch (const Error&) {
          break;
        }
        if (r.v.nice && !r.v.corridor.empty())
          accept(r.v), found = true;
        else
          fence.insert(r.raw.begin(), r.raw.end());
      }
      if (found) break;
    }
    require(found, "PairingFailed",
            "no nice pair among " + std::to_string(left.size()) +
                " remaining odd faces");
  }
  return out;
}

EquivalentOddFace combine_triplet(const PlanarMap& m, FaceId f1, FaceId f2,
                                  FaceId f3) {
  require(odd_face(m, f1) && odd_face(m, f2) && odd_face(m, f3) && f1 != f2 &&
              f1 != f3 && f2 != f3,
          "NotOddFaces", "combine_triplet wants three distinct odd faces");
  std::array<FaceId, 3> fs{f1, f2, f3};
  std::sort(fs.begin(), fs.end());
  // congruence is judged in one shared frame: a pairwise route may well read
  // nice around some seam, yet the triplet is combinable iff the three faces
  // carry three distinct classes side by side
  Corridor cor = odd_corridor(m, fs[0], {fs[1], fs[2]}, {});
  require(cor.found.count(fs[1]) && cor.found.count(fs[2]), "NotIncongruent",
          "triplet shares no corridor frame");
  std::array<Eis, 3> cell{cor.a_cell, cor.found[fs[1]], cor.found[fs[2]]};
  int r2 = cls(cell[1] - cell[0]), r3 = cls(cell[2] - cell[0]);
  if (std::getenv("HEXCOL_DEBUG"))
    fprintf(stderr, "[tri] n0=%d a=(%lld,%lld) f1=(%lld,%lld) f2=(%lld,%lld) r2=%d r3=%d\n",
            cor.n0, cell[0].x, cell[0].y, cell[1].x, cell[1].y, cell[2].x,
            cell[2].y, r2, r3);
  require(r2 != 0 && r3 != 0 && r2 != r3, "NotIncongruent",
          "classes collide in the common frame");

  EquivalentOddFace eq;
  eq.members = {fs[0], fs[1], fs[2]};
  eq.behavior = tau(0) * tau(r2) * tau(r3);
  require(!eq.behavior.identity(), "NotIncongruent",
          "triplet behavior is not odd");

  // One chain from each member outward to the map boundary, alternating the
  // member's own class with one other, later chains steering around earlier.
  auto idot = [](Eis u, Eis v) {
    return 2 * (u.x * v.x + u.y * v.y) + u.x * v.y + u.y * v.x;
  };
  Eis centroid3 = cell[0] + cell[1] + cell[2];
  std::unordered_set<FaceId> walls;
  for (int i = 0; i < 3; i++) {
    Eis outward = 3 * cell[i] - centroid3;
    int own = cls(cell[i]);
    std::vector<FaceId> chain;
    for (int t = 0; t < 3 && chain.empty(); t++) {
      if (t == own) continue;
      // breadth-first over {t, own} classes, preferring the outward side
      auto rel = [&](FaceId f) { return cls(cor.coord.at(f)); };
      std::unordered_map<FaceId, FaceId> parent;
      std::unordered_map<FaceId, int> dist;
      std::deque<FaceId> queue;
      for (Dart d : m.faces[fs[i]]) {
        FaceId g = m.dart_face[PlanarMap::twin(d)];
        if (!cor.coord.count(g) || walls.count(g) || parent.count(g)) continue;
        if (rel(g) != t) continue;
        parent[g] = -1;
        dist[g] = 0;
        queue.push_back(g);
      }
      int cut = -1;
      FaceId pick = -1;
      long long pick_dot = 0;
      while (!queue.empty()) {
        FaceId f = queue.front();
        queue.pop_front();
        if (cut >= 0 && dist[f] > cut) break;
        bool rim = false;
        for (Dart d : m.faces[f])
          rim |= !m.face_bounded(m.dart_face[PlanarMap::twin(d)]);
        if (rim) {
          long long dd = idot(3 * cor.coord[f] - 3 * cell[i], outward);
          if (cut < 0 || dd > pick_dot || (dd == pick_dot && f < pick)) {
            cut = dist[f];
            pick = f;
            pick_dot = dd;
          }
          continue;
        }
        int nextc = rel(f) == t ? own : t;
        for (Dart d : m.faces[f]) {
          FaceId g = m.dart_face[PlanarMap::twin(d)];
          if (g == f || !cor.coord.count(g) || walls.count(g) ||
              parent.count(g))
            continue;
          if (rel(g) != nextc) continue;
          parent[g] = f;
          dist[g] = dist[f] + 1;
          queue.push_back(g);
        }
      }
      if (pick >= 0) {
        for (FaceId p = pick; p != -1; p = parent[p]) chain.push_back(p);
        std::reverse(chain.begin(), chain.end());
      }
    }
    require(!chain.empty(), "CombinationFailed",
            "no outward chain from face " + std::to_string(fs[i]));
    eq.boundary[i] = chain;
    walls.insert(chain.begin(), chain.end());
  }

  // the three chains must cut the outskirts into three zones
  std::set<FaceId> off(eq.members.begin(), eq.members.end());
  off.insert(walls.begin(), walls.end());
  std::vector<int> zone_of(m.n_faces(), -1);
  int zones = 0;
  for (FaceId f0 = 0; f0 < m.n_faces(); f0++) {
    if (!m.face_bounded(f0) || off.count(f0) || zone_of[f0] != -1) continue;
    zone_of[f0] = zones++;
    std::deque<FaceId> q{f0};
    while (!q.empty()) {
      FaceId f = q.front();
      q.pop_front();
      for (Dart d : m.faces[f]) {
        FaceId g = m.dart_face[PlanarMap::twin(d)];
        if (g == f || !m.face_bounded(g) || off.count(g) || zone_of[g] != -1)
          continue;
        zone_of[g] = zone_of[f0];
        q.push_back(g);
      }
    }
  }
  require(zones == 3, "CombinationFailed",
          "outward chains cut " + std::to_string(zones) + " zones, want 3");
  return eq;
}

CombinationGraph global_combine(const PlanarMap& m) {
  CombinationGraph cg;
  cg.map = &m;
  std::vector<FaceId> odd;
  bool closed = true;
  int bounded = 0;
  for (FaceId f = 0; f < m.n_faces(); f++) {
    if (!m.face_bounded(f)) {
      closed = false;
      continue;
    }
    bounded++;
    if (m.faces[f].size() % 2 == 1) odd.push_back(f);
  }
  if (odd.empty()) return cg;
  std::string kind;
  if (m.meta.is_object() && m.meta.contains("kind") && m.meta["kind"].is_string())
    kind = m.meta["kind"].get<std::string>();

  if (closed && (int)odd.size() == bounded) {
    // every face is a node; every vertex a zone: the map triangulates itself
    auto adj = face_adjacency(m);
    for (FaceId f = 0; f < m.n_faces(); f++)
      cg.nodes.push_back({{f}, 0, true});
    for (FaceId f = 0; f < m.n_faces(); f++)
      for (FaceId g : adj.nbrs[f])
        if (g > f) cg.edges.push_back({f, g, {}, {0, 0}, false});
    for (VertexId v = 0; v < m.n_vertices(); v++) {
      std::set<int> ns;
      for (Dart d : m.vertices[v]) ns.insert(m.dart_face[d]);
      cg.zones.push_back({{ns.begin(), ns.end()}, {}});
    }
    CombCluster all;
    for (int n = 0; n < (int)cg.nodes.size(); n++) all.nodes.push_back(n);
    cg.clusters.push_back(all);
    return cg;
  }

  if (kind == "cone" && odd.size() == 1) {
    // odd apex: three partition chains toward three nodes at infinity
    Coloring col = color_cone_m3(m);
    cg.nodes.push_back({{odd[0]}, 0, true});
    for (int i = 0; i < 3; i++) cg.nodes.push_back({{}, 0, true});
    std::set<FaceId> used{odd[0]};
    for (int i = 0; i < 3; i++) {
      const Separator& s = col.separators[i];
      cg.edges.push_back({0, 1 + i, s.faces, {0, 0}, false});
      used.insert(s.faces.begin(), s.faces.end());
    }
    cg.edges.push_back({1, 2, {}, {0, 0}, false});
    cg.edges.push_back({1, 3, {}, {0, 0}, false});
    cg.edges.push_back({2, 3, {}, {0, 0}, false});
    for (int t = 0; t < 3; t++) {
      CombZone z;
      z.nodes = {0, 1 + t, 1 + (t + 2) % 3};
      std::sort(z.nodes.begin(), z.nodes.end());
      for (FaceId f = 0; f < m.n_faces(); f++)
        if (m.face_bounded(f) && col.zones[f] == t && !used.count(f))
          z.faces.push_back(f);
      cg.zones.push_back(z);
    }
    cg.clusters.push_back({{0, 1, 2, 3}, false});
    return cg;
  }

  std::vector<NicePair> pairs;
  try {
    pairs = pair_all_odd_faces(m);
  } catch (const Error& e) {
    fail("CombinationFailed", e.what());
  }
  std::map<FaceId, int> idx;
  for (FaceId f : odd) {
    idx[f] = (int)cg.nodes.size();
    cg.nodes.push_back({{f}, 0, true});
  }
  // odd faces sharing an edge combine outright, as on a closed map
  std::set<std::pair<size_t, size_t>> direct;
  for (size_t i = 0; i < odd.size(); i++)
    for (size_t j = i + 1; j < odd.size(); j++)
      for (Dart d : m.faces[odd[i]])
        if (m.dart_face[PlanarMap::twin(d)] == odd[j]) {
          cg.edges.push_back({(int)i, (int)j, {}, {0, 0}, false});
          direct.insert({i, j});
          break;
        }
  // chains between all reachable node pairs, closest first, never crossing
  std::vector<std::array<long long, 3>> order;
  for (size_t i = 0; i < odd.size(); i++)
    for (size_t j = i + 1; j < odd.size(); j++) {
      if (direct.count({i, j})) continue;
      try {
        auto r = pair_verdict(m, odd[i], odd[j], {});
        order.push_back(
            {r.v.offset.p + r.v.offset.q, (long long)i, (long long)j});
      } catch (const Error&) {
      }
    }
  std::sort(order.begin(), order.end());
  bool dbg = std::getenv("HEXCOL_DEBUG") != nullptr;
  std::unordered_set<FaceId> walls;
  for (const auto& o : order) {
    VerdictPlus r;
    try {
      r = pair_verdict(m, odd[o[1]], odd[o[2]], walls);
    } catch (const Error& e) {
      if (dbg)
        fprintf(stderr, "[cg] %d-%d key=%lld threw: %s\n", (int)odd[o[1]],
                (int)odd[o[2]], o[0], e.what());
      continue;
    }
    if (dbg)
      fprintf(stderr, "[cg] %d-%d key=%lld nice=%d chain=%zu\n", (int)odd[o[1]],
              (int)odd[o[2]], o[0], (int)r.v.nice, r.v.corridor.size());
    if (r.v.corridor.empty()) continue;
    cg.edges.push_back({(int)o[1], (int)o[2], r.v.corridor, {0, 0}, r.v.nice});
    walls.insert(r.v.corridor.begin(), r.v.corridor.end());
  }
  // zones: flood what is left between the chains
  std::set<FaceId> off(odd.begin(), odd.end());
  off.insert(walls.begin(), walls.end());
  std::vector<int> zone_of(m.n_faces(), -1);
  for (FaceId f0 = 0; f0 < m.n_faces(); f0++) {
    if (!m.face_bounded(f0) || off.count(f0) || zone_of[f0] != -1) continue;
    CombZone z;
    std::set<int> ns;
    zone_of[f0] = (int)cg.zones.size();
    std::deque<FaceId> q{f0};
    while (!q.empty()) {
      FaceId f = q.front();
      q.pop_front();
      z.faces.push_back(f);
      for (Dart d : m.faces[f]) {
        FaceId g = m.dart_face[PlanarMap::twin(d)];
        if (g == f || !m.face_bounded(g)) continue;
        if (idx.count(g)) {
          ns.insert(idx[g]);
          continue;
        }
        if (off.count(g) || zone_of[g] != -1) continue;
        zone_of[g] = zone_of[f0];
        q.push_back(g);
      }
    }
    std::sort(z.faces.begin(), z.faces.end());
    z.nodes.assign(ns.begin(), ns.end());
    cg.zones.push_back(z);
  }
  for (const auto& p : pairs)
    cg.clusters.push_back({{idx[p.a], idx[p.b]}, true});
  std::sort(cg.clusters.begin(), cg.clusters.end(),
            [](const CombCluster& x, const CombCluster& y) {
              return x.nodes < y.nodes;
            });
  return cg;
}

CombinationGraph adjust_combination(const CombinationGraph& cg, int rule,
                                    const AdjustSite& site) {
  require(rule >= 1 && rule <= 3, "InvalidSpec", "rule must be 1, 2 or 3");
  for (int e : site.edges)
    require(e >= 0 && e < (int)cg.edges.size(), "InvalidSpec",
            "chain index out of range");
  CombinationGraph out = cg;
  auto palette = [](const CombEdge& e) {
    return std::set<int>{e.colors[0], e.colors[1]};
  };
  auto drop_edges = [&](std::vector<int> which) {
    std::sort(which.begin(), which.end(), std::greater<>());
    which.erase(std::unique(which.begin(), which.end()), which.end());
    for (int e : which) out.edges.erase(out.edges.begin() + e);
  };

  if (rule == 3) {
    require(site.edges.size() >= 2, "RuleNotApplicable",
            "rule 3 deletes a circle of at least two chains");
    int u = cg.edges[site.edges[0]].u, v = cg.edges[site.edges[0]].v;
    for (int ei : site.edges) {
      const CombEdge& e = cg.edges[ei];
      require((e.u == u && e.v == v) || (e.u == v && e.v == u),
              "RuleNotApplicable", "rule 3 wants chains closing a circle");
    }
    drop_edges(site.edges);
    return out;
  }

  require(site.edges.size() == 2, "RuleNotApplicable",
          "rules 1 and 2 take exactly two chains");
  require(site.zone >= 0 && site.zone < (int)cg.zones.size(), "InvalidSpec",
          "zone index out of range");
  const CombEdge& e1 = cg.edges[site.edges[0]];
  const CombEdge& e2 = cg.edges[site.edges[1]];
  std::set<int> ends{e1.u, e1.v, e2.u, e2.v};
  const auto& zn = cg.zones[site.zone].nodes;
  bool in_zone = std::all_of(ends.begin(), ends.end(), [&](int n) {
    return std::count(zn.begin(), zn.end(), n) > 0;
  });

  if (rule == 1) {
    require(palette(e1) == palette(e2) && ends.size() == 4 && in_zone,
            "RuleNotApplicable",
            "rule 1 merges two same-colored chains bounding one zone");
    auto minus = [](const std::vector<FaceId>& a, const std::vector<FaceId>& b) {
      std::set<FaceId> cut(b.begin(), b.end());
      std::vector<FaceId> r;
      for (FaceId f : a)
        if (!cut.count(f)) r.push_back(f);
      return r;
    };
    CombEdge xa{std::min(e1.u, e2.u), std::max(e1.u, e2.u),
                minus(e1.chain, e2.chain), e1.colors, false};
    CombEdge xb{std::min(e1.v, e2.v), std::max(e1.v, e2.v),
                minus(e2.chain, e1.chain), e2.colors, false};
    drop_edges(site.edges);
    out.edges.push_back(xa);
    out.edges.push_back(xb);
    return out;
  }

  // rule 2: join two chains sharing exactly one color, splitting the zone
  std::set<int> common;
  for (int c : palette(e1))
    if (palette(e2).count(c)) common.insert(c);
  require(common.size() == 1 && ends.size() == 4 && in_zone,
          "RuleNotApplicable", "rule 2 joins two chains sharing one color");
  CombZone a, b;
  a.nodes = {e1.u, e2.u};
  b.nodes = {e1.v, e2.v};
  for (int n : zn)
    if (!ends.count(n)) a.nodes.push_back(n);
  std::sort(a.nodes.begin(), a.nodes.end());
  std::sort(b.nodes.begin(), b.nodes.end());
  a.faces = cg.zones[site.zone].faces;
  out.zones[site.zone] = a;
  out.zones.push_back(b);
  return out;
}

Triangulation triangulate_combination(const CombinationGraph& cg) {
  if (cg.nodes.size() == 2 && cg.edges.size() == 1 && cg.edges[0].nice)
    return cg; // the nice-pair base shape stands on its own

  auto adjacent = [&](const std::vector<FaceId>& fu,
                      const std::vector<FaceId>& fv) {
    if (!cg.map) return false;
    for (FaceId f : fu)
      for (Dart d : cg.map->faces[f])
        for (FaceId g : fv)
          if (cg.map->dart_face[PlanarMap::twin(d)] == g) return true;
    return false;
  };
  auto good = [&]() {
    std::vector<int> deg(cg.nodes.size(), 0);
    for (const auto& e : cg.edges) {
      deg[e.u]++;
      deg[e.v]++;
    }
    for (size_t n = 0; n < cg.nodes.size(); n++)
      if (deg[n] % 2 != (cg.nodes[n].odd ? 1 : 0)) return false;
    for (const auto& z : cg.zones) {
      std::set<int> ns(z.nodes.begin(), z.nodes.end());
      if (ns.size() != 3) return false;
      std::vector<int> nv(ns.begin(), ns.end());
      for (int x = 0; x < 3; x++)
        for (int y = x + 1; y < 3; y++) {
          const auto& fu = cg.nodes[nv[x]].faces;
          const auto& fv = cg.nodes[nv[y]].faces;
          if (fu.empty() || fv.empty() || !cg.map) continue;
          if (adjacent(fu, fv)) continue; // adjacent faces are incongruent
          if (fu.size() == 1 && fv.size() == 1) {
            try {
              if (is_nice_pair(*cg.map, fu[0], fv[0]).nice) return false;
            } catch (const Error&) {
            }
          }
        }
      if (cg.map)
        for (FaceId f : z.faces) {
          int hits = 0;
          for (int n : nv)
            if (!cg.nodes[n].faces.empty() &&
                adjacent({f}, cg.nodes[n].faces))
              hits++;
          if (hits == 3) return false; // no zone face may touch all corners
        }
    }
    return true;
  };
  if (good()) return cg;

  if (cg.map) {
    const PlanarMap& m = *cg.map;
    bool closed = true;
    for (FaceId f = 0; f < m.n_faces(); f++) closed &= m.face_bounded(f);
    if (closed) {
      // fall back to the map's own triangulation: every face a node, every
      // vertex a zone; parity holds since a face's degree is its size
      Triangulation tri;
      tri.map = cg.map;
      auto adj = face_adjacency(m);
      for (FaceId f = 0; f < m.n_faces(); f++)
        tri.nodes.push_back({{f}, 0, m.faces[f].size() % 2 == 1});
      for (FaceId f = 0; f < m.n_faces(); f++)
        for (FaceId g : adj.nbrs[f])
          if (g > f) tri.edges.push_back({f, g, {}, {0, 0}, false});
      for (VertexId v = 0; v < m.n_vertices(); v++) {
        std::set<int> ns;
        for (Dart d : m.vertices[v]) ns.insert(m.dart_face[d]);
        tri.zones.push_back({{ns.begin(), ns.end()}, {}});
      }
      tri.clusters = cg.clusters;
      return tri;
    }
  }
  fail("TriangulationFailed",
       "zones are not three incongruent nodes each and no fallback applies");
}

void annotate_colors(CombinationGraph& cg, const std::vector<int>& node_colors) {
  require(node_colors.size() == cg.nodes.size(), "NodeColoringImproper",
          "one color per node");
  for (int c : node_colors)
    require(c >= 1 && c <= 4, "NodeColoringImproper", "node colors are 1..4");
  for (size_t n = 0; n < cg.nodes.size(); n++)
    cg.nodes[n].color = node_colors[n];
  for (auto& e : cg.edges) {
    int cu = node_colors[e.u], cv = node_colors[e.v];
    if (e.nice) {
      require(cu == cv, "NodeColoringImproper",
              "nice chain endpoints must share a color");
      e.colors = {cu, 4};
    } else {
      require(cu != cv, "NodeColoringImproper",
              "chain endpoints must differ");
      e.colors = {std::min(cu, cv), std::max(cu, cv)};
    }
  }
}

namespace {

FrameField develop_zone(const PlanarMap& m, const std::vector<FaceId>& region,
                        Anchor anchor) {
  try {
    return develop(m, region, anchor, {}, ClashPolicy::label);
  } catch (const Error& e) {
    fail("ZoneColoringFailed", e.what());
  }
}

} // namespace

Coloring apply_m3(const PlanarMap& m, const Triangulation& tri,
                  const std::vector<int>& node_colors) {
  require(node_colors.size() == tri.nodes.size(), "NodeColoringImproper",
          "one color per node");
  for (int c : node_colors)
    require(c >= 1 && c <= 4, "NodeColoringImproper", "node colors are 1..4");
  for (const auto& e : tri.edges) {
    require(e.u >= 0 && e.u < (int)tri.nodes.size() && e.v >= 0 &&
                e.v < (int)tri.nodes.size(),
            "InvalidSpec", "chain endpoints out of range");
    if (e.nice)
      require(node_colors[e.u] == node_colors[e.v], "NodeColoringImproper",
              "nice chain endpoints must share a color");
    else
      require(node_colors[e.u] != node_colors[e.v], "NodeColoringImproper",
              "chain endpoints must differ");
  }
  std::string kind;
  if (m.meta.is_object() && m.meta.contains("kind") && m.meta["kind"].is_string())
    kind = m.meta["kind"].get<std::string>();

  Coloring col;
  col.scheme = "m3";
  col.colors.assign(m.n_faces(), 0);
  col.zones.assign(m.n_faces(), -1);

  auto finish = [&]() -> Coloring {
    for (FaceId f = 0; f < m.n_faces(); f++)
      require(!m.face_bounded(f) || col.colors[f] > 0, "ZoneColoringFailed",
              "face " + std::to_string(f) + " left uncolored");
    require(verify_proper(m, col.colors, 4) && verify_zoned(m, col),
            "ZoneColoringFailed",
            "zone frames cannot realize the node coloring");
    return col;
  };

  // odd cone: permute the canonical three-zone coloring onto the node colors
  if (kind == "cone" && tri.nodes.size() == 4 &&
      tri.nodes[0].faces.size() == 1 && tri.nodes[1].faces.empty() &&
      tri.nodes[2].faces.empty() && tri.nodes[3].faces.empty()) {
    Coloring base = color_cone_m3(m);
    std::array<int, 5> pi{0, 0, 0, 0, 0};
    pi[4] = node_colors[0];
    for (int i = 0; i < 3; i++) pi[i + 1] = node_colors[1 + i];
    for (FaceId f = 0; f < m.n_faces(); f++)
      if (base.colors[f]) col.colors[f] = pi[base.colors[f]];
    col.zones = base.zones;
    for (auto sub : base.subsets) {
      for (int& c : sub) c = pi[c];
      std::sort(sub.begin(), sub.end());
      col.subsets.push_back(sub);
    }
    for (Separator s : base.separators) {
      s.colors = {pi[s.colors[0]], pi[s.colors[1]]};
      if (s.colors[0] > s.colors[1]) std::swap(s.colors[0], s.colors[1]);
      col.separators.push_back(s);
    }
    return finish();
  }

  // nice pair: (3+1)-coloring, chain alternating 4 with the pair color
  if (tri.nodes.size() == 2 && tri.edges.size() == 1 && tri.edges[0].nice &&
      tri.nodes[0].faces.size() == 1 && tri.nodes[1].faces.size() == 1) {
    FaceId a = tri.nodes[0].faces[0], b = tri.nodes[1].faces[0];
    int cp = node_colors[0];
    require(cp >= 1 && cp <= 3, "NodeColoringImproper",
            "the pair color must leave 4 for the chain");
    const auto& chain = tri.edges[0].chain;
    require(!chain.empty(), "ZoneColoringFailed", "pair chain is empty");
    col.colors[a] = col.colors[b] = cp;
    col.zones[a] = col.zones[b] = 1;
    std::unordered_set<FaceId> walls(chain.begin(), chain.end());
    for (size_t i = 0; i < chain.size(); i++) {
      col.colors[chain[i]] = i % 2 == 0 ? 4 : cp;
      col.zones[chain[i]] = 1;
    }
    FaceId n0 = -1;
    int q0 = 0;
    for (Dart d : m.faces[a]) {
      FaceId g = m.dart_face[PlanarMap::twin(d)];
      if (!plain_hex(m, g) || walls.count(g)) continue;
      n0 = g;
      q0 = m.dart_pos[PlanarMap::twin(d)];
      break;
    }
    require(n0 >= 0, "ZoneColoringFailed", "pair face swallowed by its chain");
    Eis a_cell = dir(q0);
    std::vector<FaceId> region;
    for (FaceId f : hex_faces(m))
      if (!walls.count(f)) region.push_back(f);
    FrameField ff = develop_zone(m, region, {n0, {0, 0}, 0});
    std::array<int, 3> theta{cp, cp == 1 ? 2 : 1, cp == 3 ? 2 : 3};
    for (FaceId f : region) {
      col.colors[f] = theta[cls(ff.coord[f] - a_cell)];
      col.zones[f] = 0;
    }
    col.subsets = {{1, 2, 3}, {cp, 4}};
    return finish();
  }

  std::vector<int> node_of(m.n_faces(), -1);
  for (size_t n = 0; n < tri.nodes.size(); n++)
    for (FaceId f : tri.nodes[n].faces) {
      require(f >= 0 && f < m.n_faces(), "InvalidSpec", "node face not in map");
      node_of[f] = (int)n;
    }

  // every bounded face a node: colors transfer directly, vertices zone them
  bool all_nodes = true;
  for (FaceId f = 0; f < m.n_faces(); f++)
    all_nodes &= !m.face_bounded(f) || node_of[f] >= 0;
  if (all_nodes && !tri.zones.empty()) {
    for (FaceId f = 0; f < m.n_faces(); f++)
      if (m.face_bounded(f)) col.colors[f] = node_colors[node_of[f]];
    col.subsets.assign(tri.zones.size(), {});
    for (size_t z = 0; z < tri.zones.size(); z++) {
      std::set<int> pal;
      for (int n : tri.zones[z].nodes) {
        pal.insert(node_colors[n]);
        for (FaceId f : tri.nodes[n].faces)
          if (col.zones[f] < 0) col.zones[f] = (int)z;
      }
      col.subsets[z].assign(pal.begin(), pal.end());
    }
    return finish();
  }

  // general zoned application
  std::unordered_map<FaceId, int> chain_edge; // chain face -> edge index
  for (size_t e = 0; e < tri.edges.size(); e++)
    for (FaceId f : tri.edges[e].chain) chain_edge[f] = (int)e;

  col.subsets.assign(tri.zones.size(), {});
  std::unordered_map<FaceId, std::vector<std::pair<int, int>>> proposals;
  for (size_t z = 0; z < tri.zones.size(); z++) {
    const CombZone& zn = tri.zones[z];
    std::set<int> pal;
    if (zn.faces.empty()) {
      for (int n : zn.nodes) pal.insert(node_colors[n]);
      col.subsets[z].assign(pal.begin(), pal.end());
      continue;
    }
    FrameField ff = develop_zone(m, zn.faces, {zn.faces[0], {0, 0}, 0});
    std::array<int, 3> th{-1, -1, -1};
    for (FaceId f : zn.faces) {
      const auto& cyc = m.faces[f];
      for (int j = 0; j < (int)cyc.size(); j++) {
        FaceId g = m.dart_face[PlanarMap::twin(cyc[j])];
        if (g == f || !m.face_bounded(g) || node_of[g] < 0) continue;
        Eis cell = ff.coord[f] + dir((ff.frame[f] + j) % 6);
        int c = cls(cell);
        int want = node_colors[node_of[g]];
        require(th[c] == -1 || th[c] == want, "ZoneColoringFailed",
                "zone frame reads conflicting node classes");
        th[c] = want;
      }
    }
    int fill = 1;
    for (int c = 0; c < 3; c++) {
      if (th[c] != -1) continue;
      while (fill <= 3 && std::count(th.begin(), th.end(), fill)) fill++;
      th[c] = fill <= 3 ? fill : 4;
    }
    for (FaceId f : zn.faces) {
      col.colors[f] = th[cls(ff.coord[f])];
      col.zones[f] = (int)z;
      pal.insert(col.colors[f]);
    }
    // propose colors for neighboring chain faces through the zone frame
    for (FaceId f : zn.faces) {
      const auto& cyc = m.faces[f];
      for (int j = 0; j < (int)cyc.size(); j++) {
        FaceId g = m.dart_face[PlanarMap::twin(cyc[j])];
        if (g == f || !chain_edge.count(g)) continue;
        Eis cell = ff.coord[f] + dir((ff.frame[f] + j) % 6);
        proposals[g].push_back({(int)z, th[cls(cell)]});
      }
    }
    col.subsets[z].assign(pal.begin(), pal.end());
  }

  // nice chains take their own (3+1) zone; plain chains follow the frames
  for (const auto& e : tri.edges) {
    if (e.chain.empty()) continue;
    if (e.nice) {
      int cp = node_colors[e.u];
      require(cp >= 1 && cp <= 3, "ZoneColoringFailed",
              "nice chain color must leave 4 free");
      int z = (int)col.subsets.size();
      col.subsets.push_back({cp, 4});
      for (size_t i = 0; i < e.chain.size(); i++) {
        col.colors[e.chain[i]] = i % 2 == 0 ? 4 : cp;
        col.zones[e.chain[i]] = z;
      }
      for (int n : {e.u, e.v})
        for (FaceId f : tri.nodes[n].faces) {
          col.colors[f] = cp;
          if (col.zones[f] < 0) col.zones[f] = z;
        }
    } else {
      for (FaceId f : e.chain) {
        auto it = proposals.find(f);
        require(it != proposals.end() && !it->second.empty(),
                "ZoneColoringFailed", "chain face sees no zone frame");
        int zmin = it->second[0].first, want = it->second[0].second;
        for (auto [z, c] : it->second) {
          require(c == want, "ZoneColoringFailed",
                  "zone frames disagree across a chain");
          zmin = std::min(zmin, z);
        }
        col.colors[f] = want;
        col.zones[f] = zmin;
      }
    }
  }

  // node faces: node colors, zoned with the lowest zone listing them
  for (size_t n = 0; n < tri.nodes.size(); n++)
    for (FaceId f : tri.nodes[n].faces) {
      col.colors[f] = node_colors[n];
      if (col.zones[f] >= 0) continue;
      for (size_t z = 0; z < tri.zones.size() && col.zones[f] < 0; z++)
        if (std::count(tri.zones[z].nodes.begin(), tri.zones[z].nodes.end(),
                       (int)n))
          col.zones[f] = (int)z;
      require(col.zones[f] >= 0, "ZoneColoringFailed",
              "node face belongs to no zone");
    }

  // declare separators where the chain colors are exactly the shared ones
  for (const auto& e : tri.edges) {
    if (e.nice || e.chain.empty()) continue;
    std::set<int> flanks, used;
    for (FaceId f : e.chain) {
      used.insert(col.colors[f]);
      for (auto [z, c] : proposals[f]) flanks.insert(z);
    }
    std::set<int> want{node_colors[e.u], node_colors[e.v]};
    if (flanks.size() != 2 || used != want) continue;
    auto it = flanks.begin();
    int za = *it++, zb = *it;
    std::set<int> common;
    for (int c : col.subsets[za])
      if (std::count(col.subsets[zb].begin(), col.subsets[zb].end(), c))
        common.insert(c);
    if (common != want) continue;
    col.separators.push_back(
        {e.chain, {za, zb}, {*want.begin(), *want.rbegin()}});
  }
  return finish();
}

Coloring m3_color(const PlanarMap& m) {
  std::vector<FaceId> odd;
  bool closed = true;
  FaceId lowest = -1;
  for (FaceId f = 0; f < m.n_faces(); f++) {
    if (!m.face_bounded(f)) {
      closed = false;
      continue;
    }
    if (lowest < 0) lowest = f;
    if (m.faces[f].size() % 2 == 1) odd.push_back(f);
  }
  require(lowest >= 0, "InvalidSpec", "map has no bounded faces");
  std::string kind;
  if (m.meta.is_object() && m.meta.contains("kind") && m.meta["kind"].is_string())
    kind = m.meta["kind"].get<std::string>();

  if (odd.empty()) {
    Coloring base = closed            ? color3_closed(m)
                    : kind == "cone"  ? color_cone_3plus1(m)
                    : kind == "tube"  ? color_tube(m)
                                      : color3_region(m, hex_faces(m), lowest);
    base.scheme = "m3";
    bool zoned = false;
    for (FaceId f = 0; f < m.n_faces(); f++)
      zoned |= m.face_bounded(f) && base.zones[f] >= 0;
    if (!zoned) {
      bool has4 = false;
      for (FaceId f = 0; f < m.n_faces(); f++)
        has4 |= m.face_bounded(f) && base.colors[f] == 4;
      for (FaceId f = 0; f < m.n_faces(); f++)
        if (m.face_bounded(f))
          base.zones[f] = has4 && base.colors[f] != 4 ? 1 : 0;
      base.subsets = has4 ? std::vector<std::vector<int>>{{4}, {1, 2, 3}}
                          : std::vector<std::vector<int>>{{1, 2, 3}};
      base.separators.clear();
    }
    return base;
  }

  CombinationGraph cg = global_combine(m);
  Triangulation tri = triangulate_combination(cg);
  std::vector<int> node_colors;
  if (tri.nodes.size() == 2 && tri.edges.size() == 1 && tri.edges[0].nice) {
    node_colors = {1, 1};
  } else {
    // contract nice chains, then color the quotient graph exactly
    std::vector<int> rep(tri.nodes.size());
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&](int x) {
      while (rep[x] != x) x = rep[x] = rep[rep[x]];
      return x;
    };
    for (const auto& e : tri.edges)
      if (e.nice) {
        int a = find(e.u), b = find(e.v);
        rep[std::max(a, b)] = std::min(a, b);
      }
    std::map<int, int> gid;
    for (size_t n = 0; n < tri.nodes.size(); n++)
      gid.emplace(find((int)n), (int)gid.size());
    std::vector<std::vector<int>> adj(gid.size());
    for (const auto& e : tri.edges) {
      if (e.nice) continue;
      int gu = gid[find(e.u)], gv = gid[find(e.v)];
      require(gu != gv, "CombinationFailed",
              "nice and plain chains disagree on a node pair");
      adj[gu].push_back(gv);
    }
    auto colored = color_graph(adj, 4, std::max(64, (int)adj.size()));
    require(colored.has_value(), "CombinationFailed",
            "combination graph is not 4-colorable");
    // keep color 4 off contracted nice groups: their chains need it free
    std::set<int> nice_groups, nice_colors;
    for (const auto& e : tri.edges)
      if (e.nice) nice_groups.insert(gid[find(e.u)]);
    for (int g : nice_groups) nice_colors.insert((*colored)[g]);
    if (nice_colors.count(4)) {
      int swap_to = 0;
      for (int c = 1; c <= 3 && !swap_to; c++)
        if (!nice_colors.count(c)) swap_to = c;
      require(swap_to > 0, "CombinationFailed",
              "nice chains exhaust the three class colors");
      for (int& c : *colored)
        c = c == 4 ? swap_to : c == swap_to ? 4 : c;
    }
    for (size_t n = 0; n < tri.nodes.size(); n++)
      node_colors.push_back((*colored)[gid[find((int)n)]]);
  }
  return apply_m3(m, tri, node_colors);
}

} // namespace hexcol
