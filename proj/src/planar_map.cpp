#include "hexcol/planar_map.hpp"

#include <algorithm>
#include <numeric>

namespace hexcol {

std::vector<std::vector<int>> orbits_of(int n, const std::vector<int>& p) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; s++) {
    if (seen[s]) continue;
    std::vector<int> orb;
    for (int d = s; !seen[d]; d = p[d]) {
      seen[d] = true;
      orb.push_back(d);
    }
    out.push_back(std::move(orb));
  }
  return out;
}

PlanarMap build_map(int dart_count, std::vector<Dart> next,
                    nlohmann::json meta, bool allow_open) {
  require(dart_count >= 2 && dart_count % 2 == 0, "InvalidSpec",
          "dart count must be positive and even");
  require((int)next.size() == dart_count, "InvalidSpec",
          "next has wrong length");
  std::vector<int> hits(dart_count, 0);
  for (Dart d : next) {
    require(d >= 0 && d < dart_count, "NotAPermutation",
            "next image out of range");
    hits[d]++;
  }
  for (int h : hits)
    require(h == 1, "NotAPermutation", "next is not a bijection");

  PlanarMap m;
  m.dart_count = dart_count;
  m.next = std::move(next);
  m.meta = std::move(meta);

  m.prev_.assign(dart_count, 0);
  for (Dart d = 0; d < dart_count; d++) m.prev_[m.next[d]] = d;

  m.vertices = orbits_of(dart_count, m.next);
  m.dart_vertex.assign(dart_count, -1);
  for (int v = 0; v < (int)m.vertices.size(); v++)
    for (Dart d : m.vertices[v]) m.dart_vertex[d] = v;

  std::vector<Dart> phi(dart_count);
  for (Dart d = 0; d < dart_count; d++) phi[d] = m.phi(d);
  m.faces = orbits_of(dart_count, phi);
  m.dart_face.assign(dart_count, -1);
  m.dart_pos.assign(dart_count, -1);
  for (int f = 0; f < (int)m.faces.size(); f++)
    for (int j = 0; j < (int)m.faces[f].size(); j++) {
      m.dart_face[m.faces[f][j]] = f;
      m.dart_pos[m.faces[f][j]] = j;
    }

  for (auto& orb : m.faces)
    require(orb.size() >= 2, "DegenerateSpec", "face of size 1 (loop edge)");

  // Connectivity over darts via next and twin.
  {
    std::vector<bool> vis(dart_count, false);
    std::vector<Dart> stack = {0};
    vis[0] = true;
    while (!stack.empty()) {
      Dart d = stack.back();
      stack.pop_back();
      for (Dart e : {m.next[d], PlanarMap::twin(d)}) {
        if (!vis[e]) {
          vis[e] = true;
          stack.push_back(e);
        }
      }
    }
    for (bool b : vis) require(b, "Disconnected", "map is not connected");
  }

  m.bounded_.assign(m.faces.size(), true);
  if (m.meta.is_object() && m.meta.contains("unbounded_faces"))
    for (int f : m.meta["unbounded_faces"]) {
      require(f >= 0 && f < (int)m.faces.size(), "InvalidSpec",
              "unbounded face id out of range");
      m.bounded_[f] = false;
    }

  if (!allow_open)
    require(m.euler() == 2, "NotSphere",
            "V - E + F = " + std::to_string(m.euler()));
  return m;
}

int PlanarMap::n_bounded_faces() const {
  return (int)std::count(bounded_.begin(), bounded_.end(), true);
}

PlanarMap dual(const PlanarMap& m) {
  std::vector<Dart> nxt(m.dart_count);
  for (Dart d = 0; d < m.dart_count; d++) nxt[d] = m.next[PlanarMap::twin(d)];
  nlohmann::json meta;
  meta["kind"] = "dual";
  if (m.meta.is_object() && m.meta.contains("kind"))
    meta["of"] = m.meta["kind"];
  return build_map(m.dart_count, std::move(nxt), std::move(meta));
}

FaceAdjacency face_adjacency(const PlanarMap& m) {
  FaceAdjacency a;
  a.nbrs.resize(m.n_faces());
  a.self_adjacent.assign(m.n_faces(), false);
  for (FaceId f = 0; f < m.n_faces(); f++) {
    for (Dart d : m.faces[f]) {
      FaceId g = m.dart_face[PlanarMap::twin(d)];
      if (g == f)
        a.self_adjacent[f] = true;
      else
        a.nbrs[f].push_back(g);
    }
    auto& v = a.nbrs[f];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return a;
}

} // namespace hexcol
