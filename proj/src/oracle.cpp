#include "hexcol/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "hexcol/errors.hpp"

namespace hexcol {

namespace {

struct Problem {
  std::vector<FaceId> order;              // assignment order
  std::vector<std::vector<int>> nbrs;     // indices into order
  std::vector<uint32_t> allowed;          // color bitmasks
  int k = 0;
};

bool search(Problem& pb, size_t at, std::vector<int>& val) {
  if (at == pb.order.size()) return true;
  uint32_t mask = pb.allowed[at];
  for (int c = 0; c < pb.k; c++) {
    if (!(mask >> c & 1)) continue;
    std::vector<std::pair<int, uint32_t>> undo;
    bool dead = false;
    for (int nb : pb.nbrs[at]) {
      if (!(pb.allowed[nb] >> c & 1)) continue;
      undo.push_back({nb, pb.allowed[nb]});
      pb.allowed[nb] &= ~(1u << c);
      dead = dead || ((size_t)nb > at && pb.allowed[nb] == 0);
    }
    if (!dead) {
      val[at] = c + 1;
      if (search(pb, at + 1, val)) return true;
    }
    for (auto [nb, m] : undo) pb.allowed[nb] = m;
  }
  return false;
}

} // namespace

std::optional<std::vector<int>> brute_force_color(const PlanarMap& m,
                                                  const OracleOptions& opt) {
  std::vector<FaceId> region = opt.region;
  if (region.empty())
    for (FaceId f = 0; f < m.n_faces(); f++)
      if (m.face_bounded(f)) region.push_back(f);
  require((int)region.size() <= opt.guard, "TooLarge",
          "region exceeds the oracle guard");
  require(opt.colors >= 1 && opt.colors <= 31, "InvalidSpec",
          "color count out of range");

  std::vector<int> slot(m.n_faces(), -1);
  for (size_t i = 0; i < region.size(); i++) {
    require(m.face_bounded(region[i]), "InvalidSpec",
            "oracle region must be bounded faces");
    require(slot[region[i]] < 0, "InvalidSpec", "duplicate face in region");
    slot[region[i]] = (int)i;
  }

  std::vector<std::vector<int>> nbrs(region.size());
  for (size_t i = 0; i < region.size(); i++) {
    for (Dart d : m.faces[region[i]]) {
      FaceId g = m.dart_face[PlanarMap::twin(d)];
      if (g == region[i]) return std::nullopt; // self-adjacent face
      if (slot[g] >= 0) nbrs[i].push_back(slot[g]);
    }
    std::sort(nbrs[i].begin(), nbrs[i].end());
    nbrs[i].erase(std::unique(nbrs[i].begin(), nbrs[i].end()), nbrs[i].end());
  }

  Problem pb;
  pb.k = opt.colors;
  pb.order.resize(region.size());
  std::vector<int> pos(region.size());
  std::iota(pb.order.begin(), pb.order.end(), 0);
  std::sort(pb.order.begin(), pb.order.end(), [&](int a, int b) {
    if (nbrs[a].size() != nbrs[b].size()) return nbrs[a].size() > nbrs[b].size();
    return region[a] < region[b];
  });
  for (size_t i = 0; i < pb.order.size(); i++) pos[pb.order[i]] = (int)i;
  pb.nbrs.resize(region.size());
  for (size_t i = 0; i < pb.order.size(); i++)
    for (int nb : nbrs[pb.order[i]]) pb.nbrs[i].push_back(pos[nb]);
  pb.allowed.assign(region.size(), (1u << pb.k) - 1);
  for (auto [f, c] : opt.pinned) {
    require(f >= 0 && f < m.n_faces() && slot[f] >= 0, "InvalidSpec",
            "pinned face outside the region");
    require(c >= 1 && c <= pb.k, "InvalidSpec", "pinned color out of range");
    pb.allowed[pos[slot[f]]] &= 1u << (c - 1);
    if (pb.allowed[pos[slot[f]]] == 0) return std::nullopt;
  }

  std::vector<int> val(region.size(), 0);
  if (!search(pb, 0, val)) return std::nullopt;
  std::vector<int> colors(m.n_faces(), 0);
  for (size_t i = 0; i < pb.order.size(); i++)
    colors[region[pb.order[i]]] = val[i];
  return colors;
}

std::optional<std::vector<int>> color_graph(
    const std::vector<std::vector<int>>& adj, int k, int guard) {
  int n = (int)adj.size();
  require(n <= guard, "TooLarge", "graph exceeds the oracle guard");
  require(k >= 1 && k <= 31, "InvalidSpec", "color count out of range");
  std::vector<std::vector<int>> nbrs(n);
  for (int i = 0; i < n; i++) {
    for (int j : adj[i]) {
      require(j >= 0 && j < n, "InvalidSpec", "adjacency index out of range");
      if (j == i) return std::nullopt;
      nbrs[i].push_back(j);
      nbrs[j].push_back(i);
    }
  }
  for (auto& v : nbrs) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  Problem pb;
  pb.k = k;
  pb.order.resize(n);
  std::vector<int> pos(n);
  std::iota(pb.order.begin(), pb.order.end(), 0);
  std::sort(pb.order.begin(), pb.order.end(), [&](int a, int b) {
    if (nbrs[a].size() != nbrs[b].size()) return nbrs[a].size() > nbrs[b].size();
    return a < b;
  });
  for (size_t i = 0; i < pb.order.size(); i++) pos[pb.order[i]] = (int)i;
  pb.nbrs.resize(n);
  for (size_t i = 0; i < pb.order.size(); i++)
    for (int nb : nbrs[pb.order[i]]) pb.nbrs[i].push_back(pos[nb]);
  pb.allowed.assign(n, (1u << k) - 1);

  std::vector<int> val(n, 0);
  if (!search(pb, 0, val)) return std::nullopt;
  std::vector<int> colors(n, 0);
  for (size_t i = 0; i < pb.order.size(); i++) colors[pb.order[i]] = val[i];
  return colors;
}

int chromatic_number_faces(const PlanarMap& m, int guard) {
  int n = 0;
  for (FaceId f = 0; f < m.n_faces(); f++) n += m.face_bounded(f) ? 1 : 0;
  for (int k = 1; k <= std::max(n, 1); k++) {
    OracleOptions opt;
    opt.colors = k;
    opt.guard = guard;
    if (brute_force_color(m, opt)) return k;
  }
  fail("InvalidSpec", "no proper coloring exists at any size");
}

std::vector<int> oracle_classify(const PlanarMap& m,
                                 const std::vector<FaceId>& region, FaceId base,
                                 int guard) {
  FaceId across = m.dart_face[PlanarMap::twin(m.faces.at(base)[0])];
  OracleOptions opt;
  opt.colors = 3;
  opt.region = region;
  opt.pinned = {{base, 1}, {across, 2}};
  opt.guard = guard;
  auto sol = brute_force_color(m, opt);
  require(sol.has_value(), "Not3Colorable", "region has no 3-coloring");
  std::vector<int> labels(m.n_faces(), -1);
  for (FaceId f : region) labels[f] = (*sol)[f] - 1;
  return labels;
}

} // namespace hexcol
