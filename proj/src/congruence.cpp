#include "hexcol/congruence.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "hexcol/errors.hpp"

namespace hexcol {

bool same_class(CoxeterCoord c) { return (c.p - c.q) % 3 == 0; }

std::vector<int> classify_region(const PlanarMap& m,
                                 const std::vector<FaceId>& region,
                                 FaceId base) {
  bool found = false;
  for (FaceId f : region) found = found || f == base;
  require(found, "InvalidSpec", "base face is not in the region");
  auto ff = develop(m, region, {base, {0, 0}, 0}, {}, ClashPolicy::label);
  std::vector<int> labels(m.n_faces(), -1);
  for (FaceId f : region) labels[f] = cls(ff.coord.at(f));
  return labels;
}

std::vector<int> classify(const PlanarMap& m, FaceId base) {
  return classify_region(m, hex_faces(m), base);
}

namespace {

// One sigma(d) step: across direction d then d+1, or the other way around
// when the first intermediate face is not a plain hexagon.
bool sigma_step(const PlanarMap& m, Cursor& c, int d) {
  for (int first : {0, 1}) {
    try {
      Cursor mid = cursor_move(m, c, d + first);
      c = cursor_move(m, mid, d + 1 - first);
      return true;
    } catch (const Error&) {
    }
  }
  return false;
}

} // namespace

Chain trace_chain(const PlanarMap& m, FaceId start, int k, ChainStyle style) {
  require(m.face_bounded(start) && m.faces[start].size() == 6, "InvalidSpec",
          "chains start on bounded hexagons");
  Chain ch;
  std::unordered_set<FaceId> seen;
  Cursor c{start, 0};
  ch.faces.push_back(start);
  seen.insert(start);
  for (;;) {
    Cursor nxt = c;
    bool ok = style == ChainStyle::linear
                  ? sigma_step(m, nxt, k)
                  : sigma_step(m, nxt, k + 5) && sigma_step(m, nxt, k);
    if (!ok) return ch;
    if (seen.count(nxt.face)) {
      ch.plain = false;
      return ch;
    }
    ch.faces.push_back(nxt.face);
    seen.insert(nxt.face);
    c = nxt;
  }
}

namespace {

std::vector<FaceId> bounded_neighbors(const PlanarMap& m, FaceId f) {
  std::vector<FaceId> out;
  for (Dart d : m.faces[f]) {
    FaceId g = m.dart_face[PlanarMap::twin(d)];
    if (m.face_bounded(g)) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

bool chain_consecutive(const PlanarMap& m, const std::vector<int>& labels,
                       FaceId f, FaceId g) {
  if (f == g || labels[f] < 0 || labels[f] != labels[g]) return false;
  auto nf = bounded_neighbors(m, f), ng = bounded_neighbors(m, g);
  for (FaceId x : nf)
    if (std::binary_search(ng.begin(), ng.end(), x)) return true;
  return false;
}

std::vector<FaceId> kempe_pair(const PlanarMap& m,
                               const std::vector<int>& labels, FaceId f,
                               FaceId g) {
  bool adjacent = false;
  for (Dart d : m.faces[f]) adjacent |= m.dart_face[PlanarMap::twin(d)] == g;
  require(adjacent, "NotAdjacent", "kempe pair needs adjacent faces");
  require(labels[f] >= 0 && labels[g] >= 0 && labels[f] != labels[g],
          "SameClass", "kempe pair needs two distinct labels");
  int la = labels[f], lb = labels[g];
  std::vector<char> in(m.n_faces(), 0);
  std::deque<FaceId> todo{f};
  in[f] = 1;
  while (!todo.empty()) {
    FaceId cur = todo.front();
    todo.pop_front();
    for (FaceId nb : bounded_neighbors(m, cur)) {
      if (in[nb] || (labels[nb] != la && labels[nb] != lb)) continue;
      in[nb] = 1;
      todo.push_back(nb);
    }
  }
  std::vector<FaceId> out;
  for (FaceId x = 0; x < m.n_faces(); x++)
    if (in[x]) out.push_back(x);
  return out;
}

} // namespace hexcol
