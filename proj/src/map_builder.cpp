#include "hexcol/map_builder.hpp"

#include <algorithm>
#include <map>

namespace hexcol {

namespace {

using Key = std::vector<long long>;

Key pair_key(const Key& a, const Key& b) {
  const Key& lo = a <= b ? a : b;
  const Key& hi = a <= b ? b : a;
  Key k;
  k.reserve(1 + lo.size() + hi.size());
  k.push_back((long long)lo.size());
  k.insert(k.end(), lo.begin(), lo.end());
  k.insert(k.end(), hi.begin(), hi.end());
  return k;
}

struct Bucket {
  int face0 = -1, pos0 = -1; // first incidence -> dart 2e
  int face1 = -1, pos1 = -1; // second incidence -> dart 2e+1, or outer side
};

} // namespace

BuildResult assemble(const std::vector<FaceSpec>& specs,
                     nlohmann::json map_meta, bool allow_open) {
  require(!specs.empty(), "InvalidSpec", "no faces to assemble");
  bool explicit_keys = !specs[0].edge_keys.empty();
  for (const auto& s : specs) {
    size_t k = s.corners.size();
    require(k >= 2, "InvalidSpec", "face with fewer than two corners");
    require(s.edge_keys.empty() == !explicit_keys, "InvalidSpec",
            "edge keys must be given for all faces or none");
    if (!s.edge_keys.empty())
      require(s.edge_keys.size() == k, "InvalidSpec",
              "edge key count differs from corner count");
    for (size_t j = 0; j < k; j++)
      require(s.corners[j] != s.corners[(j + 1) % k], "InvalidSpec",
              "consecutive duplicate corner");
  }

  std::map<Key, int> bucket_of;
  std::vector<Bucket> buckets;
  std::vector<std::vector<Dart>> dart_of(specs.size());
  for (int i = 0; i < (int)specs.size(); i++) {
    const auto& s = specs[i];
    int k = (int)s.corners.size();
    dart_of[i].resize(k);
    for (int j = 0; j < k; j++) {
      Key key = explicit_keys
                    ? s.edge_keys[j]
                    : pair_key(s.corners[j], s.corners[(j + 1) % k]);
      auto [it, fresh] = bucket_of.try_emplace(key, (int)buckets.size());
      if (fresh) {
        buckets.push_back({i, j, -1, -1});
        dart_of[i][j] = 2 * it->second;
      } else {
        Bucket& b = buckets[it->second];
        require(b.face1 < 0, "InvalidSpec",
                "edge key shared by more than two incidences");
        const auto& other = specs[b.face0];
        int ko = (int)other.corners.size();
        require(other.corners[b.pos0] == s.corners[(j + 1) % k] &&
                    other.corners[(b.pos0 + 1) % ko] == s.corners[j],
                "InvalidSpec", "glued edge incidences not reversed");
        b.face1 = i;
        b.pos1 = j;
        dart_of[i][j] = 2 * it->second + 1;
      }
    }
  }

  int dart_count = 2 * (int)buckets.size();
  std::vector<Dart> next(dart_count, -1);
  for (int i = 0; i < (int)specs.size(); i++) {
    int k = (int)specs[i].corners.size();
    for (int j = 0; j < k; j++)
      next[dart_of[i][j] ^ 1] = dart_of[i][(j + 1) % k];
  }

  // Group darts by source corner and close each rotation. A face dart at
  // position j leaves corner j; an outer dart of a boundary edge leaves the
  // edge's far corner j+1.
  std::map<Key, std::vector<Dart>> at_corner;
  for (int i = 0; i < (int)specs.size(); i++) {
    int k = (int)specs[i].corners.size();
    for (int j = 0; j < k; j++) {
      at_corner[specs[i].corners[j]].push_back(dart_of[i][j]);
      int e = dart_of[i][j] / 2;
      if (dart_of[i][j] == 2 * e && buckets[e].face1 < 0)
        at_corner[specs[i].corners[(j + 1) % k]].push_back(2 * e + 1);
    }
  }
  for (auto& kv : at_corner) {
    auto& group = kv.second;
    std::vector<Dart> tails;
    std::map<Dart, bool> covered;
    for (Dart d : group) covered[d] = false;
    for (Dart d : group)
      if (next[d] < 0)
        tails.push_back(d);
      else
        covered[next[d]] = true;
    require(tails.size() <= 1, "InvalidSpec", "pinched corner (multiple gaps)");
    if (tails.size() == 1) {
      Dart head = -1;
      for (auto& [d, c] : covered)
        if (!c) head = d;
      next[tails[0]] = head;
    }
    size_t steps = 0;
    Dart cur = group[0];
    do {
      cur = next[cur];
      steps++;
    } while (cur != group[0] && steps <= group.size());
    require(steps == group.size(), "InvalidSpec",
            "corner rotation splits into several vertices");
  }
  for (Dart d = 0; d < dart_count; d++)
    require(next[d] >= 0, "InvalidSpec", "incomplete rotation system");

  std::vector<Dart> phi(dart_count);
  for (Dart d = 0; d < dart_count; d++) phi[d] = next[d ^ 1];
  auto orbits = orbits_of(dart_count, phi);
  std::vector<int> orbit_of(dart_count, -1);
  for (int f = 0; f < (int)orbits.size(); f++)
    for (Dart d : orbits[f]) orbit_of[d] = f;

  BuildResult res;
  res.face_ids.resize(specs.size());
  std::vector<int> claimed(orbits.size(), -1);
  for (int i = 0; i < (int)specs.size(); i++) {
    int f = orbit_of[dart_of[i][0]];
    require(orbits[f].size() == specs[i].corners.size() && claimed[f] < 0,
            "InvalidSpec", "planned face does not survive as a face orbit");
    claimed[f] = i;
    res.face_ids[i] = f;
  }
  nlohmann::json faces_meta = nlohmann::json::array();
  for (int f = 0; f < (int)orbits.size(); f++) {
    if (claimed[f] >= 0) {
      const auto& fm = specs[claimed[f]].meta;
      faces_meta.push_back(fm.is_null() ? nlohmann::json::object() : fm);
    } else {
      res.unbounded.push_back(f);
      faces_meta.push_back({{"unbounded", true}});
    }
  }
  if (!map_meta.is_object()) map_meta = nlohmann::json::object();
  map_meta["unbounded_faces"] = res.unbounded;
  map_meta["faces"] = std::move(faces_meta);

  res.map = build_map(dart_count, std::move(next), std::move(map_meta),
                      allow_open);
  return res;
}

} // namespace hexcol
