#pragma once
#include <vector>

#include "hexcol/planar_map.hpp"

namespace hexcol {

// One planned face: corner keys in counterclockwise order (interior on the
// left). Edge j runs from corner j to corner j+1. Two faces are glued along
// an edge when their incidences carry the same edge key. By default the key
// is the unordered pair of endpoint corner keys; generators whose gluing
// identifies distinct edges with equal endpoints (thin tubes) must supply
// explicit edge_keys, one per position.
struct FaceSpec {
  std::vector<std::vector<long long>> corners;
  std::vector<std::vector<long long>> edge_keys; // optional, else derived
  nlohmann::json meta;
};

struct BuildResult {
  PlanarMap map;
  std::vector<FaceId> face_ids;  // input index -> FaceId in map
  std::vector<FaceId> unbounded; // boundary orbits, ascending
};

// Glues the planned faces into a planar map. Every edge key must occur on at
// most two incidences, matched pairs must traverse their endpoints in
// opposite order (orientability), and each corner must close into a single
// rotation with at most one boundary gap. Unbounded orbits are recorded in
// meta["unbounded_faces"]; with allow_open=false the result must be a sphere.
BuildResult assemble(const std::vector<FaceSpec>& specs,
                     nlohmann::json map_meta = {}, bool allow_open = true);

} // namespace hexcol
