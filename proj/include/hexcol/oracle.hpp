#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "hexcol/planar_map.hpp"

namespace hexcol {

struct OracleOptions {
  int colors = 4;
  std::vector<FaceId> region;                  // empty = all bounded faces
  std::vector<std::pair<FaceId, int>> pinned;  // (face, color in 1..colors)
  int guard = 64;                              // max region size, TooLarge above
};

// Exact backtracking search for a proper coloring of the region's faces with
// colors 1..k (0 outside the region). Deterministic: faces are assigned in
// descending bounded-degree order (ties by id), values ascending, with
// forward checking. Empty optional when infeasible.
std::optional<std::vector<int>> brute_force_color(const PlanarMap& m,
                                                  const OracleOptions& opt = {});

// Smallest k for which the bounded faces admit a proper coloring.
int chromatic_number_faces(const PlanarMap& m, int guard = 64);

// Exact proper coloring of an abstract adjacency graph with colors 1..k,
// same ordering policy as brute_force_color. Empty optional when infeasible.
std::optional<std::vector<int>> color_graph(
    const std::vector<std::vector<int>>& adj, int k, int guard = 64);

// Congruence labels recomputed independently of any lattice development:
// 3-color the region with `base` pinned to color 1 and the face across its
// position-0 dart pinned to color 2; labels are color-1. Not3Colorable when
// no such coloring exists.
std::vector<int> oracle_classify(const PlanarMap& m,
                                 const std::vector<FaceId>& region, FaceId base,
                                 int guard = 64);

} // namespace hexcol
