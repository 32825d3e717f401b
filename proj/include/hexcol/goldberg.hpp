#pragma once
#include "hexcol/planar_map.hpp"

namespace hexcol {

enum class GoldbergFamily { icosahedral, octahedral, tetrahedral };

// Chiral Goldberg parameters over a base triangulation. The base solid's
// triangles are subdivided by the Eisenstein sublattice spanned by (p,q) and
// its 60 degree rotation; the dual of the subdivision is the fullerene.
struct GoldbergSpec {
  GoldbergFamily family = GoldbergFamily::icosahedral;
  long long p = 1, q = 0;
};

// Closed map with 12 pentagons / 6 squares / 4 triangles (per family), all
// other faces hexagons; face count 10T+2 / 4T+2 / 2T+2 with T = p^2+pq+q^2.
PlanarMap gen_goldberg(const GoldbergSpec& spec);

} // namespace hexcol
