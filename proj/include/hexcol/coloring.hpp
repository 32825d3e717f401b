#pragma once
#include <array>
#include <string>
#include <vector>

#include "hexcol/lattice.hpp"
#include "hexcol/planar_map.hpp"

namespace hexcol {

// A two-colored face chain lying between two zones; its colors are the two
// colors shared by the zones' subsets.
struct Separator {
  std::vector<FaceId> faces;
  std::array<int, 2> zones;
  std::array<int, 2> colors;
};

struct Coloring {
  std::string scheme;
  std::vector<int> colors; // per face, 0 = uncolored
  std::vector<int> zones;  // per face, -1 = no zone
  std::vector<std::vector<int>> subsets{}; // per zone, owned color subset
  std::vector<Separator> separators{};
};

// Every bounded face colored in 1..max_colors, no bounded face self-adjacent
// or sharing its color with a bounded neighbor.
bool verify_proper(const PlanarMap& m, const std::vector<int>& colors,
                   int max_colors = 4);
// verify_proper plus: every bounded face zoned, each zone uses at most three
// distinct colors, all within its declared subset when subsets are present,
// and each separator is a connected face chain carrying exactly its two
// declared colors, the colors common to both adjacent zones' subsets.
bool verify_zoned(const PlanarMap& m, const Coloring& col);

// Congruence classes as colors 1..3 over a region of hexagons.
Coloring color3_region(const PlanarMap& m, const std::vector<FaceId>& region,
                       FaceId base);
// 3-coloring of a closed cubic map by propagation around vertices.
Coloring color3_closed(const PlanarMap& m);
// 4-coloring of a closed cubic map with face sizes divisible by 3: the four
// faces around every edge take four distinct colors.
Coloring color_r4(const PlanarMap& m);
// Tube faces: class coloring when p = q (mod 3), otherwise chains by the
// sigma invariant, last chain color 4.
Coloring color_tube(const PlanarMap& m);
// Cone faces: three class colors plus color 4 on a spiral chain (odd apex),
// or a pure class coloring with the apex taking the spare color (even apex).
Coloring color_cone_3plus1(const PlanarMap& m);
// Cone faces in three zones cut along radial chains from three ring-1
// partition faces (cyclic gaps all odd). Passing the same face three times
// selects the shrunk form: a 3plus1 coloring wrapped in three zones.
Coloring color_cone_m3(const PlanarMap& m,
                       const std::vector<FaceId>& partition = {});
// Fullerene faces in strips crossing hexagons through opposite edges, two
// alternating colors per strip, strip pairs {1,2} and {3,4}.
Coloring color_orbital(const PlanarMap& m);

} // namespace hexcol
