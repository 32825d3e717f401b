#pragma once
#include <array>
#include <string>
#include <vector>

#include "hexcol/coloring.hpp"
#include "hexcol/lattice.hpp"
#include "hexcol/planar_map.hpp"

namespace hexcol {

// Permutation of the three class colors {1,2,3}.
struct ColorPerm {
  std::array<int, 4> to{0, 1, 2, 3}; // to[c] = image of color c, to[0] unused
  bool identity() const { return to[1] == 1 && to[2] == 2 && to[3] == 3; }
  // Cycle notation; fixed points omitted, "(1)(2)(3)" for the identity.
  std::string cycles() const;
  friend ColorPerm operator*(const ColorPerm& f, const ColorPerm& g); // f after g
  friend bool operator==(const ColorPerm&, const ColorPerm&) = default;
};
ColorPerm transposition(int a, int b);

// Color behavior of the congruence labeling around a face: the identity for
// even faces, the transposition of the two non-class colors for odd faces.
struct OddFacePermutation {
  FaceId source = -1;
  ColorPerm perm;
};
// class_color in 1..3 is f's own class color in the caller's frame.
OddFacePermutation face_permutation(const PlanarMap& m, FaceId f,
                                    int class_color);

// Two odd faces joined by a congruence chain: connector members all share one
// class, the first is adjacent to a, the last is adjacent to b.
struct NicePair {
  FaceId a = -1, b = -1;
  std::vector<FaceId> connector;
};

struct PairVerdict {
  bool nice = false;
  CoxeterCoord offset{};          // corridor-frame coordinate of b relative to a
  NicePair witness{};             // populated when nice
  std::vector<FaceId> corridor{}; // thick connector path, always routed
};
// Congruence of two odd faces along the deterministic shortest hexagon
// corridor between them; equivalently their face permutations compose to the
// identity in the corridor frame. NotOddFaces unless a, b are distinct
// bounded odd faces; NoHexCorridor when no corridor connects them.
PairVerdict is_nice_pair(const PlanarMap& m, FaceId a, FaceId b);

// Every odd bounded face in exactly one nice pair, closest pairs first, with
// detour corridors for leftover mutually-incongruent quadruples.
// PairingFailed when some face cannot be paired.
std::vector<NicePair> pair_all_odd_faces(const PlanarMap& m);

// Three pairwise-incongruent odd faces acting as one odd face of the fourth
// class: three outward Kempe chains split their outskirts into three zones.
struct EquivalentOddFace {
  std::vector<FaceId> members;
  std::array<std::vector<FaceId>, 3> boundary;
  ColorPerm behavior; // composite monodromy, a transposition
};
EquivalentOddFace combine_triplet(const PlanarMap& m, FaceId f1, FaceId f2,
                                  FaceId f3);

struct CombNode {
  std::vector<FaceId> faces; // member faces; empty marks a node at infinity
  int color = 0;             // annotation, 0 = unset
  bool odd = true;
};
struct CombEdge {
  int u = -1, v = -1;
  std::vector<FaceId> chain; // alternating two-class face path, may be empty
  std::array<int, 2> colors{0, 0};
  bool nice = false; // joins congruent faces; chain carries one class plus 4
};
struct CombZone {
  std::vector<int> nodes; // bounding node indices, ascending
  std::vector<FaceId> faces;
};
struct CombCluster {
  std::vector<int> nodes;
  bool even_equivalent = false; // outskirts known 3-colorable
};

struct CombinationGraph {
  const PlanarMap* map = nullptr; // non-owning; null for synthetic graphs
  std::vector<CombNode> nodes;
  std::vector<CombEdge> edges;
  std::vector<CombZone> zones;
  std::vector<CombCluster> clusters;
};

// A combination graph whose zones each carry exactly three pairwise
// incongruent nodes and whose chain counts satisfy the parity rule (odd at
// odd nodes, even at even nodes). The two-node nice-pair graph is kept as
// its own base shape.
using Triangulation = CombinationGraph;

// Clusters all odd faces and lays out node faces, Kempe chains and the zones
// between them. Closed all-odd maps and odd cones map to their canonical
// shapes; otherwise chains are routed between odd faces, closest first, each
// avoiding faces already claimed. CombinationFailed wraps pairing trouble.
CombinationGraph global_combine(const PlanarMap& m);

struct AdjustSite {
  std::vector<int> edges;
  int zone = -1;
};
// Rule 1: merge two same-colored chains bounding one zone into two
// cross-connecting chains. Rule 2: join two chains sharing one color at a
// face, splitting the zone between them. Rule 3: delete a closed circle of
// chains, leaving two independent parts. RuleNotApplicable otherwise.
CombinationGraph adjust_combination(const CombinationGraph& cg, int rule,
                                    const AdjustSite& site);

// Pass-through for graphs already triangulated; closed maps otherwise fall
// back to the full face-adjacency graph (every face a node, every vertex a
// zone). TriangulationFailed when neither applies.
Triangulation triangulate_combination(const CombinationGraph& cg);

// Fills node color annotations and derives each chain's two colors.
void annotate_colors(CombinationGraph& cg, const std::vector<int>& node_colors);

// Zone-by-zone M3 coloring driven by a node coloring of the triangulation:
// node faces take their node color, chains alternate their two colors, each
// zone is 3-colored with its nodes' colors. NodeColoringImproper for bad
// node colors, ZoneColoringFailed when zone frames cannot realize them.
Coloring apply_m3(const PlanarMap& m, const Triangulation& tri,
                  const std::vector<int>& node_colors);

// global_combine, triangulate_combination, exact node coloring, apply_m3.
Coloring m3_color(const PlanarMap& m);

} // namespace hexcol
