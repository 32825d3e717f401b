#pragma once
#include <vector>

#include "hexcol/lattice.hpp"
#include "hexcol/planar_map.hpp"

namespace hexcol {

// Whether a lattice offset with these Coxeter coordinates joins faces of the
// same congruence class.
bool same_class(CoxeterCoord c);

// Congruence labels 0/1/2 relative to `base` (label 0) for every face in
// `region` (bounded hexagons); faces outside the region get -1. The labeling
// must be globally consistent, else RegionNotSimplyConnected.
std::vector<int> classify_region(const PlanarMap& m,
                                 const std::vector<FaceId>& region,
                                 FaceId base);
// classify_region over all bounded hexagonal faces.
std::vector<int> classify(const PlanarMap& m, FaceId base);

enum class ChainStyle {
  linear, // members one sigma(k) step apart
  axial,  // members 3*dir(k) apart, walked as sigma(k-1) + sigma(k)
};

// Maximal forward run of congruent faces from `start` toward direction k.
struct Chain {
  std::vector<FaceId> faces;
  bool plain = true; // false when the walk wrapped around onto itself
};

Chain trace_chain(const PlanarMap& m, FaceId start, int k,
                  ChainStyle style = ChainStyle::linear);

// Same-label faces sharing at least one common neighbor.
bool chain_consecutive(const PlanarMap& m, const std::vector<int>& labels,
                       FaceId f, FaceId g);

// Connected component of faces labeled with either label of the adjacent
// pair f, g; sorted. NotAdjacent / SameClass on bad input.
std::vector<FaceId> kempe_pair(const PlanarMap& m,
                               const std::vector<int>& labels, FaceId f,
                               FaceId g);

} // namespace hexcol
