#pragma once
#include <optional>
#include <unordered_map>
#include <vector>

#include "hexcol/eis.hpp"
#include "hexcol/planar_map.hpp"

namespace hexcol {

// Relative lattice position of one hexagon from another: p steps, at most one
// 60 degree turn, q steps. Normalized with p >= q >= 0.
struct CoxeterCoord {
  long long p = 0, q = 0;
  friend bool operator==(CoxeterCoord, CoxeterCoord) = default;
};

// The rotation of z with both components nonnegative, sorted to p >= q.
CoxeterCoord coxeter_of(Eis z);

struct TubeSpec {
  CoxeterCoord coords;
  int rings = 1;
};

struct ConeSpec {
  int apex_size = 5;
  int radius = 1;
};

// Pentagon plant on a patch: the wedge of cells {cell + a*dir(d) + b*dir(d+1),
// a >= 0, b >= 1} is removed and the slit is closed, turning `cell` into a
// pentagon.
struct PlantSpec {
  Eis cell;
  int dir = 0;
};

// Disk of hexagons with ring(z) <= radius around the origin.
PlanarMap gen_hex_patch(int radius);
// Open cylinder of hexagon rows; opposite sides identified by the coordinate
// vector p*dir(0) + q*dir(1).
PlanarMap gen_tube(const TubeSpec& spec);
// Central k-gon surrounded by `radius` full rings of hexagons (ring r has k*r).
PlanarMap gen_cone(const ConeSpec& spec);
// Patch with pentagon plants; plants must not interact.
PlanarMap gen_planted(int radius, const std::vector<PlantSpec>& plants);

// Coordinates of b relative to a through a corridor of bounded hexagonal
// faces (breadth-first, directions tried in order 0..5).
CoxeterCoord coxeter_between(const PlanarMap& m, FaceId a, FaceId b);

// A face together with the lattice direction its position-0 boundary dart
// points toward. Directions of the other positions follow counterclockwise:
// position j points toward direction (frame + j) mod 6.
struct Cursor {
  FaceId face = -1;
  int frame = 0;
};

// Face across direction t (may be unbounded or non-hexagonal).
FaceId cursor_peek(const PlanarMap& m, Cursor c, int t);
// Steps the cursor across direction t; the target must be a bounded hexagon.
Cursor cursor_move(const PlanarMap& m, Cursor c, int t);

enum class ClashPolicy {
  strict, // any disagreement on revisit is an error
  label,  // coordinates may disagree if their congruence class agrees
};

struct Anchor {
  FaceId face = 0;
  Eis coord{};
  int frame = 0;
};

// Developed lattice chart over a set of faces.
struct FrameField {
  std::unordered_map<FaceId, Eis> coord;
  std::unordered_map<FaceId, int> frame;
  bool has(FaceId f) const { return coord.count(f) > 0; }
};

// Breadth-first development of lattice coordinates over `region` (bounded
// hexagons), not crossing `blocked` darts (both sides of each listed dart are
// blocked). Disagreement on revisit raises RegionNotSimplyConnected per the
// policy; unreachable region faces raise Disconnected.
FrameField develop(const PlanarMap& m, const std::vector<FaceId>& region,
                   Anchor anchor, const std::vector<Dart>& blocked = {},
                   ClashPolicy policy = ClashPolicy::strict);

// All bounded hexagonal faces of the map.
std::vector<FaceId> hex_faces(const PlanarMap& m);

// Face whose recorded center is z (and sector, for cones), via map metadata.
std::optional<FaceId> face_at(const PlanarMap& m, Eis center);
std::optional<FaceId> face_at(const PlanarMap& m, int sector, Eis center);

} // namespace hexcol
