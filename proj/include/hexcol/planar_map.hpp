#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hexcol/errors.hpp"
#include "hexcol/json_fwd.hpp"

namespace hexcol {

using Dart = int;
using FaceId = int;
using VertexId = int;

// Rotation-system encoding of an orientable planar map. Darts are half-edges;
// twin(d) = d^1, next(d) is the counterclockwise successor around the dart's
// source vertex, and phi(d) = next(twin(d)) walks each face counterclockwise
// (interior on the left).
class PlanarMap {
public:
  int dart_count = 0;
  std::vector<Dart> next;           // CCW vertex rotation
  std::vector<FaceId> dart_face;    // face orbit of each dart
  std::vector<int> dart_pos;        // position of each dart in its face cycle
  std::vector<VertexId> dart_vertex;
  std::vector<std::vector<Dart>> faces;    // CCW dart cycle, starts at min dart
  std::vector<std::vector<Dart>> vertices; // CCW dart cycle, starts at min dart
  nlohmann::json meta;

  static Dart twin(Dart d) { return d ^ 1; }
  Dart phi(Dart d) const { return next[twin(d)]; }
  Dart prev(Dart d) const { return prev_[d]; }
  // phi^-1: the face predecessor of d.
  Dart face_prev(Dart d) const { return twin(prev_[d]); }

  int n_vertices() const { return (int)vertices.size(); }
  int n_edges() const { return dart_count / 2; }
  int n_faces() const { return (int)faces.size(); }
  long long euler() const {
    return (long long)n_vertices() - n_edges() + n_faces();
  }

  bool face_bounded(FaceId f) const { return bounded_[f]; }
  int n_bounded_faces() const;
  // Neighbor across the j-th dart of face f.
  FaceId neighbor(FaceId f, int j) const { return dart_face[twin(faces[f][j])]; }

  bool operator==(const PlanarMap& o) const {
    return dart_count == o.dart_count && next == o.next;
  }

  std::vector<bool> bounded_;
  std::vector<Dart> prev_;
};

// Validates next as a permutation, traces vertex and face orbits, checks
// connectivity and (unless allow_open) the sphere condition V - E + F = 2.
// Unbounded faces are taken from meta["unbounded_faces"] if present.
PlanarMap build_map(int dart_count, std::vector<Dart> next,
                    nlohmann::json meta = {}, bool allow_open = false);

// Orbits of the permutation p over 0..n-1; each orbit starts at its smallest
// element and orbits are listed by ascending smallest element.
std::vector<std::vector<int>> orbits_of(int n, const std::vector<int>& p);

// Face boundary dart-cycles (CCW, each starting at its smallest dart).
inline const std::vector<std::vector<Dart>>& trace_faces(const PlanarMap& m) {
  return m.faces;
}

// The dual map: next'(d) = next(twin(d)). Faces and vertices trade places.
PlanarMap dual(const PlanarMap& m);

struct FaceAdjacency {
  std::vector<std::vector<FaceId>> nbrs; // sorted, deduplicated, no self
  std::vector<bool> self_adjacent;
};
FaceAdjacency face_adjacency(const PlanarMap& m);

} // namespace hexcol
