#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "hexcol/planar_map.hpp"

using namespace hexcol;
using fixtures::kind_of;

static std::vector<int> face_sizes(const PlanarMap& m) {
  std::vector<int> s;
  for (auto& f : m.faces) s.push_back((int)f.size());
  std::sort(s.begin(), s.end());
  return s;
}

TEST_CASE("build_map rejects bad input") {
  CHECK(kind_of([] { build_map(3, {0, 1, 2}); }) == "InvalidSpec");
  CHECK(kind_of([] { build_map(2, {0, 5}); }) == "NotAPermutation");
  CHECK(kind_of([] { build_map(4, {0, 0, 1, 2}); }) == "NotAPermutation");
  CHECK(kind_of([] { build_map(2, {1, 0}); }) == "DegenerateSpec"); // loop
  CHECK(kind_of([] { build_map(4, {0, 1, 2, 3}); }) == "Disconnected");
}

TEST_CASE("single edge map") {
  auto m = build_map(2, {0, 1});
  CHECK(m.n_vertices() == 2);
  CHECK(m.n_edges() == 1);
  CHECK(m.n_faces() == 1);
  CHECK(m.euler() == 2);
}

TEST_CASE("platonic counts") {
  auto t = fixtures::tetra();
  CHECK(t.n_vertices() == 4);
  CHECK(t.n_edges() == 6);
  CHECK(t.n_faces() == 4);
  CHECK(t.euler() == 2);
  CHECK(face_sizes(t) == std::vector<int>{3, 3, 3, 3});

  auto c = fixtures::cube();
  CHECK(c.n_vertices() == 8);
  CHECK(c.n_edges() == 12);
  CHECK(c.n_faces() == 6);
  CHECK(face_sizes(c) == std::vector<int>(6, 4));

  auto o = fixtures::octa();
  CHECK(o.n_vertices() == 6);
  CHECK(o.n_edges() == 12);
  CHECK(o.n_faces() == 8);

  auto i = fixtures::icosa();
  CHECK(i.n_vertices() == 12);
  CHECK(i.n_edges() == 30);
  CHECK(i.n_faces() == 20);

  auto d = fixtures::dodeca();
  CHECK(d.n_vertices() == 20);
  CHECK(d.n_edges() == 30);
  CHECK(d.n_faces() == 12);
  CHECK(face_sizes(d) == std::vector<int>(12, 5));
}

TEST_CASE("trace_faces partitions darts") {
  auto m = fixtures::icosa();
  std::vector<int> seen(m.dart_count, 0);
  for (auto& f : trace_faces(m))
    for (Dart d : f) seen[d]++;
  CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
}

TEST_CASE("duality") {
  auto c = fixtures::cube();
  auto d = dual(c);
  CHECK(d.n_vertices() == 6);
  CHECK(d.n_edges() == 12);
  CHECK(d.n_faces() == 8);
  CHECK(face_sizes(d) == std::vector<int>(8, 3));
  CHECK(dual(d).next == c.next); // dual is an exact involution

  auto t = fixtures::tetra();
  auto dt = dual(t);
  CHECK(dt.n_vertices() == 4);
  CHECK(dt.n_faces() == 4);
  CHECK(face_sizes(dt) == face_sizes(t));
}

TEST_CASE("face adjacency") {
  auto t = fixtures::tetra();
  auto a = face_adjacency(t);
  for (FaceId f = 0; f < 4; f++) {
    CHECK(a.nbrs[f].size() == 3);
    CHECK(!a.self_adjacent[f]);
  }
  auto c = fixtures::cube();
  auto ac = face_adjacency(c);
  for (FaceId f = 0; f < 6; f++) CHECK(ac.nbrs[f].size() == 4);
}

TEST_CASE("assembler rejects bad gluings") {
  using V = std::vector<std::vector<long long>>;
  auto specs = [](const V& faces) {
    std::vector<FaceSpec> out;
    for (auto& f : faces) {
      FaceSpec s;
      for (long long v : f) s.corners.push_back({v});
      out.push_back(std::move(s));
    }
    return out;
  };
  // Same edge direction on both faces: not orientable as given.
  CHECK(kind_of([&] { assemble(specs({{0, 1, 2}, {0, 1, 3}})); }) ==
        "InvalidSpec");
  // Edge shared three times.
  CHECK(kind_of([&] {
          assemble(specs({{0, 1, 2}, {1, 0, 3}, {1, 0, 4}}));
        }) == "InvalidSpec");
  // Two triangles pinched at a single vertex.
  CHECK(kind_of([&] { assemble(specs({{0, 1, 2}, {0, 3, 4}})); }) ==
        "InvalidSpec");
}
