#include <doctest.h>

#include "fixtures.hpp"
#include "hexcol/congruence.hpp"
#include "hexcol/lattice.hpp"
#include "hexcol/oracle.hpp"

using namespace hexcol;
using fixtures::kind_of;

namespace {

bool proper(const PlanarMap& m, const std::vector<int>& colors) {
  for (Dart d = 0; d < m.dart_count; d++) {
    FaceId f = m.dart_face[d], g = m.dart_face[PlanarMap::twin(d)];
    if (colors[f] > 0 && colors[g] > 0 && colors[f] == colors[g]) return false;
  }
  return true;
}

} // namespace

TEST_CASE("patch chromatic number and determinism") {
  auto m = gen_hex_patch(2);
  CHECK(chromatic_number_faces(m) == 3);

  OracleOptions opt;
  opt.colors = 3;
  auto a = brute_force_color(m, opt);
  auto b = brute_force_color(m, opt);
  REQUIRE(a.has_value());
  CHECK(*a == *b);
  CHECK(proper(m, *a));

  opt.colors = 2;
  CHECK_FALSE(brute_force_color(m, opt).has_value());
}

TEST_CASE("platonic face chromatic numbers") {
  CHECK(chromatic_number_faces(fixtures::tetra()) == 4);
  CHECK(chromatic_number_faces(fixtures::cube()) == 3);
  CHECK(chromatic_number_faces(fixtures::octa()) == 2);
  CHECK(chromatic_number_faces(fixtures::dodeca()) == 4);
}

TEST_CASE("regions and pins") {
  auto m = gen_hex_patch(1);
  FaceId center = *face_at(m, {0, 0});
  std::vector<FaceId> ring;
  for (FaceId f = 0; f < m.n_faces(); f++)
    if (m.face_bounded(f) && f != center) ring.push_back(f);

  OracleOptions opt;
  opt.colors = 2;
  opt.region = ring;
  auto sol = brute_force_color(m, opt);
  REQUIRE(sol.has_value());
  CHECK(proper(m, *sol));
  CHECK((*sol)[center] == 0);

  opt.region.push_back(center);
  CHECK_FALSE(brute_force_color(m, opt).has_value());

  opt.colors = 3;
  opt.pinned = {{center, 3}, {ring[0], 1}};
  sol = brute_force_color(m, opt);
  REQUIRE(sol.has_value());
  CHECK((*sol)[center] == 3);
  CHECK((*sol)[ring[0]] == 1);

  opt.pinned = {{center, 3}, {*face_at(m, {1, 0}), 3}};
  CHECK_FALSE(brute_force_color(m, opt).has_value());

  opt.pinned = {{center, 7}};
  CHECK(kind_of([&] { brute_force_color(m, opt); }) == "InvalidSpec");
}

TEST_CASE("guard") {
  auto m = gen_hex_patch(5); // 91 faces
  CHECK(kind_of([&] { chromatic_number_faces(m); }) == "TooLarge");
  CHECK(chromatic_number_faces(m, 128) == 3);
}

TEST_CASE("oracle classification agrees with development") {
  for (int r : {2, 3}) {
    auto m = gen_hex_patch(r);
    auto region = hex_faces(m);
    for (FaceId base : region) {
      auto dev = classify(m, base);
      auto ora = oracle_classify(m, region, base, 128);
      CHECK(dev == ora);
    }
  }
}

TEST_CASE("tubes through the oracle") {
  auto even = gen_tube({{1, 1}, 4});
  CHECK(chromatic_number_faces(even) == 3);
  auto odd = gen_tube({{2, 1}, 4});
  CHECK(chromatic_number_faces(odd) == 4);
}

TEST_CASE("abstract graph coloring") {
  // K4: adjacency lists may be one-sided, the colorer symmetrizes.
  std::vector<std::vector<int>> k4 = {{1, 2, 3}, {2, 3}, {3}, {}};
  CHECK_FALSE(color_graph(k4, 3).has_value());
  auto col = color_graph(k4, 4);
  REQUIRE(col.has_value());
  CHECK(*col == std::vector<int>{1, 2, 3, 4});
  CHECK(*col == *color_graph(k4, 4)); // deterministic

  std::vector<std::vector<int>> c5 = {{1, 4}, {2}, {3}, {4}, {}};
  CHECK_FALSE(color_graph(c5, 2).has_value());
  CHECK(color_graph(c5, 3).has_value());

  std::vector<std::vector<int>> loop = {{0}};
  CHECK_FALSE(color_graph(loop, 4).has_value());
  CHECK(kind_of([&] { color_graph(k4, 4, 3); }) == "TooLarge");
  CHECK(kind_of([&] { color_graph({{7}}, 4); }) == "InvalidSpec");
}
