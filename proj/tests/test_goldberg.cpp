#include <doctest.h>

#include "fixtures.hpp"
#include "hexcol/goldberg.hpp"

using namespace hexcol;
using fixtures::kind_of;

namespace {

struct Counts {
  int v, e, f, small_faces, hexes;
};

Counts survey(const PlanarMap& m, int small_size) {
  Counts c{m.n_vertices(), m.n_edges(), m.n_faces(), 0, 0};
  for (auto& f : m.faces) {
    if ((int)f.size() == small_size) c.small_faces++;
    if (f.size() == 6) c.hexes++;
  }
  return c;
}

} // namespace

TEST_CASE("goldberg rejects zero parameters") {
  CHECK(kind_of([] {
          gen_goldberg({GoldbergFamily::icosahedral, 0, 0});
        }) == "InvalidSpec");
}

TEST_CASE("icosahedral family") {
  auto dodeca = gen_goldberg({GoldbergFamily::icosahedral, 1, 0});
  auto c = survey(dodeca, 5);
  CHECK(dodeca.euler() == 2);
  CHECK(c.v == 20);
  CHECK(c.e == 30);
  CHECK(c.f == 12);
  CHECK(c.small_faces == 12);
  CHECK(c.hexes == 0);

  auto c60 = gen_goldberg({GoldbergFamily::icosahedral, 1, 1});
  c = survey(c60, 5);
  CHECK(c60.euler() == 2);
  CHECK(c.v == 60);
  CHECK(c.f == 32);
  CHECK(c.small_faces == 12);
  CHECK(c.hexes == 20);

  auto g20 = gen_goldberg({GoldbergFamily::icosahedral, 2, 0});
  c = survey(g20, 5);
  CHECK(g20.euler() == 2);
  CHECK(c.v == 80);
  CHECK(c.f == 42);
  CHECK(c.small_faces == 12);

  // T = 7, chiral pair: both handednesses build and agree on counts.
  auto g21 = gen_goldberg({GoldbergFamily::icosahedral, 2, 1});
  auto g12 = gen_goldberg({GoldbergFamily::icosahedral, 1, 2});
  auto a = survey(g21, 5), b = survey(g12, 5);
  CHECK(g21.euler() == 2);
  CHECK(a.v == 140);
  CHECK(a.f == 72);
  CHECK(a.small_faces == 12);
  CHECK(a.v == b.v);
  CHECK(a.f == b.f);
  CHECK(a.small_faces == b.small_faces);
}

TEST_CASE("octahedral family") {
  auto cube = gen_goldberg({GoldbergFamily::octahedral, 1, 0});
  auto c = survey(cube, 4);
  CHECK(cube.euler() == 2);
  CHECK(c.v == 8);
  CHECK(c.e == 12);
  CHECK(c.f == 6);
  CHECK(c.small_faces == 6);

  auto g11 = gen_goldberg({GoldbergFamily::octahedral, 1, 1});
  c = survey(g11, 4);
  CHECK(g11.euler() == 2);
  CHECK(c.v == 24);
  CHECK(c.f == 14);
  CHECK(c.small_faces == 6);
  CHECK(c.hexes == 8);

  auto g20 = gen_goldberg({GoldbergFamily::octahedral, 2, 0});
  c = survey(g20, 4);
  CHECK(c.v == 32);
  CHECK(c.f == 18);
  CHECK(c.small_faces == 6);
}

TEST_CASE("tetrahedral family") {
  auto tet = gen_goldberg({GoldbergFamily::tetrahedral, 1, 0});
  auto c = survey(tet, 3);
  CHECK(tet.euler() == 2);
  CHECK(c.v == 4);
  CHECK(c.f == 4);
  CHECK(c.small_faces == 4);

  auto g20 = gen_goldberg({GoldbergFamily::tetrahedral, 2, 0});
  c = survey(g20, 3);
  CHECK(g20.euler() == 2);
  CHECK(c.v == 16);
  CHECK(c.f == 10);
  CHECK(c.small_faces == 4);
  CHECK(c.hexes == 6);

  auto g11 = gen_goldberg({GoldbergFamily::tetrahedral, 1, 1});
  c = survey(g11, 3);
  CHECK(c.v == 12);
  CHECK(c.f == 8);
  CHECK(c.small_faces == 4);
  CHECK(c.hexes == 4);
}
