#include <doctest.h>

#include <array>

#include "fixtures.hpp"
#include "hexcol/congruence.hpp"
#include "hexcol/lattice.hpp"

using namespace hexcol;
using fixtures::kind_of;

TEST_CASE("same_class by coxeter coordinates") {
  CHECK(same_class({0, 0}));
  CHECK(same_class({3, 0}));
  CHECK(same_class({1, 1}));
  CHECK(same_class({4, 1}));
  CHECK_FALSE(same_class({1, 0}));
  CHECK_FALSE(same_class({2, 1}));
  CHECK_FALSE(same_class({2, 0}));
}

TEST_CASE("classify a patch") {
  auto m = gen_hex_patch(2);
  FaceId center = *face_at(m, {0, 0});
  auto labels = classify(m, center);
  CHECK(labels[center] == 0);

  std::array<int, 3> count{0, 0, 0};
  for (FaceId f = 0; f < m.n_faces(); f++)
    if (labels[f] >= 0) count[labels[f]]++;
  CHECK(count[0] == 7);
  CHECK(count[1] == 6);
  CHECK(count[2] == 6);

  // adjacent faces always land in different classes
  for (Dart d = 0; d < m.dart_count; d++) {
    FaceId f = m.dart_face[d], g = m.dart_face[PlanarMap::twin(d)];
    if (labels[f] >= 0 && labels[g] >= 0) CHECK(labels[f] != labels[g]);
  }

  // relabeling from a ring-1 base permutes the same partition
  FaceId b1 = *face_at(m, {1, 0});
  auto l2 = classify(m, b1);
  CHECK(l2[b1] == 0);
  std::array<int, 3> c2{0, 0, 0};
  for (FaceId f = 0; f < m.n_faces(); f++)
    if (l2[f] >= 0) c2[l2[f]]++;
  CHECK(c2[0] == 6);
  CHECK(c2[1] + c2[2] == 13);
  std::array<int, 3> perm{-1, -1, -1};
  bool consistent = true;
  for (FaceId f = 0; f < m.n_faces(); f++) {
    if (labels[f] < 0) continue;
    if (perm[labels[f]] < 0) perm[labels[f]] = l2[f];
    consistent = consistent && perm[labels[f]] == l2[f];
  }
  CHECK(consistent);
  CHECK(perm[0] != perm[1]);
  CHECK(perm[1] != perm[2]);
  CHECK(perm[0] != perm[2]);

  // the face across the base's position-0 dart always gets label 1
  for (FaceId base : {center, b1, *face_at(m, {-2, 2})}) {
    auto lb = classify(m, base);
    FaceId across = m.dart_face[PlanarMap::twin(m.faces[base][0])];
    CHECK(lb[across] == 1);
  }
}

TEST_CASE("classify tubes and an annulus") {
  auto ok = gen_tube({{1, 1}, 3});
  auto labels = classify(ok, 0);
  for (Dart d = 0; d < ok.dart_count; d++) {
    FaceId f = ok.dart_face[d], g = ok.dart_face[PlanarMap::twin(d)];
    if (labels[f] >= 0 && labels[g] >= 0) CHECK(labels[f] != labels[g]);
  }

  auto bad = gen_tube({{2, 1}, 3});
  CHECK(kind_of([&] { classify(bad, 0); }) == "RegionNotSimplyConnected");

  auto planted = gen_planted(3, {{{0, 0}, 0}});
  CHECK(kind_of([&] { classify(planted, hex_faces(planted)[0]); }) ==
        "RegionNotSimplyConnected");

  CHECK(kind_of([&] { classify_region(ok, {0, 1}, 2); }) == "InvalidSpec");
}

TEST_CASE("linear and axial chains on a patch") {
  auto m = gen_hex_patch(4);
  FaceId center = *face_at(m, {0, 0});

  auto lin = trace_chain(m, center, 0);
  CHECK(lin.plain);
  REQUIRE(lin.faces.size() == 3);
  CHECK(lin.faces[0] == center);
  CHECK(lin.faces[1] == *face_at(m, {1, 1}));
  CHECK(lin.faces[2] == *face_at(m, {2, 2}));

  auto labels = classify(m, center);
  for (FaceId f : lin.faces) CHECK(labels[f] == 0);
  CHECK(chain_consecutive(m, labels, lin.faces[0], lin.faces[1]));
  CHECK(chain_consecutive(m, labels, lin.faces[1], lin.faces[2]));

  auto ax = trace_chain(m, center, 0, ChainStyle::axial);
  CHECK(ax.plain);
  REQUIRE(ax.faces.size() == 2);
  CHECK(ax.faces[1] == *face_at(m, {3, 0}));
  CHECK_FALSE(chain_consecutive(m, labels, ax.faces[0], ax.faces[1]));

  CHECK(kind_of([&] { trace_chain(m, m.n_faces() - 1, 0); }) == "InvalidSpec");
}

TEST_CASE("chains wrap on a tube") {
  auto m = gen_tube({{1, 1}, 4});
  auto ch = trace_chain(m, 0, 0);
  CHECK_FALSE(ch.plain);
  CHECK(ch.faces == std::vector<FaceId>{0});

  // sigma(1) jumps three rows at a time
  auto up = trace_chain(m, 0, 1);
  CHECK(up.plain);
  CHECK(up.faces.size() == 2);
}

TEST_CASE("kempe pairs") {
  auto m = gen_hex_patch(2);
  FaceId center = *face_at(m, {0, 0});
  auto labels = classify(m, center);
  FaceId g = *face_at(m, {1, 0});

  auto comp = kempe_pair(m, labels, center, g);
  CHECK(comp.size() == 13);
  CHECK(std::count(comp.begin(), comp.end(), center) == 1);
  CHECK(std::count(comp.begin(), comp.end(), g) == 1);
  for (FaceId f : comp) CHECK((labels[f] == 0 || labels[f] == 1));

  CHECK(kind_of([&] { kempe_pair(m, labels, center, *face_at(m, {1, 1})); }) ==
        "NotAdjacent");
  std::vector<int> zeros(m.n_faces(), 0);
  CHECK(kind_of([&] { kempe_pair(m, zeros, center, g); }) == "SameClass");
}
