#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "hexcol/combine.hpp"
#include "hexcol/goldberg.hpp"
#include "hexcol/oracle.hpp"

using namespace hexcol;
using fixtures::kind_of;

namespace {

PlanarMap two_plants(Eis b_cell) {
  return gen_planted(6, {{{-2, 0}, 3}, {b_cell, 0}});
}

FaceId pentagon_at(const PlanarMap& m, Eis cell) {
  auto f = face_at(m, cell);
  REQUIRE(f.has_value());
  REQUIRE(m.faces[*f].size() == 5);
  return *f;
}

bool faces_adjacent(const PlanarMap& m, FaceId f, FaceId g) {
  for (Dart d : m.faces[f])
    if (m.dart_face[PlanarMap::twin(d)] == g) return true;
  return false;
}

// sigma-consecutive: not adjacent but sharing at least one neighbor.
bool sigma_consecutive(const PlanarMap& m, FaceId f, FaceId g) {
  if (faces_adjacent(m, f, g)) return false;
  std::set<FaceId> nf;
  for (Dart d : m.faces[f]) nf.insert(m.dart_face[PlanarMap::twin(d)]);
  for (Dart d : m.faces[g])
    if (nf.count(m.dart_face[PlanarMap::twin(d)])) return true;
  return false;
}

// Outskirts of the pair: bounded hexagons minus the connector corridor.
bool outskirts_3colorable(const PlanarMap& m,
                          const std::vector<FaceId>& corridor) {
  OracleOptions opt;
  opt.colors = 3;
  opt.region = hex_faces(m);
  for (FaceId f : corridor)
    opt.region.erase(std::remove(opt.region.begin(), opt.region.end(), f),
                     opt.region.end());
  opt.guard = 256;
  return brute_force_color(m, opt).has_value();
}

ColorPerm perm_for_label(int label) { // class label -> face transposition
  return transposition(label == 0 ? 2 : 1, label == 2 ? 2 : 3);
}

} // namespace

TEST_CASE("color permutation algebra") {
  ColorPerm id;
  CHECK(id.identity());
  CHECK(id.cycles() == "(1)(2)(3)");
  auto t23 = transposition(2, 3);
  CHECK(t23.cycles() == "(2 3)");
  CHECK_FALSE(t23.identity());
  CHECK((t23 * t23).identity());
  auto t13 = transposition(1, 3);
  auto three = t13 * t23;
  CHECK_FALSE(three.identity());
  CHECK((three * three * three).identity());
  CHECK(three.cycles() == "(1 3 2)");
  CHECK(perm_for_label(0) == t23);
  CHECK(perm_for_label(1) == t13);
  CHECK(perm_for_label(2) == transposition(1, 2));
}

TEST_CASE("face permutations") {
  auto m = two_plants({1, 0});
  FaceId pent = pentagon_at(m, {-2, 0});
  FaceId hex = *face_at(m, {0, -2});

  auto even = face_permutation(m, hex, 1);
  CHECK(even.source == hex);
  CHECK(even.perm.identity());

  for (int c = 1; c <= 3; c++) {
    auto odd = face_permutation(m, pent, c);
    CHECK(odd.perm.to[c] == c);
    CHECK_FALSE(odd.perm.identity());
    CHECK((odd.perm * odd.perm).identity());
  }
  CHECK(face_permutation(m, pent, 1).perm.cycles() == "(2 3)");
  CHECK(kind_of([&] { face_permutation(m, pent, 5); }) == "InvalidSpec");
}

TEST_CASE("nice pair verdicts match the oracle") {
  // Plants at (-2,0) and b; the relative offset is b - (-2,0).
  struct Case {
    Eis b;
    bool nice;
  };
  // Congruent iff the offset's coordinates agree mod 3.
  std::vector<Case> cases = {
      {{1, 0}, true},   // (3,0)
      {{1, 3}, true},   // (3,3)
      {{2, 1}, true},   // (4,1)
      {{3, 2}, true},   // (5,2)
      {{0, 3}, false},  // (2,3)
      {{1, 1}, false},  // (3,1)
      {{1, 2}, false},  // (3,2)
      {{2, 0}, false},  // (4,0)
      {{2, 2}, false},  // (4,2)
      {{3, 0}, false},  // (5,0)
      {{3, 1}, false},  // (5,1)
      {{0, 2}, true},   // (2,2)
  };
  int nice_seen = 0, ugly_seen = 0;
  for (const auto& c : cases) {
    CAPTURE(c.b.x);
    CAPTURE(c.b.y);
    auto m = two_plants(c.b);
    FaceId a = pentagon_at(m, {-2, 0});
    FaceId b = pentagon_at(m, c.b);
    auto v = is_nice_pair(m, a, b);
    CHECK(v.nice == c.nice);
    CHECK(v.nice == outskirts_3colorable(m, v.corridor));
    // the permutation product over the corridor classes
    int lb = (int)(((c.b.x + 2 - c.b.y) % 3 + 3) % 3);
    auto prod = perm_for_label(0) * perm_for_label(lb);
    CHECK(prod.identity() == v.nice);
    // symmetry
    CHECK(is_nice_pair(m, b, a).nice == v.nice);
    (c.nice ? nice_seen : ugly_seen)++;
    // corridor invariants: adjacent path from a's side to b's side
    REQUIRE(!v.corridor.empty());
    FaceId lo = std::min(a, b), hi = std::max(a, b);
    CHECK(faces_adjacent(m, v.corridor.front(), lo));
    CHECK(faces_adjacent(m, v.corridor.back(), hi));
    for (size_t i = 0; i + 1 < v.corridor.size(); i++)
      CHECK(faces_adjacent(m, v.corridor[i], v.corridor[i + 1]));
    CHECK(v.corridor.size() % 2 == (v.nice ? 1 : 0));
    if (v.nice) {
      const auto& w = v.witness;
      CHECK(w.a == lo);
      CHECK(w.b == hi);
      REQUIRE(!w.connector.empty());
      // the congruence chain is the alternate subsequence of the corridor
      CHECK(w.connector.size() == (v.corridor.size() + 1) / 2);
      for (size_t i = 0; i < w.connector.size(); i++)
        CHECK(w.connector[i] == v.corridor[2 * i]);
      CHECK(faces_adjacent(m, w.connector.front(), w.a));
      CHECK(faces_adjacent(m, w.connector.back(), w.b));
      for (size_t i = 0; i + 1 < w.connector.size(); i++)
        CHECK(sigma_consecutive(m, w.connector[i], w.connector[i + 1]));
      for (FaceId f : w.connector) CHECK(m.faces[f].size() == 6);
    }
  }
  CHECK(nice_seen >= 5);
  CHECK(ugly_seen >= 7);
}

TEST_CASE("nice pair preconditions") {
  auto m = two_plants({1, 0});
  FaceId a = pentagon_at(m, {-2, 0});
  FaceId b = pentagon_at(m, {1, 0});
  FaceId hex = *face_at(m, {0, -2});
  CHECK(kind_of([&] { is_nice_pair(m, a, a); }) == "NotOddFaces");
  CHECK(kind_of([&] { is_nice_pair(m, a, hex); }) == "NotOddFaces");
  CHECK(kind_of([&] { is_nice_pair(m, hex, b); }) == "NotOddFaces");
}

TEST_CASE("pairing odd faces") {
  auto even = gen_hex_patch(3);
  CHECK(pair_all_odd_faces(even).empty());

  auto m = two_plants({1, 0});
  FaceId a = pentagon_at(m, {-2, 0});
  FaceId b = pentagon_at(m, {1, 0});
  auto pairs = pair_all_odd_faces(m);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].a == std::min(a, b));
  CHECK(pairs[0].b == std::max(a, b));
  CHECK(!pairs[0].connector.empty());

  auto lone = gen_planted(4, {{{0, 0}, 0}});
  CHECK(kind_of([&] { pair_all_odd_faces(lone); }) == "PairingFailed");
}

TEST_CASE("pairing on the truncated icosahedron") {
  auto m = gen_goldberg({GoldbergFamily::icosahedral, 1, 1});
  auto pairs = pair_all_odd_faces(m);
  CHECK(pairs.size() == 6);
  std::set<FaceId> seen, claimed;
  for (const auto& p : pairs) {
    CHECK(m.faces[p.a].size() == 5);
    CHECK(m.faces[p.b].size() == 5);
    seen.insert(p.a);
    seen.insert(p.b);
    REQUIRE(!p.connector.empty());
    for (FaceId f : p.connector) {
      CHECK(m.faces[f].size() == 6);
      CHECK(!claimed.count(f)); // connectors of distinct pairs are disjoint
      claimed.insert(f);
    }
  }
  CHECK(seen.size() == 12);
}

TEST_CASE("combination graph shapes") {
  auto empty = global_combine(gen_hex_patch(3));
  CHECK(empty.nodes.empty());
  CHECK(empty.edges.empty());
  CHECK(empty.zones.empty());

  auto pairm = two_plants({1, 0});
  auto cg = global_combine(pairm);
  CHECK(cg.nodes.size() == 2);
  CHECK(cg.edges.size() == 1);
  CHECK(cg.zones.size() == 1);
  CHECK(cg.edges[0].nice);
  CHECK(!cg.edges[0].chain.empty());
  REQUIRE(cg.clusters.size() == 1);
  CHECK(cg.clusters[0].even_equivalent);
  CHECK(cg.zones[0].nodes == std::vector<int>{0, 1});
  size_t accounted = cg.zones[0].faces.size() + cg.edges[0].chain.size() + 2;
  CHECK(accounted == (size_t)pairm.n_bounded_faces());

  auto dod = gen_goldberg({GoldbergFamily::icosahedral, 1, 0});
  auto ico = global_combine(dod);
  CHECK(ico.nodes.size() == 12);
  CHECK(ico.edges.size() == 30);
  CHECK(ico.zones.size() == 20);
  REQUIRE(ico.clusters.size() == 1);
  CHECK(ico.clusters[0].nodes.size() == 12);
  for (const auto& z : ico.zones) {
    CHECK(z.nodes.size() == 3);
    CHECK(z.faces.empty());
  }
  for (const auto& e : ico.edges) CHECK(e.chain.empty());
}

TEST_CASE("combination adjustment rules") {
  // Two nested nice pairs, each cut by one chain of the same color pair.
  CombinationGraph cg;
  cg.nodes.resize(4);
  cg.edges = {{0, 1, {}, {1, 2}, false}, {2, 3, {}, {1, 2}, false}};
  cg.zones = {{{0, 1, 2, 3}, {}}};

  auto merged = adjust_combination(cg, 1, {{0, 1}, 0});
  CHECK(merged.nodes.size() == 4);
  REQUIRE(merged.edges.size() == 2);
  CHECK(merged.edges[0].u == 0);
  CHECK(merged.edges[0].v == 2);
  CHECK(merged.edges[1].u == 1);
  CHECK(merged.edges[1].v == 3);

  CombinationGraph shared;
  shared.nodes.resize(4);
  shared.edges = {{0, 1, {}, {1, 3}, false}, {2, 3, {}, {2, 3}, false}};
  shared.zones = {{{0, 1, 2, 3}, {}}};
  auto joined = adjust_combination(shared, 2, {{0, 1}, 0});
  CHECK(joined.nodes.size() == 4);
  CHECK(joined.edges.size() == 2);
  REQUIRE(joined.zones.size() == 2);
  CHECK(joined.zones[0].nodes == std::vector<int>{0, 2});
  CHECK(joined.zones[1].nodes == std::vector<int>{1, 3});

  // A circle of two chains between the same nodes splits the graph.
  CombinationGraph circle;
  circle.nodes.resize(4);
  circle.edges = {{0, 1, {}, {3, 4}, false},
                  {0, 1, {}, {3, 4}, false},
                  {0, 2, {}, {1, 3}, false},
                  {1, 3, {}, {1, 4}, false}};
  circle.zones = {{{0, 1, 2}, {}}, {{0, 1, 3}, {}}};
  auto parts = adjust_combination(circle, 3, {{0, 1}, -1});
  CHECK(parts.nodes.size() == 4);
  CHECK(parts.edges.size() == 2);
  // the circle edges are gone and the remainder is disconnected
  std::vector<int> comp(parts.nodes.size(), -1);
  int ncomp = 0;
  for (size_t s = 0; s < parts.nodes.size(); s++) {
    if (comp[s] != -1) continue;
    comp[s] = ncomp++;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : parts.edges) {
        int cu = comp[e.u], cv = comp[e.v];
        if (cu == cv) continue;
        if (cu == -1) comp[e.u] = cv, grew = true;
        if (cv == -1) comp[e.v] = cu, grew = true;
      }
    }
  }
  CHECK(ncomp == 2);

  CHECK(kind_of([&] { adjust_combination(shared, 1, {{0, 1}, 0}); }) ==
        "RuleNotApplicable");
  CHECK(kind_of([&] { adjust_combination(cg, 2, {{0, 1}, 0}); }) ==
        "RuleNotApplicable");
  CHECK(kind_of([&] { adjust_combination(cg, 3, {{0, 1}, -1}); }) ==
        "RuleNotApplicable");
  CHECK(kind_of([&] { adjust_combination(cg, 4, {{0, 1}, 0}); }) ==
        "InvalidSpec");
}

TEST_CASE("triangulation pass-through and fallback") {
  auto dod = gen_goldberg({GoldbergFamily::icosahedral, 1, 0});
  auto ico = global_combine(dod);
  auto tri = triangulate_combination(ico);
  CHECK(tri.nodes.size() == 12);
  CHECK(tri.edges.size() == 30);
  CHECK(tri.zones.size() == 20);

  auto c60 = gen_goldberg({GoldbergFamily::icosahedral, 1, 1});
  auto cg = global_combine(c60);
  CHECK(cg.nodes.size() == 12);
  auto full = triangulate_combination(cg);
  CHECK(full.nodes.size() == 32);
  CHECK(full.edges.size() == 90);
  CHECK(full.zones.size() == 60);
  int odd = 0;
  for (const auto& n : full.nodes) odd += n.odd ? 1 : 0;
  CHECK(odd == 12);
  for (const auto& z : full.zones) CHECK(z.nodes.size() == 3);

  CombinationGraph synth; // no map, not triangulated
  synth.nodes.resize(3);
  synth.edges = {{0, 1, {}, {0, 0}, false}};
  synth.zones = {{{0, 1, 2}, {}}, {{0, 1}, {}}};
  CHECK(kind_of([&] { triangulate_combination(synth); }) ==
        "TriangulationFailed");
}

TEST_CASE("m3 end-to-end on fullerenes") {
  auto dod = gen_goldberg({GoldbergFamily::icosahedral, 1, 0});
  auto col = m3_color(dod);
  CHECK(col.scheme == "m3");
  CHECK(verify_proper(dod, col.colors, 4));
  CHECK(verify_zoned(dod, col));
  CHECK(chromatic_number_faces(dod) == 4);
  std::set<int> used(col.colors.begin(), col.colors.end());
  CHECK(used == std::set<int>{1, 2, 3, 4});

  auto c60 = gen_goldberg({GoldbergFamily::icosahedral, 1, 1});
  auto col60 = m3_color(c60);
  CHECK(verify_proper(c60, col60.colors, 4));
  CHECK(verify_zoned(c60, col60));
}

TEST_CASE("m3 end-to-end on a planted pair") {
  // (3+1)-coloring: pentagons and connector gaps share one color, the
  // congruence chain takes the fourth, the outskirts three-colors.
  auto m = two_plants({1, 0});
  auto col = m3_color(m);
  CHECK(col.scheme == "m3");
  CHECK(verify_proper(m, col.colors, 4));
  CHECK(verify_zoned(m, col));
  FaceId a = pentagon_at(m, {-2, 0});
  FaceId b = pentagon_at(m, {1, 0});
  CHECK(col.colors[a] == col.colors[b]);
  auto cg = global_combine(m);
  size_t fours = 0;
  for (FaceId f = 0; f < m.n_faces(); f++) fours += col.colors[f] == 4;
  CHECK(fours == (cg.edges[0].chain.size() + 1) / 2);
  for (size_t i = 0; i < cg.edges[0].chain.size(); i++)
    CHECK(col.colors[cg.edges[0].chain[i]] ==
          (i % 2 == 0 ? 4 : col.colors[a]));
}

TEST_CASE("m3 end-to-end on cones and plain maps") {
  auto cone = gen_cone({5, 2});
  auto col = m3_color(cone);
  CHECK(col.scheme == "m3");
  CHECK(verify_proper(cone, col.colors, 4));
  CHECK(verify_zoned(cone, col));

  auto even = gen_hex_patch(2);
  auto flat = m3_color(even);
  CHECK(flat.scheme == "m3");
  CHECK(verify_proper(even, flat.colors, 3));
  CHECK(verify_zoned(even, flat));

  auto tube = gen_tube({{2, 2}, 4});
  auto tcol = m3_color(tube);
  CHECK(verify_proper(tube, tcol.colors, 3));
}

TEST_CASE("apply_m3 rejects improper node colorings") {
  auto dod = gen_goldberg({GoldbergFamily::icosahedral, 1, 0});
  auto tri = triangulate_combination(global_combine(dod));
  std::vector<int> bad(tri.nodes.size(), 1);
  CHECK(kind_of([&] { apply_m3(dod, tri, bad); }) == "NodeColoringImproper");
  std::vector<int> range(tri.nodes.size(), 0);
  CHECK(kind_of([&] { apply_m3(dod, tri, range); }) == "NodeColoringImproper");
}
