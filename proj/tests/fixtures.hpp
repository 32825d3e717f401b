#pragma once
#include <functional>
#include <string>
#include <vector>

#include "hexcol/map_builder.hpp"

namespace fixtures {

// Runs f and reports the kind of the Error it throws ("" if none).
inline std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const hexcol::Error& e) {
    return e.kind();
  }
  return "";
}

// Closed map from faces given as CCW vertex cycles (outside view).
inline hexcol::PlanarMap platonic(
    const std::vector<std::vector<long long>>& faces,
    const std::string& kind) {
  std::vector<hexcol::FaceSpec> specs;
  for (const auto& f : faces) {
    hexcol::FaceSpec s;
    for (long long v : f) s.corners.push_back({v});
    specs.push_back(std::move(s));
  }
  auto res =
      hexcol::assemble(specs, {{"kind", kind}}, /*allow_open=*/false);
  return std::move(res.map);
}

inline hexcol::PlanarMap tetra() {
  return platonic({{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}, "tetrahedron");
}

inline hexcol::PlanarMap cube() {
  return platonic({{0, 3, 2, 1},
                   {4, 5, 6, 7},
                   {0, 1, 5, 4},
                   {1, 2, 6, 5},
                   {2, 3, 7, 6},
                   {3, 0, 4, 7}},
                  "cube");
}

inline hexcol::PlanarMap octa() {
  return platonic({{0, 1, 2},
                   {0, 2, 3},
                   {0, 3, 4},
                   {0, 4, 1},
                   {5, 2, 1},
                   {5, 3, 2},
                   {5, 4, 3},
                   {5, 1, 4}},
                  "octahedron");
}

inline hexcol::PlanarMap icosa() {
  auto u = [](long long i) { return 1 + (i % 5 + 5) % 5; };
  auto l = [](long long i) { return 6 + (i % 5 + 5) % 5; };
  std::vector<std::vector<long long>> faces;
  for (long long i = 0; i < 5; i++) {
    faces.push_back({0, u(i), u(i + 1)});
    faces.push_back({u(i), l(i), u(i + 1)});
    faces.push_back({l(i), l(i + 1), u(i + 1)});
    faces.push_back({11, l(i + 1), l(i)});
  }
  return platonic(faces, "icosahedron");
}

inline hexcol::PlanarMap dodeca() { return hexcol::dual(icosa()); }

} // namespace fixtures
