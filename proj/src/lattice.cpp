#include "hexcol/lattice.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

#include "hexcol/map_builder.hpp"

namespace hexcol {

namespace {

long long floordiv(long long a, long long b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

int mod6(int t) { return ((t % 6) + 6) % 6; }

// Corner list starting at sigma(5) so that edge position j faces direction j.
Eis raw_corner(Eis z, int j) { return corner(z, mod6(j + 5)); }

nlohmann::json center_meta(Eis z) {
  return {{"center", {z.x, z.y}}};
}

} // namespace

CoxeterCoord coxeter_of(Eis z) {
  if (z == Eis{0, 0}) return {0, 0};
  for (int k = 0; k < 6; k++, z = rot60(z))
    if (z.x >= 0 && z.y >= 0)
      return {std::max(z.x, z.y), std::min(z.x, z.y)};
  fail("InvalidSpec", "unreachable: no rotation into the first sector");
}

PlanarMap gen_hex_patch(int radius) {
  require(radius >= 0, "InvalidSpec", "patch radius must be nonnegative");
  std::vector<Eis> cells;
  for (long long x = -radius; x <= radius; x++)
    for (long long y = -radius; y <= radius; y++)
      if (ring({x, y}) <= radius) cells.push_back({x, y});
  std::sort(cells.begin(), cells.end(), [](Eis a, Eis b) {
    return std::tuple(ring(a), a.x, a.y) < std::tuple(ring(b), b.x, b.y);
  });

  auto side = [](Eis z, int t) {
    return std::vector<long long>{z.x, z.y, t};
  };
  std::vector<FaceSpec> specs;
  for (Eis z : cells) {
    FaceSpec s;
    for (int j = 0; j < 6; j++) {
      Eis c = raw_corner(z, j);
      s.corners.push_back({c.x, c.y});
      s.edge_keys.push_back(
          std::min(side(z, j), side(z + dir(j), mod6(j + 3))));
    }
    s.meta = center_meta(z);
    specs.push_back(std::move(s));
  }
  nlohmann::json meta = {{"kind", "patch"}, {"spec", {{"radius", radius}}}};
  return std::move(assemble(specs, meta).map);
}

PlanarMap gen_tube(const TubeSpec& spec) {
  long long p = spec.coords.p, q = spec.coords.q;
  require(!(p == 0 && q == 0), "DegenerateSpec", "tube coordinates (0,0)");
  require(p >= q && q >= 0, "InvalidSpec", "tube coordinates not normalized");
  require(spec.rings >= 1, "InvalidSpec", "tube needs at least one ring");

  Eis v{p, q};
  long long g = std::gcd(p, q);
  long long pp = p / g, qq = q / g;
  long long width = 2 * p + q;
  auto mu = [](Eis z) { return 2 * z.x + z.y; };
  auto canon = [&](Eis z) { return z - floordiv(mu(z), width) * v; };
  auto canon3 = [&](Eis w) {
    return w - floordiv(mu(w), 3 * width) * (3 * v);
  };

  // Bezout coefficients: a*pp + b*qq = 1.
  long long a = 1, b = 0;
  {
    long long r0 = pp, r1 = qq, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      long long k = r0 / r1;
      std::tie(r0, r1) = std::tuple(r1, r0 - k * r1);
      std::tie(s0, s1) = std::tuple(s1, s0 - k * s1);
      std::tie(t0, t1) = std::tuple(t1, t0 - k * t1);
    }
    a = s0;
    b = t0;
  }

  std::vector<Eis> cells;
  std::vector<int> rows;
  for (int r = 0; r < spec.rings; r++) {
    std::vector<Eis> rowcells;
    Eis z0{-b * r, a * r};
    for (long long k = 0; k < g; k++)
      rowcells.push_back(canon(z0 + k * Eis{pp, qq}));
    std::sort(rowcells.begin(), rowcells.end(),
              [&](Eis x, Eis y) { return mu(x) < mu(y); });
    for (Eis z : rowcells) {
      cells.push_back(z);
      rows.push_back(r);
    }
  }

  auto side = [&](Eis z, int t) {
    Eis c = canon(z);
    return std::vector<long long>{c.x, c.y, t};
  };
  std::vector<FaceSpec> specs;
  for (size_t i = 0; i < cells.size(); i++) {
    Eis z = cells[i];
    FaceSpec s;
    for (int j = 0; j < 6; j++) {
      Eis c = canon3(raw_corner(z, j));
      s.corners.push_back({c.x, c.y});
      s.edge_keys.push_back(
          std::min(side(z, j), side(z + dir(j), mod6(j + 3))));
    }
    s.meta = center_meta(z);
    s.meta["row"] = rows[i];
    specs.push_back(std::move(s));
  }
  nlohmann::json meta = {
      {"kind", "tube"},
      {"spec", {{"p", p}, {"q", q}, {"rings", spec.rings}}}};
  return std::move(assemble(specs, meta).map);
}

namespace {

// Canonical chart of a cone cell: sector s, coords in {x>=1, y>=0}, plus the
// number of +60 rotations applied (directions shift by the same amount).
struct ConeChart {
  int s = 0;
  Eis z{};
  int rot = 0;
  bool apex = false;
};

ConeChart cone_canon_cell(int k, int s, Eis z) {
  ConeChart c{s, z, 0, false};
  for (int guard = 0; guard < 64; guard++) {
    if (c.z == Eis{0, 0}) {
      c.apex = true;
      c.s = 0;
      return c;
    }
    if (c.z.x >= 1 && c.z.y >= 0) {
      c.s = ((c.s % k) + k) % k;
      return c;
    }
    if (c.z.y < 0) {
      c.z = rot60(c.z);
      c.s -= 1;
      c.rot += 1;
    } else {
      c.z = rot300(c.z);
      c.s += 1;
      c.rot -= 1;
    }
  }
  fail("InvalidSpec", "cone cell canonicalization did not converge");
}

// Scaled corners canonicalize into the open sector {x>=1, y>=1}; corner
// components are never 0, so the rays are never hit.
ConeChart cone_canon_corner(int k, int s, Eis w) {
  ConeChart c{s, w, 0, false};
  for (int guard = 0; guard < 64; guard++) {
    if (c.z.x >= 1 && c.z.y >= 1) {
      c.s = ((c.s % k) + k) % k;
      return c;
    }
    if (c.z.y < 0) {
      c.z = rot60(c.z);
      c.s -= 1;
      c.rot += 1;
    } else {
      c.z = rot300(c.z);
      c.s += 1;
      c.rot -= 1;
    }
  }
  fail("InvalidSpec", "cone corner canonicalization did not converge");
}

} // namespace

PlanarMap gen_cone(const ConeSpec& spec) {
  int k = spec.apex_size;
  require(k >= 3, "ApexTooSmall", "apex needs at least three sides");
  require(spec.radius >= 0, "InvalidSpec", "cone radius must be nonnegative");

  auto side = [&](int s, Eis z, int t) {
    ConeChart c = cone_canon_cell(k, s, z);
    if (c.apex) return std::vector<long long>{0, -9, 0, 0}; // placeholder
    return std::vector<long long>{c.s, c.z.x, c.z.y, (long long)mod6(t + c.rot)};
  };
  auto edge_key = [&](int s, Eis z, int t) -> std::vector<long long> {
    ConeChart nb = cone_canon_cell(k, s, z + dir(t));
    if (nb.apex) {
      ConeChart me = cone_canon_cell(k, s, z);
      return {me.s, -9, 0, 0};
    }
    return std::min(side(s, z, t),
                    std::vector<long long>{nb.s, nb.z.x, nb.z.y,
                                           (long long)mod6(t + 3 + nb.rot)});
  };

  std::vector<FaceSpec> specs;
  {
    FaceSpec apex;
    for (long long s = 0; s < k; s++) {
      apex.corners.push_back({s, 1, 1});
      apex.edge_keys.push_back({(s + 1) % k, -9, 0, 0});
    }
    apex.meta = {{"apex", true}};
    specs.push_back(std::move(apex));
  }
  struct Cell {
    int s;
    Eis z;
  };
  std::vector<Cell> cells;
  for (int s = 0; s < k; s++)
    for (long long x = 1; x <= spec.radius; x++)
      for (long long y = 0; x + y <= spec.radius; y++)
        cells.push_back({s, {x, y}});
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return std::tuple(a.z.x + a.z.y, a.s, a.z.y) <
           std::tuple(b.z.x + b.z.y, b.s, b.z.y);
  });
  for (const Cell& cell : cells) {
    FaceSpec s;
    for (int j = 0; j < 6; j++) {
      ConeChart c = cone_canon_corner(k, cell.s, raw_corner(cell.z, j));
      s.corners.push_back({c.s, c.z.x, c.z.y});
      s.edge_keys.push_back(edge_key(cell.s, cell.z, j));
    }
    s.meta = center_meta(cell.z);
    s.meta["sector"] = cell.s;
    s.meta["ring"] = cell.z.x + cell.z.y;
    specs.push_back(std::move(s));
  }
  nlohmann::json meta = {
      {"kind", "cone"},
      {"spec", {{"k", k}, {"radius", spec.radius}}}};
  return std::move(assemble(specs, meta).map);
}

PlanarMap gen_planted(int radius, const std::vector<PlantSpec>& plants) {
  require(radius >= 0, "InvalidSpec", "patch radius must be nonnegative");
  for (const auto& pl : plants) {
    require(pl.dir >= 0 && pl.dir < 6, "InvalidSpec", "plant direction");
    require(ring(pl.cell) <= radius, "InvalidSpec", "plant outside patch");
  }
  // Wedge removed by plant (c,d): c + a*dir(d) + b*dir(d+1), a>=0, b>=1.
  auto removed_by = [](Eis z, const PlantSpec& pl) {
    Eis u = z - pl.cell;
    long long bb = cross(dir(pl.dir), u);
    long long aa = cross(u, dir(pl.dir + 1));
    return aa >= 0 && bb >= 1;
  };
  // Corner keys strictly counterclockwise of the slit rotate one sector
  // clockwise about the plant center, closing the slit.
  auto rotates_by = [](Eis w, const PlantSpec& pl) {
    Eis u = w - 3 * pl.cell;
    long long alpha = cross(u, dir(pl.dir + 2));
    long long beta = cross(dir(pl.dir + 1), u);
    return alpha > 0 && beta >= 0;
  };
  auto map_corner = [&](Eis w) {
    int hits = 0;
    Eis out = w;
    for (const auto& pl : plants)
      if (rotates_by(w, pl)) {
        hits++;
        out = 3 * pl.cell + rot300(w - 3 * pl.cell);
      }
    require(hits <= 1, "InvalidSpec", "plant rotation zones overlap");
    return out;
  };

  std::vector<Eis> cells;
  for (long long x = -radius; x <= radius; x++)
    for (long long y = -radius; y <= radius; y++) {
      Eis z{x, y};
      if (ring(z) > radius) continue;
      int rem = 0;
      for (const auto& pl : plants) rem += removed_by(z, pl) ? 1 : 0;
      require(rem <= 1, "InvalidSpec", "plant removal wedges overlap");
      if (rem == 0) cells.push_back(z);
    }
  for (const auto& pl : plants) {
    bool alive = std::find(cells.begin(), cells.end(), pl.cell) != cells.end();
    require(alive, "InvalidSpec", "plant cell removed by another plant");
  }
  std::sort(cells.begin(), cells.end(), [](Eis a, Eis b) {
    return std::tuple(ring(a), a.x, a.y) < std::tuple(ring(b), b.x, b.y);
  });

  std::vector<FaceSpec> specs;
  for (Eis z : cells) {
    std::vector<Eis> cs;
    for (int j = 0; j < 6; j++) {
      Eis w = map_corner(raw_corner(z, j));
      if (!cs.empty() && cs.back() == w) continue;
      cs.push_back(w);
    }
    while (cs.size() > 1 && cs.front() == cs.back()) cs.pop_back();
    bool pent = std::any_of(plants.begin(), plants.end(), [&](const auto& pl) {
      return pl.cell == z;
    });
    require(cs.size() == (pent ? 5u : 6u), "InvalidSpec",
            "unexpected corner collapse at a planted patch cell");
    FaceSpec s;
    for (Eis w : cs) s.corners.push_back({w.x, w.y});
    s.meta = center_meta(z);
    if (pent) s.meta["pentagon"] = true;
    specs.push_back(std::move(s));
  }
  nlohmann::json plants_meta = nlohmann::json::array();
  for (const auto& pl : plants)
    plants_meta.push_back(
        {{"cell", {pl.cell.x, pl.cell.y}}, {"dir", pl.dir}});
  nlohmann::json meta = {
      {"kind", "planted"},
      {"spec", {{"radius", radius}, {"plants", plants_meta}}}};
  return std::move(assemble(specs, meta).map);
}

std::vector<FaceId> hex_faces(const PlanarMap& m) {
  std::vector<FaceId> out;
  for (FaceId f = 0; f < m.n_faces(); f++)
    if (m.face_bounded(f) && m.faces[f].size() == 6) out.push_back(f);
  return out;
}

FaceId cursor_peek(const PlanarMap& m, Cursor c, int t) {
  int j = mod6(t - c.frame);
  return m.dart_face[PlanarMap::twin(m.faces[c.face][j])];
}

Cursor cursor_move(const PlanarMap& m, Cursor c, int t) {
  require(m.faces[c.face].size() == 6, "InvalidSpec",
          "cursor can only walk hexagons");
  int j = mod6(t - c.frame);
  Dart d = PlanarMap::twin(m.faces[c.face][j]);
  FaceId g = m.dart_face[d];
  require(m.face_bounded(g) && m.faces[g].size() == 6, "NoHexCorridor",
          "cursor step leaves the hexagonal region");
  return {g, mod6(t + 3 - m.dart_pos[d])};
}

FrameField develop(const PlanarMap& m, const std::vector<FaceId>& region,
                   Anchor anchor, const std::vector<Dart>& blocked,
                   ClashPolicy policy) {
  std::vector<char> inr(m.n_faces(), 0);
  for (FaceId f : region) {
    require(f >= 0 && f < m.n_faces(), "InvalidSpec", "region face id");
    require(m.face_bounded(f) && m.faces[f].size() == 6, "InvalidSpec",
            "develop region must consist of bounded hexagons");
    inr[f] = 1;
  }
  require(inr[anchor.face], "InvalidSpec", "anchor not in region");
  std::vector<char> cut(m.dart_count, 0);
  for (Dart d : blocked) {
    cut[d] = 1;
    cut[PlanarMap::twin(d)] = 1;
  }

  FrameField ff;
  ff.coord[anchor.face] = anchor.coord;
  ff.frame[anchor.face] = mod6(anchor.frame);
  std::deque<FaceId> queue = {anchor.face};
  size_t reached = 1;
  while (!queue.empty()) {
    FaceId f = queue.front();
    queue.pop_front();
    Eis z = ff.coord[f];
    int fr = ff.frame[f];
    for (int j = 0; j < 6; j++) {
      Dart d = m.faces[f][j];
      if (cut[d]) continue;
      Dart td = PlanarMap::twin(d);
      FaceId g = m.dart_face[td];
      if (!inr[g]) continue;
      int t = mod6(fr + j);
      Eis zg = z + dir(t);
      int frg = mod6(t + 3 - m.dart_pos[td]);
      auto it = ff.coord.find(g);
      if (it == ff.coord.end()) {
        ff.coord[g] = zg;
        ff.frame[g] = frg;
        queue.push_back(g);
        reached++;
      } else if (policy == ClashPolicy::strict) {
        require(it->second == zg && ff.frame[g] == frg,
                "RegionNotSimplyConnected",
                "chart disagrees along different corridors");
      } else {
        require(cls(it->second) == cls(zg), "RegionNotSimplyConnected",
                "congruence labels disagree along different corridors");
      }
    }
  }
  size_t region_size = 0;
  for (char c : inr) region_size += c;
  require(reached == region_size, "Disconnected",
          "develop region is not connected");
  return ff;
}

CoxeterCoord coxeter_between(const PlanarMap& m, FaceId a, FaceId b) {
  require(a >= 0 && a < m.n_faces() && b >= 0 && b < m.n_faces(),
          "InvalidSpec", "face id out of range");
  auto is_hex = [&](FaceId f) {
    return m.face_bounded(f) && m.faces[f].size() == 6;
  };
  require(is_hex(a) && is_hex(b), "NoHexCorridor",
          "endpoints must be bounded hexagons");
  if (a == b) return {0, 0};
  std::unordered_map<FaceId, Eis> coord;
  std::unordered_map<FaceId, int> frame;
  coord[a] = {0, 0};
  frame[a] = 0;
  std::deque<FaceId> queue = {a};
  while (!queue.empty()) {
    FaceId f = queue.front();
    queue.pop_front();
    for (int t = 0; t < 6; t++) {
      Cursor cur{f, frame[f]};
      FaceId g = cursor_peek(m, cur, t);
      if (!is_hex(g) || coord.count(g)) continue;
      Cursor moved = cursor_move(m, cur, t);
      coord[g] = coord[f] + dir(t);
      frame[g] = moved.frame;
      if (g == b) return coxeter_of(coord[g]);
      queue.push_back(g);
    }
  }
  fail("NoHexCorridor", "no all-hexagon corridor connects the faces");
}

std::optional<FaceId> face_at(const PlanarMap& m, Eis center) {
  if (!m.meta.contains("faces")) return std::nullopt;
  const auto& fm = m.meta["faces"];
  for (FaceId f = 0; f < (int)fm.size(); f++) {
    const auto& e = fm[f];
    if (e.contains("center") && !e.contains("sector") &&
        e["center"][0] == center.x && e["center"][1] == center.y)
      return f;
  }
  return std::nullopt;
}

std::optional<FaceId> face_at(const PlanarMap& m, int sector, Eis center) {
  if (!m.meta.contains("faces")) return std::nullopt;
  const auto& fm = m.meta["faces"];
  for (FaceId f = 0; f < (int)fm.size(); f++) {
    const auto& e = fm[f];
    if (e.contains("center") && e.contains("sector") &&
        e["sector"] == sector && e["center"][0] == center.x &&
        e["center"][1] == center.y)
      return f;
  }
  return std::nullopt;
}

} // namespace hexcol
