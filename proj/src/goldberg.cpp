#include "hexcol/goldberg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "hexcol/eis.hpp"
#include "hexcol/map_builder.hpp"

namespace hexcol {

namespace {

std::vector<std::array<int, 3>> base_faces(GoldbergFamily fam) {
  switch (fam) {
    case GoldbergFamily::tetrahedral:
      return {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    case GoldbergFamily::octahedral:
      return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
              {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
    case GoldbergFamily::icosahedral: {
      std::vector<std::array<int, 3>> fs;
      auto u = [](int i) { return 1 + (i % 5 + 5) % 5; };
      auto l = [](int i) { return 6 + (i % 5 + 5) % 5; };
      for (int i = 0; i < 5; i++) {
        fs.push_back({0, u(i), u(i + 1)});
        fs.push_back({u(i), l(i), u(i + 1)});
        fs.push_back({l(i), l(i + 1), u(i + 1)});
        fs.push_back({11, l(i + 1), l(i)});
      }
      return fs;
    }
  }
  fail("InvalidSpec", "unknown family");
}

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int i) { return up[i] == i ? i : up[i] = find(up[i]); }
  void unite(int i, int j) { up[find(i)] = find(j); }
};

// Orientation-preserving seam map between two charts: z -> zeta*(z-from) + to,
// where the shared base edge runs from->... in one chart and reversed in the
// other. All charts use the same standard triangle (0, U, rot60 U).
struct Seam {
  int chart = -1;
  Eis zeta{1, 0};
  Eis from{}, to{};
  Eis apply(Eis z) const { return zeta * (z - from) + to; }
};

} // namespace

PlanarMap gen_goldberg(const GoldbergSpec& spec) {
  long long p = spec.p, q = spec.q;
  require(p >= 0 && q >= 0 && p + q >= 1, "InvalidSpec",
          "parameters must be nonnegative and not both zero");
  auto faces = base_faces(spec.family);
  int nch = (int)faces.size();

  Eis U{p, q};
  Eis W = rot60(U);
  std::array<Eis, 3> P = {Eis{0, 0}, U, W};
  auto in_chart = [&](Eis z) {
    return cross(P[1] - P[0], z - P[0]) >= 0 &&
           cross(P[2] - P[1], z - P[1]) >= 0 &&
           cross(P[0] - P[2], z - P[2]) >= 0;
  };

  // Lattice points of one chart (same for all charts).
  std::vector<Eis> points;
  for (long long x = -q; x <= p; x++)
    for (long long y = 0; y <= p + q; y++)
      if (in_chart({x, y})) points.push_back({x, y});
  std::sort(points.begin(), points.end());
  std::map<Eis, int> point_index;
  for (int i = 0; i < (int)points.size(); i++) point_index[points[i]] = i;
  int npts = (int)points.size();

  // Seam maps, one per directed chart edge.
  auto edge_pos = [&](int t, int a, int b) {
    for (int j = 0; j < 3; j++)
      if (faces[t][j] == a && faces[t][(j + 1) % 3] == b) return j;
    return -1;
  };
  std::vector<std::array<Seam, 3>> seams(nch);
  for (int t = 0; t < nch; t++)
    for (int j = 0; j < 3; j++) {
      int a = faces[t][j], b = faces[t][(j + 1) % 3];
      Seam sm;
      for (int t2 = 0; t2 < nch && sm.chart < 0; t2++) {
        if (t2 == t) continue;
        int j2 = edge_pos(t2, b, a);
        if (j2 < 0) continue;
        sm.chart = t2;
        sm.from = P[j];          // a in chart t
        sm.to = P[(j2 + 1) % 3]; // a in chart t2
        Eis num = P[j2] - P[(j2 + 1) % 3];
        Eis den = P[(j + 1) % 3] - P[j];
        sm.zeta = div_exact(num, den);
        require(norm(sm.zeta) == 1, "InvalidSpec", "seam map is not a unit");
      }
      require(sm.chart >= 0, "InvalidSpec", "base triangulation has an open edge");
      seams[t][j] = sm;
    }

  // Glue chart boundaries: union incidences (t, z) ~ (t2, seam(z)). Chart
  // points on the edge's line are exactly the closed seam segment, the
  // triangle being convex.
  UnionFind uf(nch * npts);
  auto idx = [&](int t, Eis z) {
    auto it = point_index.find(z);
    require(it != point_index.end(), "InvalidSpec", "point leaves the chart");
    return t * npts + it->second;
  };
  for (int t = 0; t < nch; t++)
    for (int j = 0; j < 3; j++) {
      const Seam& sm = seams[t][j];
      Eis s = P[j], e = P[(j + 1) % 3];
      for (Eis z : points)
        if (cross(e - s, z - s) == 0)
          uf.unite(idx(t, z), idx(sm.chart, sm.apply(z)));
    }

  // Canonical representative per vertex class.
  std::vector<std::tuple<int, long long, long long>> rep(
      nch * npts, {nch, 0, 0});
  for (int t = 0; t < nch; t++)
    for (Eis z : points) {
      int r = uf.find(idx(t, z));
      rep[r] = std::min(rep[r], std::tuple(t, z.x, z.y));
    }
  std::vector<int> class_of(nch * npts, -1);
  std::vector<std::tuple<int, long long, long long>> class_reps;
  {
    std::vector<std::pair<std::tuple<int, long long, long long>, int>> roots;
    for (int t = 0; t < nch; t++)
      for (Eis z : points) {
        int i = idx(t, z);
        if (uf.find(i) == i) roots.push_back({rep[i], i});
      }
    std::sort(roots.begin(), roots.end());
    for (int c = 0; c < (int)roots.size(); c++) {
      class_of[roots[c].second] = c;
      class_reps.push_back(roots[c].first);
    }
    for (int t = 0; t < nch; t++)
      for (Eis z : points) {
        int i = idx(t, z);
        class_of[i] = class_of[uf.find(i)];
      }
  }
  auto cls_at = [&](int t, Eis z) { return (long long)class_of[idx(t, z)]; };

  // Subdivision triangles may straddle seams, so a neighbor vertex b of an
  // in-chart vertex a can lie outside every chart containing a. Unfold the
  // straight segment a->b across seam lines, always hopping at the first
  // crossing; this develops the true surface path, so the answer is exact.
  auto resolve = [&](int t, Eis a, Eis b) {
    for (int guard = 0; guard < 12; guard++) {
      if (in_chart(b)) return cls_at(t, b);
      int bj = -1;
      long long bca = 0, bee = 0; // crossing parameter bca/(bca+bee), minimal
      for (int j = 0; j < 3; j++) {
        Eis s = P[j], e = P[(j + 1) % 3];
        long long cb = cross(e - s, b - s);
        if (cb >= 0) continue;
        long long ca = cross(e - s, a - s);
        if (bj < 0 || ca * bee < bca * (-cb)) {
          bj = j;
          bca = ca;
          bee = -cb;
        }
      }
      require(bj >= 0, "InvalidSpec", "segment unfolding left the surface");
      const Seam& sm = seams[t][bj];
      a = sm.apply(a);
      b = sm.apply(b);
      t = sm.chart;
    }
    fail("InvalidSpec", "segment unfolding did not terminate");
  };

  // Canonical corner key of the unit triangle at z spanned by dir(k),
  // dir(k+1): the sorted classes of its vertices.
  auto tri_key = [&](int t, Eis z, int k) {
    std::vector<long long> key = {cls_at(t, z), resolve(t, z, z + dir(k)),
                                  resolve(t, z, z + dir(k + 1))};
    std::sort(key.begin(), key.end());
    return key;
  };

  // Fullerene face around an interior or seam vertex: full angle 360, six
  // triangles counterclockwise.
  auto hex_umbrella = [&](int t, Eis z) {
    std::vector<std::vector<long long>> ks;
    for (int k = 0; k < 6; k++) ks.push_back(tri_key(t, z, k));
    return ks;
  };

  // Around a base vertex each incident chart contributes a 60 degree wedge,
  // and a half-open wedge holds exactly one lattice direction: one spoke per
  // sheet. Faces of size 3, 4 or 5 come from triangles between consecutive
  // spokes.
  auto corner_umbrella = [&](int t, int j) {
    long long hub = cls_at(t, P[j]);
    int vid = faces[t][j];
    std::vector<long long> spokes;
    int ct = t, cj = j;
    bool closed = false;
    for (int guard = 0; guard < 8 && !closed; guard++) {
      Eis c = P[cj];
      Eis ra = P[(cj + 1) % 3] - c, rb = P[(cj + 2) % 3] - c;
      int k = -1;
      for (int kk = 0; kk < 6 && k < 0; kk++)
        if (cross(ra, dir(kk)) >= 0 && cross(dir(kk), rb) > 0) k = kk;
      require(k >= 0, "InvalidSpec", "corner wedge holds no lattice direction");
      spokes.push_back(cls_at(ct, c + dir(k)));
      const Seam& sm = seams[ct][(cj + 2) % 3];
      ct = sm.chart;
      cj = -1;
      for (int jj = 0; jj < 3; jj++)
        if (faces[ct][jj] == vid) cj = jj;
      require(cj >= 0, "InvalidSpec", "corner walk lost its base vertex");
      closed = ct == t && cj == j;
    }
    require(closed, "InvalidSpec", "corner walk did not close");
    int deg = (int)spokes.size();
    std::vector<std::vector<long long>> ks;
    for (int s = 0; s < deg; s++) {
      std::vector<long long> key = {hub, spokes[s], spokes[(s + 1) % deg]};
      std::sort(key.begin(), key.end());
      ks.push_back(key);
    }
    return ks;
  };

  std::vector<FaceSpec> specs;
  for (auto [t, x, y] : class_reps) {
    Eis z{x, y};
    int jc = -1;
    for (int j = 0; j < 3; j++)
      if (P[j] == z) jc = j;
    FaceSpec s;
    s.corners = jc >= 0 ? corner_umbrella(t, jc) : hex_umbrella(t, z);
    s.meta = {{"chart", t}, {"rep", {x, y}}};
    if (jc >= 0 && s.corners.size() != 6) s.meta["corner"] = true;
    specs.push_back(std::move(s));
  }

  const char* famname =
      spec.family == GoldbergFamily::icosahedral   ? "icosahedral"
      : spec.family == GoldbergFamily::octahedral ? "octahedral"
                                                  : "tetrahedral";
  nlohmann::json meta = {
      {"kind", "goldberg"},
      {"spec", {{"family", famname}, {"p", p}, {"q", q}}}};
  auto res = assemble(specs, meta, /*allow_open=*/false);
  require(res.unbounded.empty(), "NotSphere", "fullerene has boundary");
  return std::move(res.map);
}

} // namespace hexcol
