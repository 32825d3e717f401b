#pragma once
#include <array>
#include <cassert>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>

namespace hexcol {

// Eisenstein integer x + y*w with w = exp(i*pi/6 * 2) ... concretely w is the
// primitive sixth root of unity, so w^2 = w - 1 and w^3 = -1.
// Hexagon face centers live on this lattice; adjacent centers differ by a unit.
struct Eis {
  long long x = 0, y = 0;

  friend Eis operator+(Eis a, Eis b) { return {a.x + b.x, a.y + b.y}; }
  friend Eis operator-(Eis a, Eis b) { return {a.x - b.x, a.y - b.y}; }
  friend Eis operator-(Eis a) { return {-a.x, -a.y}; }
  friend Eis operator*(long long k, Eis a) { return {k * a.x, k * a.y}; }
  // (a+bw)(c+dw) = ac + (ad+bc)w + bd(w-1)
  friend Eis operator*(Eis a, Eis b) {
    return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x + a.y * b.y};
  }
  friend bool operator==(Eis a, Eis b) = default;
  friend auto operator<=>(const Eis&, const Eis&) = default;
};

// Conjugate: w -> 1 - w.
inline Eis conj(Eis a) { return {a.x + a.y, -a.y}; }
// |a|^2, always >= 0, zero only at the origin.
inline long long norm(Eis a) { return a.x * a.x + a.x * a.y + a.y * a.y; }
// Orientation form; positive when b lies counterclockwise of a.
inline long long cross(Eis a, Eis b) { return a.x * b.y - a.y * b.x; }
// Multiply by w (rotate +60 degrees) / by w^-1 (rotate -60 degrees).
inline Eis rot60(Eis a) { return {-a.y, a.x + a.y}; }
inline Eis rot300(Eis a) { return {a.x + a.y, -a.x}; }
inline Eis rotk(Eis a, int k) {
  k = ((k % 6) + 6) % 6;
  for (int i = 0; i < k; i++) a = rot60(a);
  return a;
}

// Exact division; asserts divisibility (used for unit/gluing computations).
inline Eis div_exact(Eis a, Eis b) {
  long long n = norm(b);
  assert(n != 0);
  Eis p = a * conj(b);
  assert(p.x % n == 0 && p.y % n == 0);
  return {p.x / n, p.y / n};
}

// The six unit directions, counterclockwise: dir(k) = w^k.
inline constexpr std::array<Eis, 6> kDir = {
    Eis{1, 0}, Eis{0, 1}, Eis{-1, 1}, Eis{-1, 0}, Eis{0, -1}, Eis{1, -1}};
inline Eis dir(int k) { return kDir[((k % 6) + 6) % 6]; }
// Diagonal steps between nearest same-class faces: sigma(k) = dir(k)+dir(k+1).
inline Eis sigma(int k) { return dir(k) + dir(k + 1); }

// Hex-grid ring distance from the origin.
inline long long ring(Eis a) {
  long long s = a.x + a.y;
  return (std::llabs(a.x) + std::llabs(a.y) + std::llabs(s)) / 2;
}

// Congruence class of a lattice offset: additive, 0 on diagonal steps,
// +1 / -1 on even / odd unit directions.
inline int cls(Eis a) { return (int)(((a.x - a.y) % 3 + 3) % 3); }

// Scaled corner positions: corner j of the hexagon at z sits at 3z + sigma(j)
// (between the neighbors in directions j and j+1). Corner coordinates are kept
// scaled by 3 so everything stays integral.
inline Eis corner(Eis z, int j) { return 3 * z + sigma(j); }

struct EisHash {
  size_t operator()(const Eis& a) const {
    return std::hash<long long>()(a.x * 0x9E3779B97F4A7C15ll + a.y);
  }
};

} // namespace hexcol
