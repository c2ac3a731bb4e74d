// Fans of smooth complete toric varieties, with the blown-up threefold of
// the counting problem as a named builtin.
#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "toricint/cones.hpp"
#include "toricint/intmat.hpp"
#include "toricint/numeric.hpp"

namespace toricint {

struct Fan {
  std::size_t dim = 0;
  std::vector<IntVec> rays;                       // primitive integer vectors
  std::vector<std::vector<std::size_t>> max_cones;  // ray-index sets
  std::vector<std::string> ray_labels;

  std::size_t ray_index(const std::string& label) const {
    for (std::size_t i = 0; i < ray_labels.size(); ++i)
      if (ray_labels[i] == label) return i;
    throw ArgumentError("unknown ray label: " + label);
  }

  // Matrix of pairings <e_j, ray_i>: one row per ray. As a map it sends a
  // character to the coefficient vector of its principal divisor.
  IntMat ray_matrix() const {
    IntMat m(rays.size(), dim);
    for (std::size_t i = 0; i < rays.size(); ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = rays[i][j];
    return m;
  }
};

namespace fandetail {

inline Int gcd_all(const IntVec& v) {
  Int g(0);
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

}  // namespace fandetail

// Structural checks assumed everywhere else: primitive rays, smooth
// simplicial maximal cones, every ray used.
inline void validate_fan(const Fan& f) {
  if (f.dim < 1 || f.dim > 4) throw ArgumentError("fan dimension out of supported range");
  if (f.ray_labels.size() != f.rays.size()) throw ArgumentError("label count mismatch");
  std::vector<bool> used(f.rays.size(), false);
  for (const IntVec& r : f.rays) {
    if (r.size() != f.dim) throw ArgumentError("ray dimension mismatch");
    if (fandetail::gcd_all(r) != 1) throw ArgumentError("ray is not primitive");
  }
  for (const auto& c : f.max_cones) {
    if (c.size() != f.dim) throw ArgumentError("maximal cone is not full-dimensional");
    std::vector<RatVec> vecs;
    for (std::size_t i : c) {
      if (i >= f.rays.size()) throw ArgumentError("cone ray index out of range");
      used[i] = true;
      vecs.push_back(conedetail::to_rat(f.rays[i]));
    }
    Rat det = conedetail::det_rational(vecs);
    if (det != 1 && det != -1) throw ArgumentError("maximal cone is not smooth");
  }
  for (bool u : used)
    if (!u) throw ArgumentError("ray belongs to no maximal cone");
}

// True iff the rays span a cone of the fan, i.e. the corresponding orbit
// closures intersect.
inline bool stratum_nonempty(const Fan& f, const std::set<std::size_t>& rays_subset) {
  for (std::size_t i : rays_subset)
    if (i >= f.rays.size()) throw ArgumentError("ray index out of range");
  if (rays_subset.empty()) return true;
  for (const auto& c : f.max_cones) {
    bool inside = true;
    for (std::size_t i : rays_subset)
      if (std::find(c.begin(), c.end(), i) == c.end()) {
        inside = false;
        break;
      }
    if (inside) return true;
  }
  return false;
}

inline Fan make_p1_fan() {
  Fan f;
  f.dim = 1;
  f.rays = {IntVec{Int(1)}, IntVec{Int(-1)}};
  f.max_cones = {{0}, {1}};
  f.ray_labels = {"0", "inf"};
  validate_fan(f);
  return f;
}

inline Fan make_p1xp1xp1_fan() {
  Fan f;
  f.dim = 3;
  auto ray = [](int a, int b, int c) { return IntVec{Int(a), Int(b), Int(c)}; };
  f.rays = {ray(1, 0, 0), ray(-1, 0, 0), ray(0, 1, 0), ray(0, -1, 0), ray(0, 0, 1), ray(0, 0, -1)};
  f.ray_labels = {"a0", "a1", "b0", "b1", "c0", "c1"};
  for (std::size_t i : {0, 1})
    for (std::size_t j : {2, 3})
      for (std::size_t k : {4, 5}) f.max_cones.push_back({i, j, k});
  validate_fan(f);
  return f;
}

// The product of three projective lines blown up along two lines: start from
// the product fan and subdivide by x = (-1,-1,0), then by y = (-1,0,-1).
// Ray order fixed to a0,a1,b0,b1,c0,c1,x,y; tests depend on it.
inline Fan make_builtin_x_fan() {
  Fan f;
  f.dim = 3;
  auto ray = [](int a, int b, int c) { return IntVec{Int(a), Int(b), Int(c)}; };
  f.rays = {ray(1, 0, 0),  ray(-1, 0, 0), ray(0, 1, 0),  ray(0, -1, 0),
            ray(0, 0, 1),  ray(0, 0, -1), ray(-1, -1, 0), ray(-1, 0, -1)};
  f.ray_labels = {"a0", "a1", "b0", "b1", "c0", "c1", "x", "y"};
  const std::size_t a0 = 0, a1 = 1, b0 = 2, b1 = 3, c0 = 4, c1 = 5, x = 6, y = 7;
  f.max_cones = {
      {a0, b0, c0}, {a0, b0, c1}, {a0, b1, c0}, {a0, b1, c1}, {a1, b0, c0},
      {a1, c0, x},  {b1, c0, x},  {b1, c1, x},               // first blow-up
      {a1, b0, y},  {b0, c1, y},                             // second blow-up
      {a1, x, y},   {c1, x, y},
  };
  validate_fan(f);
  return f;
}

// A pair (X, D): a fan plus the boundary rays, with display names for the
// boundary components.
struct ToricPair {
  Fan fan;
  std::vector<std::size_t> boundary;          // ray indices, ascending
  std::vector<std::string> component_names;   // parallel to boundary

  std::size_t component_index(const std::string& name) const {
    for (std::size_t i = 0; i < component_names.size(); ++i)
      if (component_names[i] == name) return i;
    throw ArgumentError("unknown boundary component: " + name);
  }
};

inline ToricPair make_builtin_x_pair() {
  ToricPair p;
  p.fan = make_builtin_x_fan();
  p.boundary = {0, 6, 7};  // a0, x, y
  p.component_names = {"M", "E1", "E2"};
  return p;
}

inline ToricPair make_gm_pair() {
  ToricPair p;
  p.fan = make_p1_fan();
  p.boundary = {0, 1};
  p.component_names = {"0", "inf"};
  return p;
}

}  // namespace toricint
