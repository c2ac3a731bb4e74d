// Picard grading of the Cox ring, divisor classes, the irrelevant ideal and
// character cones of regular/invertible functions on toric open subsets.
#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "toricint/cones.hpp"
#include "toricint/fan.hpp"
#include "toricint/intmat.hpp"

namespace toricint {

struct CoxGrading {
  std::size_t pic_rank = 0;
  IntMat degree_matrix;  // pic_rank x #rays
};

struct TorusDivisor {
  IntVec coeffs;  // one per ray
};

// Presentation of Pic as the cokernel of the character-to-divisor map.
// For a smooth complete fan the cokernel is torsion free of rank
// #rays - dim; torsion would mean the fan is outside the supported class.
inline CoxGrading picard_grading(const Fan& fan) {
  QuotientLattice q = cokernel(fan.ray_matrix());
  if (!q.torsion.empty())
    throw ArgumentError("fan has torsion in its divisor class group; not smooth/complete");
  if (q.free_rank != fan.rays.size() - fan.dim)
    throw InternalError("picard rank mismatch against #rays - dim");
  CoxGrading g;
  g.pic_rank = q.free_rank;
  g.degree_matrix = q.projection;
  return g;
}

inline IntVec divisor_class(const CoxGrading& g, const TorusDivisor& d) {
  if (d.coeffs.size() != g.degree_matrix.cols()) throw ArgumentError("coefficient count mismatch");
  return g.degree_matrix.apply(d.coeffs);
}

// Class of omega_X(D)^vee = sum of the classes of all rays minus the
// boundary ones; equivalently the class of the divisor sum_{rho not in D} D_rho.
inline IntVec log_anticanonical_class(const CoxGrading& g, const std::set<std::size_t>& boundary) {
  TorusDivisor d;
  d.coeffs.assign(g.degree_matrix.cols(), Int(1));
  for (std::size_t i : boundary) {
    if (i >= d.coeffs.size()) throw ArgumentError("boundary ray out of range");
    d.coeffs[i] = 0;
  }
  return divisor_class(g, d);
}

// One squarefree generator per maximal cone: the rays NOT in the cone.
// Duplicates removed; sorted for a stable order.
inline std::vector<std::set<std::size_t>> irrelevant_ideal_generators(const Fan& fan) {
  std::set<std::set<std::size_t>> gens;
  for (const auto& c : fan.max_cones) {
    std::set<std::size_t> g;
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
      if (std::find(c.begin(), c.end(), i) == c.end()) g.insert(i);
    gens.insert(std::move(g));
  }
  return {gens.begin(), gens.end()};
}

// Characters regular on the complement of the allowed-pole divisors:
// {m : <m, v_rho> >= 0 for every ray rho not in allowed_pole_rays}.
// Nonconstant regular functions exist iff this cone is not {0}.
inline RationalCone regular_character_cone(const Fan& fan, const std::set<std::size_t>& allowed_pole_rays) {
  for (std::size_t i : allowed_pole_rays)
    if (i >= fan.rays.size()) throw ArgumentError("ray index out of range");
  std::vector<IntVec> normals;
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    if (!allowed_pole_rays.count(i)) normals.push_back(fan.rays[i]);
  auto dd = conedetail::dd_from_inequalities(normals, fan.dim);
  RationalCone c;
  c.ambient_dim = fan.dim;
  for (const IntVec& r : dd.rays) c.generators.push_back(conedetail::to_rat(r));
  for (const IntVec& l : dd.lineality) {
    c.generators.push_back(conedetail::to_rat(l));
    IntVec neg = l;
    for (Int& v : neg) v = -v;
    c.generators.push_back(conedetail::to_rat(neg));
  }
  return c;
}

// rank of E(X \ allowed divisors) = invertible regular functions mod
// constants: characters pairing to zero against every remaining ray.
inline std::size_t units_lattice_rank(const Fan& fan, const std::set<std::size_t>& allowed_pole_rays) {
  for (std::size_t i : allowed_pole_rays)
    if (i >= fan.rays.size()) throw ArgumentError("ray index out of range");
  std::vector<IntVec> rows;
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    if (!allowed_pole_rays.count(i)) rows.push_back(fan.rays[i]);
  if (rows.empty()) return fan.dim;
  return kernel_basis(IntMat::from_rows(rows)).size();
}

// Table of degrees of the Cox generators of the builtin threefold in the
// basis (H1, H2, H3, E1, E2); column order a0,a1,b0,b1,c0,c1,x,y.
inline IntMat builtin_x_degree_table() {
  auto r = [](std::initializer_list<int> v) {
    IntVec w;
    for (int x : v) w.push_back(Int(x));
    return w;
  };
  return IntMat::from_rows({
      r({1, 1, 0, 0, 0, 0, 0, 0}),
      r({0, 0, 1, 1, 0, 0, 0, 0}),
      r({0, 0, 0, 0, 1, 1, 0, 0}),
      r({0, -1, 0, -1, 0, 0, 1, 0}),
      r({0, -1, 0, 0, 0, -1, 0, 1}),
  });
}

}  // namespace toricint
