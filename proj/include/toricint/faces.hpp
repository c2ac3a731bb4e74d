// Per-face invariants: Pic(U;A) with torsion, the numbers b and b', the
// effective cone, alpha, and the obstruction flag; plus the same machinery
// for combinatorially specified (non-toric) pairs.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toricint/clemens.hpp"
#include "toricint/cones.hpp"
#include "toricint/cox.hpp"
#include "toricint/fan.hpp"
#include "toricint/intmat.hpp"

namespace toricint {

struct FaceReport {
  ArchFace face;
  bool maximal = false;
  std::set<std::size_t> delta_components;  // indices into component names
  std::size_t b = 0;
  std::size_t b_prime = 0;
  std::vector<Int> pic_torsion;
  QuotientLattice pic;
  std::vector<RatVec> eff_generators;  // in the free-part basis of pic
  bool strictly_convex = true;
  bool alpha_defined = false;
  Rat alpha;  // 0 whenever not strictly convex
  std::string alpha_note;
  bool obstructed = false;
  bool witness_based = false;              // true when tested via characters
  std::optional<IntVec> witness;           // character regular on U_A, if any
  IntVec omega_image;                      // in the free-part basis
};

namespace facedetail {

// Coordinate layout of Div(U;A): first the rays of U in fan order, then one
// slot per (place, component in A_v), places in order, components ascending.
struct Layout {
  std::vector<std::size_t> u_rays;  // ray indices of U
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (place, component)
  std::size_t size() const { return u_rays.size() + slots.size(); }
};

inline Layout layout_of(const ToricPair& pair, const ArchFace& face) {
  Layout l;
  std::set<std::size_t> bset(pair.boundary.begin(), pair.boundary.end());
  for (std::size_t i = 0; i < pair.fan.rays.size(); ++i)
    if (!bset.count(i)) l.u_rays.push_back(i);
  for (std::size_t v = 0; v < face.per_place.size(); ++v)
    for (std::size_t comp : face.per_place[v]) {
      if (comp >= pair.boundary.size()) throw ArgumentError("face component out of range");
      l.slots.emplace_back(v, comp);
    }
  return l;
}

inline std::set<std::size_t> delta_components_of(const ToricPair& pair, const ArchFace& face) {
  std::set<std::size_t> delta;
  for (std::size_t c = 0; c < pair.boundary.size(); ++c) {
    bool in_some = false;
    for (const FaceSet& f : face.per_place)
      if (f.count(c)) in_some = true;
    if (!in_some) delta.insert(c);
  }
  return delta;
}

inline std::set<std::size_t> delta_rays_of(const ToricPair& pair, const ArchFace& face) {
  std::set<std::size_t> rays;
  for (std::size_t c : delta_components_of(pair, face)) rays.insert(pair.boundary[c]);
  return rays;
}

inline std::vector<RatVec> dedup_nonzero_columns(const IntMat& proj) {
  std::vector<RatVec> gens;
  for (std::size_t j = 0; j < proj.cols(); ++j) {
    IntVec col = proj.col(j);
    if (conedetail::is_zero(col)) continue;
    RatVec g = conedetail::to_rat(col);
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(std::move(g));
  }
  return gens;
}

}  // namespace facedetail

// Pic(U;A) as the cokernel of the character map
//   m |-> (<m, v_rho> for rays of U; <m, v_alpha> for alpha in A_v, per place).
inline QuotientLattice pic_U_face(const ToricPair& pair, const ArchFace& face) {
  facedetail::Layout l = facedetail::layout_of(pair, face);
  IntMat m(l.size(), pair.fan.dim);
  std::size_t r = 0;
  for (std::size_t ray : l.u_rays) {
    for (std::size_t j = 0; j < pair.fan.dim; ++j) m(r, j) = pair.fan.rays[ray][j];
    ++r;
  }
  for (const auto& [v, comp] : l.slots) {
    (void)v;
    const IntVec& ray = pair.fan.rays[pair.boundary[comp]];
    for (std::size_t j = 0; j < pair.fan.dim; ++j) m(r, j) = ray[j];
    ++r;
  }
  return cokernel(m);
}

// b and b' computed along both routes the theory offers, cross-asserted.
inline std::pair<std::size_t, std::size_t> face_numbers(const ToricPair& pair, const ArchFace& face) {
  std::set<std::size_t> bset(pair.boundary.begin(), pair.boundary.end());
  std::size_t sum_av = 0;
  for (const FaceSet& f : face.per_place) sum_av += f.size();

  std::vector<IntVec> u_rows;
  for (std::size_t i = 0; i < pair.fan.rays.size(); ++i)
    if (!bset.count(i)) u_rows.push_back(pair.fan.rays[i]);
  const long rk_pic_u = static_cast<long>(u_rows.size()) -
                        (u_rows.empty() ? 0 : static_cast<long>(rank_of(IntMat::from_rows(u_rows))));
  const long rk_e_u = static_cast<long>(units_lattice_rank(pair.fan, bset));
  const long b_via_u = rk_pic_u - rk_e_u + static_cast<long>(sum_av);

  const long pic_x = static_cast<long>(pair.fan.rays.size()) - static_cast<long>(pair.fan.dim);
  const long b_via_x = pic_x - static_cast<long>(pair.boundary.size()) + static_cast<long>(sum_av);
  if (b_via_u != b_via_x)
    throw InternalError("the two b computations disagree");
  if (b_via_u < 0) throw InternalError("negative b");

  const std::size_t b_prime = pic_U_face(pair, face).free_rank;
  const std::size_t rk_e_ua = units_lattice_rank(pair.fan, facedetail::delta_rays_of(pair, face));
  if (b_prime != static_cast<std::size_t>(b_via_u) + rk_e_ua)
    throw InternalError("b' != b + rk E(U_A)");
  return {static_cast<std::size_t>(b_via_u), b_prime};
}

// Generators of Eff_A: images, under the free-part projection, of every
// torus-invariant divisor of U and of each basis vector of the A_v parts.
inline RationalCone effective_cone_face(const ToricPair& pair, const ArchFace& face) {
  QuotientLattice q = pic_U_face(pair, face);
  if (q.free_rank == 0) throw RegimeError("effective cone of a rank-zero lattice");
  RationalCone c;
  c.ambient_dim = q.free_rank;
  c.generators = facedetail::dedup_nonzero_columns(q.projection);
  return c;
}

// Full per-face report. omega_class is expressed in the grading's basis of
// Pic(X); the default is the log anticanonical class of the pair.
inline FaceReport face_report(const ToricPair& pair, const CoxGrading& grading,
                              const ArchFace& face, const IntVec& omega_class) {
  FaceReport rep;
  rep.face = face;
  rep.delta_components = facedetail::delta_components_of(pair, face);
  rep.witness_based = true;

  auto [b, b_prime] = face_numbers(pair, face);
  rep.b = b;
  rep.b_prime = b_prime;
  rep.pic = pic_U_face(pair, face);
  rep.pic_torsion = rep.pic.torsion;

  // Obstruction: a character whose poles lie on Delta_A alone.
  RationalCone chars = regular_character_cone(pair.fan, facedetail::delta_rays_of(pair, face));
  rep.obstructed = !chars.generators.empty();
  if (rep.obstructed) rep.witness = conedetail::primitive(chars.generators.front());

  // Lift omega: solve degree_matrix * d = omega_class, then place the ray
  // coefficients into the Div(U;A) coordinates.
  facedetail::Layout l = facedetail::layout_of(pair, face);
  IntVec d;
  if (!solve_integer(grading.degree_matrix, omega_class, d))
    throw ArgumentError("omega class is not an integral divisor class");
  IntVec lift(l.size(), Int(0));
  for (std::size_t i = 0; i < l.u_rays.size(); ++i) lift[i] = d[l.u_rays[i]];
  for (std::size_t s = 0; s < l.slots.size(); ++s)
    lift[l.u_rays.size() + s] = d[pair.boundary[l.slots[s].second]];
  rep.omega_image = rep.pic.projection.apply(lift);

  if (rep.pic.free_rank == 0) {
    rep.strictly_convex = true;
    rep.alpha_defined = false;
    rep.alpha_note = "rank-zero divisor class lattice";
    return rep;
  }

  RationalCone eff;
  eff.ambient_dim = rep.pic.free_rank;
  eff.generators = facedetail::dedup_nonzero_columns(rep.pic.projection);
  rep.eff_generators = eff.generators;
  rep.strictly_convex = lineality_space(eff).empty();
  if (!rep.strictly_convex) {
    rep.alpha = Rat(0);
    rep.alpha_defined = true;
    if (!rep.obstructed) throw InternalError("non-convex effective cone without witness character");
    return rep;
  }
  try {
    RatVec omega = conedetail::to_rat(rep.omega_image);
    rep.alpha = alpha_from_cone(eff, omega, rep.pic.free_rank);
    rep.alpha_defined = true;
  } catch (const NonInteriorError& e) {
    rep.alpha_defined = false;
    rep.alpha_note = e.what();
  }
  return rep;
}

inline FaceReport face_report(const ToricPair& pair, const ArchFace& face) {
  CoxGrading g = picard_grading(pair.fan);
  std::set<std::size_t> bset(pair.boundary.begin(), pair.boundary.end());
  return face_report(pair, g, face, log_anticanonical_class(g, bset));
}

struct ContributingFaces {
  std::size_t b_max = 0;
  std::vector<ArchFace> faces;
};

// Maximal faces without an obstruction, restricted to those attaining the
// maximal b. Empty input set of unobstructed faces means the integral
// points are not Zariski dense and no asymptotic formula applies.
inline ContributingFaces contributing_faces(const std::vector<FaceReport>& reports) {
  ContributingFaces out;
  bool any = false;
  for (const FaceReport& r : reports) {
    if (!r.maximal || r.obstructed) continue;
    if (!any || r.b > out.b_max) out.b_max = r.b;
    any = true;
  }
  if (!any) throw NoContributingFaceError("every maximal face is obstructed");
  for (const FaceReport& r : reports)
    if (r.maximal && !r.obstructed && r.b == out.b_max) out.faces.push_back(r.face);
  return out;
}

// Whole-pair orchestration over a list of archimedean places.
struct PairAnalysis {
  std::vector<Place> places;
  std::vector<ClemensComplex> complexes;
  std::vector<FaceReport> maximal_reports;
  ContributingFaces contributing;  // faces empty when all obstructed
  bool has_contributing = false;
};

inline PairAnalysis analyze_pair(const ToricPair& pair, const std::vector<Place>& places,
                                 const std::vector<std::vector<FaceSet>>& masks = {}) {
  PairAnalysis a;
  a.places = places;
  ClemensComplex geom = geometric_clemens(pair);
  for (std::size_t v = 0; v < places.size(); ++v) {
    const std::vector<FaceSet>& mask = v < masks.size() ? masks[v] : std::vector<FaceSet>{};
    a.complexes.push_back(analytic_clemens(geom, places[v], mask));
  }
  CoxGrading g = picard_grading(pair.fan);
  std::set<std::size_t> bset(pair.boundary.begin(), pair.boundary.end());
  IntVec omega = log_anticanonical_class(g, bset);
  std::map<std::vector<FaceSet>, FaceReport> cache;
  for (const ArchFace& f : archimedean_faces(places, a.complexes, /*maximal_only=*/true)) {
    auto it = cache.find(f.per_place);
    if (it == cache.end()) {
      FaceReport rep = face_report(pair, g, f, omega);
      rep.maximal = true;
      it = cache.emplace(f.per_place, std::move(rep)).first;
    }
    a.maximal_reports.push_back(it->second);
  }
  try {
    a.contributing = contributing_faces(a.maximal_reports);
    a.has_contributing = true;
  } catch (const NoContributingFaceError&) {
    a.has_contributing = false;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Combinatorially specified pairs (non-toric inputs). Pic(X) is free of the
// given rank, components come with their classes, and the complexes are
// user-declared. Pic(U;A) is the cokernel of the map with one column per
// boundary component beta: ([D_beta]; -delta_{beta in A_v} e_beta).
// The obstruction flag here is criterion-based (the three sufficient
// conditions), not witness-based.
// ---------------------------------------------------------------------------

struct CombinatorialComponent {
  std::string name;
  IntVec cls;  // class in Z^pic_rank
};

struct CombinatorialPair {
  std::size_t pic_rank = 0;
  std::vector<CombinatorialComponent> components;
  std::vector<FaceSet> geometric_faces;    // downward closure enforced on use
  std::vector<IntVec> u_effective_classes; // classes of effective divisors on U
};

inline ClemensComplex pair_geometric_clemens(const CombinatorialPair& p) {
  ClemensComplex c;
  for (const auto& comp : p.components) c.boundary_components.push_back(comp.name);
  std::set<FaceSet> closure;
  closure.insert(FaceSet{});
  for (const FaceSet& f : p.geometric_faces) {
    // all subsets
    std::vector<std::size_t> elems(f.begin(), f.end());
    for (std::size_t mask = 0; mask < (std::size_t(1) << elems.size()); ++mask) {
      FaceSet s;
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (mask & (std::size_t(1) << i)) s.insert(elems[i]);
      closure.insert(std::move(s));
    }
  }
  c.faces.assign(closure.begin(), closure.end());
  clemensdetail::finalize(c);
  return c;
}

inline IntMat pair_relation_matrix(const CombinatorialPair& p, const ArchFace& face) {
  std::size_t slots = 0;
  for (const FaceSet& f : face.per_place) slots += f.size();
  IntMat m(p.pic_rank + slots, p.components.size());
  for (std::size_t beta = 0; beta < p.components.size(); ++beta) {
    if (p.components[beta].cls.size() != p.pic_rank)
      throw ArgumentError("component class has wrong length");
    for (std::size_t i = 0; i < p.pic_rank; ++i) m(i, beta) = p.components[beta].cls[i];
    std::size_t s = 0;
    for (const FaceSet& f : face.per_place)
      for (std::size_t comp : f) {
        if (comp == beta) m(p.pic_rank + s, beta) = -1;
        ++s;
      }
  }
  return m;
}

inline QuotientLattice pair_pic_face(const CombinatorialPair& p, const ArchFace& face) {
  return cokernel(pair_relation_matrix(p, face));
}

inline FaceReport pair_face_report(const CombinatorialPair& p, const ArchFace& face,
                                   const IntVec& omega_class) {
  FaceReport rep;
  rep.face = face;
  rep.witness_based = false;
  std::size_t sum_av = 0;
  for (const FaceSet& f : face.per_place) sum_av += f.size();
  for (std::size_t c = 0; c < p.components.size(); ++c) {
    bool in_some = false;
    for (const FaceSet& f : face.per_place)
      if (f.count(c)) in_some = true;
    if (!in_some) rep.delta_components.insert(c);
  }

  std::vector<IntVec> cls_rows;
  for (const auto& comp : p.components) cls_rows.push_back(comp.cls);
  IntMat cls = IntMat::from_rows(cls_rows).transposed();  // pic_rank x #comps
  const long rk_cls = static_cast<long>(rank_of(cls));
  const long rk_pic_u = static_cast<long>(p.pic_rank) - rk_cls;
  const long rk_e_u = static_cast<long>(p.components.size()) - rk_cls;
  const long b_signed = rk_pic_u - rk_e_u + static_cast<long>(sum_av);
  if (b_signed != static_cast<long>(p.pic_rank) - static_cast<long>(p.components.size()) +
                      static_cast<long>(sum_av))
    throw InternalError("the two b computations disagree");
  if (b_signed < 0) throw InternalError("negative b");
  rep.b = static_cast<std::size_t>(b_signed);

  rep.pic = pair_pic_face(p, face);
  rep.pic_torsion = rep.pic.torsion;
  rep.b_prime = rep.pic.free_rank;
  {
    // Cross-check b' - b = rk E(U_A) via the Delta columns.
    std::vector<IntVec> delta_rows;
    for (std::size_t c : rep.delta_components) delta_rows.push_back(p.components[c].cls);
    const std::size_t rk_delta =
        delta_rows.empty() ? 0 : rank_of(IntMat::from_rows(delta_rows).transposed());
    const std::size_t rk_e_ua = rep.delta_components.size() - rk_delta;
    if (rep.b_prime != rep.b + rk_e_ua) throw InternalError("b' != b + rk E(U_A)");
  }

  // Effective generators: declared effective classes of U, plus the face
  // basis vectors.
  const std::size_t ambient = p.pic_rank + sum_av;
  std::vector<IntVec> lifts;
  for (const IntVec& c : p.u_effective_classes) {
    if (c.size() != p.pic_rank) throw ArgumentError("effective class has wrong length");
    IntVec lift(ambient, Int(0));
    for (std::size_t i = 0; i < p.pic_rank; ++i) lift[i] = c[i];
    lifts.push_back(std::move(lift));
  }
  for (std::size_t s = 0; s < sum_av; ++s) {
    IntVec lift(ambient, Int(0));
    lift[p.pic_rank + s] = 1;
    lifts.push_back(std::move(lift));
  }
  std::vector<RatVec> gens;
  for (const IntVec& lift : lifts) {
    IntVec img = rep.pic.projection.apply(lift);
    if (conedetail::is_zero(img)) continue;
    RatVec g = conedetail::to_rat(img);
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(std::move(g));
  }
  rep.eff_generators = gens;

  {
    IntVec lift(ambient, Int(0));
    if (omega_class.size() != p.pic_rank) throw ArgumentError("omega class has wrong length");
    for (std::size_t i = 0; i < p.pic_rank; ++i) lift[i] = omega_class[i];
    rep.omega_image = rep.pic.projection.apply(lift);
  }

  if (rep.pic.free_rank == 0) {
    rep.strictly_convex = true;
    rep.alpha_defined = false;
    rep.alpha_note = "rank-zero divisor class lattice";
  } else if (gens.empty()) {
    rep.strictly_convex = true;
    rep.alpha_defined = false;
    rep.alpha_note = "no effective generators declared";
  } else {
    RationalCone eff;
    eff.ambient_dim = rep.pic.free_rank;
    eff.generators = gens;
    rep.strictly_convex = lineality_space(eff).empty();
    if (!rep.strictly_convex) {
      rep.alpha = Rat(0);
      rep.alpha_defined = true;
    } else if (!rep.pic_torsion.empty()) {
      rep.alpha_defined = false;
      rep.alpha_note = "divisor class lattice has torsion";
    } else {
      try {
        rep.alpha = alpha_from_cone(eff, conedetail::to_rat(rep.omega_image), rep.pic.free_rank);
        rep.alpha_defined = true;
      } catch (const NonInteriorError& e) {
        rep.alpha_defined = false;
        rep.alpha_note = e.what();
      }
    }
  }

  rep.obstructed = !rep.strictly_convex || rep.b != rep.b_prime || !rep.pic_torsion.empty();
  return rep;
}

}  // namespace toricint
