// Clemens complexes of boundary divisors, analytic variants per place, and
// the product complex over all archimedean places.
#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "toricint/fan.hpp"
#include "toricint/numeric.hpp"

namespace toricint {

struct Place {
  enum class Kind { real, complex };
  Kind kind = Kind::real;
  std::string label = "inf";
};

inline Place real_place(std::string label = "inf") { return Place{Place::Kind::real, std::move(label)}; }
inline Place complex_place(std::string label = "w") { return Place{Place::Kind::complex, std::move(label)}; }

using FaceSet = std::set<std::size_t>;  // indices into boundary_components

// Downward-closed family of boundary-component subsets whose common stratum
// is nonempty; the empty face (dimension -1) is always present.
struct ClemensComplex {
  std::vector<std::string> boundary_components;
  std::vector<FaceSet> faces;
  std::vector<FaceSet> maximal_faces;
};

namespace clemensdetail {

inline bool subset_of(const FaceSet& a, const FaceSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline void finalize(ClemensComplex& c) {
  std::sort(c.faces.begin(), c.faces.end());
  c.faces.erase(std::unique(c.faces.begin(), c.faces.end()), c.faces.end());
  c.maximal_faces.clear();
  for (const FaceSet& f : c.faces) {
    bool maximal = true;
    for (const FaceSet& g : c.faces)
      if (f != g && subset_of(f, g)) {
        maximal = false;
        break;
      }
    if (maximal) c.maximal_faces.push_back(f);
  }
}

}  // namespace clemensdetail

// All subsets of the boundary whose strata are nonempty. For a smooth toric
// fan that is exactly: the rays span a cone of the fan.
inline ClemensComplex geometric_clemens(const ToricPair& pair) {
  ClemensComplex c;
  c.boundary_components = pair.component_names;
  const std::size_t n = pair.boundary.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    FaceSet face;
    std::set<std::size_t> rays;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) {
        face.insert(i);
        rays.insert(pair.boundary[i]);
      }
    if (stratum_nonempty(pair.fan, rays)) c.faces.push_back(face);
  }
  clemensdetail::finalize(c);
  return c;
}

// Per-place analytic complex. For split toric pairs over Q every stratum has
// real points, so the geometric complex is returned unchanged; a mask of
// faces lacking K_v-points can be supplied for externally-known geometry.
// A masked face with an unmasked superface contradicts the subface lemma.
inline ClemensComplex analytic_clemens(const ClemensComplex& geom, const Place&,
                                       const std::vector<FaceSet>& mask = {}) {
  for (const FaceSet& m : mask) {
    if (std::find(geom.faces.begin(), geom.faces.end(), m) == geom.faces.end())
      throw ArgumentError("masked face is not a face of the complex");
    for (const FaceSet& g : geom.faces)
      if (m != g && clemensdetail::subset_of(m, g) &&
          std::find(mask.begin(), mask.end(), g) == mask.end())
        throw ArgumentError("inconsistent incidence: masked face has an unmasked superface");
  }
  ClemensComplex a;
  a.boundary_components = geom.boundary_components;
  for (const FaceSet& f : geom.faces) {
    bool removed = false;
    for (const FaceSet& m : mask)
      if (clemensdetail::subset_of(m, f)) {
        removed = true;
        break;
      }
    if (!removed) a.faces.push_back(f);
  }
  clemensdetail::finalize(a);
  return a;
}

// One face of the product complex over all archimedean places.
struct ArchFace {
  std::vector<Place> places;
  std::vector<FaceSet> per_place;  // parallel to places

  // Dimension of the product face: sum of vertex counts minus one.
  long dimension() const {
    long s = -1;
    for (const FaceSet& f : per_place) s += static_cast<long>(f.size());
    return s;
  }
  bool operator==(const ArchFace& o) const { return per_place == o.per_place; }
  bool operator<(const ArchFace& o) const { return per_place < o.per_place; }
};

// The product (join) complex: all tuples of per-place faces. A tuple is
// maximal exactly when every component face is.
inline std::vector<ArchFace> archimedean_faces(const std::vector<Place>& places,
                                               const std::vector<ClemensComplex>& complexes,
                                               bool maximal_only = false) {
  if (complexes.empty() || places.size() != complexes.size())
    throw ArgumentError("one complex per place required");
  std::vector<ArchFace> out;
  std::vector<ArchFace> partial{ArchFace{places, {}}};
  for (const ClemensComplex& c : complexes) {
    const auto& pool = maximal_only ? c.maximal_faces : c.faces;
    std::vector<ArchFace> next;
    for (const ArchFace& p : partial)
      for (const FaceSet& f : pool) {
        ArchFace q = p;
        q.per_place.push_back(f);
        next.push_back(std::move(q));
      }
    partial = std::move(next);
  }
  out = std::move(partial);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool arch_face_subset(const ArchFace& a, const ArchFace& b) {
  if (a.per_place.size() != b.per_place.size()) return false;
  for (std::size_t v = 0; v < a.per_place.size(); ++v)
    if (!clemensdetail::subset_of(a.per_place[v], b.per_place[v])) return false;
  return true;
}

}  // namespace toricint
