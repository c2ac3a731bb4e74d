// Rational polyhedral cones: double description, duals, lineality,
// triangulation, exact polytope volumes and the alpha constant.
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "toricint/intmat.hpp"
#include "toricint/numeric.hpp"

namespace toricint {

struct RationalCone {
  std::size_t ambient_dim = 0;
  std::vector<RatVec> generators;  // each nonzero; may be empty (the cone {0})
};

struct DegenerateVolume {
  Rat volume;
  bool degenerate = false;
};

namespace conedetail {

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int idot(const IntVec& a, const IntVec& b) {
  Int s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

// Scale a rational vector to a primitive integer vector (gcd 1), keeping
// direction.
inline IntVec primitive(const RatVec& v) {
  Int l(1);
  for (const Rat& q : v) l = boost::multiprecision::lcm(l, rat_den(q));
  IntVec w(v.size());
  Int g(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = rat_num(v[i]) * (l / rat_den(v[i]));
    g = boost::multiprecision::gcd(g, w[i]);
  }
  if (g > 1)
    for (Int& x : w) x /= g;
  return w;
}

inline IntVec primitive_int(IntVec w) {
  Int g(0);
  for (const Int& x : w) g = boost::multiprecision::gcd(g, x);
  if (g > 1)
    for (Int& x : w) x /= g;
  return w;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

inline std::vector<IntVec> integer_generators(const RationalCone& c) {
  std::vector<IntVec> gens;
  for (const RatVec& g : c.generators) {
    if (g.size() != c.ambient_dim) throw ArgumentError("generator dimension mismatch");
    IntVec w = primitive(g);
    if (is_zero(w)) throw ArgumentError("zero cone generator");
    gens.push_back(std::move(w));
  }
  return gens;
}

// Extreme rays and lineality of {x : a.x >= 0 for all a}, by the incremental
// double description method with the combinatorial adjacency test.
struct DDResult {
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;
};

inline DDResult dd_from_inequalities(const std::vector<IntVec>& normals, std::size_t dim) {
  struct Ray {
    IntVec v;
    std::vector<bool> tight;  // per processed constraint
  };
  std::vector<IntVec> lin;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVec e(dim, Int(0));
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<Ray> rays;
  std::size_t processed = 0;
  for (const IntVec& a : normals) {
    if (is_zero(a)) continue;
    // Lineality absorbing the constraint: one line leaves the lineality
    // space and becomes a ray; everything else is combined into a-perp.
    std::size_t hit = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (idot(a, lin[i]) != 0) {
        hit = i;
        break;
      }
    if (hit < lin.size()) {
      IntVec lp = lin[hit];
      Int s = idot(a, lp);
      if (s < 0)
        for (Int& x : lp) x = -x;
      s = abs(s);
      std::vector<IntVec> nl;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == hit) continue;
        Int t = idot(a, lin[i]);
        IntVec w(dim);
        for (std::size_t k = 0; k < dim; ++k) w[k] = s * lin[i][k] - t * lp[k];
        nl.push_back(primitive_int(w));
      }
      lin = std::move(nl);
      for (Ray& r : rays) {
        Int t = idot(a, r.v);
        if (t != 0) {
          IntVec w(dim);
          for (std::size_t k = 0; k < dim; ++k) w[k] = s * r.v[k] - t * lp[k];
          r.v = primitive_int(w);
        }
        r.tight.push_back(true);
      }
      Ray nr;
      nr.v = primitive_int(lp);
      nr.tight.assign(processed, true);
      nr.tight.push_back(false);
      rays.push_back(std::move(nr));
      ++processed;
      continue;
    }
    // Pointed-part split.
    std::vector<std::size_t> pos, neg;
    std::vector<Int> val(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = idot(a, rays[i].v);
      if (val[i] > 0) pos.push_back(i);
      if (val[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i) rays[i].tight.push_back(val[i] == 0);
      ++processed;
      continue;
    }
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (val[i] >= 0) {
        Ray r = rays[i];
        r.tight.push_back(val[i] == 0);
        next.push_back(std::move(r));
      }
    for (std::size_t p : pos)
      for (std::size_t m : neg) {
        // Adjacency: no third ray is tight on everything p and m share.
        bool adjacent = true;
        for (std::size_t q = 0; q < rays.size() && adjacent; ++q) {
          if (q == p || q == m) continue;
          bool covers = true;
          for (std::size_t c = 0; c < processed && covers; ++c)
            if (rays[p].tight[c] && rays[m].tight[c] && !rays[q].tight[c]) covers = false;
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec w(dim);
        for (std::size_t k = 0; k < dim; ++k)
          w[k] = val[p] * rays[m].v[k] - val[m] * rays[p].v[k];
        Ray nr;
        nr.v = primitive_int(w);
        nr.tight.resize(processed + 1);
        for (std::size_t c = 0; c < processed; ++c)
          nr.tight[c] = rays[p].tight[c] && rays[m].tight[c];
        nr.tight[processed] = true;
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
    ++processed;
  }
  DDResult out;
  for (Ray& r : rays)
    if (!is_zero(r.v)) out.rays.push_back(std::move(r.v));
  out.lineality = std::move(lin);
  return out;
}

inline Rat det_rational(std::vector<RatVec> m) {
  const std::size_t n = m.size();
  Rat det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rat f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

inline std::size_t rational_rank(const std::vector<RatVec>& vecs) {
  if (vecs.empty()) return 0;
  std::vector<RatVec> m = vecs;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Triangulation of cone(rays[idx]) into simplicial subcones, returned as
// index sets. Pulls at the first listed ray of each face, recursively.
inline void triangulate_rec(const std::vector<IntVec>& rays, const std::vector<std::size_t>& idx,
                            std::vector<std::vector<std::size_t>>& out) {
  std::vector<RatVec> sub;
  for (std::size_t i : idx) sub.push_back(to_rat(rays[i]));
  const std::size_t d = rational_rank(sub);
  if (idx.size() == d) {
    out.push_back(idx);
    return;
  }
  // Coordinates in a basis of the span, so the face is full-dimensional there.
  std::vector<std::size_t> basis;
  {
    std::vector<RatVec> acc;
    for (std::size_t i : idx) {
      acc.push_back(to_rat(rays[i]));
      if (rational_rank(acc) == acc.size())
        basis.push_back(i);
      else
        acc.pop_back();
      if (basis.size() == d) break;
    }
  }
  IntMat bmat(rays[idx[0]].size(), d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < bmat.rows(); ++i) bmat(i, j) = rays[basis[j]][i];
  // Rational solve per ray: bmat * c = ray. Scale to integer coordinates.
  std::vector<IntVec> coords;
  for (std::size_t i : idx) {
    // Solve over Q by elimination on the stacked system.
    std::vector<RatVec> sys;
    for (std::size_t r = 0; r < bmat.rows(); ++r) {
      RatVec row(d + 1);
      for (std::size_t c = 0; c < d; ++c) row[c] = Rat(bmat(r, c));
      row[d] = Rat(rays[i][r]);
      sys.push_back(std::move(row));
    }
    // Gauss-Jordan.
    std::size_t rr = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t c = 0; c < d && rr < sys.size(); ++c) {
      std::size_t piv = rr;
      while (piv < sys.size() && sys[piv][c] == 0) ++piv;
      if (piv == sys.size()) continue;
      std::swap(sys[piv], sys[rr]);
      Rat p = sys[rr][c];
      for (Rat& x : sys[rr]) x /= p;
      for (std::size_t r2 = 0; r2 < sys.size(); ++r2) {
        if (r2 == rr || sys[r2][c] == 0) continue;
        Rat f = sys[r2][c];
        for (std::size_t k = c; k <= d; ++k) sys[r2][k] -= f * sys[rr][k];
      }
      pivcol.push_back(c);
      ++rr;
    }
    RatVec sol(d, Rat(0));
    for (std::size_t r2 = 0; r2 < pivcol.size(); ++r2) sol[pivcol[r2]] = sys[r2][d];
    coords.push_back(primitive(sol));
  }
  DDResult facets = dd_from_inequalities(coords, d);
  const IntVec& apex = coords[0];
  for (const IntVec& f : facets.rays) {
    Int av = idot(f, apex);
    if (av <= 0) continue;  // apex on (or beyond) this facet: skip
    std::vector<std::size_t> face;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idot(f, coords[i]) == 0) face.push_back(idx[i]);
    std::vector<std::vector<std::size_t>> pieces;
    triangulate_rec(rays, face, pieces);
    for (auto& piece : pieces) {
      piece.push_back(idx[0]);
      out.push_back(std::move(piece));
    }
  }
}

}  // namespace conedetail

// {t : <x,t> >= 0 for all x in C}; involutive on closed cones. Lineality of
// the dual (present when C does not span) is returned as +/- generator pairs.
inline RationalCone dual_cone(const RationalCone& c) {
  if (c.ambient_dim < 1) throw ArgumentError("ambient dimension must be >= 1");
  if (c.ambient_dim > 8) throw RegimeError("dual_cone supports ambient dimension <= 8");
  auto gens = conedetail::integer_generators(c);
  auto dd = conedetail::dd_from_inequalities(gens, c.ambient_dim);
  RationalCone d;
  d.ambient_dim = c.ambient_dim;
  for (const IntVec& r : dd.rays) d.generators.push_back(conedetail::to_rat(r));
  for (const IntVec& l : dd.lineality) {
    d.generators.push_back(conedetail::to_rat(l));
    IntVec neg = l;
    for (Int& x : neg) x = -x;
    d.generators.push_back(conedetail::to_rat(neg));
  }
  return d;
}

// Exact membership x in cone(C), via the dual description.
inline bool cone_contains(const RationalCone& c, const RatVec& x) {
  RationalCone d = dual_cone(c);
  for (const RatVec& g : d.generators)
    if (conedetail::dot(g, x) < 0) return false;
  return true;
}

inline bool cones_equal(const RationalCone& a, const RationalCone& b) {
  if (a.ambient_dim != b.ambient_dim) return false;
  for (const RatVec& g : a.generators)
    if (!cone_contains(b, g)) return false;
  for (const RatVec& g : b.generators)
    if (!cone_contains(a, g)) return false;
  return true;
}

// Basis of the largest linear subspace inside cone(C): the common kernel of
// the dual generators. Empty exactly when the cone is strictly convex.
inline std::vector<RatVec> lineality_space(const RationalCone& c) {
  RationalCone d = dual_cone(c);
  if (d.generators.empty()) {
    // Dual is {0}: C is the whole space.
    std::vector<RatVec> basis;
    for (std::size_t i = 0; i < c.ambient_dim; ++i) {
      RatVec e(c.ambient_dim, Rat(0));
      e[i] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  IntMat m(d.generators.size(), c.ambient_dim);
  for (std::size_t i = 0; i < d.generators.size(); ++i) {
    IntVec w = conedetail::primitive(d.generators[i]);
    for (std::size_t j = 0; j < c.ambient_dim; ++j) m(i, j) = w[j];
  }
  std::vector<RatVec> basis;
  for (const IntVec& k : kernel_basis(m)) basis.push_back(conedetail::to_rat(k));
  return basis;
}

// Minimal generators (extreme rays) of the closure of cone(C), computed as
// the bidual.
inline std::vector<RatVec> extreme_rays(const RationalCone& c) {
  return dual_cone(dual_cone(c)).generators;
}

// Exact Lebesgue volume of conv(vertices) in its ambient coordinates.
// Vertices that do not affinely span give volume 0 with the degenerate flag.
inline DegenerateVolume polytope_volume(const std::vector<RatVec>& vertices) {
  if (vertices.empty()) throw ArgumentError("empty vertex list");
  const std::size_t n = vertices[0].size();
  for (const RatVec& v : vertices)
    if (v.size() != n) throw ArgumentError("vertex dimension mismatch");
  std::vector<RatVec> diffs;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    RatVec d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = vertices[i][j] - vertices[0][j];
    diffs.push_back(std::move(d));
  }
  if (conedetail::rational_rank(diffs) < n) return {Rat(0), true};

  // Lift to height 1 and triangulate the cone over the lifted points; the
  // slice at height 1 triangulates the polytope.
  std::vector<IntVec> lifted;
  std::vector<std::size_t> back;  // lifted index -> vertex index
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    RatVec w = vertices[i];
    w.push_back(Rat(1));
    IntVec p = conedetail::primitive(w);
    bool dup = false;
    for (std::size_t j = 0; j < lifted.size(); ++j)
      if (lifted[j] == p) dup = true;
    if (dup) continue;
    lifted.push_back(p);
    back.push_back(i);
  }
  std::vector<std::size_t> idx(lifted.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::size_t>> simplices;
  conedetail::triangulate_rec(lifted, idx, simplices);
  Rat vol(0);
  Int nfact(1);
  for (std::size_t k = 2; k <= n; ++k) nfact *= Int(k);
  for (const auto& s : simplices) {
    std::vector<RatVec> m;
    for (std::size_t t = 1; t < s.size(); ++t) {
      const RatVec& a = vertices[back[s[t]]];
      const RatVec& b = vertices[back[s[0]]];
      RatVec d(n);
      for (std::size_t j = 0; j < n; ++j) d[j] = a[j] - b[j];
      m.push_back(std::move(d));
    }
    vol += abs(conedetail::det_rational(m)) / Rat(nfact);
  }
  return {vol, false};
}

// alpha = rank * vol{t in C-dual : <omega, t> <= 1}, exactly; 0 when the
// cone has lineality (characteristic function identically zero).
inline Rat alpha_from_cone(const RationalCone& c, const RatVec& omega, std::size_t rank) {
  if (rank != c.ambient_dim || omega.size() != c.ambient_dim)
    throw ArgumentError("alpha_from_cone: rank must equal the ambient dimension");
  if (!lineality_space(c).empty()) return Rat(0);
  RationalCone dual = dual_cone(c);
  auto rays = conedetail::integer_generators(dual);
  // The dual of a non-full-dimensional cone contains lines; then the level
  // polytope is unbounded for every omega.
  {
    std::vector<RatVec> gens;
    for (const auto& g : c.generators) gens.push_back(g);
    if (conedetail::rational_rank(gens) < c.ambient_dim)
      throw NonInteriorError("class is not big relative to the cone");
  }
  std::vector<Rat> pairing;
  for (const IntVec& r : rays) {
    Rat s(0);
    for (std::size_t i = 0; i < r.size(); ++i) s += omega[i] * Rat(r[i]);
    if (s <= 0) throw NonInteriorError("class is not interior to the cone");
    pairing.push_back(s);
  }
  const std::size_t n = c.ambient_dim;
  if (rays.size() < n) throw InternalError("dual cone of a pointed full-dim cone must be full-dim");
  std::vector<std::size_t> idx(rays.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::size_t>> simplices;
  conedetail::triangulate_rec(rays, idx, simplices);
  Int nfact(1);
  for (std::size_t k = 2; k <= n; ++k) nfact *= Int(k);
  Rat vol(0);
  for (const auto& s : simplices) {
    std::vector<RatVec> m;
    Rat denom(nfact);
    for (std::size_t t : s) {
      m.push_back(conedetail::to_rat(rays[t]));
      denom *= pairing[t];
    }
    vol += abs(conedetail::det_rational(m)) / denom;
  }
  return Rat(rank) * vol;
}

}  // namespace toricint
