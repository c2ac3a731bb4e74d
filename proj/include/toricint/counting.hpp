// Enumeration and sieve counting of integral points in torsor coordinates
// (a1, b0, b1, c0, c1), point emission, and asymptotic fitting.
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "toricint/numeric.hpp"

namespace toricint {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Largest bound for which 64-bit height arithmetic cannot overflow.
constexpr u64 kMaxFastBound = (u64(1) << 62) / 16;
constexpr u64 kSieveMaxBound = 1000000;
constexpr u64 kEmitMaxBound = 1000000;

namespace countdetail {

inline u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline u128 gcd_u128(u128 a, u128 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline u64 uabs64(std::int64_t v) {
  return v < 0 ? u64(0) - static_cast<u64>(v) : static_cast<u64>(v);
}

}  // namespace countdetail

// |a1| * max(b0,b1)^2 * max(c0,c1)^2, overflow-checked.
inline u64 height(std::int64_t a1, std::int64_t b0, std::int64_t b1, std::int64_t c0,
                  std::int64_t c1) {
  if (!a1 || !b0 || !b1 || !c0 || !c1) throw ArgumentError("height requires nonzero coordinates");
  const u64 a = countdetail::uabs64(a1);
  const u64 mb = std::max(countdetail::uabs64(b0), countdetail::uabs64(b1));
  const u64 mc = std::max(countdetail::uabs64(c0), countdetail::uabs64(c1));
  const u128 cap = static_cast<u128>(~u64(0));
  u128 h = static_cast<u128>(mb) * mb;
  const u128 mc2 = static_cast<u128>(mc) * mc;
  if (h > cap || mc2 > cap) throw WidthError("height exceeds 64 bits");
  h *= mc2;  // both factors <= 2^64 - 1, so the product fits in 128 bits
  if (h > cap) throw WidthError("height exceeds 64 bits");
  h *= a;
  if (h > cap) throw WidthError("height exceeds 64 bits");
  return static_cast<u64>(h);
}

inline Int height_big(const Int& a1, const Int& b0, const Int& b1, const Int& c0, const Int& c1) {
  if (a1 == 0 || b0 == 0 || b1 == 0 || c0 == 0 || c1 == 0)
    throw ArgumentError("height requires nonzero coordinates");
  const Int mb = std::max(abs(b0), abs(b1));
  const Int mc = std::max(abs(c0), abs(c1));
  return abs(a1) * mb * mb * mc * mc;
}

// gcd(a1 b0 c0, a1 b0 c1, a1 b1 c0, b1 c1) == 1, computed on the four
// products with 128-bit intermediates.
inline bool gcd_condition(std::int64_t a1, std::int64_t b0, std::int64_t b1, std::int64_t c0,
                          std::int64_t c1) {
  if (!a1 || !b0 || !b1 || !c0 || !c1)
    throw ArgumentError("gcd_condition requires nonzero coordinates");
  const u128 a = countdetail::uabs64(a1);
  const u128 B0 = countdetail::uabs64(b0), B1 = countdetail::uabs64(b1);
  const u128 C0 = countdetail::uabs64(c0), C1 = countdetail::uabs64(c1);
  const u128 p1 = a * B0 * C0;
  const u128 p2 = a * B0 * C1;
  const u128 p3 = a * B1 * C0;
  const u128 p4 = B1 * C1;
  using countdetail::gcd_u128;
  return gcd_u128(gcd_u128(p1, p2), gcd_u128(p3, p4)) == 1;
}

struct PointRecord {
  std::int64_t a1, b0, b1, c0, c1;
  u64 height_value;
  bool valid() const {
    return gcd_condition(a1, b0, b1, c0, c1) && height(a1, b0, b1, c0, c1) == height_value;
  }
};

enum class CountMethod { enumerate, enumerate_safe, sieve };

struct CountQuery {
  u64 bound = 1;
  CountMethod method = CountMethod::enumerate;
  unsigned workers = 1;
};

struct CountResult {
  u64 bound = 0;
  Int n_points;     // N(B)
  Int raw_tuples;   // 4 N(B)
  double elapsed_seconds = 0;
  CountMethod method = CountMethod::enumerate;
};

namespace countdetail {

// Shared loop skeleton over positive quadruples (b0, b1, c0, c1) with
// max(b0,b1)^2 max(c0,c1)^2 <= B, in c1 -> b1 -> c0 -> b0 order.
// The callback receives (b0, b1, c0, c1, maxA = B / (mb^2 mc^2)).
template <typename CB>
void positive_quadruples_for_c1(u64 B, u64 c1, const CB& cb) {
  const u64 s = isqrt64(B);
  for (u64 b1 = 1; b1 * c1 <= s; ++b1) {
    const u64 c0max = s / b1;
    for (u64 c0 = 1; c0 <= c0max; ++c0) {
      const u64 mc = std::max(c0, c1);
      const u64 b0max = s / mc;
      for (u64 b0 = 1; b0 <= b0max; ++b0) {
        const u64 mb = std::max(b0, b1);
        const u64 prod = mb * mc;
        cb(b0, b1, c0, c1, B / (prod * prod));
      }
    }
  }
}

// Count integers in [1, n] coprime to all primes in ps, by Moebius over
// squarefree subsets (each subset product built once along the recursion).
inline void coprime_count_rec(u64 n, const std::vector<u64>& ps, std::size_t i, u64 d, int sign,
                              std::int64_t& total) {
  total += sign * static_cast<std::int64_t>(n / d);
  for (; i < ps.size(); ++i) {
    if (d > n / ps[i]) continue;  // d * p > n contributes nothing
    coprime_count_rec(n, ps, i + 1, d * ps[i], -sign, total);
  }
}

inline u64 coprime_count(u64 n, const std::vector<u64>& ps) {
  std::int64_t total = 0;
  coprime_count_rec(n, ps, 0, 1, 1, total);
  return static_cast<u64>(total);
}

inline void distinct_primes(u64 n, const std::vector<std::uint32_t>& spf, std::vector<u64>& out) {
  if (n < spf.size()) {
    while (n > 1) {
      const u64 p = spf[n];
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
    return;
  }
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
}

}  // namespace countdetail

// Positive-orthant tuple count by direct enumeration. The a1 range is
// resolved by Moebius range counting against the distinct primes of b1 c1
// (the coprimality gcd(a1, b1 c1) = 1 factors out of the loop).
inline u64 count_positive_fast(u64 B, unsigned workers = 1) {
  if (B == 0) return 0;
  if (B > kMaxFastBound) throw WidthError("bound exceeds the 64-bit regime");
  const u64 s = isqrt64(B);
  const std::vector<std::uint32_t> spf =
      spf_table(static_cast<std::uint32_t>(std::min<u64>(s, 20000000)));
  std::atomic<u64> next_c1{1};
  std::atomic<u64> total{0};
  auto work = [&]() {
    u64 local = 0;
    std::vector<u64> ps, merged;
    for (;;) {
      const u64 c1 = next_c1.fetch_add(1);
      if (c1 > s) break;
      for (u64 b1 = 1; b1 * c1 <= s; ++b1) {
        ps.clear();
        countdetail::distinct_primes(b1 * c1, spf, ps);
        const u64 c0max = s / b1;
        for (u64 c0 = 1; c0 <= c0max; ++c0) {
          if (countdetail::gcd_u64(c0, c1) != 1) continue;
          const u64 mc = std::max(c0, c1);
          const u64 b0max = s / mc;
          for (u64 b0 = 1; b0 <= b0max; ++b0) {
            if (countdetail::gcd_u64(b0, b1) != 1) continue;
            const u64 mb = std::max(b0, b1);
            const u64 prod = mb * mc;
            local += countdetail::coprime_count(B / (prod * prod), ps);
          }
        }
      }
    }
    total.fetch_add(local);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return total.load();
}

// Reference path: iterate a1 and test the full four-product gcd per tuple.
inline u64 count_positive_safe(u64 B, unsigned workers = 1) {
  if (B == 0) return 0;
  if (B > kMaxFastBound) throw WidthError("bound exceeds the 64-bit regime");
  const u64 s = isqrt64(B);
  std::atomic<u64> next_c1{1};
  std::atomic<u64> total{0};
  auto work = [&]() {
    u64 local = 0;
    for (;;) {
      const u64 c1 = next_c1.fetch_add(1);
      if (c1 > s) break;
      countdetail::positive_quadruples_for_c1(B, c1, [&](u64 b0, u64 b1, u64 c0, u64, u64 maxA) {
        for (u64 a = 1; a <= maxA; ++a) {
          const u128 p1 = static_cast<u128>(a) * b0 * c0;
          const u128 p2 = static_cast<u128>(a) * b0 * c1;
          const u128 p3 = static_cast<u128>(a) * b1 * c0;
          const u128 p4 = static_cast<u128>(b1) * c1;
          using countdetail::gcd_u128;
          if (gcd_u128(gcd_u128(p1, p2), gcd_u128(p3, p4)) == 1) ++local;
        }
      });
    }
    total.fetch_add(local);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return total.load();
}

// Arbitrary-width fallback of the safe path, for bounds past the 64-bit
// regime. Same loops on cpp_int.
inline Int count_positive_big(const Int& B) {
  if (B <= 0) return Int(0);
  Int s = sqrt(B);
  while (s * s > B) --s;
  while ((s + 1) * (s + 1) <= B) ++s;
  Int total = 0;
  for (Int c1 = 1; c1 <= s; ++c1)
    for (Int b1 = 1; b1 * c1 <= s; ++b1)
      for (Int c0 = 1; c0 * b1 <= s; ++c0) {
        const Int mc = std::max(c0, c1);
        for (Int b0 = 1; b0 * mc <= s; ++b0) {
          const Int mb = std::max(b0, b1);
          const Int maxA = B / (mb * mb * mc * mc);
          for (Int a = 1; a <= maxA; ++a) {
            const Int g = gcd(gcd(a * b0 * c0, a * b0 * c1), gcd(a * b1 * c0, b1 * c1));
            if (g == 1) ++total;
          }
        }
      }
  return total;
}

// #positive tuples with d_i | coordinate_i and height <= B; no coprimality
// condition. Loop bounds rescale by stepping each coordinate through its
// multiples.
struct DivisorTuple {
  u64 a1 = 1, b0 = 1, b1 = 1, c0 = 1, c1 = 1;
};

inline u64 count_with_divisibility(u64 B, const DivisorTuple& d) {
  if (!d.a1 || !d.b0 || !d.b1 || !d.c0 || !d.c1)
    throw ArgumentError("divisors must be >= 1");
  if (B > kMaxFastBound) throw WidthError("bound exceeds the 64-bit regime");
  const u64 s = isqrt64(B);
  u64 total = 0;
  for (u64 c1 = d.c1; c1 <= s; c1 += d.c1)
    for (u64 b1 = d.b1; b1 * c1 <= s; b1 += d.b1)
      for (u64 c0 = d.c0; c0 * b1 <= s; c0 += d.c0) {
        const u64 mc = std::max(c0, c1);
        for (u64 b0 = d.b0; b0 * mc <= s; b0 += d.b0) {
          const u64 mb = std::max(b0, b1);
          const u64 prod = mb * mc;
          total += (B / (prod * prod)) / d.a1;
        }
      }
  return total;
}

namespace countdetail {

// Divisibility patterns for "p divides all four products", obtained by
// inclusion-exclusion over the atomic events {p|a1,p|b1}, {p|a1,p|c1},
// {p|b0,p|b1}, {p|c0,p|c1}. Coordinates in mask order a1,b0,b1,c0,c1.
struct SievePattern {
  std::array<bool, 5> mask;
  int coeff;
};

inline const std::vector<SievePattern>& sieve_patterns() {
  static const std::vector<SievePattern> table = [] {
    const std::array<std::array<bool, 5>, 4> events = {{
        {true, false, true, false, false},   // p | a1, b1
        {true, false, false, false, true},   // p | a1, c1
        {false, true, true, false, false},   // p | b0, b1
        {false, false, false, true, true},   // p | c0, c1
    }};
    std::vector<SievePattern> merged;
    for (int sub = 1; sub < 16; ++sub) {
      std::array<bool, 5> u{};
      int bits = 0;
      for (int e = 0; e < 4; ++e)
        if (sub & (1 << e)) {
          ++bits;
          for (int k = 0; k < 5; ++k) u[k] = u[k] || events[e][k];
        }
      const int coeff = (bits % 2 == 1) ? 1 : -1;
      bool found = false;
      for (auto& m : merged)
        if (m.mask == u) {
          m.coeff += coeff;
          found = true;
        }
      if (!found) merged.push_back({u, coeff});
    }
    std::vector<SievePattern> out;
    for (const auto& m : merged)
      if (m.coeff != 0) out.push_back(m);
    return out;
  }();
  return table;
}

inline bool divisor_minheight_ok(u64 B, const DivisorTuple& d) {
  const u64 mb = std::max(d.b0, d.b1), mc = std::max(d.c0, d.c1);
  const u128 h = static_cast<u128>(d.a1) * mb * mb * mc * mc;
  return h <= B;
}

inline void sieve_rec(u64 B, const std::vector<u64>& primes, std::size_t from,
                      const DivisorTuple& d, long long coeff, long long& total) {
  total += coeff * static_cast<long long>(count_with_divisibility(B, d));
  for (std::size_t i = from; i < primes.size(); ++i) {
    const u64 p = primes[i];
    // Every pattern multiplies b1 or c1, so p^2 <= B is necessary.
    if (p > isqrt64(B / d.a1)) break;
    for (const SievePattern& pat : sieve_patterns()) {
      DivisorTuple nd = d;
      if (pat.mask[0]) nd.a1 *= p;
      if (pat.mask[1]) nd.b0 *= p;
      if (pat.mask[2]) nd.b1 *= p;
      if (pat.mask[3]) nd.c0 *= p;
      if (pat.mask[4]) nd.c1 *= p;
      if (!divisor_minheight_ok(B, nd)) continue;
      sieve_rec(B, primes, i + 1, nd, -coeff * pat.coeff, total);
    }
  }
}

}  // namespace countdetail

// Positive count by Moebius-style inclusion-exclusion over squarefree
// pattern assignments; no per-tuple gcd at all.
inline u64 count_positive_sieve(u64 B) {
  if (B == 0) return 0;
  if (B > kSieveMaxBound) throw RegimeError("sieve method supports bounds <= 1e6");
  const std::vector<u64> primes = primes_up_to(isqrt64(B));
  long long total = 0;
  countdetail::sieve_rec(B, primes, 0, DivisorTuple{}, 1, total);
  if (total < 0) throw InternalError("sieve produced a negative count");
  return static_cast<u64>(total);
}

inline CountResult count(const CountQuery& q) {
  CountResult r;
  r.bound = q.bound;
  r.method = q.method;
  const auto t0 = std::chrono::steady_clock::now();
  Int positive;
  if (q.bound > kMaxFastBound && q.method != CountMethod::sieve) {
    positive = count_positive_big(Int(q.bound));  // past the 64-bit regime
  } else {
    switch (q.method) {
      case CountMethod::enumerate:
        positive = count_positive_fast(q.bound, q.workers);
        break;
      case CountMethod::enumerate_safe:
        positive = count_positive_safe(q.bound, q.workers);
        break;
      case CountMethod::sieve:
        positive = count_positive_sieve(q.bound);
        break;
    }
  }
  // 2^5 sign choices per positive tuple, 4 torsor tuples per point.
  r.n_points = positive * 8;
  r.raw_tuples = positive * 32;
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// All N(B) integral points, one record per point: pair signs normalized so
// b1 > 0 and c1 > 0, the signs of a1, b0, c0 free. Sorted lexicographically
// by (a1, b0, b1, c0, c1).
inline std::vector<PointRecord> emit_points(u64 B) {
  if (B > kEmitMaxBound) throw RegimeError("point emission supports bounds <= 1e6");
  std::vector<PointRecord> pts;
  if (B == 0) return pts;
  const u64 s = isqrt64(B);
  for (u64 c1 = 1; c1 <= s; ++c1)
    countdetail::positive_quadruples_for_c1(B, c1, [&](u64 b0, u64 b1, u64 c0, u64 c1v,
                                                       u64 maxA) {
      if (countdetail::gcd_u64(b0, b1) != 1 || countdetail::gcd_u64(c0, c1v) != 1) return;
      const u64 q = b1 * c1v;
      const u64 mb = std::max(b0, b1), mc = std::max(c0, c1v);
      const u64 h0 = (mb * mc) * (mb * mc);
      for (u64 a = 1; a <= maxA; ++a) {
        if (countdetail::gcd_u64(a, q) != 1) continue;
        const u64 h = h0 * a;
        for (int sa : {-1, 1})
          for (int sb : {-1, 1})
            for (int sc : {-1, 1})
              pts.push_back({sa * static_cast<std::int64_t>(a),
                             sb * static_cast<std::int64_t>(b0),
                             static_cast<std::int64_t>(b1),
                             sc * static_cast<std::int64_t>(c0),
                             static_cast<std::int64_t>(c1v), h});
      }
    });
  std::sort(pts.begin(), pts.end(), [](const PointRecord& x, const PointRecord& y) {
    return std::tie(x.a1, x.b0, x.b1, x.c0, x.c1) < std::tie(y.a1, y.b0, y.b1, y.c0, y.c1);
  });
  return pts;
}

// Least-squares fit of counts against {B log^2 B, B log B, B}, plus the
// ratio and normalized-remainder diagnostics of the counting theorem.
struct FitReport {
  double coeff_log2 = 0, coeff_log1 = 0, coeff_log0 = 0;
  std::vector<double> ratios;      // N(B) / (c_fin V(B))
  std::vector<double> remainders;  // |N - c_fin V| / (B log B (log log B)^3)
};

inline FitReport fit_leading(const std::vector<double>& bounds, const std::vector<double>& counts,
                             double c_fin, const std::vector<double>& v_values) {
  if (bounds.size() < 4) throw ArgumentError("fit requires at least 4 sample bounds");
  if (counts.size() != bounds.size() || v_values.size() != bounds.size())
    throw ArgumentError("fit inputs must have equal lengths");
  for (std::size_t i = 1; i < bounds.size(); ++i)
    if (bounds[i] <= bounds[i - 1]) throw ArgumentError("fit bounds must be increasing");
  // Normal equations in long double on the 3-dim basis.
  long double ata[3][3] = {};
  long double aty[3] = {};
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const long double lb = std::log(static_cast<long double>(bounds[i]));
    const long double x0 = bounds[i] * lb * lb;
    const long double x1 = bounds[i] * lb;
    const long double x2 = bounds[i];
    const long double row[3] = {x0, x1, x2};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) ata[r][c] += row[r] * row[c];
      aty[r] += row[r] * counts[i];
    }
  }
  // Gaussian elimination with partial pivoting.
  long double m[3][4];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[r][c] = ata[r][c];
    m[r][3] = aty[r];
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(static_cast<double>(m[r][c])) > std::fabs(static_cast<double>(m[piv][c])))
        piv = r;
    if (m[piv][c] == 0.0L) throw ArgumentError("degenerate design matrix");
    std::swap(m[piv], m[c]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const long double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  FitReport rep;
  rep.coeff_log2 = static_cast<double>(m[0][3] / m[0][0]);
  rep.coeff_log1 = static_cast<double>(m[1][3] / m[1][1]);
  rep.coeff_log0 = static_cast<double>(m[2][3] / m[2][2]);
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double v = c_fin * v_values[i];
    rep.ratios.push_back(counts[i] / v);
    const double lb = std::log(bounds[i]);
    const double llb = std::log(lb);
    rep.remainders.push_back(std::fabs(counts[i] - v) / (bounds[i] * lb * llb * llb * llb));
  }
  return rep;
}

}  // namespace toricint
