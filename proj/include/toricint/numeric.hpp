// Shared arithmetic types and error taxonomy.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricint {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
// Software float with a 168-bit significand; used wherever a closed form
// does not exist (Euler products, quadrature).
using Real = boost::multiprecision::cpp_bin_float_50;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Exit-code taxonomy of the CLI: 1 = bad arguments, 2 = out of the
// supported regime, 3 = internal consistency assertion failed.
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Height/product would overflow the current integer width; the caller is
// expected to retry on a wider type.
struct WidthError : RegimeError {
  using RegimeError::RegimeError;
};
// The class paired with the cone is not big relative to it, so the level
// polytope is unbounded and alpha is undefined.
struct NonInteriorError : ArgumentError {
  using ArgumentError::ArgumentError;
};
// Every maximal face is obstructed; integral points are not Zariski dense.
struct NoContributingFaceError : RegimeError {
  using RegimeError::RegimeError;
};

inline Rat rat_of(const Int& n, const Int& d) {
  if (d == 0) throw ArgumentError("zero denominator");
  return Rat(n) / Rat(d);
}

inline std::string rat_str(const Rat& q) {
  const Int num = boost::multiprecision::numerator(q);
  const Int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline double rat_to_double(const Rat& q) {
  return static_cast<double>(q);
}

inline Real rat_to_real(const Rat& q) {
  return Real(rat_num(q).str()) / Real(rat_den(q).str());
}

// Exact floor of sqrt for 64-bit values (hardware sqrt then a correction).
inline std::uint64_t isqrt64(std::uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Primes up to and including `limit`, by odd-only Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> ps;
  if (limit < 2) return ps;
  ps.push_back(2);
  const std::uint64_t m = (limit - 1) / 2;  // index i <-> odd number 2i+3
  std::vector<bool> composite(m, false);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 3;
    if (p * p <= limit)
      for (std::uint64_t j = (p * p - 3) / 2; j < m; j += p) composite[j] = true;
  }
  for (std::uint64_t i = 0; i < m; ++i)
    if (!composite[i]) ps.push_back(2 * i + 3);
  return ps;
}

// Smallest-prime-factor table for [0, limit]; spf[1] = 1.
inline std::vector<std::uint32_t> spf_table(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(limit + 1, 0);
  if (limit >= 1) spf[1] = 1;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= limit; j += i)
      if (spf[j] == 0) spf[j] = i;
  }
  return spf;
}

}  // namespace toricint
