// Euler-Maclaurin evaluation of zeta at integer arguments and the prime
// zeta function P(s) = sum over primes of p^-s. Accuracy far below 1e-30,
// which the Euler-product tail bookkeeping relies on.
#pragma once

#include <cstddef>

#include "toricint/numeric.hpp"

namespace toricint {

// zeta(s) for integer s >= 2. Euler-Maclaurin with J leading terms and
// Bernoulli corrections B_2..B_20; the truncation is below 1e-40 for J = 64.
inline Real zeta_int(unsigned s) {
  if (s < 2) throw ArgumentError("zeta_int requires s >= 2");
  static const Rat bern[] = {
      Rat(1, 6),        Rat(-1, 30),      Rat(1, 42),     Rat(-1, 30),   Rat(5, 66),
      Rat(-691, 2730),  Rat(7, 6),        Rat(-3617, 510), Rat(43867, 798), Rat(-174611, 330),
  };
  const unsigned J = 64;
  Real sum = 0;
  for (unsigned j = 1; j <= J; ++j) sum += pow(Real(j), -Real(static_cast<int>(s)));
  const Real rj(J);
  sum += pow(rj, Real(1) - Real(static_cast<int>(s))) / Real(static_cast<int>(s) - 1);
  sum -= pow(rj, -Real(static_cast<int>(s))) / 2;
  // + sum_i B_{2i}/(2i)! * (s)(s+1)...(s+2i-2) * J^{-s-2i+1}
  Real rising(1);
  Real fact(1);
  for (unsigned i = 1; i <= 10; ++i) {
    // (s)_{2i-1} = s (s+1) ... (s+2i-2)
    if (i == 1) {
      rising = Real(static_cast<int>(s));
      fact = 2;  // (2)!
    } else {
      rising *= Real(static_cast<int>(s + 2 * i - 3)) * Real(static_cast<int>(s + 2 * i - 2));
      fact *= Real(static_cast<int>(2 * i - 1)) * Real(static_cast<int>(2 * i));
    }
    sum += rat_to_real(bern[i - 1]) / fact * rising *
           pow(rj, -Real(static_cast<int>(s + 2 * i - 1)));
  }
  return sum;
}

inline int moebius_mu(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

// P(s) = sum_{n>=1} mu(n)/n log zeta(n s); terms fall off like 2^{-ns}.
inline Real prime_zeta(unsigned s) {
  if (s < 2) throw ArgumentError("prime_zeta requires s >= 2");
  Real sum = 0;
  for (unsigned n = 1; n <= 64; ++n) {
    const int mu = moebius_mu(n);
    if (mu == 0) continue;
    sum += Real(mu) / Real(static_cast<int>(n)) * log(zeta_int(n * s));
  }
  return sum;
}

}  // namespace toricint
