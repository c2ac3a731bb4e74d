// Every constant of the asymptotic formula: p-adic densities (closed form
// and stratified oracle), the Euler product with certified tails, the
// archimedean boundary volume, the counting integral V(B), and assembly.
#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "toricint/faces.hpp"
#include "toricint/numeric.hpp"
#include "toricint/zeta.hpp"

namespace toricint {

// tau_{U,p} = 1 + 2/p - 1/p^2 - 1/p^3, exactly.
inline Rat local_density(std::uint64_t p) {
  if (!is_prime_u64(p)) throw ArgumentError("local_density requires a prime");
  const Rat u = rat_of(Int(1), Int(p));
  return Rat(1) + 2 * u - u * u - u * u * u;
}

// Independent evaluation by summing geometric series over the valuation
// strata of the chart: either |a| = 1, or |a| > 1 and |b|, |c| <= 1.
//   measure(|a|=1) * (int 1/max{1,|b|^2})^2 + sum_k measure(|a|=p^k) p^{-2k}.
inline Rat local_density_oracle(std::uint64_t p) {
  if (!is_prime_u64(p)) throw ArgumentError("local_density_oracle requires a prime");
  const Rat pr = Rat(Int(p));
  const Rat unit_measure = Rat(1) - 1 / pr;  // measure of |a| = 1
  // int_{Q_p} 1/max{1,|b|^2} db = 1 + sum_{k>=1} p^k (1-1/p) p^{-2k}
  //                             = 1 + (1-1/p) * (1/(p-1)) = 1 + 1/p.
  const Rat b_integral = Rat(1) + (Rat(1) - 1 / pr) * (Rat(1) / (pr - 1));
  // sum_{k>=1} measure(|a| = p^k) p^{-2k} = (1-1/p)/(p-1) = 1/p.
  const Rat a_tail = (Rat(1) - 1 / pr) * (Rat(1) / (pr - 1));
  return unit_measure * b_integral * b_integral + a_tail;
}

struct EulerProductResult {
  Real value;            // center of the enclosure
  std::uint64_t cutoff_prime = 0;
  Real tail_bound;       // enclosure radius after exponentiation
  Real partial_log_sum;  // log of the partial product over p <= cutoff
};

// Generic Euler product over primes p <= cutoff. The caller certifies
// |log factor(p)| <= C/p^2; the tail of the log-sum is then bounded by
// the integral of C/t^2 beyond the cutoff.
inline EulerProductResult euler_product(const std::function<Real(std::uint64_t)>& local_factor,
                                        std::uint64_t cutoff, const Real& log_factor_c) {
  if (cutoff < 2) throw ArgumentError("euler_product cutoff must be >= 2");
  EulerProductResult r;
  r.cutoff_prime = cutoff;
  Real logsum = 0;
  for (std::uint64_t p : primes_up_to(cutoff)) logsum += log(local_factor(p));
  r.partial_log_sum = logsum;
  const Real tail_log = log_factor_c / Real(cutoff);
  r.value = exp(logsum);
  r.tail_bound = r.value * (exp(tail_log) - 1);
  return r;
}

namespace eulerdetail {

// log of the builtin factor (1-1/p)^2 (1+2/p-1/p^2-1/p^3) as a series in
// u = 1/p:  -4u^2 + 3u^3 - 7u^4 + 11u^5 + O(u^6), with the O-term at most
// 30 u^6 in absolute value for p >= 11 (checked numerically in the tests;
// the leading coefficient of the remainder is -131/6).
inline Real builtin_log_factor(const Real& u) {
  const Real f = (1 - u) * (1 - u) * (1 + 2 * u - u * u - u * u * u);
  return log(f);
}

struct TailSums {
  Real s2, s3, s4, s5;  // partial sums of p^-k over p <= cutoff
  std::size_t nprimes = 0;
};

}  // namespace eulerdetail

// The Euler product of the main theorem, with a sharp certified tail: the
// partial product is corrected by the series tail evaluated through the
// prime zeta function, leaving only the u^6 remainder and float slop in the
// enclosure radius. Requires cutoff >= 100 so the remainder bound applies.
inline EulerProductResult builtin_euler_product(std::uint64_t cutoff, unsigned workers = 1) {
  if (cutoff < 100) throw ArgumentError("builtin product cutoff must be >= 100");
  const std::vector<std::uint64_t> primes = primes_up_to(cutoff);

  // Fixed block partition: the reduction order is independent of the worker
  // count, so results are bit-identical for any parallel schedule.
  const std::size_t nblocks = 256;
  std::vector<Real> block_log(nblocks, Real(0));
  std::vector<eulerdetail::TailSums> block_sums(nblocks);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      const std::size_t lo = primes.size() * b / nblocks;
      const std::size_t hi = primes.size() * (b + 1) / nblocks;
      Real logsum = 0;
      eulerdetail::TailSums t{0, 0, 0, 0, hi - lo};
      for (std::size_t i = lo; i < hi; ++i) {
        const Real u = Real(1) / Real(primes[i]);
        logsum += eulerdetail::builtin_log_factor(u);
        const Real u2 = u * u;
        t.s2 += u2;
        t.s3 += u2 * u;
        t.s4 += u2 * u2;
        t.s5 += u2 * u2 * u;
      }
      block_log[b] = logsum;
      block_sums[b] = t;
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  Real logsum = 0;
  eulerdetail::TailSums sums{0, 0, 0, 0, 0};
  for (std::size_t b = 0; b < nblocks; ++b) {
    logsum += block_log[b];
    sums.s2 += block_sums[b].s2;
    sums.s3 += block_sums[b].s3;
    sums.s4 += block_sums[b].s4;
    sums.s5 += block_sums[b].s5;
    sums.nprimes += block_sums[b].nprimes;
  }

  // Tail correction: sum_{p>cutoff} log f(1/p)
  //   = -4 T2 + 3 T3 - 7 T4 + 11 T5 + R,  T_k = P(k) - partial_k,
  //   |R| <= 30 * T6 <= 30 * sum_{n>cutoff} n^-6 <= 6 / cutoff^5.
  const Real t2 = prime_zeta(2) - sums.s2;
  const Real t3 = prime_zeta(3) - sums.s3;
  const Real t4 = prime_zeta(4) - sums.s4;
  const Real t5 = prime_zeta(5) - sums.s5;
  const Real tail_est = -4 * t2 + 3 * t3 - 7 * t4 + 11 * t5;

  const Real c5 = pow(Real(cutoff), Real(5));
  Real err_log = Real(6) / c5;                     // series remainder
  err_log += Real(1e-35) * Real(sums.nprimes + 1);  // float slop, generous
  err_log += Real(1e-30);                           // zeta / prime-zeta error

  EulerProductResult r;
  r.cutoff_prime = cutoff;
  r.partial_log_sum = logsum;
  r.value = exp(logsum + tail_est);
  r.tail_bound = r.value * (exp(err_log) - 1);
  return r;
}

struct VolumeResult {
  Real value;
  enum class Method { closed_form, quadrature, monte_carlo } method = Method::closed_form;
  Real error_estimate;
};

// int_{R^2} db dc / (max{1,b^2} max{1,c^2}) = (2 + 2 int_1^inf t^-2 dt)^2 = 16.
inline VolumeResult archimedean_surface_volume() {
  return {Real(16), VolumeResult::Method::closed_form, Real(0)};
}

// The same volume renormalized by c_R = 2 per boundary component of the
// face; this is the number entering the leading constant.
inline Rat archimedean_surface_volume_renormalized() { return Rat(32); }

namespace quaddetail {

// Adaptive Simpson with absolute tolerance splitting.
template <typename F>
Real simpson_rec(const F& f, const Real& a, const Real& b, const Real& fa, const Real& fm,
                 const Real& fb, const Real& whole, const Real& tol, int depth, Real& err_acc) {
  const Real m = (a + b) / 2;
  const Real lm = (a + m) / 2, rm = (m + b) / 2;
  const Real flm = f(lm), frm = f(rm);
  const Real left = (m - a) / 6 * (fa + 4 * flm + fm);
  const Real right = (b - m) / 6 * (fm + 4 * frm + fb);
  const Real delta = left + right - whole;
  if (depth <= 0 || abs(delta) <= 15 * tol) {
    err_acc += abs(delta) / 15;
    return left + right + delta / 15;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1, err_acc) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1, err_acc);
}

template <typename F>
Real adaptive_simpson(const F& f, const Real& a, const Real& b, const Real& tol, Real& err_out) {
  const Real fa = f(a), fb = f(b), fm = f((a + b) / 2);
  const Real whole = (b - a) / 6 * (fa + 4 * fm + fb);
  err_out = 0;
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48, err_out);
}

}  // namespace quaddetail

// Quadrature cross-check of the boundary volume: Simpson on [-T, T] for the
// one-dimensional factor plus the exact 2/T tail, squared.
inline VolumeResult archimedean_surface_volume_quadrature(double tol = 1e-9) {
  const Real T(64);
  auto f = [](const Real& t) {
    Real a = abs(t);
    return a <= 1 ? Real(1) : Real(1) / (a * a);
  };
  Real err1 = 0, err2 = 0;
  // Integrate the smooth pieces separately so Simpson never straddles the kink.
  Real mid = quaddetail::adaptive_simpson(f, Real(-1), Real(1), Real(tol) / 4, err1);
  Real right = quaddetail::adaptive_simpson(f, Real(1), T, Real(tol) / 4, err2);
  Real one_dim = mid + 2 * right + 2 / T;
  Real vol = one_dim * one_dim;
  Real err = (err1 + 2 * err2) * 2 * one_dim;
  return {vol, VolumeResult::Method::quadrature, err};
}

// V(B): the archimedean counting integral
//   (1/4) int_{|a1|,...,|c1|>=1, |a1| max(b0,b1)^2 max(c0,c1)^2 <= B} d(...).
// a1, b0, c0 and b1 are removed by exact antiderivatives; the outermost c1
// integral uses adaptive quadrature.
//
// With S = sqrt(B), K = S/c1, P = 2 c1 - 1, Q = B P / c1^2, the inner
// reductions give
//   F(c1) = 2 Q ln K + Q/K - Q + 2 S ln K + 2 S (K ln K - K + 1) + C0 (K-1),
//   C0 = -2S - 1 + (1 - P) K - 2 S ln K,
// and V(B) = 8 int_1^S F(c1) dc1.
inline VolumeResult v_exact(double B, double rel_tol = 1e-9) {
  if (B < 1) throw ArgumentError("v_exact requires B >= 1");
  if (B == 1) return {Real(0), VolumeResult::Method::quadrature, Real(0)};
  const Real rb(B);
  const Real s = sqrt(rb);
  auto F = [&](const Real& c1) -> Real {
    const Real k = s / c1;
    if (k <= 1) return Real(0);
    const Real p = 2 * c1 - 1;
    const Real q = rb * p / (c1 * c1);
    const Real lnk = log(k);
    const Real c0 = -2 * s - 1 + (1 - p) * k - 2 * s * lnk;
    return 2 * q * lnk + q / k - q + 2 * s * lnk + 2 * s * (k * lnk - k + 1) + c0 * (k - 1);
  };
  Real err = 0;
  const Real scale = rb * log(rb) * log(rb) + 1;
  Real integral = quaddetail::adaptive_simpson(F, Real(1), s, scale * Real(rel_tol) / 8, err);
  return {8 * integral, VolumeResult::Method::quadrature, 8 * err};
}

// Plain Monte Carlo estimate of V(B) over the (b0,b1,c0,c1) box with the a1
// length integrated out; test oracle. Returns the estimate and the standard
// error of the mean scaled to the volume.
struct MonteCarloVolume {
  double value;
  double sigma;
};

inline MonteCarloVolume v_monte_carlo(double B, std::size_t samples, std::uint64_t seed) {
  if (B < 1) throw ArgumentError("v_monte_carlo requires B >= 1");
  const double S = std::sqrt(B);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(1.0, S);
  long double sum = 0, sumsq = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double b0 = uni(rng), b1 = uni(rng), c0 = uni(rng), c1 = uni(rng);
    const double mb = std::max(b0, b1), mc = std::max(c0, c1);
    const double h = mb * mb * mc * mc;
    const double f = h < B ? B / h - 1.0 : 0.0;
    sum += f;
    sumsq += static_cast<long double>(f) * f;
  }
  const long double n = static_cast<long double>(samples);
  const long double mean = sum / n;
  const long double var = sumsq / n - mean * mean;
  const long double box = std::pow(static_cast<long double>(S - 1.0), 4);
  MonteCarloVolume r;
  r.value = static_cast<double>(8.0L * box * mean);
  r.sigma = static_cast<double>(8.0L * box * sqrtl(var / n));
  return r;
}

struct LeadingConstant {
  Rat c_inf;        // alpha * renormalized archimedean volume, exact
  Real c_fin;       // Euler product value
  Real c;           // c_inf * c_fin
  Real enclosure_radius;
  std::size_t log_exponent = 0;  // b - 1
};

// c = alpha_A * tau_A,renormalized * prod_p (1-1/p)^rk Pic(U) tau_{U,p};
// obstructed faces contribute nothing and are refused.
inline LeadingConstant assemble_leading_constant(const FaceReport& report,
                                                 const Rat& renormalized_arch_volume,
                                                 const EulerProductResult& euler) {
  if (report.obstructed)
    throw ArgumentError("obstructed face contributes nothing to the leading constant");
  if (!report.alpha_defined)
    throw ArgumentError("alpha undefined for this face");
  LeadingConstant lc;
  // rho_Q = 1 (r=1, s=0, Reg = h = 1, |mu| = 2, d = 1: 2*1*1/(2*1)), folded in.
  lc.c_inf = report.alpha * renormalized_arch_volume;
  lc.c_fin = euler.value;
  lc.c = rat_to_real(lc.c_inf) * euler.value;
  lc.enclosure_radius = rat_to_real(lc.c_inf) * euler.tail_bound;
  lc.log_exponent = report.b - 1;
  return lc;
}

}  // namespace toricint
