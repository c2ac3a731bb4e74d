#include <catch2/catch_amalgamated.hpp>

#include "toricint/constants.hpp"
#include "toricint/zeta.hpp"

using namespace toricint;

TEST_CASE("zeta and prime zeta") {
  // zeta(2) = pi^2/6
  const Real pi = acos(Real(-1));
  REQUIRE(abs(zeta_int(2) - pi * pi / 6) < Real("1e-35"));
  REQUIRE(abs(zeta_int(4) - pow(pi, 4) / 90) < Real("1e-35"));
  // reference value of P(2) (sum of inverse squares of primes)
  REQUIRE(abs(prime_zeta(2) - Real("0.4522474200410654985065433648322479341732313432399")) <
          Real("1e-35"));
}

TEST_CASE("local densities") {
  REQUIRE(local_density(2) == Rat(13, 8));
  REQUIRE(local_density(3) == Rat(41, 27));
  REQUIRE(local_density_oracle(2) == Rat(13, 8));
  REQUIRE(local_density_oracle(5) == Rat(169, 125));
  REQUIRE_THROWS_AS(local_density(4), ArgumentError);
  REQUIRE_THROWS_AS(local_density_oracle(1), ArgumentError);
  SECTION("oracle equals closed form, and the density tends to 1") {
    Rat last;
    for (std::uint64_t p : primes_up_to(200)) {
      REQUIRE(local_density_oracle(p) == local_density(p));
      last = local_density(p);
    }
    REQUIRE(abs(last - 1) < Rat(1, 50));
  }
}

TEST_CASE("generic Euler products") {
  SECTION("constant factor one") {
    auto r = euler_product([](std::uint64_t) { return Real(1); }, 100, Real(0));
    REQUIRE(r.value == 1);
    REQUIRE(r.tail_bound == 0);
  }
  SECTION("factor 1 - p^-2 converges to 1/zeta(2)") {
    // |log(1-u^2)| <= u^2/(1-u^2) <= (4/3) u^2 for p >= 2
    auto r = euler_product([](std::uint64_t p) { return 1 - Real(1) / (Real(p) * Real(p)); },
                           200000, Real(4) / 3);
    const Real target = 1 / zeta_int(2);
    REQUIRE(abs(r.value - target) < r.tail_bound);
  }
  SECTION("cutoff below 2 is rejected") {
    REQUIRE_THROWS_AS(euler_product([](std::uint64_t) { return Real(1); }, 1, Real(0)),
                      ArgumentError);
  }
}

TEST_CASE("builtin Euler product") {
  SECTION("series remainder bound: |log f - q5| <= 30 u^6 for 11 <= p <= 10000") {
    for (std::uint64_t p : primes_up_to(10000)) {
      if (p < 11) continue;
      const Real u = Real(1) / Real(p);
      const Real q5 = -4 * u * u + 3 * u * u * u - 7 * pow(u, 4) + 11 * pow(u, 5);
      const Real r = abs(eulerdetail::builtin_log_factor(u) - q5);
      REQUIRE(r <= 30 * pow(u, 6));
    }
  }
  SECTION("enclosures at increasing cutoffs nest and stay consistent") {
    auto r3 = builtin_euler_product(1000);
    auto r4 = builtin_euler_product(10000);
    auto r5 = builtin_euler_product(100000);
    // centers agree far within the radii
    REQUIRE(abs(r3.value - r5.value) < r3.tail_bound + r5.tail_bound);
    REQUIRE(abs(r4.value - r5.value) < r4.tail_bound + r5.tail_bound);
    // nesting
    REQUIRE(r4.value - r4.tail_bound >= r3.value - r3.tail_bound);
    REQUIRE(r4.value + r4.tail_bound <= r3.value + r3.tail_bound);
    REQUIRE(r5.value - r5.tail_bound >= r4.value - r4.tail_bound);
    REQUIRE(r5.value + r5.tail_bound <= r4.value + r4.tail_bound);
  }
  SECTION("parallel evaluation is deterministic") {
    auto r1 = builtin_euler_product(100000, 1);
    auto r4 = builtin_euler_product(100000, 4);
    REQUIRE(r1.value == r4.value);
    REQUIRE(r1.partial_log_sum == r4.partial_log_sum);
  }
}

TEST_CASE("archimedean volume") {
  REQUIRE(archimedean_surface_volume().value == 16);
  REQUIRE(archimedean_surface_volume_renormalized() == Rat(32));
  auto quad = archimedean_surface_volume_quadrature();
  REQUIRE(abs(quad.value - 16) < Real("1e-6"));
  SECTION("one-dimensional factor is 4") {
    // reuse the quadrature internals: sqrt of the squared value
    REQUIRE(abs(sqrt(quad.value) - 4) < Real("1e-7"));
  }
}

TEST_CASE("the counting integral V(B)") {
  REQUIRE(v_exact(1).value == 0);
  REQUIRE_THROWS_AS(v_exact(0.5), ArgumentError);
  SECTION("agrees with Monte Carlo within three sigma") {
    for (double B : {100.0, 10000.0}) {
      auto exact = v_exact(B);
      auto mc = v_monte_carlo(B, 2000000, 0xC0FFEE);
      REQUIRE(std::abs(static_cast<double>(exact.value) - mc.value) < 3 * mc.sigma);
    }
  }
  SECTION("V(B)/(4 B log^2 B) approaches 1 from below") {
    double prev = 0;
    for (double B : {1e4, 1e6, 1e8}) {
      const double v = static_cast<double>(v_exact(B).value);
      const double ratio = v / (4 * B * std::log(B) * std::log(B));
      REQUIRE(ratio > prev);
      REQUIRE(ratio < 1.0);
      prev = ratio;
    }
    REQUIRE(prev > 0.5);
  }
  SECTION("nondecreasing in B, and V/B nondecreasing") {
    double prev_v = 0, prev_vb = 0;
    for (double B : {10.0, 100.0, 1000.0, 10000.0}) {
      const double v = static_cast<double>(v_exact(B).value);
      REQUIRE(v >= prev_v);
      REQUIRE(v / B >= prev_vb);
      prev_v = v;
      prev_vb = v / B;
    }
  }
}

TEST_CASE("assembling the leading constant") {
  ToricPair pair = make_builtin_x_pair();
  PairAnalysis a = analyze_pair(pair, {real_place()});
  const FaceReport* m_face = nullptr;
  const FaceReport* a_face = nullptr;
  for (const FaceReport& r : a.maximal_reports)
    (r.obstructed ? a_face : m_face) = &r;
  REQUIRE(m_face != nullptr);
  REQUIRE(a_face != nullptr);

  auto euler = builtin_euler_product(10000);
  LeadingConstant lc =
      assemble_leading_constant(*m_face, archimedean_surface_volume_renormalized(), euler);
  REQUIRE(lc.c_inf == Rat(4));  // (1/8) * 32, exactly
  REQUIRE(lc.log_exponent == 2);
  REQUIRE(abs(lc.c - 4 * euler.value) < Real("1e-40"));
  REQUIRE_THROWS_AS(
      assemble_leading_constant(*a_face, archimedean_surface_volume_renormalized(), euler),
      ArgumentError);
  SECTION("identity: alpha 1/8, volume 32, unit Euler factor gives 4") {
    EulerProductResult unit;
    unit.value = 1;
    unit.tail_bound = 0;
    unit.partial_log_sum = 0;
    unit.cutoff_prime = 2;
    LeadingConstant four =
        assemble_leading_constant(*m_face, archimedean_surface_volume_renormalized(), unit);
    REQUIRE(four.c == 4);
  }
}
