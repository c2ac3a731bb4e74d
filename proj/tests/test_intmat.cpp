#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "toricint/fan.hpp"
#include "toricint/intmat.hpp"

using namespace toricint;

namespace {

IntMat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
  return m;
}

bool is_diagonal(const IntMat& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("smith normal form on the worked examples") {
  SECTION("identity") {
    IntMat a = IntMat::identity(2);
    auto s = smith_normal_form(a);
    REQUIRE(s.D == IntMat::identity(2));
    REQUIRE(s.U == IntMat::identity(2));
    REQUIRE(s.V == IntMat::identity(2));
  }
  SECTION("diag(2,3) -> diag(1,6)") {
    IntMat a = IntMat::from_rows({{Int(2), Int(0)}, {Int(0), Int(3)}});
    auto s = smith_normal_form(a);
    REQUIRE(s.D(0, 0) == 1);
    REQUIRE(s.D(1, 1) == 6);
    REQUIRE(s.U * a * s.V == s.D);
  }
  SECTION("ray matrix of the builtin threefold") {
    Fan x = make_builtin_x_fan();
    auto s = smith_normal_form(x.ray_matrix());
    auto f = s.invariant_factors();
    REQUIRE(f == std::vector<Int>{Int(1), Int(1), Int(1)});
    auto q = cokernel(x.ray_matrix());
    REQUIRE(q.free_rank == 5);
    REQUIRE(q.torsion.empty());
    // Same invariant factors for the transposed 3x8 orientation.
    auto st = smith_normal_form(x.ray_matrix().transposed());
    REQUIRE(st.invariant_factors() == f);
  }
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int iter = 0; iter < 200; ++iter) {
    IntMat a = random_matrix(rng, dim(rng), dim(rng));
    auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    REQUIRE(is_diagonal(s.D));
    auto f = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      REQUIRE(f[i] > 0);
      REQUIRE(f[i + 1] % f[i] == 0);
    }
  }
}

TEST_CASE("cokernel") {
  SECTION("zero map into Z^3") {
    IntMat z(3, 1);
    auto q = cokernel(z);
    REQUIRE(q.free_rank == 3);
    REQUIRE(q.torsion.empty());
  }
  SECTION("multiplication by 2 on Z") {
    IntMat two = IntMat::from_rows({{Int(2)}});
    auto q = cokernel(two);
    REQUIRE(q.free_rank == 0);
    REQUIRE(q.torsion == std::vector<Int>{Int(2)});
  }
  SECTION("Z^2 modulo (2,2)") {
    IntMat m = IntMat::from_rows({{Int(2)}, {Int(2)}});
    auto q = cokernel(m);
    REQUIRE(q.free_rank == 1);
    REQUIRE(q.torsion == std::vector<Int>{Int(2)});
  }
}

TEST_CASE("kernel basis") {
  SECTION("identity has trivial kernel") {
    REQUIRE(kernel_basis(IntMat::identity(3)).empty());
  }
  SECTION("[1,-1]") {
    IntMat m = IntMat::from_rows({{Int(1), Int(-1)}});
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    REQUIRE(k[0][0] == k[0][1]);
    REQUIRE(k[0][0] != 0);
  }
  SECTION("unit constraints of the open part of the threefold") {
    // rows = pairings of characters with a1, b0, b1, c0, c1
    Fan x = make_builtin_x_fan();
    std::vector<IntVec> rows;
    for (std::size_t i : {1, 2, 3, 4, 5}) rows.push_back(x.rays[i]);
    REQUIRE(kernel_basis(IntMat::from_rows(rows)).empty());
  }
}

TEST_CASE("integer solving and unimodular identification") {
  IntMat a = IntMat::from_rows({{Int(2), Int(1)}, {Int(0), Int(3)}});
  IntVec x;
  REQUIRE(solve_integer(a, {Int(3), Int(3)}, x));
  REQUIRE(a.apply(x) == IntVec{Int(3), Int(3)});
  REQUIRE_FALSE(solve_integer(IntMat::from_rows({{Int(2)}}), {Int(1)}, x));

  IntMat from = IntMat::from_rows({{Int(1), Int(0), Int(2)}, {Int(0), Int(1), Int(3)}});
  IntMat to = IntMat::from_rows({{Int(1), Int(1), Int(5)}, {Int(0), Int(1), Int(3)}});
  IntMat t;
  REQUIRE(unimodular_row_transform(from, to, t));
  REQUIRE(t * from == to);
  IntMat bad = IntMat::from_rows({{Int(2), Int(0), Int(4)}, {Int(0), Int(1), Int(3)}});
  REQUIRE_FALSE(unimodular_row_transform(from, bad, t));
}
