#include <random>

#include "doctest.h"
#include "evenlat/lattice.hpp"
#include "oracles.hpp"

using namespace evenlat;

TEST_CASE("signature of standard lattices") {
  CHECK(signature(builtin::hyperbolic_plane()) == Signature{1, 1});
  CHECK(signature(builtin::k3()) == Signature{3, 19});
  CHECK(signature(builtin::e8_minus()) == Signature{0, 8});
  auto [plus, minus] = oracle::minor_signature(builtin::e8_minus().gram());
  CHECK(plus == 0);
  CHECK(minus == 8);
}

TEST_CASE("direct sums") {
  const auto u = builtin::hyperbolic_plane();
  auto uu = direct_sum(u, u);
  CHECK(uu.rank() == 4);
  CHECK(uu.det() == 1);
  auto d = direct_sum(builtin::diagonal({2}), builtin::diagonal({-2}));
  CHECK(d.gram() == IntMatrix{{2, 0}, {0, -2}});
  CHECK(d.det() == -4);
  const auto k3 = builtin::k3();
  CHECK(k3.rank() == 22);
  CHECK(k3.det() == -1);
  CHECK(oracle::rational_det(k3.gram()) == -1);
}

TEST_CASE("rescale") {
  CHECK(rescale(builtin::hyperbolic_plane(), 2).gram() == IntMatrix{{0, 2}, {2, 0}});
  CHECK(rescale(builtin::a1(), 3).gram() == IntMatrix{{6}});
  CHECK(rescale(builtin::a2(), -1).gram() == IntMatrix{{-2, 1}, {1, -2}});
  CHECK_THROWS_AS(rescale(builtin::a1(), 0), InvalidInput);
}

TEST_CASE("invalid lattices are rejected") {
  CHECK_THROWS_AS(IntegralLattice(IntMatrix{{1}}), InvalidInput);
  CHECK_THROWS_AS(IntegralLattice(IntMatrix{{2, 1}, {0, 2}}), InvalidInput);
  CHECK_THROWS_AS(IntegralLattice(IntMatrix{{2, 2}, {2, 2}}), InvalidInput);
}

TEST_CASE("label expressions") {
  auto l = builtin::lookup("U^2+<-2>");
  REQUIRE(l);
  CHECK(l->rank() == 5);
  CHECK(l->det() == -2);
  auto a = builtin::lookup("A2(-1)");
  REQUIRE(a);
  CHECK(a->gram() == IntMatrix{{-2, 1}, {1, -2}});
  CHECK_FALSE(builtin::lookup("<3>"));
  CHECK_FALSE(builtin::lookup("Q7"));
  CHECK_FALSE(builtin::lookup("A1(0)"));
}

TEST_CASE("saturation") {
  const auto u = builtin::hyperbolic_plane();
  Embedding e(u, IntMatrix{{2, 0}});
  CHECK_FALSE(e.primitive());
  auto s = saturation(e);
  CHECK(s.primitive());
  CHECK(s.basis() == IntMatrix{{1, 0}});
  CHECK(saturation_index(e) == 2);

  Embedding full(u, IntMatrix{{1, 1}, {1, -1}});
  CHECK(saturation_index(full) == 2);
  CHECK(saturation(full).basis() == IntMatrix::identity(2));
}

TEST_CASE("orthogonal complement") {
  const auto u = builtin::hyperbolic_plane();
  Embedding e(u, IntMatrix{{1, 1}});
  auto c = orthogonal_complement(e);
  CHECK(c.primitive());
  CHECK(c.sublattice().gram() == IntMatrix{{-2}});
  CHECK(same_sublattice(c.basis(), IntMatrix{{1, -1}}));

  // E8(-1) block of the K3 lattice
  const auto k3 = builtin::k3();
  IntMatrix b(8, 22);
  for (std::size_t i = 0; i < 8; ++i) b(i, 14 + i) = 1;
  auto comp = orthogonal_complement(Embedding(k3, b));
  CHECK(comp.rank() == 14);
  CHECK(comp.sublattice().det() == -1);
  CHECK(signature(comp.sublattice()) == Signature{3, 11});
}

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 2}}).D == IntMatrix{{2, 0}, {0, 2}});
  CHECK(smith_normal_form(builtin::a2().gram()).D == IntMatrix{{1, 0}, {0, 3}});
  CHECK(smith_normal_form(builtin::hyperbolic_plane().gram()).D == IntMatrix::identity(2));
}

TEST_CASE("property: smith form, determinant, hermite form") {
  std::mt19937 rng(20261018);
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix m = oracle::random_matrix(rng, r, c, 6);
    auto s = smith_normal_form(m);
    REQUIRE(s.P * m * s.Q == s.D);
    CHECK(abs(determinant(s.P)) == 1);
    CHECK(abs(determinant(s.Q)) == 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
    for (std::size_t i = 0; i + 1 < s.rank; ++i)
      CHECK(mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t()));
    if (r == c) {
      CHECK(determinant(m) == oracle::cofactor_det(m));
      Int prod = 1;
      for (std::size_t i = 0; i < r; ++i) prod *= s.D(i, i);
      CHECK(prod == abs(oracle::cofactor_det(m)));
    }
    // Hermite form is invariant under unimodular row operations
    auto u = oracle::random_unimodular(rng, r);
    CHECK(hermite_normal_form(u * m) == hermite_normal_form(m));
    auto ker = left_kernel(m);
    CHECK((ker * m).is_zero());
    CHECK(ker.rows() + rank(m) == r);
  }
}

TEST_CASE("property: lattice constructions") {
  std::mt19937 rng(4242);
  int tested = 0;
  while (tested < 60) {
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    IntMatrix ga = oracle::random_even_gram(rng, dim(rng), 3);
    IntMatrix gb = oracle::random_even_gram(rng, dim(rng), 3);
    if (determinant(ga) == 0 || determinant(gb) == 0) continue;
    IntegralLattice a(ga), b(gb);
    auto s = direct_sum(a, b);
    CHECK(s.det() == a.det() * b.det());
    auto sa = signature(a), sb = signature(b), ss = signature(s);
    CHECK(ss.n_plus == sa.n_plus + sb.n_plus);
    CHECK(ss.n_minus == sa.n_minus + sb.n_minus);
    auto [op, om] = oracle::minor_signature(ga);
    CHECK(sa == Signature{op, om});
    ++tested;
  }
}

TEST_CASE("property: saturation and complements in unimodular ambients") {
  std::mt19937 rng(99);
  const auto ambient = direct_sum(builtin::hyperbolic_plane(),
                                  direct_sum(builtin::hyperbolic_plane(), builtin::e8_minus()));
  int tested = 0;
  while (tested < 40) {
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    IntMatrix b = oracle::random_matrix(rng, dim(rng), ambient.rank(), 2);
    if (rank(b) != b.rows()) continue;
    IntMatrix induced = b * ambient.gram() * b.transpose();
    if (determinant(induced) == 0) continue;
    Embedding e(ambient, b);
    auto sat = saturation(e);
    CHECK(sat.primitive());
    CHECK(same_sublattice(saturation(sat).basis(), sat.basis()));
    Int idx = 1;
    for (const auto& d : elementary_divisors(b)) idx *= d;
    CHECK(saturation_index(e) == idx);
    // e lies in its saturation
    CHECK(integer_coordinates(sat.basis(), b).has_value());
    auto comp = orthogonal_complement(e);
    CHECK(comp.primitive());
    CHECK(comp.rank() == ambient.rank() - e.rank());
    CHECK(abs(sat.sublattice().det()) == abs(comp.sublattice().det()));
    auto back = orthogonal_complement(comp);
    CHECK(same_sublattice(back.basis(), sat.basis()));
    ++tested;
  }
}
