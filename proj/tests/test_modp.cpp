#include <set>

#include "doctest.h"
#include "evenlat/modp.hpp"
#include "oracles.hpp"

using namespace evenlat;

namespace {

long vp(const Int& x, long p) {
  long v = 0;
  Int y = x;
  while (y != 0 && y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

std::vector<IntegralLattice> lattices() {
  return {builtin::hyperbolic_plane(),           builtin::a2(),
          builtin::diagonal({2, 2, 2}),          *builtin::lookup("U^2+<-2>"),
          *builtin::lookup("U+<-2>"),            *builtin::lookup("U+A2(-1)"),
          builtin::d4(),                         *builtin::lookup("U^2"),
          IntegralLattice(IntMatrix{{2, 1, 0}, {1, -4, 1}, {0, 1, 6}})};
}

}  // namespace

TEST_CASE("line classes against brute force") {
  auto c = line_classes(builtin::diagonal({2, 2, 2}), 3);
  CHECK(c.total() == 13);
  auto o = oracle::brute_line_classes(builtin::diagonal({2, 2, 2}).gram(), 3);
  CHECK(c.isotropic == o.iso);
  CHECK(c.square == o.sq);
  CHECK(c.nonsquare == o.nsq);
  // frozen from the oracle above
  CHECK(c.isotropic == 4);
  CHECK(c.square == 6);
  CHECK(c.nonsquare == 3);

  CHECK(line_classes(builtin::hyperbolic_plane(), 3).isotropic == 2);
  for (const auto& l : lattices())
    for (long p : {3L, 5L, 7L}) {
      if (l.det() % p == 0) continue;
      auto mine = line_classes(l, p);
      auto brute = oracle::brute_line_classes(l.gram(), p);
      CHECK(mine.isotropic == brute.iso);
      CHECK(mine.square == brute.sq);
      CHECK(mine.nonsquare == brute.nsq);
      Int total;
      mpz_ui_pow_ui(total.get_mpz_t(), p, l.rank());
      CHECK(mine.total() == (total - 1) / (p - 1));
    }
  CHECK_THROWS_AS(line_classes(builtin::a2(), 3), InvalidInput);
  CHECK_THROWS_AS(line_classes(builtin::hyperbolic_plane(), 2), InvalidInput);
  CHECK_THROWS_AS(line_classes(builtin::hyperbolic_plane(), 9), InvalidInput);
}

TEST_CASE("index-p sublattices") {
  CHECK(enumerate_index_p_sublattices(builtin::hyperbolic_plane(), 3).size() == 4);
  CHECK(enumerate_index_p_sublattices(builtin::diagonal({2, 2, 2}), 3).size() == 13);
  for (const auto& l : lattices())
    for (long p : {3L, 5L}) {
      auto subs = enumerate_index_p_sublattices(l, p);
      std::set<std::vector<Int>> keys;
      std::set<std::vector<long>> duals;
      for (const auto& s : subs) {
        keys.insert(s.basis.data());
        CHECK(abs(oracle::cofactor_det(s.basis)) == p);
        auto inv = oracle::invariant_factors(s.basis);
        CHECK(inv.back() == p);
        // contains pS and is killed by alpha
        CHECK(integer_coordinates(s.basis, Int(p) * IntMatrix::identity(l.rank())).has_value());
        for (std::size_t r = 0; r < s.basis.rows(); ++r) {
          Int acc = 0;
          for (std::size_t j = 0; j < l.rank(); ++j) acc += s.basis(r, j) * s.alpha[j];
          CHECK(acc % p == 0);
        }
        IntegralLattice sp(s.basis * l.gram() * s.basis.transpose());
        CHECK(sp.det() == Int(p * p) * l.det());
        if (l.det() % p != 0) {
          REQUIRE(s.dual_line);
          duals.insert(*s.dual_line);
        }
      }
      CHECK(keys.size() == subs.size());
      if (l.det() % p != 0) CHECK(duals.size() == subs.size());
    }
}

TEST_CASE("discriminant split of index-p sublattices") {
  const auto u2 = *builtin::lookup("U^2");
  for (const auto& s : enumerate_index_p_sublattices(u2, 3)) {
    auto split = sublattice_disc_split(u2, s);
    IntMatrix g = s.basis * u2.gram() * s.basis.transpose();
    auto inv = oracle::invariant_factors(g);
    if (split.tag == PPart::Elementary)
      CHECK(inv == std::vector<Int>{1, 1, 3, 3});
    else
      CHECK(inv == std::vector<Int>{1, 1, 1, 9});
    CHECK(split.tag == split.predicted);
    CHECK(split.prime_to_p_matches == true);
  }
  const auto s = *builtin::lookup("U^2+<-2>");
  std::size_t elementary = 0, cyclic = 0;
  for (const auto& sub : enumerate_index_p_sublattices(s, 5)) {
    auto split = sublattice_disc_split(s, sub);
    CHECK(split.tag == split.predicted);
    CHECK(split.det == 25 * s.det());
    CHECK(split.form.order() == 25 * abs(s.det()));
    CHECK(split.prime_to_p_matches == true);
    (split.tag == PPart::Elementary ? elementary : cyclic)++;
    CHECK(split.length == (split.tag == PPart::Elementary ? 2u : 1u));
  }
  CHECK(elementary == line_classes(s, 5).isotropic);
  CHECK(elementary + cyclic == 781);
}

TEST_CASE("choose_p") {
  const auto s = *builtin::lookup("U^2+<-2>");
  auto c = choose_p(s, 32);
  // oracle: scan primes with brute-force line counts
  long expected = 0;
  Int expected_bound;
  for (long p = 3; expected == 0; p += 2) {
    if (!is_prime(p) || s.det() % p == 0) continue;
    auto o = oracle::brute_line_classes(s.gram(), p);
    long m = 0;
    for (long v : {o.iso, o.sq, o.nsq})
      if (v > 0 && (m == 0 || v < m)) m = v;
    if ((m + 3) / 4 > 32) {
      expected = p;
      expected_bound = (m + 3) / 4;
    }
  }
  CHECK(c.p == expected);
  CHECK(c.bound == expected_bound);
  CHECK(c.p == 5);
  CHECK(c.bound == 39);
  CHECK(choose_p(s, 0).p == 3);
  CHECK_THROWS_AS(choose_p(builtin::hyperbolic_plane(), 3), Refusal);
  CHECK_THROWS_AS(choose_p(builtin::diagonal({2, 2, 2}), 3), Refusal);

  // the bound grows along consecutive valid primes
  Int prev = 0;
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    Int b = line_bound(line_classes(s, p));
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("Jordan decompositions") {
  auto a2 = jordan_decompose(builtin::a2(), 3);
  REQUIRE(a2.blocks.size() == 2);
  CHECK(a2.blocks[0].scale == 0);
  CHECK(a2.blocks[0].rank == 1);
  CHECK(a2.blocks[1].scale == 1);
  CHECK(a2.blocks[1].rank == 1);

  for (long p : {3L, 5L, 7L}) {
    auto u = jordan_decompose(builtin::hyperbolic_plane(), p);
    REQUIRE(u.blocks.size() == 1);
    CHECK(u.blocks[0].rank == 2);
  }
  auto d = jordan_decompose(builtin::diagonal({2, 18}), 3);
  REQUIRE(d.blocks.size() == 2);
  CHECK(d.blocks[1].scale == 2);

  // scales are the valuations of the invariant factors
  std::vector<IntegralLattice> corpus = lattices();
  corpus.push_back(builtin::diagonal({6, 54, -18}));
  corpus.push_back(rescale(builtin::hyperbolic_plane(), 9));
  corpus.push_back(IntegralLattice(IntMatrix{{0, 3}, {3, 0}}));
  corpus.push_back(IntegralLattice(IntMatrix{{6, 3, 0}, {3, 6, 9}, {0, 9, 0}}));
  for (const auto& l : corpus)
    for (long p : {3L, 5L, 7L}) {
      auto jd = jordan_decompose(l, p);
      std::multiset<long> scales;
      for (const auto& b : jd.blocks)
        for (std::size_t i = 0; i < b.rank; ++i) scales.insert(b.scale);
      std::multiset<long> expected;
      for (const auto& f : oracle::invariant_factors(l.gram())) expected.insert(vp(f, p));
      CHECK(scales == expected);
    }
  CHECK_THROWS_AS(jordan_decompose(builtin::diagonal({2, 18}), 3, 2), Refusal);
  CHECK_NOTHROW(jordan_decompose(builtin::diagonal({2, 18}), 3, 3));
  CHECK_THROWS_AS(jordan_decompose(builtin::a2(), 2), InvalidInput);
}

TEST_CASE("unit norm vectors") {
  auto u = find_unit_norm_vector(builtin::diagonal({2, -2}), 3);
  CHECK(u.x == IntVector{1, 0});
  CHECK(u.norm == 2);
  CHECK(u.integral);
  auto a = find_unit_norm_vector(builtin::a2(), 3);
  CHECK(a.norm == 2);
  CHECK(a.integral);
  auto w = find_unit_norm_vector(builtin::diagonal({4, 6}), 3);
  CHECK(w.norm % 3 != 0);
  CHECK_THROWS_AS(find_unit_norm_vector(IntegralLattice(IntMatrix{{0, 3}, {3, 0}}), 3), Refusal);
}
