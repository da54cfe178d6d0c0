#include <doctest.h>

#include <random>

#include "egyptsum/group.hpp"

using namespace egyptsum;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

Integer random_integer(std::mt19937_64& rng) {
  return Integer(std::uniform_int_distribution<long>(-1000, 1000)(rng));
}

LexPair random_pair(std::mt19937_64& rng) { return {random_integer(rng), random_integer(rng)}; }

template <OrderedGroup G, class Gen>
void check_axioms(Gen gen) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto a = gen(rng), b = gen(rng), c = gen(rng), d = gen(rng);
    CHECK(G::equals(G::add(G::add(a, b), c), G::add(a, G::add(b, c))));
    CHECK(G::equals(G::add(a, G::zero()), a));
    CHECK(G::equals(G::add(G::zero(), a), a));
    CHECK(G::equals(G::add(a, G::neg(a)), G::zero()));
    CHECK(G::equals(G::add(G::neg(a), a), G::zero()));
    // equals agrees with compare EQ
    CHECK(G::equals(a, b) == (G::compare(a, b) == Ordering::Equal));
    CHECK(G::compare(a, a) == Ordering::Equal);
    // translation invariance
    if (G::compare(a, b) == Ordering::Less) {
      const auto cd = G::compare(c, d);
      if (cd == Ordering::Less || cd == Ordering::Equal) {
        CHECK(G::compare(G::add(a, c), G::add(b, d)) == Ordering::Less);
      }
    }
    // antisymmetry of the total order
    const auto ab = G::compare(a, b), ba = G::compare(b, a);
    CHECK((ab == Ordering::Less) == (ba == Ordering::Greater));
    // basis: decreasing, symmetric, contains 0
    for (unsigned k = 0; k < 32; ++k) {
      if (G::in_basis(k + 1, a)) CHECK(G::in_basis(k, a));
      CHECK(G::in_basis(k, a) == G::in_basis(k, G::neg(a)));
      CHECK(G::in_basis(k, G::zero()));
    }
  }
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("rationals") {
  auto Q = make_rationals();
  (void)Q;
  CHECK(Rationals::add(Rational(1, 2), Rational(1, 3)) == Rational(5, 6));
  CHECK(Rationals::compare(Rational(1, 3), Rational(1, 2)) == Ordering::Less);
  CHECK(Rationals::add(Rationals::neg(Rational(1, 2)), Rational(1, 2)) == 0);
  CHECK(Rationals::capabilities.metric);
  CHECK(Rationals::capabilities.archimedean);
  CHECK(*Rationals::radius(3) == Rational(1, 8));
  // the open ball excludes its boundary
  CHECK_FALSE(Rationals::in_basis(2, Rational(1, 4)));
  CHECK(Rationals::in_basis(2, Rational(1, 5)));
  check_axioms<Rationals>(random_rational);
}

TEST_CASE("rational magnitude is a metric proxy") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_rational(rng), b = random_rational(rng);
    CHECK(Rationals::magnitude(a + b) <= Rationals::magnitude(a) + Rationals::magnitude(b));
    CHECK((Rationals::magnitude(a) == 0) == (a == 0));
  }
}

TEST_CASE("integers") {
  CHECK(Integers::add(Integer(2), Integer(3)) == 5);
  CHECK_FALSE(Integers::in_basis(1, Integer(1)));
  CHECK(Integers::compare(Integer(0), Integer(1)) == Ordering::Less);
  CHECK(Integers::capabilities.discrete);
  CHECK_FALSE(Integers::radius(1).has_value());
  check_axioms<Integers>(random_integer);
}

TEST_CASE("lexicographic pairs") {
  const LexPair a{Integer(0), Integer(5)}, b{Integer(1), Integer(-100)};
  CHECK(LexPairs::compare(a, b) == Ordering::Less);
  CHECK(LexPairs::add({Integer(1), Integer(2)}, {Integer(3), Integer(4)}) == LexPair{Integer(4), Integer(6)});
  CHECK(LexPairs::neg({Integer(1), Integer(-2)}) == LexPair{Integer(-1), Integer(2)});
  CHECK(LexPairs::parse("(3,-4)") == LexPair{Integer(3), Integer(-4)});
  CHECK(LexPairs::format({Integer(-1), Integer(0)}) == "(-1,0)");
  CHECK_THROWS_AS(LexPairs::parse("(1,2,3)"), ParseError);
  CHECK_THROWS_AS(LexPairs::parse("1,2"), ParseError);
  check_axioms<LexPairs>(random_pair);
}

TEST_CASE("ordering names") {
  CHECK(to_string(Ordering::Less) == "LT");
  CHECK(to_string(Ordering::Equal) == "EQ");
  CHECK(to_string(Ordering::Greater) == "GT");
  CHECK(to_string(Ordering::Incomparable) == "INCOMPARABLE");
}

TEST_CASE("lower witness") {
  CHECK(lower_witness(make_rationals(), Rational(1), 3) == Rational(1, 3));
  CHECK(lower_witness(make_integers(), Integer(5), 2) == 1);
  CHECK(lower_witness(make_rationals(), Rational(1, 2), 2) == Rational(1, 4));
  CHECK_THROWS_AS(lower_witness(make_lex_pairs(), LexPair{Integer(1), Integer(0)}, 2), UnsupportedCapability);
  CHECK_THROWS_AS(lower_witness(make_rationals(), Rational(1), 0), PreconditionError);
  CHECK_THROWS_AS(lower_witness(make_rationals(), Rational(-1), 2), PreconditionError);
}

TEST_CASE("lower witness is sound on a finite pool") {
  // every composition of r into k parts from the pool has a part >= r/k
  std::vector<Rational> pool;
  for (int num = 1; num <= 6; ++num) {
    for (int den = 1; den <= 12; ++den) pool.emplace_back(num, den);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const Rational r(1);
  for (unsigned k = 1; k <= 3; ++k) {
    const Rational ell = lower_witness(make_rationals(), r, k);
    std::size_t compositions = 0;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      Rational sum = 0, biggest = 0;
      for (auto i : idx) {
        sum += pool[i];
        biggest = std::max(biggest, pool[i]);
      }
      if (sum == r) {
        ++compositions;
        CHECK(biggest >= ell);
      }
      std::size_t pos = k;
      while (pos > 0 && ++idx[pos - 1] == pool.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
    CHECK(compositions > 0);
  }
}

TEST_CASE("left-to-right summation") {
  std::vector<Rational> terms{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
  CHECK(sum_terms<Rationals>(terms) == 1);
  CHECK(left_difference<Rationals>(Rational(1, 3), Rational(1)) == Rational(2, 3));
}

}
