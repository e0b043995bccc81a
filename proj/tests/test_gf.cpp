#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "picky/gf.hpp"

using namespace picky;

TEST_CASE("prime field arithmetic GF(7)") {
  GF F(7);
  CHECK(F.q() == 7);
  CHECK(F.p() == 7);
  CHECK(F.f() == 1);
  CHECK(F.add(3, 5) == 1);
  CHECK(F.sub(2, 5) == 4);
  CHECK(F.neg(3) == 4);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.inv(3) == 5);
  CHECK(F.pow(3, 6) == 1);
  CHECK(F.div(1, 3) == 5);
}

TEST_CASE("GF(4) structure") {
  GF F(4);
  CHECK(F.p() == 2);
  CHECK(F.f() == 2);
  // Encoding: 2 = x, 3 = x + 1; modulus x^2 + x + 1, so x * x = x + 1.
  CHECK(F.mul(2, 2) == 3);
  CHECK(F.mul(2, 3) == 1);  // x(x+1) = x^2 + x = 1
  CHECK(F.add(2, 3) == 1);
  CHECK(F.add(2, 2) == 0);  // characteristic 2
}

TEST_CASE("multiplicative group is generated by the primitive element") {
  for (unsigned q : {4u, 5u, 8u, 9u, 16u, 25u, 27u}) {
    GF F(q);
    unsigned g = F.primitive_element();
    std::set<unsigned> powers;
    unsigned a = 1;
    for (unsigned k = 0; k + 1 < q; ++k) {
      powers.insert(a);
      CHECK(F.log(a) == k);
      a = F.mul(a, g);
    }
    CHECK(a == 1);  // g^(q-1) = 1
    CHECK(powers.size() == q - 1);
  }
}

TEST_CASE("field axioms, spot-checked exhaustively on GF(9)") {
  GF F(9);
  for (unsigned a = 0; a < 9; ++a)
    for (unsigned b = 0; b < 9; ++b) {
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.sub(F.add(a, b), b) == a);
      if (b != 0) CHECK(F.mul(F.div(a, b), b) == a);
      for (unsigned c = 0; c < 9; ++c)
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    }
  for (unsigned a = 1; a < 9; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("frobenius") {
  GF F(9);
  for (unsigned a = 0; a < 9; ++a) {
    CHECK(F.frobenius(a) == F.pow(a, 3));
    CHECK(F.frobenius(F.frobenius(a)) == a);   // order 2 over GF(9)
    CHECK(F.frobenius(a, 2) == a);
  }
  GF E(8);
  for (unsigned a = 0; a < 8; ++a) CHECK(E.frobenius(a, 3) == a);
  // Additivity of frobenius (it is a field automorphism).
  for (unsigned a = 0; a < 9; ++a)
    for (unsigned b = 0; b < 9; ++b)
      CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
}

TEST_CASE("is_prime") {
  CHECK(GF::is_prime(2));
  CHECK(GF::is_prime(3));
  CHECK(GF::is_prime(17));
  CHECK(GF::is_prime(97));
  CHECK(GF::is_prime(8191));
  CHECK(GF::is_prime(65537));
  CHECK_FALSE(GF::is_prime(0));
  CHECK_FALSE(GF::is_prime(1));
  CHECK_FALSE(GF::is_prime(4));
  CHECK_FALSE(GF::is_prime(2047));   // 23 * 89
  CHECK_FALSE(GF::is_prime(65535));
}

TEST_CASE("factor_prime_power") {
  CHECK(GF::factor_prime_power(8) == std::pair<unsigned, unsigned>{2, 3});
  CHECK(GF::factor_prime_power(9) == std::pair<unsigned, unsigned>{3, 2});
  CHECK(GF::factor_prime_power(7) == std::pair<unsigned, unsigned>{7, 1});
  CHECK(GF::factor_prime_power(1024) == std::pair<unsigned, unsigned>{2, 10});
  CHECK_THROWS_AS(GF::factor_prime_power(6), std::invalid_argument);
  CHECK_THROWS_AS(GF::factor_prime_power(12), std::invalid_argument);
  CHECK_THROWS_AS(GF::factor_prime_power(1), std::invalid_argument);
  CHECK_THROWS_AS(GF::factor_prime_power(0), std::invalid_argument);
}

TEST_CASE("construction rejects non prime powers") {
  CHECK_THROWS_AS(GF(6), std::invalid_argument);
  CHECK_THROWS_AS(GF(1), std::invalid_argument);
}
