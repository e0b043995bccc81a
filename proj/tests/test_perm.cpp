#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "picky/perm.hpp"

using namespace picky;

namespace {
Perm p(std::vector<Pt> v) { return Perm(std::move(v)); }
}  // namespace

TEST_CASE("identity") {
  Perm e = Perm::identity(5);
  CHECK(e.degree() == 5);
  CHECK(e.is_identity());
  CHECK(e.order() == 1);
  for (Pt i = 0; i < 5; ++i) CHECK(e[i] == i);
  CHECK_FALSE(p({1, 0}).is_identity());
}

TEST_CASE("composition is left-to-right") {
  // a = (0 1 2), b = (0 1): (a*b)(0) = b(a(0)) = b(1) = 0.
  Perm a = p({1, 2, 0}), b = p({1, 0, 2});
  Perm ab = a * b;
  CHECK(ab == p({0, 2, 1}));
  Perm ba = b * a;
  CHECK(ba == p({2, 1, 0}));
  CHECK(ab != ba);
}

TEST_CASE("inverse") {
  Perm a = p({2, 0, 3, 1});
  CHECK((a * a.inverse()).is_identity());
  CHECK((a.inverse() * a).is_identity());
  CHECK(Perm::identity(4).inverse() == Perm::identity(4));
}

TEST_CASE("conjugation") {
  Perm x = p({1, 0, 2, 3});  // (0 1)
  Perm g = p({2, 3, 0, 1});  // (0 2)(1 3)
  CHECK(x.conjugated_by(g) == g.inverse() * x * g);
  CHECK(x.conjugated_by(g) == p({0, 1, 3, 2}));  // (2 3)
  CHECK(x.conjugated_by(Perm::identity(4)) == x);
}

TEST_CASE("order and cycle structure") {
  CHECK(p({1, 2, 3, 4, 5, 0}).order() == 6);
  CHECK(p({1, 0, 3, 2}).order() == 2);
  // (0 1 2)(3 4): order lcm(3, 2) = 6.
  Perm m = p({1, 2, 0, 4, 3});
  CHECK(m.order() == 6);
  CHECK(m.cycle_type() == std::vector<Pt>{3, 2});
  CHECK(m.cycle_length(0) == 3);
  CHECK(m.cycle_length(3) == 2);
  CHECK(Perm::identity(3).cycle_type() == std::vector<Pt>{1, 1, 1});
}

TEST_CASE("ordering is lexicographic on images") {
  CHECK(p({0, 1, 2}) < p({0, 2, 1}));
  CHECK(p({1, 0, 2}) < p({1, 2, 0}));
  CHECK_FALSE(p({1, 2, 0}) < p({1, 2, 0}));
}

TEST_CASE("hash") {
  Perm a = p({1, 2, 0}), b = p({1, 2, 0});
  CHECK(a.hash(7) == b.hash(7));
  CHECK(a.hash(7) != a.hash(8));  // reseeding changes the stream
  CHECK(hash_images(a.images().data(), a.degree(), 7) == a.hash(7));
}

TEST_CASE("cycle string") {
  CHECK(p({1, 2, 0}).to_cycle_string() == p({1, 2, 0}).to_cycle_string());
  CHECK_FALSE(p({1, 2, 0}).to_cycle_string().empty());
  CHECK_FALSE(Perm::identity(2).to_cycle_string().empty());
}

TEST_CASE("lcm") {
  CHECK(lcm_u64(4, 6) == 12);
  CHECK(lcm_u64(1, 9) == 9);
  CHECK(lcm_u64(7, 7) == 7);
}
