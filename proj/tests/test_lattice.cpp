#include <doctest.h>

#include "helpers.hpp"
#include "stabchamber/errors.hpp"
#include "stabchamber/lattice.hpp"

using namespace stabchamber;
using testing::cls;
using testing::E;
using testing::H;

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-.5") == Rational(-1, 2));
  CHECK(parse_rational("+7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK(to_string(ratio(6, 4)) == "3/2");
  CHECK(to_string(Rational(-3)) == "-3");
}

TEST_CASE("intersection pairing") {
  CHECK(dot(H(2), H(2)) == 1);
  CHECK(dot(E(2, 1), E(2, 2)) == 0);
  CHECK(dot(cls({2, -1}), cls({1, -1})) == 1);
  CHECK_THROWS_AS(dot(H(1), H(2)), DimensionError);

  CHECK(square(H(1)) == 1);
  CHECK(square(E(1, 1)) == -1);
  CHECK(square(cls({2, 1})) == 3);
  CHECK(square(canonical_class(6)) == 3);
}

TEST_CASE("class rendering") {
  CHECK(cls({2, -1, Rational(3, 2)}).to_string() == "2H - E1 + 3/2 E2");
  CHECK(NSClass::zero(3).to_string() == "0");
  CHECK(cls({0, 1, -1}).to_string() == "E1 - E2");
}

TEST_CASE("Chern characters of divisor sheaves") {
  CHECK(ch_of_divisor_sheaf(E(2, 1)) == ChernCharacter{0, E(2, 1), Rational(1, 2)});
  CHECK(ch_of_divisor_sheaf(H(2)) == ChernCharacter{0, H(2), Rational(-1, 2)});
  CHECK(ch_of_divisor_sheaf(E(2, 1) + E(2, 2)) == ChernCharacter{0, E(2, 1) + E(2, 2), Rational(1)});

  auto pt = ch_point(3);
  CHECK(pt.rank == 0);
  CHECK(pt.c1.is_zero());
  CHECK(pt.ch2 == 1);
}

TEST_CASE("shift parity") {
  auto c = ChernCharacter{0, E(1, 1), Rational(1, 2)};
  CHECK(shift_parity(c, 1) == ChernCharacter{0, -E(1, 1), Rational(-1, 2)});
  CHECK(shift_parity(c, 2) == c);
  CHECK(shift_parity(ch_structure_sheaf(1), 1) == ChernCharacter{-1, NSClass::zero(1), Rational(0)});
}

TEST_CASE("split onto exceptional span") {
  auto a = split(cls({2, 1}), ContractionSet{1});
  CHECK(a.omega_part == cls({2, 0}));
  CHECK(a.d_part == cls({0, 1}));

  auto alpha = cls({3, -2, 1});
  auto b = split(alpha, ContractionSet{});
  CHECK(b.omega_part == alpha);
  CHECK(b.d_part.is_zero());

  auto c = split(alpha, ContractionSet{1});
  CHECK(c.omega_part == cls({3, 0, 1}));
  CHECK(c.d_part == cls({0, -2, 0}));

  CHECK_THROWS_AS(split(alpha, ContractionSet{3}), ValidityError);
}

TEST_CASE("lattice properties on random classes") {
  testing::Random rnd(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rnd.integer(0, 6));
    auto a = rnd.ns_class(n);
    auto b = rnd.ns_class(n);
    auto c = rnd.ns_class(n);
    CHECK(dot(a + b, c) == dot(a, c) + dot(b, c));
    CHECK(dot(a, b) == dot(b, a));

    std::vector<int> idx;
    for (int i = 1; i <= n; ++i) {
      if (rnd.coin()) idx.push_back(i);
    }
    ContractionSet s(idx);
    auto parts = split(a, s);
    CHECK(parts.omega_part + parts.d_part == a);
    for (int i : s) CHECK(dot(parts.omega_part, E(n, i)) == 0);
    CHECK(square(a) == square(parts.omega_part) + square(parts.d_part));
    CHECK(supported_on(parts.d_part, s));

    auto d1 = rnd.ns_class(n);
    auto d2 = rnd.ns_class(n);
    CHECK((ch_of_divisor_sheaf(d1) + ch_of_divisor_sheaf(d2)).c1 == d1 + d2);
  }
}

TEST_CASE("contraction set ordering") {
  std::vector<ContractionSet> sets = {{1, 2}, {}, {2}, {1, 2, 3}, {1}};
  std::sort(sets.begin(), sets.end());
  CHECK(sets == std::vector<ContractionSet>{{}, {1}, {2}, {1, 2}, {1, 2, 3}});
  CHECK(ContractionSet{3, 1, 1}.to_string() == "{1,3}");
}
