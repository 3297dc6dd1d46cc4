#include <doctest.h>

#include <algorithm>
#include <thread>

#include "helpers.hpp"
#include "stabchamber/configuration.hpp"
#include "stabchamber/errors.hpp"

using namespace stabchamber;
using testing::cls;
using testing::E;
using testing::H;

namespace {

// Unpruned search over a box; independent of the library enumeration.
std::vector<NSClass> brute_force_minus_one(int n, long max_degree) {
  std::vector<NSClass> out;
  const long box = max_degree + 1;
  std::vector<long> m(static_cast<std::size_t>(n), -box);
  const auto k = canonical_class(n);
  for (long d = 0; d <= max_degree; ++d) {
    std::fill(m.begin(), m.end(), -box);
    while (true) {
      std::vector<Rational> c{Rational(d)};
      for (long v : m) c.emplace_back(-v);
      NSClass x(c);
      if (square(x) == -1 && dot(x, k) == -1) out.push_back(x);
      std::size_t pos = 0;
      while (pos < m.size() && m[pos] == box) m[pos++] = -box;
      if (pos == m.size()) break;
      ++m[pos];
    }
  }
  return out;
}

bool same_set(std::vector<NSClass> a, std::vector<NSClass> b) {
  auto key = [](const NSClass& c) { return c.to_string(); };
  auto less = [&](const NSClass& x, const NSClass& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  return a == b;
}

}  // namespace

TEST_CASE("validate accepts the worked examples") {
  CHECK(validate(testing::two_on_third()).empty());
  CHECK(validate(testing::pair_config()).empty());
  CHECK(validate(testing::chain3()).empty());
  CHECK(validate(BlowUpConfig::disjoint(0)).empty());
}

TEST_CASE("validate reports rule violations") {
  auto inconsistent = BlowUpConfig(3, {{2, 3}, {}, {}});
  auto v = validate(inconsistent);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "consistency");
  CHECK(v[0].indices == std::vector<int>{1, 2, 3});

  auto backwards = validate(BlowUpConfig(2, {{}, {1}}));
  REQUIRE(backwards.size() == 1);
  CHECK(backwards[0].rule == "membership-order");

  auto three = validate(BlowUpConfig(4, {{2, 3, 4}, {3, 4}, {4}, {}}));
  CHECK(std::any_of(three.begin(), three.end(),
                    [](const Violation& x) { return x.rule == "at-most-two-branches"; }));

  CHECK_THROWS_AS(require_valid(inconsistent), ValidityError);
  CHECK_THROWS_AS(BlowUpConfig(2, {{}}), DimensionError);
}

TEST_CASE("strict transforms") {
  CHECK(strict_transform(testing::pair_config(), 2) == cls({0, -1, 1}));
  CHECK(strict_transform(testing::two_on_third(), 3) == cls({0, -1, -1, 1}));
  CHECK(strict_transform(BlowUpConfig::disjoint(2), 1) == E(2, 1));
  CHECK_THROWS_AS(strict_transform(testing::pair_config(), 3), IndexError);

  testing::Random rnd(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto cfg = rnd.config(static_cast<int>(rnd.integer(1, 7)));
    for (int j = 1; j <= cfg.n(); ++j) {
      auto c = strict_transform(cfg, j);
      CHECK(square(c) == -1 - static_cast<long>(cfg.points_on(j).size()));
    }
  }
}

TEST_CASE("(-1)-classes match brute force") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(same_set(minus_one_classes(n), brute_force_minus_one(n, 6)));
  }
  // Classical counts on del Pezzo surfaces of degree 9 - n.
  const std::vector<std::size_t> counts = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int n = 1; n <= 8; ++n) {
    auto classes = minus_one_classes(n);
    CHECK(classes.size() == counts[static_cast<std::size_t>(n)]);
    for (const auto& c : classes) {
      CHECK(square(c) == -1);
      CHECK(dot(c, canonical_class(n)) == -1);
      CHECK(c.is_integral());
    }
  }
}

TEST_CASE("negative curves") {
  auto one = negative_curves(testing::single_blowup());
  CHECK(one.size() == 2);
  CHECK(one.contains(E(1, 1)));
  CHECK(one.contains(cls({1, -1})));

  auto two = negative_curves(BlowUpConfig::disjoint(2));
  CHECK(same_set({E(2, 1), E(2, 2), cls({1, -1, -1})}, [&] {
    std::vector<NSClass> v;
    for (const auto& c : two.curves) v.push_back(c.cls);
    return v;
  }()));

  CHECK(negative_curves(BlowUpConfig::disjoint(0)).size() == 0);

  auto pair = negative_curves(testing::pair_config());
  CHECK(pair.contains(cls({0, -1, 1})));  // strict transform, square -2

  auto collinear = negative_curves(testing::collinear3());
  CHECK(collinear.contains(cls({1, -1, -1, -1})));

  CHECK_THROWS_AS(negative_curves(BlowUpConfig::disjoint(9)), UnsupportedEnumerationError);
  auto nine = BlowUpConfig(9, std::vector<std::vector<int>>(9),
                           {NSClass::from_ints({3, -1, -1, -1, -1, -1, -1, -1, -1, -1})});
  CHECK(negative_curves(nine).size() == 10);
}

TEST_CASE("curve set cache is shared and thread safe") {
  auto cfg = BlowUpConfig::disjoint(7);
  std::vector<std::thread> pool;
  std::vector<std::size_t> sizes(8);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    pool.emplace_back([&, k] { sizes[k] = cfg.curve_set().size(); });
  }
  for (auto& t : pool) t.join();
  for (auto s : sizes) CHECK(s == 56);
  auto copy = cfg;
  CHECK(&copy.curve_set() == &cfg.curve_set());
}

TEST_CASE("ampleness on contraction targets") {
  auto x = testing::single_blowup();
  CHECK(is_ample_on_target(x, cls({3, 0}), ContractionSet{1}));
  CHECK(is_ample_on_target(x, cls({2, -1}), ContractionSet{}));
  CHECK_FALSE(is_ample_on_target(x, cls({1, 1}), ContractionSet{}));
  CHECK_THROWS_AS(is_ample_on_target(x, cls({2, -1}), ContractionSet{1}), OrthogonalityError);

  // Ample cone of the single blow-up: x > 0, -x < y < 0, on a rational grid.
  for (int i = -20; i <= 20; ++i) {
    for (int j = -20; j <= 20; ++j) {
      Rational a(i, 4);
      Rational b(j, 4);
      bool expected = a > 0 && -a < b && b < 0;
      CHECK(is_ample_on_target(x, cls({a, b}), ContractionSet{}) == expected);
    }
  }

  testing::Random rnd(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto omega = rnd.ns_class(3);
    auto lambda = rnd.positive_rational();
    auto cfg = testing::two_on_third();
    CHECK(is_ample_on_target(cfg, omega, ContractionSet{}) ==
          is_ample_on_target(cfg, lambda * omega, ContractionSet{}));
  }
}

TEST_CASE("nef closure and ample representatives") {
  auto x = testing::single_blowup();
  CHECK(is_nef_on_target(x, cls({1, 0}), ContractionSet{}));
  CHECK(is_nef_on_target(x, cls({1, -1}), ContractionSet{}));
  CHECK_FALSE(is_ample_on_target(x, cls({1, 0}), ContractionSet{}));

  for (const auto& cfg : testing::bundled_configs()) {
    for (const auto& s : std::vector<ContractionSet>{{}}) {
      auto omega = ample_representative(cfg, s);
      CHECK(is_ample_on_target(cfg, omega, s));
      CHECK(omega.is_integral());
    }
  }
}
