#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "stabchamber/errors.hpp"
#include "stabchamber/stability.hpp"

using namespace stabchamber;
using testing::cls;
using testing::E;
using testing::H;

TEST_CASE("central charge values") {
  CHECK(z_eval(ch_point(2), cls({3, -1, 1})) == ChargeValue{-1, 0});
  CHECK(z_eval(ch_structure_sheaf(1), cls({2, -1})) == ChargeValue{Rational(3, 2), 0});
  CHECK(z_eval(ch_of_divisor_sheaf(E(1, 1)), cls({2, -1})) == ChargeValue{Rational(-1, 2), 1});
  CHECK_THROWS_AS(z_eval(ch_point(2), H(1)), DimensionError);

  CHECK(z_target(ch_structure_sheaf(1), cls({2, 0}), E(1, 1)) == ChargeValue{Rational(3, 2), 0});
  CHECK_THROWS_AS(z_target(ch_structure_sheaf(1), cls({2, 1}), E(1, 1)), OrthogonalityError);
}

TEST_CASE("phases") {
  CHECK(phase({-1, 0}) == 1.0);
  CHECK(phase({0, 1}) == doctest::Approx(0.5));
  CHECK(phase({1, 1}) == doctest::Approx(0.25));
  CHECK(in_closed_upper_half({-1, 0}));
  CHECK_FALSE(in_closed_upper_half({1, 0}));
  CHECK_FALSE(in_closed_upper_half({0, 0}));
  CHECK_FALSE(in_closed_upper_half({1, -1}));
  CHECK_THROWS_AS(phase({1, 0}), PositivityError);
  CHECK_THROWS_AS(phase({0, -2}), PositivityError);
}

TEST_CASE("charges of pulled-back objects") {
  testing::Random rnd(61);
  for (int trial = 0; trial < 200; ++trial) {
    auto cfg = rnd.config(static_cast<int>(rnd.integer(1, 6)));
    auto s = rnd.valid_set(cfg);
    auto alpha = rnd.ns_class(cfg.n());
    auto c = rnd.ns_class(cfg.n());
    NSClass omega = alpha;
    NSClass d = NSClass::zero(cfg.n());
    for (int i : s) {
      Rational t = alpha.e(i);
      omega = omega - t * E(cfg.n(), i);
      d = d + t * E(cfg.n(), i);
      c = c - c.e(i) * E(cfg.n(), i);
    }
    ChernCharacter ch{static_cast<int>(rnd.integer(-3, 3)), c, rnd.rational()};
    CHECK(z_eval(ch, alpha) == z_target(ch, omega, d));
    CHECK(z_eval(ch_point(cfg.n()), alpha) == ChargeValue{-1, 0});
  }
}

TEST_CASE("target surfaces") {
  auto c = testing::two_on_third();
  CHECK(describe_target(c, ContractionSet{}).name == "X");
  CHECK(describe_target(c, ContractionSet{1, 2, 3}).name == "P2");
  auto one = describe_target(c, ContractionSet{1});
  CHECK(one.name == "Bl_{p2,p3} P2");
  CHECK(one.remaining == std::vector<int>{2, 3});
  CHECK(one.on.at(2) == std::vector<int>{3});
}

TEST_CASE("moduli of the skyscraper class") {
  auto x = testing::single_blowup();
  auto blown_up = moduli_of_point(x, cls({2, -1}));
  CHECK(blown_up.kind == ModuliReport::Kind::Surface);
  CHECK(blown_up.surface->name == "X");
  CHECK(moduli_of_point(x, cls({2, 1})).surface->name == "P2");
  auto w = moduli_of_point(x, cls({1, 0}));
  CHECK(w.kind == ModuliReport::Kind::Wall);
  CHECK(w.walls.size() == 1);
  CHECK(moduli_of_point(x, cls({1, 2})).kind == ModuliReport::Kind::Outside);
  CHECK(to_string(ModuliReport::Kind::Wall) == "wall");
}

TEST_CASE("wall traces in a slice") {
  auto traces = point_class_walls(testing::single_blowup(), NSClass::zero(1), H(1), E(1, 1),
                                  SliceWindow{});
  REQUIRE(traces.size() == 2);
  for (const auto& t : traces) {
    for (const auto& [a, b] : {std::pair{t.a0, t.b0}, std::pair{t.a1, t.b1}}) {
      CHECK(dot(a * H(1) + b * E(1, 1), t.curve) == 0);
      CHECK(a >= -2);
      CHECK(a <= 2);
      CHECK(b >= -2);
      CHECK(b <= 2);
    }
    CHECK((t.a0 != t.a1 || t.b0 != t.b1));
  }
  bool horizontal = false;
  bool diagonal = false;
  for (const auto& t : traces) {
    if (t.curve == E(1, 1)) horizontal = t.b0 == 0 && t.b1 == 0;
    if (t.curve == cls({1, -1})) diagonal = t.a0 + t.b0 == 0 && t.a1 + t.b1 == 0;
  }
  CHECK(horizontal);
  CHECK(diagonal);
}

TEST_CASE("phase cone of the generators") {
  auto cone = phase_cone(testing::single_blowup(), ContractionSet{1}, Rational(1, 2) * E(1, 1));
  CHECK(cone.theta == doctest::Approx(0.25));
  CHECK(cone.theta_prime == doctest::Approx(0.25));
  CHECK_THROWS_AS(phase_cone(testing::single_blowup(), ContractionSet{}, NSClass::zero(1)),
                  PreconditionError);
  CHECK_THROWS_AS(phase_cone(testing::single_blowup(), ContractionSet{1}, -E(1, 1)),
                  PreconditionError);

  auto c = phase_cone(testing::pair_config(), ContractionSet{1, 2}, cls({0, 2, 1}));
  CHECK(c.theta <= c.theta_prime);
  CHECK(c.theta > 0);
  CHECK(c.theta_prime < 1);
}

TEST_CASE("support quantities") {
  auto x = testing::single_blowup();
  auto r = support_quantities(x, ContractionSet{1}, cls({2, Rational(1, 2)}));
  CHECK(r.l_sup == Rational(1, 8));
  CHECK(r.m_sup == 1);
  CHECK_FALSE(r.m_attained);
  CHECK(r.c_omega == 0);
  REQUIRE(r.theta_range.has_value());
  REQUIRE(r.k_theta.has_value());
  CHECK(*r.k_theta == doctest::Approx(k_theta(r.theta_range->theta)));

  auto blown = support_quantities(x, ContractionSet{}, cls({3, -1}));
  CHECK(blown.c_omega == 8);
  CHECK(blown.l_sup == Rational(1, 16));
  CHECK_FALSE(blown.theta_range.has_value());

  CHECK(support_quantities(x, ContractionSet{1}, cls({1, Rational(1, 2)})).c_omega == 0);
  CHECK_THROWS(support_quantities(x, ContractionSet{}, cls({1, 1})));
}

TEST_CASE("sector bound") {
  CHECK(k_theta(0.5) == doctest::Approx(0.5));
  CHECK(k_theta(0.25) == doctest::Approx(0.25));
  for (double theta : {0.125, 0.25, 0.5}) {
    auto check = check_sector_bound(theta, 5000, 6, 7);
    CHECK(check.violations == 0);
    CHECK(check.min_ratio >= check.bound);
    // The bound is below the exact minimum sin(pi theta / 2) for two terms.
    CHECK(check.bound <= std::sin(std::numbers::pi * theta / 2));
    auto again = check_sector_bound(theta, 5000, 6, 7);
    CHECK(again.min_ratio == check.min_ratio);
  }
}

TEST_CASE("phases of effective combinations stay in the phase cone") {
  testing::Random rnd(67);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto cfg = rnd.config(static_cast<int>(rnd.integer(1, 5)));
    for (const auto& w : chamber_graph(cfg).edges) {
      auto d = split(w.witness_upper, w.ref.upper).d_part;
      auto cone = phase_cone(cfg, w.ref.upper, d);
      auto gens = generators(cfg, w.ref.upper);
      for (int sample = 0; sample < 5; ++sample) {
        ChernCharacter combo{0, NSClass::zero(cfg.n()), 0};
        bool any = false;
        for (const auto& g : gens) {
          long m = rnd.integer(0, 5);
          any = any || m > 0;
          combo = combo + m * g.ch;
        }
        if (!any) continue;
        double ph = phase(z_eval(combo, d));
        CHECK(ph >= cone.theta - 1e-12);
        CHECK(ph <= cone.theta_prime + 1e-12);
        ++checked;
      }
    }
  }
  CHECK(checked > 500);
}
