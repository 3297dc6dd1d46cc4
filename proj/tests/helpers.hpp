#pragma once

#include <random>
#include <vector>

#include "stabchamber/configuration.hpp"
#include "stabchamber/contractions.hpp"
#include "stabchamber/lattice.hpp"

namespace testing {

using stabchamber::BlowUpConfig;
using stabchamber::ContractionSet;
using stabchamber::NSClass;
using stabchamber::Rational;

inline NSClass cls(std::initializer_list<Rational> coeffs) {
  return NSClass(std::vector<Rational>(coeffs));
}

inline NSClass H(int n) { return NSClass::hyperplane(n); }
inline NSClass E(int n, int i) { return NSClass::exceptional(n, i); }

// Configurations of the worked examples.
inline BlowUpConfig single_blowup() { return BlowUpConfig::disjoint(1); }
inline BlowUpConfig pair_config() { return BlowUpConfig(2, {{2}, {}}); }           // p1 in C2
inline BlowUpConfig two_on_third() { return BlowUpConfig(3, {{3}, {3}, {}}); }     // p1, p2 in C3
inline BlowUpConfig chain3() { return BlowUpConfig(3, {{2}, {3}, {}}); }           // p1 in C2, p2 in C3
inline BlowUpConfig collinear3() {
  return BlowUpConfig(3, {{}, {}, {}}, {NSClass::from_ints({1, -1, -1, -1})});
}

inline std::vector<BlowUpConfig> bundled_configs() {
  return {BlowUpConfig::disjoint(0), single_blowup(), BlowUpConfig::disjoint(3), pair_config(),
          two_on_third(),            chain3(),        collinear3()};
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long span = 12, long max_den = 6) {
    return stabchamber::ratio(integer(-span, span), integer(1, max_den));
  }
  Rational positive_rational(long span = 12, long max_den = 6) {
    return stabchamber::ratio(integer(1, span), integer(1, max_den));
  }

  NSClass ns_class(int n, long span = 12) {
    std::vector<Rational> c;
    for (int k = 0; k <= n; ++k) c.push_back(rational(span));
    return NSClass(std::move(c));
  }

  /// Random configuration satisfying every membership rule by construction.
  BlowUpConfig config(int n) {
    std::vector<std::vector<int>> on(static_cast<std::size_t>(n));
    for (int i = n; i >= 1; --i) {
      if (i == n || integer(0, 2) == 0) continue;
      int j = static_cast<int>(integer(i + 1, n));
      auto& row = on[static_cast<std::size_t>(i - 1)];
      row.push_back(j);
      const auto& next = on[static_cast<std::size_t>(j - 1)];
      if (!next.empty() && coin()) row.push_back(next[static_cast<std::size_t>(integer(0, static_cast<long>(next.size()) - 1))]);
    }
    return BlowUpConfig(n, std::move(on));
  }

  ContractionSet valid_set(const BlowUpConfig& cfg) {
    auto all = stabchamber::all_contractions(cfg);
    return all[static_cast<std::size_t>(integer(0, static_cast<long>(all.size()) - 1))];
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
