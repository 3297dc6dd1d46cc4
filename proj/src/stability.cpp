#include "stabchamber/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "stabchamber/contractions.hpp"
#include "stabchamber/errors.hpp"

namespace stabchamber {

ChargeValue z_eval(const ChernCharacter& ch, const NSClass& alpha) {
  return {Rational(-ch.ch2 + square(alpha) / 2 * ch.rank), dot(ch.c1, alpha)};
}

ChargeValue z_target(const ChernCharacter& ch, const NSClass& omega, const NSClass& d) {
  if (dot(omega, d) != 0) {
    throw OrthogonalityError("omega = " + omega.to_string() + " and D = " + d.to_string() +
                             " are not orthogonal");
  }
  auto z = z_eval(ch, omega);
  z.re += square(d) / 2 * ch.rank;
  return z;
}

bool in_closed_upper_half(const ChargeValue& z) { return z.im > 0 || (z.im == 0 && z.re < 0); }

double phase(const ChargeValue& z) {
  if (!in_closed_upper_half(z)) {
    throw PositivityError("central charge " + to_string(z.re) + " + " + to_string(z.im) +
                          "i is not in the closed upper half plane minus the positive ray");
  }
  if (z.im == 0) return 1.0;
  return std::atan2(to_double(z.im), to_double(z.re)) / std::numbers::pi;
}

SurfaceDescriptor describe_target(const BlowUpConfig& cfg, const ContractionSet& s) {
  SurfaceDescriptor out;
  out.contracted = s;
  for (int i = 1; i <= cfg.n(); ++i) {
    if (s.contains(i)) continue;
    out.remaining.push_back(i);
    std::vector<int> row;
    for (int j : cfg.on(i)) {
      if (!s.contains(j)) row.push_back(j);
    }
    out.on[i] = row;
  }
  if (out.remaining.empty()) {
    out.name = "P2";
  } else if (s.empty()) {
    out.name = "X";
  } else {
    out.name = "Bl_{";
    for (std::size_t k = 0; k < out.remaining.size(); ++k) {
      if (k) out.name += ",";
      out.name += "p" + std::to_string(out.remaining[k]);
    }
    out.name += "} P2";
  }
  return out;
}

std::string to_string(ModuliReport::Kind kind) {
  switch (kind) {
    case ModuliReport::Kind::Surface:
      return "surface";
    case ModuliReport::Kind::Wall:
      return "wall";
    case ModuliReport::Kind::Outside:
      return "outside";
  }
  return "unknown";
}

ModuliReport moduli_of_point(const BlowUpConfig& cfg, const NSClass& alpha) {
  auto where = locate(cfg, alpha);
  ModuliReport out;
  if (!where.walls.empty()) {
    out.kind = ModuliReport::Kind::Wall;
    out.walls = where.walls;
  } else if (!where.chambers.empty()) {
    out.kind = ModuliReport::Kind::Surface;
    out.surface = describe_target(cfg, where.chambers.front());
  }
  return out;
}

std::vector<WallTrace> point_class_walls(const BlowUpConfig& cfg, const NSClass& origin,
                                         const NSClass& u, const NSClass& v,
                                         const SliceWindow& window) {
  std::vector<WallTrace> out;
  for (const auto& curve : cfg.curve_set().curves) {
    const Rational c0 = dot(origin, curve.cls);
    const Rational p = dot(u, curve.cls);
    const Rational q = dot(v, curve.cls);
    if (p == 0 && q == 0) continue;
    // c0 + p a + q b = 0 against the four window edges.
    std::vector<std::pair<Rational, Rational>> hits;
    auto add = [&](const Rational& a, const Rational& b) {
      if (a < window.a_min || a > window.a_max || b < window.b_min || b > window.b_max) return;
      for (const auto& h : hits) {
        if (h.first == a && h.second == b) return;
      }
      hits.emplace_back(a, b);
    };
    if (q != 0) {
      for (const auto& a : {window.a_min, window.a_max}) add(a, Rational(-(c0 + p * a) / q));
    }
    if (p != 0) {
      for (const auto& b : {window.b_min, window.b_max}) add(Rational(-(c0 + q * b) / p), b);
    }
    if (hits.size() < 2) continue;
    std::sort(hits.begin(), hits.end());
    out.push_back({curve.cls, hits.front().first, hits.front().second, hits.back().first,
                   hits.back().second});
  }
  return out;
}

PhaseCone phase_cone(const BlowUpConfig& cfg, const ContractionSet& s, const NSClass& d) {
  auto gens = generators(cfg, s);
  if (gens.empty()) throw PreconditionError("the identity contraction has no generators");
  PhaseCone cone{1.0, 0.0};
  for (const auto& g : gens) {
    auto z = z_eval(g.ch, d);
    if (z.im <= 0) {
      throw PreconditionError("generator " + std::to_string(g.index) +
                              " has central charge outside the open upper half plane");
    }
    double ph = phase(z);
    cone.theta = std::min(cone.theta, ph);
    cone.theta_prime = std::max(cone.theta_prime, ph);
  }
  return cone;
}

double k_theta(double theta) {
  const double s = std::sin(std::numbers::pi * theta);
  return s * s / 2.0;
}

SupportReport support_quantities(const BlowUpConfig& cfg, const ContractionSet& s,
                                 const NSClass& alpha) {
  auto parts = split(cfg, alpha, s);
  const auto& omega = parts.omega_part;
  if (!is_ample_on_target(cfg, omega, s)) {
    throw PreconditionError("omega-part " + omega.to_string() + " is not ample on the target of " +
                            s.to_string());
  }
  const Rational omega_sq = square(omega);

  SupportReport out;
  out.c_omega = 0;
  for (const auto& curve : cfg.curve_set().curves) {
    const Rational c_sq = square(curve.cls);
    const Rational deg = dot(curve.cls, omega);
    if (c_sq > 0 || deg == 0) continue;
    Rational ratio = -c_sq * omega_sq / (deg * deg);
    if (ratio > out.c_omega) out.c_omega = ratio;
  }
  // u / (u + w/2)^2 peaks at u = w/2.
  out.l_sup = 1 / (2 * omega_sq);
  // y^2 / ((w/2 - y)^2 + x^2) on x^2 >= 2 w y tends to 1 as y -> infinity.
  out.m_sup = 1;
  out.m_attained = false;
  if (!s.empty()) {
    out.theta_range = phase_cone(cfg, s, parts.d_part);
    out.k_theta = k_theta(out.theta_range->theta);
  }
  return out;
}

SectorBoundCheck check_sector_bound(double theta, std::uint64_t samples, int max_terms,
                                    std::uint64_t seed) {
  if (!(theta > 0 && theta <= 1)) throw PreconditionError("theta must lie in (0, 1]");
  if (max_terms < 1) throw PreconditionError("need at least one term");
  std::mt19937_64 rng(seed);
  // Portable uniform double in [0, 1).
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  SectorBoundCheck out;
  out.theta = theta;
  out.bound = k_theta(theta);
  out.samples = samples;
  out.min_ratio = 1.0;
  for (std::uint64_t n = 0; n < samples; ++n) {
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
    std::complex<double> total = 0;
    double lengths = 0;
    for (int m = 0; m < k; ++m) {
      double ph;
      // A third of the phases sit on the sector edges, where the bound is tightest.
      switch (rng() % 6) {
        case 0:
          ph = theta;
          break;
        case 1:
          ph = 1.0;
          break;
        default:
          ph = theta + (1.0 - theta) * uniform();
      }
      const double r = std::exp(6.0 * uniform() - 3.0);
      total += std::polar(r, std::numbers::pi * ph);
      lengths += r;
    }
    const double ratio = std::abs(total) / lengths;
    out.min_ratio = std::min(out.min_ratio, ratio);
    if (ratio < out.bound) ++out.violations;
  }
  return out;
}

}  // namespace stabchamber
