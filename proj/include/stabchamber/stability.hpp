#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabchamber/chambers.hpp"
#include "stabchamber/configuration.hpp"
#include "stabchamber/lattice.hpp"

namespace stabchamber {

/// Exact value re + i im of a central charge.
struct ChargeValue {
  Rational re;
  Rational im;
  friend bool operator==(const ChargeValue&, const ChargeValue&) = default;
};

/// Z_alpha(E) = -ch2(E) + (alpha^2 / 2) ch0(E) + i ch1(E).alpha.
ChargeValue z_eval(const ChernCharacter& ch, const NSClass& alpha);

/// Z_{omega,D}(M) = Z_omega(M) + (D^2 / 2) ch0(M). Throws
/// OrthogonalityError unless omega . D = 0.
ChargeValue z_target(const ChernCharacter& ch, const NSClass& omega, const NSClass& d);

/// z != 0 with im > 0, or im = 0 and re < 0. Decided exactly.
bool in_closed_upper_half(const ChargeValue& z);

/// arg(z) / pi in (0, 1]. Throws PositivityError outside the closed upper
/// half plane with the positive real ray removed.
double phase(const ChargeValue& z);

/// Y_S as a blow-up of P^2 in the points not contracted by f_S.
struct SurfaceDescriptor {
  ContractionSet contracted;
  std::vector<int> remaining;
  /// Membership relation restricted to the remaining points.
  std::map<int, std::vector<int>> on;
  std::string name;
};

SurfaceDescriptor describe_target(const BlowUpConfig& cfg, const ContractionSet& s);

struct ModuliReport {
  enum class Kind { Surface, Wall, Outside };
  Kind kind = Kind::Outside;
  std::optional<SurfaceDescriptor> surface;
  std::vector<WallRef> walls;
};

std::string to_string(ModuliReport::Kind kind);

/// Moduli space of the skyscraper class for a stability parameter alpha.
ModuliReport moduli_of_point(const BlowUpConfig& cfg, const NSClass& alpha);

/// Segment of {alpha : dot(alpha, curve) = 0} inside a slice window, in
/// window coordinates (a, b).
struct WallTrace {
  NSClass curve;
  Rational a0, b0, a1, b1;
};

/// Hyperplanes orthogonal to the curve set, clipped to the slice window.
/// Candidate destabilizing walls for the skyscraper class.
std::vector<WallTrace> point_class_walls(const BlowUpConfig& cfg, const NSClass& origin,
                                         const NSClass& u, const NSClass& v,
                                         const SliceWindow& window);

struct PhaseCone {
  double theta = 0;
  double theta_prime = 0;
};

/// Phase range of Z_D on the generators of the heart of f_S.
PhaseCone phase_cone(const BlowUpConfig& cfg, const ContractionSet& s, const NSClass& d);

/// sin^2(pi theta) / 2.
double k_theta(double theta);

struct SupportReport {
  Rational c_omega;
  Rational l_sup;
  Rational m_sup;
  bool m_attained = false;
  std::optional<PhaseCone> theta_range;
  std::optional<double> k_theta;
};

/// Requires the omega-part of alpha over S to be ample on Y_S and, for
/// non-empty S, every generator charge at D in the open upper half plane.
SupportReport support_quantities(const BlowUpConfig& cfg, const ContractionSet& s,
                                 const NSClass& alpha);

/// Monte-Carlo check of |z_1 + ... + z_k| >= K(theta) (|z_1| + ... + |z_k|)
/// for phases drawn from [theta, 1].
struct SectorBoundCheck {
  double theta = 0;
  double bound = 0;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double min_ratio = 0;
};

SectorBoundCheck check_sector_bound(double theta, std::uint64_t samples, int max_terms,
                                    std::uint64_t seed);

}  // namespace stabchamber
