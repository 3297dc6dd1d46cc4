#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stabchamber/lattice.hpp"

namespace stabchamber {

/// Where a class in the curve set comes from.
enum class CurveOrigin {
  StrictTransform,  ///< strict transform of an exceptional curve, square < 0
  MinusOneClass,    ///< integral class with c^2 = K.c = -1
  RulingClass,      ///< fibre H - E1 of the single blow-up (square 0)
  Declared,         ///< user supplied effective class
};

std::string to_string(CurveOrigin origin);

struct Curve {
  NSClass cls;
  CurveOrigin origin;
};

/// Finite set of effective curve classes that backs every ampleness and
/// nefness test in the engine.
struct CurveSet {
  std::vector<Curve> curves;

  std::size_t size() const { return curves.size(); }
  bool contains(const NSClass& c) const;
};

/// One violated configuration rule.
struct Violation {
  std::string rule;
  std::vector<int> indices;
  std::string message;
};

/// Ordered blow-up data X = X_1 -> X_2 -> ... -> X_{N+1} = P^2.
///
/// on(i) is the set of j > i such that the point p_i blown up by the i-th
/// contraction lies on the exceptional curve C_j. The configuration is
/// immutable; copies share the memoized curve set.
class BlowUpConfig {
 public:
  BlowUpConfig();
  /// `on` must have exactly n entries (entry k describes index k+1).
  /// Structural rules are not enforced here; see validate().
  BlowUpConfig(int n, std::vector<std::vector<int>> on, std::vector<NSClass> extra_curves = {});

  static BlowUpConfig disjoint(int n);

  int n() const { return n_; }
  /// Sorted membership set of index i.
  const std::vector<int>& on(int i) const;
  /// p_i in C_j.
  bool lies_on(int i, int j) const;
  /// {i : j in on(i)}, sorted.
  std::vector<int> points_on(int j) const;
  const std::vector<NSClass>& extra_curves() const { return extra_curves_; }

  /// Memoized negative_curves(*this). Safe to call from several threads.
  const CurveSet& curve_set() const;

  friend bool operator==(const BlowUpConfig& a, const BlowUpConfig& b) {
    return a.n_ == b.n_ && a.on_ == b.on_ && a.extra_curves_ == b.extra_curves_;
  }

 private:
  struct Cache;

  int n_ = 0;
  std::vector<std::vector<int>> on_;
  std::vector<NSClass> extra_curves_;
  std::shared_ptr<Cache> cache_;
};

/// Empty result means the configuration is consistent.
std::vector<Violation> validate(const BlowUpConfig& cfg);

/// Throws ValidityError listing every violation.
void require_valid(const BlowUpConfig& cfg);

/// Class of the strict transform of C_j on X: E_j - sum_{i : p_i in C_j} E_i.
NSClass strict_transform(const BlowUpConfig& cfg, int j);

/// Every integral class dH - sum m_i E_i with d >= 0, square -1 and
/// K-degree -1. Independent of the configuration beyond n.
std::vector<NSClass> minus_one_classes(int n, int max_degree = 6);

/// Strict transforms of negative square, the (-1)-classes (N <= 8) and the
/// declared extra curves, deduplicated, in that order.
CurveSet negative_curves(const BlowUpConfig& cfg);

/// Ampleness of omega (pulled back from Y_S) on the contraction target Y_S.
/// Throws OrthogonalityError unless omega is orthogonal to E_i, i in S.
bool is_ample_on_target(const BlowUpConfig& cfg, const NSClass& omega, const ContractionSet& s);

/// Closure of the above: every strict inequality relaxed to >= 0.
bool is_nef_on_target(const BlowUpConfig& cfg, const NSClass& omega, const ContractionSet& s);

/// Some integral class that is ample on Y_S. Throws PreconditionError if
/// none is found (inconsistent declared curves).
NSClass ample_representative(const BlowUpConfig& cfg, const ContractionSet& s);

}  // namespace stabchamber
