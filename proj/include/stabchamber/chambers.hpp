#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "stabchamber/configuration.hpp"
#include "stabchamber/contractions.hpp"
#include "stabchamber/lattice.hpp"

namespace stabchamber {

/// The strict inequality dot(alpha, normal) > 0.
struct LinearForm {
  NSClass normal;
  std::string label;
};

/// H-description of the chamber A^dag(Y_S) inside NS(X)_R:
///   generator forms  dot(alpha, c1(S_i)) > 0   for every i in S,
///   ample forms      dot(alpha, c') > 0        for c' the push-forward of
///                                              every non-contracted curve, and H,
///   quadratic        square(alpha) > 0.
struct ChamberSpec {
  ContractionSet s;
  std::vector<LinearForm> generator_forms;
  std::vector<LinearForm> ample_forms;

  bool contains(const NSClass& alpha) const;
  /// Strict inequalities relaxed to non-strict.
  bool closure_contains(const NSClass& alpha) const;
  /// Every linear form, generator forms first.
  std::vector<LinearForm> linear_forms() const;
};

/// Builds the H-description and checks the generator forms against the
/// t-coordinate formulas; a mismatch is a logic_error.
ChamberSpec chamber_spec(const BlowUpConfig& cfg, const ContractionSet& s);

/// Coefficients of D = sum t_k E_k  ->  dot(D, c1(S_i)) in the t_k
/// (entry k, entry 0 unused).
std::vector<Rational> coordinate_form(const BlowUpConfig& cfg, const Generator& g);

/// D in C_{f_S,k}(X): D supported on span{E_i : i in S}, k > 0.
bool c_fk_contains(const BlowUpConfig& cfg, const ContractionSet& s, const NSClass& d,
                   const Rational& k);

bool a_dagger_contains(const BlowUpConfig& cfg, const ContractionSet& s, const NSClass& alpha);
bool a_dagger_closure_contains(const BlowUpConfig& cfg, const ContractionSet& s,
                               const NSClass& alpha);

/// The wall between A^dag(Y_upper) and A^dag(Y_lower), lower = upper \ {pivot}.
struct WallRef {
  ContractionSet upper;
  ContractionSet lower;
  int pivot = 0;

  std::string to_string() const;
  friend bool operator==(const WallRef&, const WallRef&) = default;
};

struct Wall {
  WallRef ref;
  /// Facet lies in {alpha : dot(alpha, equation) = 0}; equation = E_pivot.
  NSClass equation;
  /// Rational point of the open facet.
  NSClass witness;
  /// witness + eps E_pivot (upper chamber) and witness - eps E_pivot (lower).
  NSClass witness_upper;
  NSClass witness_lower;
  Rational eps;
};

/// Wall crossed by blowing down C_j. Throws PivotError unless j is of
/// relative type I in S.
Wall wall(const BlowUpConfig& cfg, const ContractionSet& s, int j,
          const Rational& eps = Rational(1, 100));

/// Relatively open facet: alpha = f_S^* omega + D with omega ample on Y_S,
/// D in C_{f_{S\{j}}, omega^2}(X) and t_j = 0.
bool facet_contains(const BlowUpConfig& cfg, const WallRef& w, const NSClass& alpha);

/// Closure semantics used by locate(): the pivot equation holds, alpha is
/// non-zero and lies in the closures of both chambers.
bool wall_contains(const BlowUpConfig& cfg, const WallRef& w, const NSClass& alpha);

struct ChamberGraph {
  std::vector<ContractionSet> nodes;
  std::vector<Wall> edges;
};

ChamberGraph chamber_graph(const BlowUpConfig& cfg, const Rational& eps = Rational(1, 100));

/// All walls without witnesses, in the order chamber_graph() uses.
std::vector<WallRef> wall_refs(const BlowUpConfig& cfg);

struct LocateResult {
  std::vector<ContractionSet> chambers;
  std::vector<WallRef> walls;
  bool outside = false;

  friend bool operator==(const LocateResult&, const LocateResult&) = default;
};

LocateResult locate(const BlowUpConfig& cfg, const NSClass& alpha);

/// Axis-aligned window of the (a, b) parameter plane of a slice
/// origin + a u + b v, sampled at grid x grid cell centres.
struct SliceWindow {
  Rational a_min = -2;
  Rational a_max = 2;
  Rational b_min = -2;
  Rational b_max = 2;
  int grid = 50;
};

struct SliceMap {
  static constexpr int kWall = -1;
  static constexpr int kOutside = -2;

  NSClass origin;
  NSClass u;
  NSClass v;
  SliceWindow window;
  /// Legend: label k >= 0 refers to chambers[k].
  std::vector<ContractionSet> chambers;
  /// Row-major, labels[ib * grid + ia].
  std::vector<int> labels;

  Rational a_at(int ia) const;
  Rational b_at(int ib) const;
  NSClass point(int ia, int ib) const;
  int label(int ia, int ib) const { return labels[static_cast<std::size_t>(ib * window.grid + ia)]; }
};

/// Throws DegenerateBasisError if u, v are linearly dependent.
SliceMap slice(const BlowUpConfig& cfg, const NSClass& origin, const NSClass& u, const NSClass& v,
               const SliceWindow& window, unsigned workers = 0);

/// Exact 2D helpers for homogeneous slices span{u, v}.
using Direction2D = std::array<Rational, 2>;

/// p x + q y > 0.
struct HalfPlane2D {
  Rational p;
  Rational q;
};

/// a x^2 + 2 b x y + c y^2 > 0.
struct Quadratic2D {
  Rational a;
  Rational b;
  Rational c;
};

/// Open angular sector swept counter-clockwise from `from` to `to`;
/// both directions are primitive integer vectors.
struct Sector {
  Direction2D from;
  Direction2D to;
  friend bool operator==(const Sector&, const Sector&) = default;
};

/// Exact angular decomposition of {half-planes} ∩ {quadratic > 0}. Throws
/// PreconditionError when a boundary ray is irrational.
std::vector<Sector> open_sectors(const std::vector<HalfPlane2D>& half_planes,
                                 const std::optional<Quadratic2D>& quadratic);

/// open_sectors() of a chamber restricted to the plane span{u, v}.
std::vector<Sector> planar_sectors(const ChamberSpec& spec, const NSClass& u, const NSClass& v);

/// Greedy maximal chain {} = S_0 ⊂ S_1 ⊂ ... ⊂ {1..N}, adding the
/// smallest contractible index at each step.
std::vector<ContractionSet> default_mmp_chain(const BlowUpConfig& cfg);

/// Piecewise-linear path through the chambers of `chain` (consecutive sets
/// differ by one type-I index); each crossing passes through a wall witness.
std::vector<NSClass> mmp_path(const BlowUpConfig& cfg, const std::vector<ContractionSet>& chain,
                              const Rational& eps = Rational(1, 100));

/// Point at parameter t in [0, 1]; vertices sit at t = k / (size - 1).
NSClass path_point(const std::vector<NSClass>& vertices, const Rational& t);

}  // namespace stabchamber
