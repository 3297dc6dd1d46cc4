#pragma once

#include <span>
#include <string>
#include <vector>

#include "stabchamber/contraction_set.hpp"
#include "stabchamber/rational.hpp"

namespace stabchamber {

/// A class in NS(X)_Q for X the blow-up of P^2 in N (possibly infinitely
/// near) points, written in the basis (H, E_1, ..., E_N) where H is the
/// pull-back of a line and E_i the total transform of the i-th exceptional
/// curve. The intersection form is diag(1, -1, ..., -1).
class NSClass {
 public:
  NSClass() = default;
  explicit NSClass(std::vector<Rational> coeffs);

  static NSClass zero(int n);
  static NSClass hyperplane(int n);
  /// Total transform E_i, 1 <= i <= n.
  static NSClass exceptional(int n, int i);
  static NSClass from_ints(const std::vector<long>& coeffs);

  /// Number of exceptional indices N (vector length minus one).
  int n() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const Rational> coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }

  /// Coefficient of H.
  const Rational& h() const { return coeffs_.at(0); }
  /// Coefficient of E_i.
  const Rational& e(int i) const;

  bool is_zero() const;
  bool is_integral() const;

  /// e.g. "2H - E1 + 3/2 E3"; "0" for the zero class.
  std::string to_string() const;

  NSClass& operator+=(const NSClass& other);
  NSClass& operator-=(const NSClass& other);
  NSClass& operator*=(const Rational& s);

  friend NSClass operator+(NSClass a, const NSClass& b) { return a += b; }
  friend NSClass operator-(NSClass a, const NSClass& b) { return a -= b; }
  friend NSClass operator-(NSClass a) { return a *= Rational(-1); }
  friend NSClass operator*(const Rational& s, NSClass a) { return a *= s; }
  friend NSClass operator*(NSClass a, const Rational& s) { return a *= s; }
  friend bool operator==(const NSClass& a, const NSClass& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// Intersection pairing. Throws DimensionError on length mismatch.
Rational dot(const NSClass& a, const NSClass& b);
Rational square(const NSClass& a);

/// K_X = -3H + sum E_i.
NSClass canonical_class(int n);

/// Numerical class (ch_0, ch_1, ch_2) of an object on X.
struct ChernCharacter {
  int rank = 0;
  NSClass c1;
  Rational ch2;

  ChernCharacter& operator+=(const ChernCharacter& other);
  ChernCharacter& operator-=(const ChernCharacter& other);
  friend ChernCharacter operator+(ChernCharacter a, const ChernCharacter& b) { return a += b; }
  friend ChernCharacter operator-(ChernCharacter a, const ChernCharacter& b) { return a -= b; }
  friend ChernCharacter operator*(long k, const ChernCharacter& a);
  friend bool operator==(const ChernCharacter&, const ChernCharacter&) = default;

  std::string to_string() const;
};

/// ch(O_D) = (0, D, -D^2/2).
ChernCharacter ch_of_divisor_sheaf(const NSClass& divisor);
/// Skyscraper sheaf of a point: (0, 0, 1).
ChernCharacter ch_point(int n);
/// Structure sheaf O_X: (1, 0, 0).
ChernCharacter ch_structure_sheaf(int n);
/// Class of E[n]: every component multiplied by (-1)^n.
ChernCharacter shift_parity(const ChernCharacter& ch, int n);

/// alpha = omega_part + d_part with d_part in span{E_i : i in S} and
/// omega_part orthogonal to that span.
struct Split {
  NSClass omega_part;
  NSClass d_part;
};

/// Orthogonal split over the index set S. Only the index range is checked
/// here; use the configuration-aware overload in contractions.hpp to also
/// enforce validity of S.
Split split(const NSClass& alpha, const ContractionSet& s);

/// True iff alpha lies in span{E_i : i in S}.
bool supported_on(const NSClass& alpha, const ContractionSet& s);

/// Copy of c with the E_i coordinates for i in S set to zero.
NSClass drop_support(const NSClass& c, const ContractionSet& s);

}  // namespace stabchamber
