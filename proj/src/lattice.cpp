#include "stabchamber/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "stabchamber/errors.hpp"

namespace stabchamber {

// ---------------------------------------------------------------------------
// ContractionSet

ContractionSet::ContractionSet(std::initializer_list<int> indices)
    : ContractionSet(std::vector<int>(indices)) {}

ContractionSet::ContractionSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool ContractionSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

ContractionSet ContractionSet::without(int i) const {
  std::vector<int> out;
  out.reserve(indices_.size());
  for (int k : indices_) {
    if (k != i) out.push_back(k);
  }
  return ContractionSet(std::move(out));
}

ContractionSet ContractionSet::with(int i) const {
  auto out = indices_;
  out.push_back(i);
  return ContractionSet(std::move(out));
}

std::string ContractionSet::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(indices_[k]);
  }
  return out + "}";
}

std::strong_ordering operator<=>(const ContractionSet& a, const ContractionSet& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.indices_ <=> b.indices_;
}

// ---------------------------------------------------------------------------
// NSClass

NSClass::NSClass(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DimensionError("NS class needs at least the H coordinate");
  for (auto& c : coeffs_) c.canonicalize();
}

NSClass NSClass::zero(int n) {
  if (n < 0) throw DimensionError("negative configuration size");
  return NSClass(std::vector<Rational>(static_cast<std::size_t>(n) + 1));
}

NSClass NSClass::hyperplane(int n) {
  auto c = zero(n);
  c.coeffs_[0] = 1;
  return c;
}

NSClass NSClass::exceptional(int n, int i) {
  if (i < 1 || i > n) {
    throw IndexError("exceptional index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  }
  auto c = zero(n);
  c.coeffs_[static_cast<std::size_t>(i)] = 1;
  return c;
}

NSClass NSClass::from_ints(const std::vector<long>& coeffs) {
  std::vector<Rational> q;
  q.reserve(coeffs.size());
  for (long v : coeffs) q.emplace_back(v);
  return NSClass(std::move(q));
}

const Rational& NSClass::e(int i) const {
  if (i < 1 || i > n()) {
    throw IndexError("exceptional index " + std::to_string(i) + " outside 1.." + std::to_string(n()));
  }
  return coeffs_[static_cast<std::size_t>(i)];
}

bool NSClass::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

bool NSClass::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& q) { return q.get_den() == 1; });
}

std::string NSClass::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& q = coeffs_[k];
    if (q == 0) continue;
    Rational mag = abs(q);
    if (first) {
      if (q < 0) out << "-";
    } else {
      out << (q < 0 ? " - " : " + ");
    }
    if (mag != 1) out << stabchamber::to_string(mag) << (mag.get_den() == 1 ? "" : " ");
    if (k == 0) {
      out << "H";
    } else {
      out << "E" << k;
    }
    first = false;
  }
  return first ? "0" : out.str();
}

NSClass& NSClass::operator+=(const NSClass& other) {
  if (size() != other.size()) throw DimensionError("NS class length mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

NSClass& NSClass::operator-=(const NSClass& other) {
  if (size() != other.size()) throw DimensionError("NS class length mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

NSClass& NSClass::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Rational dot(const NSClass& a, const NSClass& b) {
  if (a.size() != b.size()) {
    throw DimensionError("cannot pair classes of length " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  Rational out = a[0] * b[0];
  for (std::size_t k = 1; k < a.size(); ++k) out -= a[k] * b[k];
  return out;
}

Rational square(const NSClass& a) { return dot(a, a); }

NSClass canonical_class(int n) {
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(1));
  c[0] = -3;
  return NSClass(std::move(c));
}

// ---------------------------------------------------------------------------
// ChernCharacter

ChernCharacter& ChernCharacter::operator+=(const ChernCharacter& other) {
  rank += other.rank;
  c1 += other.c1;
  ch2 += other.ch2;
  return *this;
}

ChernCharacter& ChernCharacter::operator-=(const ChernCharacter& other) {
  rank -= other.rank;
  c1 -= other.c1;
  ch2 -= other.ch2;
  return *this;
}

ChernCharacter operator*(long k, const ChernCharacter& a) {
  return ChernCharacter{static_cast<int>(k * a.rank), Rational(k) * a.c1, Rational(k) * a.ch2};
}

std::string ChernCharacter::to_string() const {
  return "(" + std::to_string(rank) + ", " + c1.to_string() + ", " + stabchamber::to_string(ch2) +
         ")";
}

ChernCharacter ch_of_divisor_sheaf(const NSClass& divisor) {
  return ChernCharacter{0, divisor, Rational(-square(divisor) / 2)};
}

ChernCharacter ch_point(int n) { return ChernCharacter{0, NSClass::zero(n), Rational(1)}; }

ChernCharacter ch_structure_sheaf(int n) { return ChernCharacter{1, NSClass::zero(n), Rational(0)}; }

ChernCharacter shift_parity(const ChernCharacter& ch, int n) {
  if (n % 2 == 0) return ch;
  return ChernCharacter{-ch.rank, -ch.c1, Rational(-ch.ch2)};
}

// ---------------------------------------------------------------------------
// Split

namespace {

void check_range(const NSClass& alpha, const ContractionSet& s) {
  for (int i : s) {
    if (i < 1 || i > alpha.n()) {
      throw ValidityError("index " + std::to_string(i) + " of " + s.to_string() +
                          " outside 1.." + std::to_string(alpha.n()));
    }
  }
}

}  // namespace

Split split(const NSClass& alpha, const ContractionSet& s) {
  check_range(alpha, s);
  auto d = NSClass::zero(alpha.n());
  for (int i : s) {
    auto ei = NSClass::exceptional(alpha.n(), i);
    d += Rational(-dot(alpha, ei)) * ei;
  }
  return Split{alpha - d, d};
}

bool supported_on(const NSClass& alpha, const ContractionSet& s) {
  if (alpha.h() != 0) return false;
  for (int i = 1; i <= alpha.n(); ++i) {
    if (!s.contains(i) && alpha.e(i) != 0) return false;
  }
  return true;
}

NSClass drop_support(const NSClass& c, const ContractionSet& s) {
  std::vector<Rational> out(c.coeffs().begin(), c.coeffs().end());
  for (int i : s) {
    if (i >= 1 && i <= c.n()) out[static_cast<std::size_t>(i)] = 0;
  }
  return NSClass(std::move(out));
}

}  // namespace stabchamber
