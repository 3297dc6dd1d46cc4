#include "stabchamber/rational.hpp"

#include <cctype>

#include "stabchamber/errors.hpp"

namespace stabchamber {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("not a rational literal: '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("not a decimal literal: '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole), 10);
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac), 10);
    value = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(s)) throw ParseError("not a rational literal: '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(s), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str(10);
}

}  // namespace stabchamber
