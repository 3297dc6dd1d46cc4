#include "stabchamber/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "stabchamber/errors.hpp"

namespace stabchamber {

std::string to_string(CurveOrigin origin) {
  switch (origin) {
    case CurveOrigin::StrictTransform:
      return "strict_transform";
    case CurveOrigin::MinusOneClass:
      return "minus_one_class";
    case CurveOrigin::RulingClass:
      return "ruling_class";
    case CurveOrigin::Declared:
      return "declared";
  }
  return "unknown";
}

bool CurveSet::contains(const NSClass& c) const {
  return std::any_of(curves.begin(), curves.end(), [&](const Curve& x) { return x.cls == c; });
}

struct BlowUpConfig::Cache {
  std::once_flag once;
  CurveSet curves;
  std::exception_ptr error;
};

BlowUpConfig::BlowUpConfig() : cache_(std::make_shared<Cache>()) {}

BlowUpConfig::BlowUpConfig(int n, std::vector<std::vector<int>> on,
                           std::vector<NSClass> extra_curves)
    : n_(n), on_(std::move(on)), extra_curves_(std::move(extra_curves)),
      cache_(std::make_shared<Cache>()) {
  if (n_ < 0) throw DimensionError("configuration size must be non-negative");
  if (on_.size() != static_cast<std::size_t>(n_)) {
    throw DimensionError("membership table has " + std::to_string(on_.size()) +
                         " rows, expected " + std::to_string(n_));
  }
  for (auto& row : on_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  for (const auto& c : extra_curves_) {
    if (c.n() != n_) throw DimensionError("declared curve " + c.to_string() + " has wrong length");
  }
}

BlowUpConfig BlowUpConfig::disjoint(int n) {
  return BlowUpConfig(n, std::vector<std::vector<int>>(static_cast<std::size_t>(n)));
}

const std::vector<int>& BlowUpConfig::on(int i) const {
  if (i < 1 || i > n_) {
    throw IndexError("index " + std::to_string(i) + " outside 1.." + std::to_string(n_));
  }
  return on_[static_cast<std::size_t>(i - 1)];
}

bool BlowUpConfig::lies_on(int i, int j) const {
  const auto& row = on(i);
  return std::binary_search(row.begin(), row.end(), j);
}

std::vector<int> BlowUpConfig::points_on(int j) const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    if (lies_on(i, j)) out.push_back(i);
  }
  return out;
}

const CurveSet& BlowUpConfig::curve_set() const {
  std::call_once(cache_->once, [this] {
    try {
      cache_->curves = negative_curves(*this);
    } catch (...) {
      cache_->error = std::current_exception();
    }
  });
  if (cache_->error) std::rethrow_exception(cache_->error);
  return cache_->curves;
}

std::vector<Violation> validate(const BlowUpConfig& cfg) {
  std::vector<Violation> out;
  for (int i = 1; i <= cfg.n(); ++i) {
    const auto& row = cfg.on(i);
    for (int j : row) {
      if (j <= i || j > cfg.n()) {
        out.push_back({"membership-order", {i, j},
                       "p_" + std::to_string(i) + " can only lie on C_j with " +
                           std::to_string(i) + " < j <= " + std::to_string(cfg.n()) + ", got j = " +
                           std::to_string(j)});
      }
    }
    if (row.size() > 2) {
      out.push_back({"at-most-two-branches", {i},
                     "p_" + std::to_string(i) + " lies on " + std::to_string(row.size()) +
                         " exceptional curves; at most two are allowed"});
    }
    for (std::size_t a = 0; a < row.size(); ++a) {
      for (std::size_t b = a + 1; b < row.size(); ++b) {
        int j = row[a];
        int k = row[b];
        if (j <= i || j > cfg.n() || k > cfg.n()) continue;
        if (!cfg.lies_on(j, k)) {
          out.push_back({"consistency", {i, j, k},
                         "p_" + std::to_string(i) + " lies on C_" + std::to_string(j) + " and C_" +
                             std::to_string(k) + ", so p_" + std::to_string(j) +
                             " must lie on C_" + std::to_string(k)});
        }
      }
    }
  }
  for (const auto& c : cfg.extra_curves()) {
    if (!c.is_integral()) {
      out.push_back({"integral-curve", {}, "declared curve " + c.to_string() + " is not integral"});
    }
  }
  return out;
}

void require_valid(const BlowUpConfig& cfg) {
  auto violations = validate(cfg);
  if (violations.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& v : violations) msg += " [" + v.rule + "] " + v.message + ";";
  throw ValidityError(msg);
}

NSClass strict_transform(const BlowUpConfig& cfg, int j) {
  auto c = NSClass::exceptional(cfg.n(), j);
  for (int i : cfg.points_on(j)) c -= NSClass::exceptional(cfg.n(), i);
  return c;
}

namespace {

// Fills m[pos..] so that sum m^2 == sq_left and sum m == sum_left.
void enumerate_multiplicities(std::vector<long>& m, std::size_t pos, long sq_left, long sum_left,
                              long degree, std::vector<NSClass>& out) {
  const std::size_t left = m.size() - pos;
  if (left == 0) {
    if (sq_left == 0 && sum_left == 0) {
      std::vector<Rational> c;
      c.reserve(m.size() + 1);
      c.emplace_back(degree);
      for (long v : m) c.emplace_back(-v);
      out.emplace_back(std::move(c));
    }
    return;
  }
  // Cauchy-Schwarz: |sum_left| <= sqrt(left * sq_left).
  if (sum_left * sum_left > static_cast<long>(left) * sq_left) return;
  const long bound = static_cast<long>(std::sqrt(static_cast<double>(sq_left)));
  for (long v = -bound; v <= bound; ++v) {
    if (v * v > sq_left) continue;
    m[pos] = v;
    enumerate_multiplicities(m, pos + 1, sq_left - v * v, sum_left - v, degree, out);
  }
  m[pos] = 0;
}

void push_unique(CurveSet& set, NSClass c, CurveOrigin origin) {
  if (!set.contains(c)) set.curves.push_back({std::move(c), origin});
}

}  // namespace

std::vector<NSClass> minus_one_classes(int n, int max_degree) {
  std::vector<NSClass> out;
  if (n == 0) return out;
  std::vector<long> m(static_cast<std::size_t>(n), 0);
  for (long d = 0; d <= max_degree; ++d) {
    // (dH - sum m_i E_i)^2 = d^2 - sum m_i^2 = -1, K.c = -3d + sum m_i = -1.
    enumerate_multiplicities(m, 0, d * d + 1, 3 * d - 1, d, out);
  }
  return out;
}

CurveSet negative_curves(const BlowUpConfig& cfg) {
  CurveSet set;
  const int n = cfg.n();
  if (n > 8 && cfg.extra_curves().empty()) {
    throw UnsupportedEnumerationError(
        "automatic curve enumeration supports at most 8 blown-up points; declare the relevant "
        "effective curves in extra_curves");
  }
  for (int j = 1; j <= n; ++j) {
    auto c = strict_transform(cfg, j);
    if (square(c) < 0) push_unique(set, std::move(c), CurveOrigin::StrictTransform);
  }
  if (n <= 8) {
    for (auto& c : minus_one_classes(n)) push_unique(set, std::move(c), CurveOrigin::MinusOneClass);
  }
  if (n == 1) {
    // The single blow-up is the Hirzebruch surface F_1; its Mori cone is
    // spanned by E1 and the fibre class H - E1.
    push_unique(set, NSClass::from_ints({1, -1}), CurveOrigin::RulingClass);
  }
  for (const auto& c : cfg.extra_curves()) push_unique(set, c, CurveOrigin::Declared);
  return set;
}

namespace {

void require_pulled_back(const BlowUpConfig& cfg, const NSClass& omega, const ContractionSet& s) {
  if (omega.n() != cfg.n()) throw DimensionError("class length does not match configuration");
  for (int i : s) {
    if (dot(omega, NSClass::exceptional(cfg.n(), i)) != 0) {
      throw OrthogonalityError("class " + omega.to_string() + " is not orthogonal to E" +
                               std::to_string(i) + "; it is not pulled back from the target of " +
                               s.to_string());
    }
  }
}

}  // namespace

bool is_ample_on_target(const BlowUpConfig& cfg, const NSClass& omega, const ContractionSet& s) {
  require_pulled_back(cfg, omega, s);
  if (square(omega) <= 0) return false;
  if (dot(omega, NSClass::hyperplane(cfg.n())) <= 0) return false;
  for (const auto& curve : cfg.curve_set().curves) {
    if (supported_on(curve.cls, s)) continue;
    if (dot(omega, curve.cls) <= 0) return false;
  }
  return true;
}

bool is_nef_on_target(const BlowUpConfig& cfg, const NSClass& omega, const ContractionSet& s) {
  require_pulled_back(cfg, omega, s);
  if (square(omega) < 0) return false;
  if (dot(omega, NSClass::hyperplane(cfg.n())) < 0) return false;
  for (const auto& curve : cfg.curve_set().curves) {
    if (supported_on(curve.cls, s)) continue;
    if (dot(omega, curve.cls) < 0) return false;
  }
  return true;
}

NSClass ample_representative(const BlowUpConfig& cfg, const ContractionSet& s) {
  const int n = cfg.n();
  // Weights growing along infinitely-near chains keep every strict
  // transform positive; a large enough degree handles the rest.
  std::vector<Rational> weight(static_cast<std::size_t>(n) + 1);
  Rational total = 0;
  for (int j = 1; j <= n; ++j) {
    if (s.contains(j)) continue;
    Rational w = 1;
    for (int i : cfg.points_on(j)) {
      if (!s.contains(i)) w += weight[static_cast<std::size_t>(i)];
    }
    weight[static_cast<std::size_t>(j)] = w;
    total += w;
  }
  Rational degree = total + 1;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
    c[0] = degree;
    for (int j = 1; j <= n; ++j) c[static_cast<std::size_t>(j)] = -weight[static_cast<std::size_t>(j)];
    NSClass omega(std::move(c));
    if (is_ample_on_target(cfg, omega, s)) return omega;
    degree *= 2;
  }
  throw PreconditionError("no ample class found on the target of " + s.to_string() +
                          "; check the declared curves");
}

}  // namespace stabchamber
