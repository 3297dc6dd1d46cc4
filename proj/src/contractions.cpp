#include "stabchamber/contractions.hpp"

#include <algorithm>
#include <map>

#include "stabchamber/errors.hpp"

namespace stabchamber {

bool is_valid(const BlowUpConfig& cfg, const ContractionSet& s) {
  for (int j : s) {
    if (j < 1 || j > cfg.n()) return false;
    for (int i : cfg.points_on(j)) {
      if (!s.contains(i)) return false;
    }
  }
  return true;
}

void require_valid(const BlowUpConfig& cfg, const ContractionSet& s) {
  if (is_valid(cfg, s)) return;
  throw ValidityError("contraction set " + s.to_string() +
                      " is not closed under infinitely-near predecessors");
}

Split split(const BlowUpConfig& cfg, const NSClass& alpha, const ContractionSet& s) {
  require_valid(cfg, s);
  if (alpha.n() != cfg.n()) throw DimensionError("class length does not match configuration");
  return split(alpha, s);
}

namespace {

void extend_ideals(const BlowUpConfig& cfg, int next, std::vector<int>& current,
                   std::vector<ContractionSet>& out) {
  if (next > cfg.n()) {
    out.emplace_back(current);
    return;
  }
  extend_ideals(cfg, next + 1, current, out);
  // Predecessors of `next` all have smaller indices, so they are decided.
  bool closed = true;
  for (int i : cfg.points_on(next)) {
    if (std::find(current.begin(), current.end(), i) == current.end()) {
      closed = false;
      break;
    }
  }
  if (closed) {
    current.push_back(next);
    extend_ideals(cfg, next + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<ContractionSet> all_contractions(const BlowUpConfig& cfg) {
  std::vector<ContractionSet> out;
  std::vector<int> current;
  extend_ideals(cfg, 1, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(GeneratorKind kind) {
  return kind == GeneratorKind::TypeI ? "I" : "II";
}

Classification classify(const BlowUpConfig& cfg, const ContractionSet& s, int i) {
  if (!s.contains(i)) {
    throw PreconditionError("index " + std::to_string(i) + " is not in " + s.to_string());
  }
  for (int j : cfg.on(i)) {
    if (s.contains(j)) return {GeneratorKind::TypeII, j};
  }
  return {GeneratorKind::TypeI, std::nullopt};
}

std::vector<std::pair<int, int>> total_transform_components(const BlowUpConfig& cfg, int j) {
  // E_j = C̄_j + sum_{i : p_i in C_j} E_i, expanded recursively.
  std::map<int, int> mult;
  std::vector<int> stack{j};
  while (!stack.empty()) {
    int k = stack.back();
    stack.pop_back();
    ++mult[k];
    for (int i : cfg.points_on(k)) stack.push_back(i);
  }
  return {mult.begin(), mult.end()};
}

std::string render_divisor(const BlowUpConfig& cfg, const std::vector<std::pair<int, int>>& parts) {
  std::string out;
  for (const auto& [k, m] : parts) {
    if (m == 0) continue;
    if (!out.empty()) out += "+";
    if (m != 1) out += std::to_string(m);
    out += cfg.points_on(k).empty() ? "C" : "C̄";
    out += "_" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace {

std::vector<std::pair<int, int>> subtract(std::vector<std::pair<int, int>> a,
                                          const std::vector<std::pair<int, int>>& b) {
  std::map<int, int> m(a.begin(), a.end());
  for (const auto& [k, v] : b) m[k] -= v;
  std::vector<std::pair<int, int>> out;
  for (const auto& [k, v] : m) {
    if (v != 0) out.emplace_back(k, v);
  }
  return out;
}

}  // namespace

std::vector<Generator> generators(const BlowUpConfig& cfg, const ContractionSet& s) {
  require_valid(cfg, s);
  const int n = cfg.n();
  std::vector<Generator> out;
  out.reserve(s.size());
  for (int i : s) {
    Generator g;
    g.index = i;
    auto cls = classify(cfg, s, i);
    g.kind = cls.kind;
    g.kappa = cls.kappa;
    auto own = total_transform_components(cfg, i);
    if (cls.kind == GeneratorKind::TypeI) {
      // O_{E_i}[-1]
      g.ch = shift_parity(ch_of_divisor_sheaf(NSClass::exceptional(n, i)), 1);
      g.divisor_note = "O_{" + render_divisor(cfg, own) + "}[-1]";
    } else {
      // Kernel of the restriction of the pulled-back O_{C_kappa} to C_i.
      const int kappa = *cls.kappa;
      g.ch = ch_of_divisor_sheaf(NSClass::exceptional(n, kappa)) -
             ch_of_divisor_sheaf(NSClass::exceptional(n, i));
      auto parts = subtract(total_transform_components(cfg, kappa), own);
      const bool irreducible = parts.size() == 1 && parts.front().second == 1;
      g.divisor_note = "O_{" + render_divisor(cfg, parts) + "}" +
                       (irreducible ? "(-1)" : "(-p_" + std::to_string(i) + ")");
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<BlowdownStep> blowdown_successors(const BlowUpConfig& cfg, const ContractionSet& s) {
  require_valid(cfg, s);
  std::vector<BlowdownStep> out;
  for (int j : s) {
    if (classify(cfg, s, j).kind == GeneratorKind::TypeI) out.push_back({j, s.without(j)});
  }
  return out;
}

}  // namespace stabchamber
