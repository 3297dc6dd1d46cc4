#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabchamber/configuration.hpp"
#include "stabchamber/contraction_set.hpp"
#include "stabchamber/lattice.hpp"

namespace stabchamber {

/// S is valid iff every j in S has all its infinitely-near predecessors
/// {i < j : p_i in C_j} in S.
bool is_valid(const BlowUpConfig& cfg, const ContractionSet& s);

/// Throws ValidityError when S is not a valid contraction set.
void require_valid(const BlowUpConfig& cfg, const ContractionSet& s);

/// Configuration-aware split; rejects invalid S.
Split split(const BlowUpConfig& cfg, const NSClass& alpha, const ContractionSet& s);

/// All valid contraction sets in graded lexicographic order. The empty set
/// (identity morphism) comes first.
std::vector<ContractionSet> all_contractions(const BlowUpConfig& cfg);

enum class GeneratorKind { TypeI, TypeII };

std::string to_string(GeneratorKind kind);

struct Classification {
  GeneratorKind kind = GeneratorKind::TypeI;
  std::optional<int> kappa;
};

/// Relative type of i in S: TypeII with kappa = min(on(i) ∩ S) when that
/// intersection is non-empty, TypeI otherwise.
Classification classify(const BlowUpConfig& cfg, const ContractionSet& s, int i);

/// Numerical shadow of one generator S_i of the heart of objects
/// contracted by f_S.
struct Generator {
  int index = 0;
  GeneratorKind kind = GeneratorKind::TypeI;
  std::optional<int> kappa;
  ChernCharacter ch;
  std::string divisor_note;
};

std::vector<Generator> generators(const BlowUpConfig& cfg, const ContractionSet& s);

/// Strict-transform decomposition of the total transform E_j as a list of
/// (component index, multiplicity), ascending by index.
std::vector<std::pair<int, int>> total_transform_components(const BlowUpConfig& cfg, int j);

/// Renders sum m_k [C_k] as "C_1+2C_2+C̄_3"; a bar marks components whose
/// strict transform differs from the total transform.
std::string render_divisor(const BlowUpConfig& cfg, const std::vector<std::pair<int, int>>& parts);

struct BlowdownStep {
  int pivot = 0;
  ContractionSet lower;
};

/// Indices of S that can be contracted last (relative type I), with the
/// smaller contraction set S \ {j}.
std::vector<BlowdownStep> blowdown_successors(const BlowUpConfig& cfg, const ContractionSet& s);

}  // namespace stabchamber
