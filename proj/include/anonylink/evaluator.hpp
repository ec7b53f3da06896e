#pragma once

#include <string>
#include <vector>

#include "anonylink/attacks.hpp"

namespace anonylink {

enum class VerdictClass : std::uint8_t {
  Resistant,
  ProbabilisticallyResistant,
  Unresistant,
  NotApplicable,
};

std::string_view verdict_class_name(VerdictClass v);
VerdictClass verdict_class_from_name(std::string_view name);
// table symbol: resistant = double check, probabilistic = single check
std::string verdict_symbol(VerdictClass v);

struct ResistanceVerdict {
  VerdictClass level = VerdictClass::NotApplicable;
  double p_est = 0.0;  // estimated success rate, probabilistic verdicts only
  AttackOutcome evidence;
};

// Classification rule, applied in order:
//   1. success CI overlaps the baseline (or the measured companion's CI)  -> Resistant
//   2. success rate >= 0.95                                               -> Unresistant
//   3. otherwise                              -> ProbabilisticallyResistant(rate)
// Requires at least 1000 trials of evidence.
//
// The overlap decision uses a Wilson interval at kDecisionZ rather than the
// reported 95% one: a 95% rule would misread a truly baseline-rate adversary
// in ~5% of cells per run, and verdicts are required to be stable across
// seeds. At 10^4 trials the wide interval is still an order of magnitude
// narrower than the smallest real gap the games produce.
ResistanceVerdict classify(const AttackOutcome& outcome);
constexpr double kUnresistantThreshold = 0.95;
constexpr std::uint64_t kClassifyMinTrials = 1000;
constexpr double kDecisionZ = 4.417173413469023;  // two-sided 1e-5

struct MatrixCell {
  Attack attack;
  Medium medium;
  ResistanceVerdict verdict;
};

enum class RenderFormat : std::uint8_t { Json, Markdown, Csv };
RenderFormat render_format_from_name(std::string_view name);

struct AnonymityAssessment {
  SchemeKind scheme;
  AddressScheme addressing;
  bool indirect_deanon_resistant = false;
  std::vector<std::string> reasons;
};

struct MatrixRow {
  SchemeKind scheme;
  std::vector<MatrixCell> cells;  // in matrix_columns() order
};

struct EvaluationMatrix {
  std::vector<MatrixRow> rows;
  std::uint64_t seed = 0;
  std::uint32_t trials = 0;
  std::string config_digest;
  json base_config;  // knobs the run was made with

  const MatrixCell* find(SchemeKind scheme, Attack attack, Medium medium) const;
  json to_json() const;
  static EvaluationMatrix from_json(const json& j);
};

// The (attack, medium) columns the evaluation grid is built over.
const std::vector<std::pair<Attack, Medium>>& matrix_columns();

// Runs the full game grid. base.scheme/attack/medium are ignored; schemes
// defaults to all seven when empty.
EvaluationMatrix build_matrix(const GameConfig& base, std::vector<SchemeKind> schemes = {});

// Indirect de-anonymization resistance: at least one of the four conditions
// (ledger unlinkability, addressless, address encryption, one-time address).
AnonymityAssessment assess_anonymity(SchemeKind scheme, const EvaluationMatrix& matrix);
json to_json(const AnonymityAssessment& a);

struct VerdictDiff {
  SchemeKind scheme;
  Attack attack;
  Medium medium;
  std::string expected;
  std::string computed;
};

// Compares computed verdict classes to the expected fixture; an empty result
// means agreement. Throws on malformed fixtures or unknown scheme rows.
std::vector<VerdictDiff> verify_against_expected(const EvaluationMatrix& matrix,
                                                 const json& fixture);

std::string render(const EvaluationMatrix& matrix, RenderFormat format);

// Path to the expected-verdict fixture shipped with the source tree.
std::string default_fixture_path();

}  // namespace anonylink
