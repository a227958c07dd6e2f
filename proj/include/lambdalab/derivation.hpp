#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lambdalab/environment.hpp"
#include "lambdalab/result.hpp"
#include "lambdalab/rules.hpp"
#include "lambdalab/syntax.hpp"

namespace lambdalab {

/// A term and the steps derived from it. Rules only ever apply to the last
/// term; growth is append-only.
struct Derivation {
  std::optional<std::string> name;
  std::vector<Term> steps;
  std::vector<Rule> rules;

  const Term& last() const { return steps.back(); }

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

Derivation from_ast(const DerivationAst& item);
DerivationAst to_ast(const Derivation& d);

struct AlphaRename {
  TermPath path;
  std::string new_name;
};
struct BetaAt {
  TermPath path;
};
struct ExpandAt {
  TermPath path;
};
using Action = std::variant<AlphaRename, BetaAt, ExpandAt>;

/// Applies an action to the last term. β on a reference-headed redex records
/// each expansion as its own ≡ step before the β step.
Result<Derivation> apply_action(const Derivation& d, const Action& action, const Environment& env);

enum class VerdictStatus { Valid, Invalid };

struct StepVerdict {
  std::size_t index = 0;  // 1-based: the step producing steps[index]
  VerdictStatus status = VerdictStatus::Valid;
  std::optional<std::string> reason;
  std::optional<TermPath> witness;

  bool valid() const { return status == VerdictStatus::Valid; }
};

/// Checks every arrow. Comparison is literal: names must match exactly.
std::vector<StepVerdict> validate_derivation(const Derivation& d, const Environment& env);
StepVerdict validate_step(const Term& from, Rule rule, const Term& to, const Environment& env);

enum class Strategy { NormalOrder, ApplicativeOrder };

enum class Outcome { NormalForm, StepLimit, Stuck };

struct NormalizeResult {
  Derivation trace;
  Outcome outcome = Outcome::NormalForm;
  std::optional<CaptureReport> capture;  // set when Stuck
};

/// Picks the redex the strategy reduces next.
std::optional<RedexInfo> select_redex(const Term& t, const Environment& env, Strategy strategy);

/// Reduces until normal form, `max_steps` recorded steps, or a capture
/// refusal. The trace never holds more than max_steps + 1 terms.
NormalizeResult normalize(const Term& t, const Environment& env, Strategy strategy,
                          std::size_t max_steps);

std::string_view outcome_name(Outcome outcome);

/// Environment of the named items of a document. Redefinitions keep the first
/// definition; definitions on a reference cycle are dropped. Both are
/// reported as errors.
struct EnvironmentBuild {
  Environment env;
  Diagnostics diagnostics;
};
EnvironmentBuild build_environment(const DocumentAst& doc);

}  // namespace lambdalab
