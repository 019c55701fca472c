#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace socsim {

// Base class for all library errors.
class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

// Errors raised by constitution operations (unknown target, duplicate name,
// malformed document, ...).
class ConstitutionError : public SimError {
 public:
  explicit ConstitutionError(const std::string& what) : SimError(what) {}
};

// Structured, machine-executable semantics a rule may carry. Guidance text is
// what model-backed agents read; directives are what scripted agents execute.
enum class DirectiveKind {
  // public goods
  kContributeFixed,    // contribute `amount` tokens each round (0-10)
  kPunishBelowMax,     // spend `tokens` (1-3) on the worst below-max
                       // contributor, at most `per_round_cap` tokens per round
  kBroadcastEachRound, // broadcast `text` every round
  // gridworld
  kDepositFirst,             // carrying a needed resource -> deposit ASAP
  kGatherNeeded,             // on a cell with a needed resource -> gather
  kMoveToLargestDeficit,     // move toward the largest-deficit resource
  kShareSurplus,             // give up to `max_units` surplus to a teammate
  kReportRichCluster,        // broadcast cells holding >= `min_units`
  kNoAggressionUnlessAttacked,
  // trading
  kNoDeceptiveProposals,
  kAcceptIfNeededAndFulfillable,
  kBroadcastNeeds,
  kRejectOnlyIfCannotFulfill,
  kAvoidHoarding,
};

struct Directive {
  DirectiveKind kind = DirectiveKind::kContributeFixed;
  int amount = 0;         // kContributeFixed: tokens 0-10
  int tokens = 1;         // kPunishBelowMax: tokens per action 1-3
  int per_round_cap = 1;  // kPunishBelowMax: max tokens spent per round
  int max_units = 1;      // kShareSurplus: units given per transfer
  int min_units = 1;      // kReportRichCluster: cluster size worth reporting
  std::string text;       // kBroadcastEachRound: message body

  bool operator==(const Directive&) const = default;
};

struct ConstitutionRule {
  std::string name;      // short unique identifier
  std::string guidance;  // free text, read verbatim by model-backed agents
  std::string summary;   // one-line description
  int priority = 1;      // 1 (highest) .. 5 (lowest)
  std::optional<Directive> directive;

  bool operator==(const ConstitutionRule&) const = default;
};

struct Constitution {
  std::vector<ConstitutionRule> rules;
  int version = 0;  // increments once per adopted amendment batch

  bool operator==(const Constitution&) const = default;
};

enum class AmendmentAction { kAdd, kModify, kRepeal };

struct Amendment {
  AmendmentAction action = AmendmentAction::kAdd;
  std::string target_rule;                // MODIFY/REPEAL: existing rule name
  std::optional<ConstitutionRule> rule;   // ADD/MODIFY: full rule payload
  std::string justification;
  int proposer = 0;                       // agent id, 0 when not agent-sourced

  bool operator==(const Amendment&) const = default;
};

struct Violation {
  enum class Kind {
    kEmptyName,
    kEmptyGuidance,
    kPriorityOutOfRange,
    kDuplicateRuleName,
    kDirectivePayloadOutOfRange,
    kVersionBlankMismatch,
  };
  Kind kind;
  std::string rule;    // offending rule name ("" for constitution-level)
  std::string detail;
};

// Returns every invariant violation found; empty means valid. Version check:
// a version-0 constitution must be blank (the reverse is not required -- a
// society may legally repeal its way back to zero rules at version > 0).
std::vector<Violation> validate_constitution(const Constitution& c);

// Pure amendment application. ADD appends, MODIFY replaces in place
// (position preserved), REPEAL erases. Version is untouched here; the
// deliberation round bumps it once per adopted batch.
// Throws ConstitutionError on unknown target or duplicate name.
Constitution apply_amendment(const Constitution& c, const Amendment& a);

// Canonical JSON document, byte-deterministic (alphabetical field order),
// trailing newline. parse(serialize(c)) == c.
std::string serialize_constitution(const Constitution& c);
Constitution parse_constitution(const std::string& text);

// Length of the canonical serialized form; the evolution complexity measure.
std::size_t constitution_text_length(const Constitution& c);

// Pointer to the rule with this name, or nullptr.
const ConstitutionRule* find_rule(const Constitution& c, const std::string& name);

// Rules sorted by ascending priority; ties keep list order.
std::vector<ConstitutionRule> rules_by_priority(const Constitution& c);

const char* directive_kind_name(DirectiveKind kind);
DirectiveKind directive_kind_from_name(const std::string& name);
const char* amendment_action_name(AmendmentAction a);
AmendmentAction amendment_action_from_name(const std::string& name);
const char* violation_kind_name(Violation::Kind kind);

}  // namespace socsim
