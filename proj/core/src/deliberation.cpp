#include "socsim/deliberation.h"

#include <algorithm>
#include <cctype>

namespace socsim {

namespace {

constexpr const char* kMinThresholdName = "Minimum Contribution Requirement";
constexpr const char* kAdminPenaltyName = "Participation Penalty";
constexpr const char* kRedistributeName = "Resource Redistribution";
constexpr const char* kMentorshipName = "Mentorship Support Incentive";
constexpr const char* kCommNormName = "Coordination Broadcast Norm";

enum class Category {
  kMinThreshold,
  kAdminPenalty,
  kRedistribute,
  kMentorship,
  kCommNorm,
  kUnknown,
};

Category category_of_name(const std::string& name) {
  if (name == kMinThresholdName) return Category::kMinThreshold;
  if (name == kAdminPenaltyName) return Category::kAdminPenalty;
  if (name == kRedistributeName) return Category::kRedistribute;
  if (name == kMentorshipName) return Category::kMentorship;
  if (name == kCommNormName) return Category::kCommNorm;
  return Category::kUnknown;
}

Category category_of(const Amendment& a) {
  if (a.action == AmendmentAction::kRepeal) return category_of_name(a.target_rule);
  return a.rule ? category_of_name(a.rule->name) : Category::kUnknown;
}

// Deficit signals ranked worst-first: depressed group output, spread between
// leaders and laggards, stalled individuals, then initial coordination.
enum class Deficit { kFreeRiding, kInequality, kZeroProgress, kCoordination, kNone };

struct Signals {
  bool free_riding = false;
  bool severe_free_riding = false;
  bool inequality = false;
  bool zero_progress = false;
  bool coordination = false;
};

Signals read_signals(const ReviewContext& ctx) {
  Signals s;
  s.coordination = ctx.round_index == 1;
  if (ctx.signal.empty()) return s;
  double total = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const auto& [agent, value] : ctx.signal) {
    total += value;
    if (first || value < lo) lo = value;
    if (first || value > hi) hi = value;
    first = false;
    if (value == 0.0) s.zero_progress = true;
  }
  double mean = total / static_cast<double>(ctx.signal.size());
  s.free_riding = mean < 5.0;
  s.severe_free_riding = mean < 3.0;
  s.inequality = hi - lo > 5.0;
  return s;
}

Deficit worst_deficit(const Signals& s) {
  if (s.free_riding) return Deficit::kFreeRiding;
  if (s.inequality) return Deficit::kInequality;
  if (s.zero_progress) return Deficit::kZeroProgress;
  if (s.coordination) return Deficit::kCoordination;
  return Deficit::kNone;
}

bool addresses(Category category, Deficit deficit) {
  switch (category) {
    case Category::kMinThreshold:
    case Category::kAdminPenalty:
      return deficit == Deficit::kFreeRiding;
    case Category::kRedistribute:
      return deficit == Deficit::kInequality;
    case Category::kMentorship:
      return deficit == Deficit::kZeroProgress;
    case Category::kCommNorm:
      return deficit == Deficit::kCoordination;
    case Category::kUnknown:
      return false;
  }
  return false;
}

int first_int_in(const std::string& text, int fallback) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) continue;
    int value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      ++i;
    }
    return value;
  }
  return fallback;
}

Amendment make_add(ConstitutionRule rule, std::string justification) {
  Amendment a;
  a.action = AmendmentAction::kAdd;
  a.rule = std::move(rule);
  a.justification = std::move(justification);
  return a;
}

Amendment make_modify(const std::string& target, ConstitutionRule rule,
                      std::string justification) {
  Amendment a;
  a.action = AmendmentAction::kModify;
  a.target_rule = target;
  a.rule = std::move(rule);
  a.justification = std::move(justification);
  return a;
}

}  // namespace

const char* ballot_name(Ballot b) {
  switch (b) {
    case Ballot::kYea: return "YEA";
    case Ballot::kNay: return "NAY";
    case Ballot::kAbstain: return "ABSTAIN";
  }
  return "ABSTAIN";
}

Ballot ballot_from_name(const std::string& name) {
  if (name == "YEA") return Ballot::kYea;
  if (name == "NAY") return Ballot::kNay;
  if (name == "ABSTAIN") return Ballot::kAbstain;
  throw SimError("unknown ballot: " + name);
}

ConstitutionRule make_min_threshold_rule(int k) {
  ConstitutionRule rule;
  rule.name = kMinThresholdName;
  rule.guidance =
      "Each participant must contribute at least " + std::to_string(k) +
      " tokens (or the equivalent share of project effort) every round; the "
      "minimum contribution may rise only by majority vote.";
  rule.summary =
      "Minimum contribution floor of " + std::to_string(k) + " per round.";
  rule.priority = 2;
  return rule;
}

ConstitutionRule make_admin_penalty_rule(int pct) {
  ConstitutionRule rule;
  rule.name = kAdminPenaltyName;
  rule.guidance =
      "Participants falling short of the agreed standard first receive a "
      "warning; on a repeat shortfall their payout is reduced by " +
      std::to_string(pct) +
      "% by the framework, with suspension from bonus distributions until "
      "they comply.";
  rule.summary = "Administrative penalty of " + std::to_string(pct) +
                 "% for repeated shortfalls.";
  rule.priority = 2;
  return rule;
}

ConstitutionRule make_redistribute_rule(int pct) {
  ConstitutionRule rule;
  rule.name = kRedistributeName;
  rule.guidance =
      "At each review, " + std::to_string(pct) +
      "% of the pooled surplus is redistributed from the wealthiest "
      "participants to those below the group median, operating as a relief "
      "fund.";
  rule.summary = "Redistributes " + std::to_string(pct) +
                 "% of surplus to trailing participants.";
  rule.priority = 3;
  return rule;
}

ConstitutionRule make_mentorship_rule() {
  ConstitutionRule rule;
  rule.name = kMentorshipName;
  rule.guidance =
      "Any participant with zero recent progress is paired with a mentor; "
      "mentors receive a small allocation bonus when their partner improves.";
  rule.summary = "Mentor pairing for participants showing no progress.";
  rule.priority = 3;
  return rule;
}

ConstitutionRule make_comm_norm_rule() {
  ConstitutionRule rule;
  rule.name = kCommNormName;
  rule.guidance =
      "Each participant should broadcast its intended action to the group "
      "chat at the start of every round so plans can be coordinated.";
  rule.summary = "Broadcast intentions to the group chat each round.";
  rule.priority = 4;
  return rule;
}

std::vector<Amendment> scripted_proposer(int agent, const Constitution& c,
                                         const ReviewContext& ctx) {
  Signals s = read_signals(ctx);
  std::vector<Amendment> out;
  switch (agent) {
    case 1:
      if (s.free_riding) {
        if (const ConstitutionRule* rule = find_rule(c, kMinThresholdName)) {
          int k = first_int_in(rule->guidance, 7);
          if (k < 10)
            out.push_back(make_modify(kMinThresholdName,
                                      make_min_threshold_rule(k + 1),
                                      "group output is still depressed"));
        } else {
          out.push_back(make_add(make_min_threshold_rule(7),
                                 "free-riding observed: raise the floor"));
        }
      }
      break;
    case 2:
      if (s.free_riding) {
        if (const ConstitutionRule* rule = find_rule(c, kAdminPenaltyName)) {
          int pct = first_int_in(rule->guidance, 10);
          if (pct < 50)
            out.push_back(make_modify(kAdminPenaltyName,
                                      make_admin_penalty_rule(pct + 5),
                                      "shortfalls persist: stiffen penalties"));
        } else {
          out.push_back(make_add(make_admin_penalty_rule(10),
                                 "attach consequences to shortfalls"));
        }
        if (s.severe_free_riding && !find_rule(c, kMinThresholdName))
          out.push_back(make_add(make_min_threshold_rule(7),
                                 "severe shortfall: a floor is urgent"));
      }
      break;
    case 3:
      if (s.inequality) {
        if (const ConstitutionRule* rule = find_rule(c, kRedistributeName)) {
          int pct = first_int_in(rule->guidance, 12);
          if (pct < 30)
            out.push_back(make_modify(kRedistributeName,
                                      make_redistribute_rule(pct + 3),
                                      "the spread keeps widening"));
        } else {
          out.push_back(make_add(make_redistribute_rule(12),
                                 "narrow the gap between leaders and laggards"));
        }
      }
      break;
    case 4:
      if (s.zero_progress && !find_rule(c, kMentorshipName))
        out.push_back(make_add(make_mentorship_rule(),
                               "stalled participants need support"));
      break;
    case 5:
      if (s.coordination && !find_rule(c, kCommNormName))
        out.push_back(make_add(make_comm_norm_rule(),
                               "establish a communication norm early"));
      break;
    default:
      break;
  }
  return out;
}

Ballot scripted_voter(int /*agent*/, const Constitution& c,
                      const ProposalRecord& proposal,
                      const ReviewContext& ctx) {
  Category category = category_of(proposal.amendment);
  if (category == Category::kUnknown) return Ballot::kAbstain;
  if (proposal.amendment.action == AmendmentAction::kAdd &&
      proposal.amendment.rule &&
      find_rule(c, proposal.amendment.rule->name) != nullptr)
    return Ballot::kNay;  // duplicates a rule category already on the books
  Deficit worst = worst_deficit(read_signals(ctx));
  if (worst == Deficit::kNone) return Ballot::kAbstain;
  return addresses(category, worst) ? Ballot::kYea : Ballot::kAbstain;
}

DeliberationRound run_round(Constitution& constitution,
                            const std::vector<int>& participants,
                            const Proposer& proposer, const Voter& voter,
                            const ReviewContext& context) {
  DeliberationRound round;
  round.index = context.round_index;
  round.turn = context.turn;
  round.version_before = constitution.version;

  for (int agent : participants) {
    std::vector<Amendment> amendments;
    try {
      amendments = proposer(agent, constitution, context);
    } catch (const std::exception& e) {
      round.warnings.push_back("agent " + std::to_string(agent) +
                               " proposer failed: " + e.what());
      continue;
    }
    if (static_cast<int>(amendments.size()) > kMaxProposalsPerAgent) {
      round.warnings.push_back(
          "agent " + std::to_string(agent) + " submitted " +
          std::to_string(amendments.size()) + " proposals; keeping the first " +
          std::to_string(kMaxProposalsPerAgent));
      amendments.resize(kMaxProposalsPerAgent);
    }
    for (Amendment& amendment : amendments) {
      amendment.proposer = agent;
      ProposalRecord record;
      record.id = static_cast<int>(round.proposals.size()) + 1;
      record.proposer = agent;
      record.amendment = amendment;
      round.proposals.push_back(std::move(record));
    }
  }

  for (ProposalRecord& proposal : round.proposals) {
    for (int agent : participants) {
      Ballot ballot = Ballot::kAbstain;
      try {
        ballot = voter(agent, constitution, proposal, context);
      } catch (const std::exception& e) {
        ballot = Ballot::kAbstain;
        round.warnings.push_back("agent " + std::to_string(agent) +
                                 " ballot failed on proposal " +
                                 std::to_string(proposal.id) +
                                 "; recorded ABSTAIN: " + e.what());
      }
      proposal.ballots.push_back({agent, ballot, ""});
      if (ballot == Ballot::kYea)
        ++proposal.yea;
      else if (ballot == Ballot::kNay)
        ++proposal.nay;
      else
        ++proposal.abstain;
    }
    proposal.adopted = proposal.yea > proposal.nay;
  }

  bool any_adopted = false;
  for (ProposalRecord& proposal : round.proposals) {
    if (!proposal.adopted) continue;
    any_adopted = true;
    try {
      Constitution next = apply_amendment(constitution, proposal.amendment);
      // Validate against the version this round will commit, so the first
      // amendment of a blank constitution is not flagged as version 0 + rules.
      Constitution check = next;
      check.version = round.version_before + 1;
      auto violations = validate_constitution(check);
      if (!violations.empty()) {
        proposal.apply_failed = true;
        proposal.apply_error = violations.front().detail;
        continue;
      }
      constitution = std::move(next);
    } catch (const ConstitutionError& e) {
      proposal.apply_failed = true;
      proposal.apply_error = e.what();
    }
  }
  if (any_adopted) constitution.version = round.version_before + 1;
  round.version_after = constitution.version;
  return round;
}

DeliberationRound ScriptedDeliberationHook::on_review(
    Constitution& constitution, const ReviewContext& context) {
  return run_round(constitution, context.alive, scripted_proposer,
                   scripted_voter, context);
}

}  // namespace socsim
