#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "socsim/constitution.h"

namespace socsim {

inline constexpr int kMaxProposalsPerAgent = 2;

enum class Ballot { kYea, kNay, kAbstain };

const char* ballot_name(Ballot b);
Ballot ballot_from_name(const std::string& name);

struct BallotRecord {
  int voter = 0;
  Ballot vote = Ballot::kAbstain;
  std::string reasoning;

  bool operator==(const BallotRecord&) const = default;
};

struct ProposalRecord {
  int id = 0;  // 1-based within the round, submission order
  int proposer = 0;
  Amendment amendment;
  std::vector<BallotRecord> ballots;
  int yea = 0;
  int nay = 0;
  int abstain = 0;
  bool adopted = false;       // strictly more YEA than NAY
  bool apply_failed = false;  // adopted but apply_amendment rejected it
  std::string apply_error;

  bool operator==(const ProposalRecord&) const = default;
};

struct DeliberationRound {
  int index = 0;  // 1-based review counter
  int turn = 0;
  int version_before = 0;
  int version_after = 0;
  std::vector<ProposalRecord> proposals;
  std::vector<std::string> warnings;

  bool operator==(const DeliberationRound&) const = default;
};

// Everything a proposer or voter may react to. `signal` is a 0-10
// deficit gauge per alive agent (last contributions, capped deposits, or
// goal completion x10 depending on the environment).
struct ReviewContext {
  int turn = 0;
  int round_index = 0;
  std::string metric_name;  // wealth | contributions | goal_completion
  std::map<int, double> metric;
  std::map<int, double> signal;
  std::vector<int> alive;
  int eliminations_so_far = 0;
};

using Proposer = std::function<std::vector<Amendment>(
    int agent, const Constitution&, const ReviewContext&)>;
using Voter = std::function<Ballot(int agent, const Constitution&,
                                   const ProposalRecord&,
                                   const ReviewContext&)>;

// One review round: collect proposals (cap 2 per agent; excess dropped with a
// recorded warning; a throwing proposer contributes none), collect one ballot
// per participant per proposal (a throwing voter records ABSTAIN), adopt on
// strictly more YEA than NAY, apply adopted amendments sequentially in
// submission order (failures recorded, not fatal), and bump the version once
// when anything was adopted.
DeliberationRound run_round(Constitution& constitution,
                            const std::vector<int>& participants,
                            const Proposer& proposer, const Voter& voter,
                            const ReviewContext& context);

// Deterministic desk-scale stand-ins for the model-backed callbacks. The
// template library deliberately contains no peer-punishment rule.
std::vector<Amendment> scripted_proposer(int agent, const Constitution& c,
                                         const ReviewContext& ctx);
Ballot scripted_voter(int agent, const Constitution& c,
                      const ProposalRecord& proposal,
                      const ReviewContext& ctx);

// Rule templates the scripted proposer draws from.
ConstitutionRule make_min_threshold_rule(int k);
ConstitutionRule make_admin_penalty_rule(int pct);
ConstitutionRule make_redistribute_rule(int pct);
ConstitutionRule make_mentorship_rule();
ConstitutionRule make_comm_norm_rule();

// The simulation kernel's review entry point.
class DeliberationHook {
 public:
  virtual ~DeliberationHook() = default;
  virtual DeliberationRound on_review(Constitution& constitution,
                                      const ReviewContext& context) = 0;
  // The debate phase is disabled; enabling it requires a hook that opts in.
  virtual bool supports_debate() const { return false; }
};

class ScriptedDeliberationHook : public DeliberationHook {
 public:
  DeliberationRound on_review(Constitution& constitution,
                              const ReviewContext& context) override;
};

}  // namespace socsim
