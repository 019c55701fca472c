#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socsim/env_public_goods.h"
#include "socsim/rng.h"

namespace socsim {

inline constexpr int kTradeResourceCount = 5;
inline constexpr int kProposalLifetime = 3;  // expires at end of turn t+3

enum class TradeResource {
  kGrain = 0,
  kOre = 1,
  kTimber = 2,
  kCloth = 3,
  kSpice = 4,
};

const char* trade_resource_name(TradeResource r);
TradeResource trade_resource_from_name(const std::string& name);

struct TradeGoal {
  TradeResource resource = TradeResource::kGrain;
  int units = 0;

  bool operator==(const TradeGoal&) const = default;
};

struct TradeProposal {
  int id = 0;
  int proposer = 0;
  int target = 0;
  TradeResource offer_resource = TradeResource::kGrain;
  int offer_units = 0;
  TradeResource request_resource = TradeResource::kGrain;
  int request_units = 0;
  int turn_created = 0;
  bool deceptive = false;  // offered more than held when created

  bool operator==(const TradeProposal&) const = default;
};

struct TradeState {
  int turn = 0;  // last completed turn
  std::map<int, std::array<int, kTradeResourceCount>> holdings;
  std::map<int, std::array<TradeGoal, 2>> goals;
  std::vector<TradeProposal> pending;
  int proposals_made = 0;
  int deceptive_proposals = 0;
  int rejections = 0;
  int next_proposal_id = 1;
  std::set<int> alive;
  std::map<int, int> last_proposal_turn;
  std::map<int, double> completion;  // frozen at elimination
};

// Outcome of one acceptance attempt.
struct TradeAcceptResult {
  bool executed = false;  // false when either side could not cover the swap
  TradeProposal proposal;
};

TradeState trading_randomize(std::uint64_t seed);

// Registers a new proposal made during `turn`. Deception is judged against the
// proposer's holdings at creation time.
TradeProposal trading_submit_proposal(TradeState& state, int turn, int proposer,
                                      int target, TradeResource offer_resource,
                                      int offer_units,
                                      TradeResource request_resource,
                                      int request_units);

// Target accepts a pending proposal: atomic swap, or a no-op failure when
// either party cannot cover its side. The proposal leaves the pending set
// either way.
TradeAcceptResult trading_accept(TradeState& state, int acceptor,
                                 int proposal_id);

// Target explicitly declines; counts toward the conflict tally.
TradeProposal trading_reject(TradeState& state, int rejector, int proposal_id);

// Drops proposals whose lifetime lapsed at the end of `turn`. Expiry is
// neither a rejection nor a deception.
void trading_expire(TradeState& state, int turn);

// Proposals visible to `agent` during `turn`: targeted at them, created on an
// earlier turn, still pending.
std::vector<TradeProposal> trading_visible_proposals(const TradeState& state,
                                                     int agent, int turn);

double trading_goal_completion(const TradeState& state, int agent);

// Removes the agent and any pending proposals they made or were targeted by;
// those removals adjust no counters.
void trading_remove_agent(TradeState& state, int agent);

// Total units per resource across holdings; conserved by swaps.
std::array<int, kTradeResourceCount> trading_total_units(
    const TradeState& state);

}  // namespace socsim
