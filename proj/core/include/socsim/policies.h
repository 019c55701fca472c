#pragma once

#include <memory>
#include <string>

#include "socsim/sim.h"

namespace socsim {

// Executes the constitution literally: directives are evaluated in ascending
// priority; the first applicable one yields the primary action,
// communication directives add a message, and PunishBelowMax fires at most
// once per round under the shared 10-token budget.
class DirectiveFollower : public Policy {
 public:
  std::string name() const override { return "directive"; }
  PggAction decide_pgg(const PggView& view) override;
  GridAction decide_grid(const GridView& view) override;
  TradingAction decide_trading(const TradingView& view) override;
};

// Contributes 0 every round and keeps the endowment.
class NashFreeRider : public Policy {
 public:
  std::string name() const override { return "nash"; }
  PggAction decide_pgg(const PggView& view) override;
};

// Contributes the full 10 every round.
class ParetoCooperator : public Policy {
 public:
  std::string name() const override { return "pareto"; }
  PggAction decide_pgg(const PggView& view) override;
};

// Round 1: contribute 10; thereafter the round-half-up mean of the other
// alive agents' previous contributions.
class ConditionalCooperator : public Policy {
 public:
  std::string name() const override { return "conditional"; }
  PggAction decide_pgg(const PggView& view) override;
};

// Carrying something the team still needs: head to the deposit site and
// deposit. Otherwise gather the nearest visible needed resource, drifting
// toward the team's resource quadrant when nothing is visible. Never attacks
// or steals.
class GreedyGatherer : public Policy {
 public:
  std::string name() const override { return "greedy"; }
  GridAction decide_grid(const GridView& view) override;
};

// Accepts every pending proposal that raises its own goal completion, then
// proposes the surplus-for-deficit trade that maximizes its own completion
// delta; hoards once goals are complete.
class GreedyTrader : public Policy {
 public:
  std::string name() const override { return "greedy"; }
  TradingAction decide_trading(const TradingView& view) override;
};

// profile: directive | nash | pareto | conditional | greedy. "greedy" maps to
// the environment's scripted baseline (the free-rider in the public goods
// game). Throws SimError on an unknown profile or an env/profile mismatch.
std::shared_ptr<Policy> make_policy(const std::string& profile, EnvKind env);

// Same policy object shared by all six agents.
PolicyMap make_policies(const std::string& profile, EnvKind env);

// The Control-condition baseline profile.
const char* default_profile(EnvKind env);

}  // namespace socsim
