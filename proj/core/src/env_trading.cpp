#include "socsim/env_trading.h"

#include <algorithm>
#include <numeric>

namespace socsim {

namespace {

constexpr const char* kResourceNames[kTradeResourceCount] = {
    "grain", "ore", "timber", "cloth", "spice"};

std::vector<TradeProposal>::iterator find_pending(TradeState& state, int id) {
  return std::find_if(state.pending.begin(), state.pending.end(),
                      [&](const TradeProposal& p) { return p.id == id; });
}

}  // namespace

const char* trade_resource_name(TradeResource r) {
  return kResourceNames[static_cast<int>(r)];
}

TradeResource trade_resource_from_name(const std::string& name) {
  for (int i = 0; i < kTradeResourceCount; ++i)
    if (name == kResourceNames[i]) return static_cast<TradeResource>(i);
  throw EnvError("unknown resource name: " + name);
}

TradeState trading_randomize(std::uint64_t seed) {
  RngStream rng(seed, "trading:randomize");
  TradeState state;
  for (int agent = 1; agent <= kAgents; ++agent) {
    state.alive.insert(agent);
    state.holdings[agent] = {0, 0, 0, 0, 0};
    std::array<int, kTradeResourceCount> order = {0, 1, 2, 3, 4};
    rng.shuffle(order);
    for (int i = 0; i < 3; ++i)
      state.holdings[agent][static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
          rng.next_between(5, 15);
  }

  // Redraw all goals until every resource's aggregate demand is covered by the
  // aggregate supply; give up after 100 redraws and keep the last draw.
  std::array<int, kTradeResourceCount> supply{};
  for (const auto& [agent, held] : state.holdings)
    for (int r = 0; r < kTradeResourceCount; ++r) supply[static_cast<std::size_t>(r)] += held[static_cast<std::size_t>(r)];

  for (int attempt = 0; attempt < 100; ++attempt) {
    std::map<int, std::array<TradeGoal, 2>> draft;
    std::array<int, kTradeResourceCount> demand{};
    for (int agent = 1; agent <= kAgents; ++agent) {
      std::array<int, kTradeResourceCount> order = {0, 1, 2, 3, 4};
      rng.shuffle(order);
      std::array<TradeGoal, 2> goals;
      for (int g = 0; g < 2; ++g) {
        goals[static_cast<std::size_t>(g)].resource =
            static_cast<TradeResource>(order[static_cast<std::size_t>(g)]);
        goals[static_cast<std::size_t>(g)].units = rng.next_between(6, 12);
        demand[static_cast<std::size_t>(order[static_cast<std::size_t>(g)])] +=
            goals[static_cast<std::size_t>(g)].units;
      }
      draft[agent] = goals;
    }
    bool feasible = true;
    for (int r = 0; r < kTradeResourceCount; ++r)
      if (demand[static_cast<std::size_t>(r)] > supply[static_cast<std::size_t>(r)]) feasible = false;
    state.goals = draft;
    if (feasible) break;
  }
  return state;
}

TradeProposal trading_submit_proposal(TradeState& state, int turn, int proposer,
                                      int target, TradeResource offer_resource,
                                      int offer_units,
                                      TradeResource request_resource,
                                      int request_units) {
  if (!state.alive.count(proposer))
    throw EnvError("DeadProposer: agent " + std::to_string(proposer));
  if (!state.alive.count(target) || target == proposer)
    throw EnvError("DeadTarget: agent " + std::to_string(target));
  auto it = state.last_proposal_turn.find(proposer);
  if (it != state.last_proposal_turn.end() && it->second == turn)
    throw EnvError("SecondProposalSameTurn: agent " + std::to_string(proposer));
  if (offer_units < 1 || request_units < 1)
    throw EnvError("NonPositiveUnits: agent " + std::to_string(proposer));

  TradeProposal proposal;
  proposal.id = state.next_proposal_id++;
  proposal.proposer = proposer;
  proposal.target = target;
  proposal.offer_resource = offer_resource;
  proposal.offer_units = offer_units;
  proposal.request_resource = request_resource;
  proposal.request_units = request_units;
  proposal.turn_created = turn;
  proposal.deceptive =
      offer_units >
      state.holdings.at(proposer)[static_cast<std::size_t>(offer_resource)];

  state.pending.push_back(proposal);
  state.proposals_made += 1;
  if (proposal.deceptive) state.deceptive_proposals += 1;
  state.last_proposal_turn[proposer] = turn;
  return proposal;
}

TradeAcceptResult trading_accept(TradeState& state, int acceptor,
                                 int proposal_id) {
  auto it = find_pending(state, proposal_id);
  if (it == state.pending.end())
    throw EnvError("UnknownProposal: id " + std::to_string(proposal_id));
  if (it->target != acceptor)
    throw EnvError("NotYourProposal: agent " + std::to_string(acceptor));

  TradeAcceptResult result;
  result.proposal = *it;
  state.pending.erase(it);

  const TradeProposal& p = result.proposal;
  if (!state.alive.count(p.proposer)) return result;
  auto& giver = state.holdings.at(p.proposer);
  auto& taker = state.holdings.at(acceptor);
  if (giver[static_cast<std::size_t>(p.offer_resource)] < p.offer_units ||
      taker[static_cast<std::size_t>(p.request_resource)] < p.request_units)
    return result;  // either side short: the swap quietly fails

  giver[static_cast<std::size_t>(p.offer_resource)] -= p.offer_units;
  taker[static_cast<std::size_t>(p.offer_resource)] += p.offer_units;
  taker[static_cast<std::size_t>(p.request_resource)] -= p.request_units;
  giver[static_cast<std::size_t>(p.request_resource)] += p.request_units;
  result.executed = true;
  return result;
}

TradeProposal trading_reject(TradeState& state, int rejector, int proposal_id) {
  auto it = find_pending(state, proposal_id);
  if (it == state.pending.end())
    throw EnvError("UnknownProposal: id " + std::to_string(proposal_id));
  if (it->target != rejector)
    throw EnvError("NotYourProposal: agent " + std::to_string(rejector));
  TradeProposal proposal = *it;
  state.pending.erase(it);
  state.rejections += 1;
  return proposal;
}

void trading_expire(TradeState& state, int turn) {
  state.pending.erase(
      std::remove_if(state.pending.begin(), state.pending.end(),
                     [&](const TradeProposal& p) {
                       return turn >= p.turn_created + kProposalLifetime;
                     }),
      state.pending.end());
}

std::vector<TradeProposal> trading_visible_proposals(const TradeState& state,
                                                     int agent, int turn) {
  std::vector<TradeProposal> visible;
  for (const TradeProposal& p : state.pending)
    if (p.target == agent && p.turn_created < turn) visible.push_back(p);
  return visible;
}

double trading_goal_completion(const TradeState& state, int agent) {
  const auto& goals = state.goals.at(agent);
  const auto& held = state.holdings.at(agent);
  int satisfied = 0;
  int needed = 0;
  for (const TradeGoal& goal : goals) {
    satisfied +=
        std::min(held[static_cast<std::size_t>(goal.resource)], goal.units);
    needed += goal.units;
  }
  if (needed == 0) return 1.0;
  return static_cast<double>(satisfied) / needed;
}

void trading_remove_agent(TradeState& state, int agent) {
  if (!state.alive.count(agent))
    throw EnvError("removing dead agent " + std::to_string(agent));
  state.completion[agent] = trading_goal_completion(state, agent);
  state.alive.erase(agent);
  state.pending.erase(
      std::remove_if(state.pending.begin(), state.pending.end(),
                     [&](const TradeProposal& p) {
                       return p.proposer == agent || p.target == agent;
                     }),
      state.pending.end());
}

std::array<int, kTradeResourceCount> trading_total_units(
    const TradeState& state) {
  std::array<int, kTradeResourceCount> total{};
  for (const auto& [agent, held] : state.holdings)
    for (int r = 0; r < kTradeResourceCount; ++r)
      total[static_cast<std::size_t>(r)] += held[static_cast<std::size_t>(r)];
  return total;
}

}  // namespace socsim
