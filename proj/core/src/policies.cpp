#include "socsim/policies.h"

#include <algorithm>
#include <cmath>

namespace socsim {

namespace {

GridDir move_toward(GridPos from, GridPos to) {
  if (from.row > to.row) return GridDir::kNorth;
  if (from.row < to.row) return GridDir::kSouth;
  if (from.col < to.col) return GridDir::kEast;
  return GridDir::kWest;
}

int chebyshev(GridPos a, GridPos b) {
  return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

// Outstanding team requirement per resource.
std::array<int, 3> team_deficits(const GridObservation& obs) {
  std::array<int, 3> deficit{};
  if (obs.team == 1) {
    deficit[0] = std::max(0, kShelterWoodRequired - obs.shelter_wood_deposited);
  } else {
    deficit[1] = std::max(0, kMarketStoneRequired - obs.market_stone_deposited);
    deficit[2] = std::max(0, kMarketGemsRequired - obs.market_gems_deposited);
  }
  return deficit;
}

// Nearest in-bounds window cell holding one of the wanted resources;
// row-major order breaks distance ties.
const GridCellView* nearest_with(const GridObservation& obs,
                                 const std::array<bool, 3>& wanted) {
  const GridCellView* best = nullptr;
  int best_distance = 0;
  for (const GridCellView& cell : obs.window) {
    if (!cell.in_bounds) continue;
    bool has = false;
    for (int r = 0; r < 3; ++r)
      if (wanted[static_cast<std::size_t>(r)] &&
          cell.units[static_cast<std::size_t>(r)] > 0)
        has = true;
    if (!has) continue;
    int distance = chebyshev(obs.pos, {cell.row, cell.col});
    if (!best || distance < best_distance) {
      best = &cell;
      best_distance = distance;
    }
  }
  return best;
}

GridPos quadrant_anchor(int team) {
  return team == 1 ? GridPos{1, 1} : GridPos{1, 4};
}

// Default gridworld behavior: work toward the nearest needed resource.
std::optional<GridPhysical> seek_needed(const GridObservation& obs) {
  std::array<int, 3> deficit = team_deficits(obs);
  std::array<bool, 3> wanted{};
  bool any = false;
  for (int r = 0; r < 3; ++r) {
    wanted[static_cast<std::size_t>(r)] = deficit[static_cast<std::size_t>(r)] > 0;
    any = any || wanted[static_cast<std::size_t>(r)];
  }
  if (!any) return std::nullopt;
  int carried = obs.inventory[0] + obs.inventory[1] + obs.inventory[2];
  const GridCellView* cell = nearest_with(obs, wanted);
  if (cell) {
    if (cell->row == obs.pos.row && cell->col == obs.pos.col) {
      if (carried < kCarryCapacity) {
        GridPhysical act;
        act.kind = GridPhysical::Kind::kGather;
        return act;
      }
      return std::nullopt;
    }
    GridPhysical act;
    act.kind = GridPhysical::Kind::kMove;
    act.dir = move_toward(obs.pos, {cell->row, cell->col});
    return act;
  }
  GridPos anchor = quadrant_anchor(obs.team);
  if (!(obs.pos == anchor)) {
    GridPhysical act;
    act.kind = GridPhysical::Kind::kMove;
    act.dir = move_toward(obs.pos, anchor);
    return act;
  }
  return std::nullopt;
}

// Per-resource requirement implied by the agent's two goals.
std::array<int, kTradeResourceCount> goal_needs(
    const std::array<TradeGoal, 2>& goals) {
  std::array<int, kTradeResourceCount> need{};
  for (const TradeGoal& goal : goals)
    need[static_cast<std::size_t>(goal.resource)] += goal.units;
  return need;
}

double completion_of(const std::array<int, kTradeResourceCount>& held,
                     const std::array<int, kTradeResourceCount>& need) {
  int satisfied = 0;
  int total = 0;
  for (int r = 0; r < kTradeResourceCount; ++r) {
    satisfied += std::min(held[static_cast<std::size_t>(r)],
                          need[static_cast<std::size_t>(r)]);
    total += need[static_cast<std::size_t>(r)];
  }
  return total == 0 ? 1.0 : static_cast<double>(satisfied) / total;
}

int next_alive_after(int self, const std::vector<int>& alive) {
  int best_above = 0;
  int lowest = 0;
  for (int agent : alive) {
    if (agent == self) continue;
    if (lowest == 0 || agent < lowest) lowest = agent;
    if (agent > self && (best_above == 0 || agent < best_above))
      best_above = agent;
  }
  return best_above != 0 ? best_above : lowest;
}

// Surplus-for-deficit 1:1 proposal both the follower's AvoidHoarding rule and
// the greedy trader use; empty when there is nothing to request or spare.
std::optional<TradeOffer> surplus_for_deficit(const TradingView& view) {
  std::array<int, kTradeResourceCount> need = goal_needs(view.goals);
  int req_r = -1;
  int req_deficit = 0;
  int off_r = -1;
  int off_surplus = 0;
  for (int r = 0; r < kTradeResourceCount; ++r) {
    int deficit = std::max(0, need[static_cast<std::size_t>(r)] -
                                  view.holdings[static_cast<std::size_t>(r)]);
    int surplus = view.holdings[static_cast<std::size_t>(r)] -
                  need[static_cast<std::size_t>(r)];
    if (deficit > req_deficit) {
      req_deficit = deficit;
      req_r = r;
    }
    if (surplus > off_surplus) {
      off_surplus = surplus;
      off_r = r;
    }
  }
  if (req_r < 0 || off_r < 0 || off_r == req_r) return std::nullopt;
  int target = next_alive_after(view.self, view.alive);
  if (target == 0) return std::nullopt;
  TradeOffer offer;
  offer.target = target;
  offer.offer_resource = static_cast<TradeResource>(off_r);
  offer.request_resource = static_cast<TradeResource>(req_r);
  offer.offer_units = std::min(off_surplus, req_deficit);
  offer.request_units = offer.offer_units;
  return offer;
}

}  // namespace

// --- directive follower ------------------------------------------------------

PggAction DirectiveFollower::decide_pgg(const PggView& view) {
  if (!view.constitution)
    throw SimError("the directive follower needs a constitution");
  auto ordered = rules_by_priority(*view.constitution);

  const Directive* contribute_d = nullptr;
  const Directive* punish_d = nullptr;
  const Directive* broadcast_d = nullptr;
  for (const ConstitutionRule& rule : ordered) {
    if (!rule.directive) continue;
    switch (rule.directive->kind) {
      case DirectiveKind::kContributeFixed:
        if (!contribute_d) contribute_d = &*rule.directive;
        break;
      case DirectiveKind::kPunishBelowMax:
        if (!punish_d) punish_d = &*rule.directive;
        break;
      case DirectiveKind::kBroadcastEachRound:
        if (!broadcast_d) broadcast_d = &*rule.directive;
        break;
      default:
        break;
    }
  }

  PggAction action;
  int punish_tokens = 0;
  int punish_target = 0;
  if (punish_d && view.round > 1 && !view.last_contributions.empty()) {
    int max_contribution = 0;
    for (const auto& [agent, amount] : view.last_contributions)
      max_contribution = std::max(max_contribution, amount);
    int worst_amount = 0;
    for (int agent : view.alive) {  // ascending: ties pick the lowest index
      if (agent == view.self) continue;
      auto it = view.last_contributions.find(agent);
      if (it == view.last_contributions.end()) continue;
      if (it->second >= max_contribution) continue;
      if (punish_target == 0 || it->second < worst_amount) {
        punish_target = agent;
        worst_amount = it->second;
      }
    }
    if (punish_target != 0)
      punish_tokens =
          std::clamp(std::min(punish_d->tokens, punish_d->per_round_cap), 1, 3);
  }

  int desired =
      contribute_d ? std::clamp(contribute_d->amount, 0, kRoundEndowment) : 0;
  action.contribute = std::min(desired, kRoundEndowment - punish_tokens);
  if (punish_tokens > 0)
    action.punish = PggPunish{punish_target, punish_tokens};
  if (broadcast_d)
    action.message = EnvMessage{view.self, 0, broadcast_d->text};
  return action;
}

GridAction DirectiveFollower::decide_grid(const GridView& view) {
  if (!view.constitution)
    throw SimError("the directive follower needs a constitution");
  const GridObservation& obs = view.obs;
  auto ordered = rules_by_priority(*view.constitution);
  std::array<int, 3> deficit = team_deficits(obs);
  GridPos site = obs.team == 1 ? obs.shelter_site : obs.market_site;
  int carried = obs.inventory[0] + obs.inventory[1] + obs.inventory[2];

  GridAction action;

  // Communication directive: report resource-rich window cells.
  for (const ConstitutionRule& rule : ordered) {
    if (!rule.directive ||
        rule.directive->kind != DirectiveKind::kReportRichCluster)
      continue;
    std::string report;
    for (const GridCellView& cell : obs.window) {
      if (!cell.in_bounds) continue;
      for (int r = 0; r < 3; ++r) {
        if (deficit[static_cast<std::size_t>(r)] <= 0) continue;
        if (cell.units[static_cast<std::size_t>(r)] < rule.directive->min_units)
          continue;
        if (!report.empty()) report += ",";
        report += "r" + std::to_string(cell.row) + "c" +
                  std::to_string(cell.col) + ":" +
                  grid_resource_name(static_cast<GridResource>(r)) + ":" +
                  std::to_string(cell.units[static_cast<std::size_t>(r)]);
      }
    }
    if (!report.empty())
      action.communication = EnvMessage{obs.self, 0, "RICH " + report};
    break;
  }

  // Physical directives: first applicable wins.
  for (const ConstitutionRule& rule : ordered) {
    if (!rule.directive) continue;
    const Directive& d = *rule.directive;
    switch (d.kind) {
      case DirectiveKind::kDepositFirst: {
        bool carrying_needed = false;
        for (int r = 0; r < 3; ++r)
          if (deficit[static_cast<std::size_t>(r)] > 0 &&
              obs.inventory[static_cast<std::size_t>(r)] > 0)
            carrying_needed = true;
        if (!carrying_needed) break;
        GridPhysical act;
        if (obs.pos == site) {
          act.kind = GridPhysical::Kind::kDeposit;
        } else {
          act.kind = GridPhysical::Kind::kMove;
          act.dir = move_toward(obs.pos, site);
        }
        action.physical = act;
        return action;
      }
      case DirectiveKind::kGatherNeeded: {
        if (carried >= kCarryCapacity) break;
        const GridCellView& here = obs.window[4];
        bool has_needed = false;
        for (int r = 0; r < 3; ++r)
          if (deficit[static_cast<std::size_t>(r)] > 0 &&
              here.units[static_cast<std::size_t>(r)] > 0)
            has_needed = true;
        if (!has_needed) break;
        GridPhysical act;
        act.kind = GridPhysical::Kind::kGather;
        action.physical = act;
        return action;
      }
      case DirectiveKind::kMoveToLargestDeficit: {
        int target_r = -1;
        for (int r = 0; r < 3; ++r)
          if (deficit[static_cast<std::size_t>(r)] > 0 &&
              (target_r < 0 ||
               deficit[static_cast<std::size_t>(r)] >
                   deficit[static_cast<std::size_t>(target_r)]))
            target_r = r;
        if (target_r < 0) break;
        std::array<bool, 3> wanted{};
        wanted[static_cast<std::size_t>(target_r)] = true;
        const GridCellView* cell = nearest_with(obs, wanted);
        GridPhysical act;
        if (cell) {
          if (cell->row == obs.pos.row && cell->col == obs.pos.col) {
            if (carried >= kCarryCapacity) break;
            act.kind = GridPhysical::Kind::kGather;
          } else {
            act.kind = GridPhysical::Kind::kMove;
            act.dir = move_toward(obs.pos, {cell->row, cell->col});
          }
        } else {
          GridPos anchor = quadrant_anchor(obs.team);
          if (obs.pos == anchor) break;
          act.kind = GridPhysical::Kind::kMove;
          act.dir = move_toward(obs.pos, anchor);
        }
        action.physical = act;
        return action;
      }
      case DirectiveKind::kShareSurplus: {
        int surplus_r = -1;
        for (int r = 0; r < 3; ++r)
          if (deficit[static_cast<std::size_t>(r)] == 0 &&
              obs.inventory[static_cast<std::size_t>(r)] > 0) {
            surplus_r = r;
            break;
          }
        if (surplus_r < 0) break;
        int teammate = 0;
        for (const GridCellView& cell : obs.window) {
          if (!cell.in_bounds) continue;
          for (int resident : cell.residents)
            if (resident != obs.self && agent_team(resident) == obs.team &&
                (teammate == 0 || resident < teammate))
              teammate = resident;
        }
        if (teammate == 0) break;
        GridPhysical act;
        act.kind = GridPhysical::Kind::kGive;
        act.target = teammate;
        act.resource = static_cast<GridResource>(surplus_r);
        act.units = std::min(std::max(d.max_units, 1),
                             obs.inventory[static_cast<std::size_t>(surplus_r)]);
        action.physical = act;
        return action;
      }
      case DirectiveKind::kNoAggressionUnlessAttacked:
        // A prohibition: it never yields an action of its own.
        break;
      default:
        break;
    }
  }

  action.physical = seek_needed(obs);
  return action;
}

TradingAction DirectiveFollower::decide_trading(const TradingView& view) {
  if (!view.constitution)
    throw SimError("the directive follower needs a constitution");
  auto ordered = rules_by_priority(*view.constitution);
  bool accept_rule = false;
  bool reject_rule = false;
  bool avoid_hoarding = false;
  bool no_deceptive = false;
  bool broadcast_needs = false;
  for (const ConstitutionRule& rule : ordered) {
    if (!rule.directive) continue;
    switch (rule.directive->kind) {
      case DirectiveKind::kAcceptIfNeededAndFulfillable: accept_rule = true; break;
      case DirectiveKind::kRejectOnlyIfCannotFulfill: reject_rule = true; break;
      case DirectiveKind::kAvoidHoarding: avoid_hoarding = true; break;
      case DirectiveKind::kNoDeceptiveProposals: no_deceptive = true; break;
      case DirectiveKind::kBroadcastNeeds: broadcast_needs = true; break;
      default: break;
    }
  }

  TradingAction action;
  std::array<int, kTradeResourceCount> need = goal_needs(view.goals);
  auto held = view.holdings;

  if (accept_rule) {
    for (const TradeProposal& p : view.incoming) {
      std::size_t offer_r = static_cast<std::size_t>(p.offer_resource);
      std::size_t request_r = static_cast<std::size_t>(p.request_resource);
      bool needed = need[offer_r] > held[offer_r];
      bool fulfillable = held[request_r] >= p.request_units;
      if (!needed || !fulfillable) continue;
      action.accept.push_back(p.id);
      held[offer_r] += p.offer_units;
      held[request_r] -= p.request_units;
    }
  }
  if (reject_rule) {
    for (const TradeProposal& p : view.incoming) {
      if (std::find(action.accept.begin(), action.accept.end(), p.id) !=
          action.accept.end())
        continue;
      std::size_t request_r = static_cast<std::size_t>(p.request_resource);
      if (held[request_r] < p.request_units) action.reject.push_back(p.id);
    }
  }
  if (avoid_hoarding) {
    action.offer = surplus_for_deficit(view);
    if (action.offer && no_deceptive) {
      std::size_t offer_r = static_cast<std::size_t>(action.offer->offer_resource);
      // Surplus never exceeds holdings, so this clamp is a guarantee, not a fix.
      action.offer->offer_units =
          std::min(action.offer->offer_units, view.holdings[offer_r]);
      if (action.offer->offer_units < 1) action.offer = std::nullopt;
    }
  }
  if (broadcast_needs) {
    std::string text;
    for (int r = 0; r < kTradeResourceCount; ++r) {
      int deficit = std::max(0, need[static_cast<std::size_t>(r)] -
                                    view.holdings[static_cast<std::size_t>(r)]);
      if (deficit == 0) continue;
      if (!text.empty()) text += ",";
      text += std::string(trade_resource_name(static_cast<TradeResource>(r))) +
              ":" + std::to_string(deficit);
    }
    if (!text.empty())
      action.message = EnvMessage{view.self, 0, "NEED " + text};
  }
  return action;
}

// --- public goods baselines ---------------------------------------------------

PggAction NashFreeRider::decide_pgg(const PggView&) {
  PggAction action;
  action.contribute = 0;
  return action;
}

PggAction ParetoCooperator::decide_pgg(const PggView&) {
  PggAction action;
  action.contribute = kRoundEndowment;
  return action;
}

PggAction ConditionalCooperator::decide_pgg(const PggView& view) {
  PggAction action;
  if (view.round == 1) {
    action.contribute = kRoundEndowment;
    return action;
  }
  int total = 0;
  int count = 0;
  for (int agent : view.alive) {
    if (agent == view.self) continue;
    auto it = view.last_contributions.find(agent);
    if (it == view.last_contributions.end()) continue;
    total += it->second;
    ++count;
  }
  if (count == 0) {
    action.contribute = kRoundEndowment;
    return action;
  }
  double mean = static_cast<double>(total) / count;
  action.contribute = std::clamp(
      static_cast<int>(std::floor(mean + 0.5)), 0, kRoundEndowment);
  return action;
}

// --- greedy baselines ----------------------------------------------------------

GridAction GreedyGatherer::decide_grid(const GridView& view) {
  const GridObservation& obs = view.obs;
  std::array<int, 3> deficit = team_deficits(obs);
  GridAction action;

  bool carrying_needed = false;
  for (int r = 0; r < 3; ++r)
    if (deficit[static_cast<std::size_t>(r)] > 0 &&
        obs.inventory[static_cast<std::size_t>(r)] > 0)
      carrying_needed = true;
  if (carrying_needed) {
    GridPos site = obs.team == 1 ? obs.shelter_site : obs.market_site;
    GridPhysical act;
    if (obs.pos == site) {
      act.kind = GridPhysical::Kind::kDeposit;
    } else {
      act.kind = GridPhysical::Kind::kMove;
      act.dir = move_toward(obs.pos, site);
    }
    action.physical = act;
    return action;
  }

  action.physical = seek_needed(obs);
  return action;
}

TradingAction GreedyTrader::decide_trading(const TradingView& view) {
  TradingAction action;
  std::array<int, kTradeResourceCount> need = goal_needs(view.goals);
  auto held = view.holdings;

  for (const TradeProposal& p : view.incoming) {
    auto after = held;
    std::size_t offer_r = static_cast<std::size_t>(p.offer_resource);
    std::size_t request_r = static_cast<std::size_t>(p.request_resource);
    after[offer_r] += p.offer_units;
    after[request_r] -= p.request_units;
    if (after[request_r] < 0) continue;
    if (completion_of(after, need) > completion_of(held, need)) {
      action.accept.push_back(p.id);
      held = after;
    }
  }

  TradingView updated = view;
  updated.holdings = held;
  action.offer = surplus_for_deficit(updated);
  return action;
}

// --- profile dispatch -----------------------------------------------------------

std::shared_ptr<Policy> make_policy(const std::string& profile, EnvKind env) {
  if (profile == "directive") return std::make_shared<DirectiveFollower>();
  if (profile == "nash" || (profile == "greedy" && env == EnvKind::kPublicGoods)) {
    if (env != EnvKind::kPublicGoods)
      throw SimError("the nash profile is a public goods baseline");
    return std::make_shared<NashFreeRider>();
  }
  if (profile == "pareto") {
    if (env != EnvKind::kPublicGoods)
      throw SimError("the pareto profile is a public goods baseline");
    return std::make_shared<ParetoCooperator>();
  }
  if (profile == "conditional") {
    if (env != EnvKind::kPublicGoods)
      throw SimError("the conditional profile is a public goods baseline");
    return std::make_shared<ConditionalCooperator>();
  }
  if (profile == "greedy") {
    if (env == EnvKind::kGridworld) return std::make_shared<GreedyGatherer>();
    return std::make_shared<GreedyTrader>();
  }
  throw SimError("unknown policy profile: " + profile);
}

PolicyMap make_policies(const std::string& profile, EnvKind env) {
  PolicyMap policies;
  auto policy = make_policy(profile, env);
  for (int agent = 1; agent <= kAgents; ++agent) policies[agent] = policy;
  return policies;
}

const char* default_profile(EnvKind) { return "greedy"; }

}  // namespace socsim
