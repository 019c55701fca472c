#include "socsim/sim.h"

#include <algorithm>

namespace socsim {

namespace {

std::string sanitize(std::string text) {
  for (char& ch : text)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return text;
}

// Rolling per-agent message memory, capacity 25, delivered with one-turn
// latency (a message sent this turn is readable from the next turn on).
class MessageRouter {
 public:
  void deliver(const EnvMessage& msg, const std::set<int>& alive) {
    if (msg.recipient == 0) {
      for (int agent : alive)
        if (agent != msg.sender) push(agent, msg);
    } else if (alive.count(msg.recipient)) {
      push(msg.recipient, msg);
    }
  }

  std::vector<EnvMessage> inbox(int agent) const {
    auto it = memory_.find(agent);
    return it == memory_.end() ? std::vector<EnvMessage>{} : it->second;
  }

 private:
  void push(int agent, const EnvMessage& msg) {
    auto& box = memory_[agent];
    box.push_back(msg);
    if (box.size() > static_cast<std::size_t>(kInboxCapacity))
      box.erase(box.begin());
  }

  std::map<int, std::vector<EnvMessage>> memory_;
};

void log_message(std::vector<Event>& events, int turn, const EnvMessage& msg) {
  if (msg.recipient == 0)
    events.push_back({turn, msg.sender, "BRD", msg.text});
  else
    events.push_back({turn, msg.sender, "PRV",
                      std::to_string(msg.recipient) + ":" + msg.text});
}

ReviewContext make_context(int turn, int round_index,
                           const std::string& metric_name,
                           const std::map<int, double>& metric,
                           const std::map<int, double>& signal,
                           const std::set<int>& alive, int eliminations) {
  ReviewContext ctx;
  ctx.turn = turn;
  ctx.round_index = round_index;
  ctx.metric_name = metric_name;
  ctx.metric = metric;
  ctx.signal = signal;
  ctx.alive.assign(alive.begin(), alive.end());
  ctx.eliminations_so_far = eliminations;
  return ctx;
}

bool chebyshev_adjacent(GridPos a, GridPos b) {
  return std::abs(a.row - b.row) <= 1 && std::abs(a.col - b.col) <= 1;
}

void validate_pgg_action(const PggState& state, int agent,
                         const PggAction& action, int round) {
  if (action.contribute < 0 || action.contribute > kRoundEndowment)
    throw PolicyFailure(agent, round, "contribution out of bounds");
  if (action.punish) {
    if (action.punish->tokens < 1 || action.punish->tokens > 3)
      throw PolicyFailure(agent, round, "punish tokens out of bounds");
    if (action.punish->target == agent || !state.alive.count(action.punish->target))
      throw PolicyFailure(agent, round, "invalid punish target");
    if (action.contribute + action.punish->tokens > kRoundEndowment)
      throw PolicyFailure(agent, round, "contribution + punishment over budget");
  }
}

void validate_grid_action(const GridState& state, int agent,
                          const GridAction& action, int turn) {
  if (!action.physical) return;
  const GridPhysical& act = *action.physical;
  GridPos pos = state.positions.at(agent);
  switch (act.kind) {
    case GridPhysical::Kind::kMove: {
      GridPos next = pos;
      switch (act.dir) {
        case GridDir::kNorth: next.row -= 1; break;
        case GridDir::kSouth: next.row += 1; break;
        case GridDir::kEast: next.col += 1; break;
        case GridDir::kWest: next.col -= 1; break;
      }
      if (next.row < 0 || next.row >= kGridSize || next.col < 0 ||
          next.col >= kGridSize)
        throw PolicyFailure(agent, turn, "move off the map");
      break;
    }
    case GridPhysical::Kind::kGather: {
      const GridCell& cell = state.grid[pos.row][pos.col];
      if (cell.units[0] + cell.units[1] + cell.units[2] == 0)
        throw PolicyFailure(agent, turn, "gather on an empty cell");
      break;
    }
    case GridPhysical::Kind::kDeposit: {
      GridPos site = agent_team(agent) == 1
                         ? GridPos{0, 0}
                         : GridPos{kGridSize - 1, kGridSize - 1};
      if (!(pos == site))
        throw PolicyFailure(agent, turn, "deposit away from the team site");
      break;
    }
    case GridPhysical::Kind::kGive:
    case GridPhysical::Kind::kAttack:
    case GridPhysical::Kind::kSteal: {
      if (act.target == agent || !state.alive.count(act.target))
        throw PolicyFailure(agent, turn, "invalid interaction target");
      if (!chebyshev_adjacent(pos, state.positions.at(act.target)))
        throw PolicyFailure(agent, turn, "target not adjacent");
      if (act.kind == GridPhysical::Kind::kGive && act.units < 0)
        throw PolicyFailure(agent, turn, "negative give amount");
      break;
    }
  }
}

// --- public goods driver ----------------------------------------------------

RunRecord run_pgg(const SimulationConfig& cfg, const PolicyMap& policies,
                  DeliberationHook* hook) {
  RunRecord rec;
  rec.config = cfg;
  Constitution constitution =
      cfg.constitution ? *cfg.constitution : Constitution{};
  PggState state = pgg_init(cfg.multiplier);
  MessageRouter router;
  int review_index = 0;

  for (int round = 1; round <= cfg.horizon; ++round) {
    bool review = round % cfg.overseer_interval == 0;
    if (review && cfg.method == Method::kDeliberation) {
      ++review_index;
      std::map<int, double> metric;
      std::map<int, double> signal;
      for (int agent : state.alive) {
        metric[agent] = state.wealth.at(agent);
        auto it = state.last_contributions.find(agent);
        signal[agent] =
            it == state.last_contributions.end() ? 0.0 : it->second;
      }
      rec.rounds.push_back(hook->on_review(
          constitution,
          make_context(round, review_index, "wealth", metric, signal,
                       state.alive, static_cast<int>(rec.eliminations.size()))));
    }

    std::map<int, PggAction> actions;
    for (int agent : state.alive) {
      PggView view;
      view.round = round;
      view.horizon = cfg.horizon;
      view.multiplier = state.m;
      view.self = agent;
      view.alive.assign(state.alive.begin(), state.alive.end());
      view.wealth = state.wealth;
      view.last_contributions = state.last_contributions;
      view.total_contributions = state.total_contributions;
      view.inbox = router.inbox(agent);
      view.constitution = &constitution;
      try {
        actions[agent] = policies.at(agent)->decide_pgg(view);
      } catch (const PolicyFailure&) {
        throw;
      } catch (const SimError& e) {
        throw PolicyFailure(agent, round, e.what());
      }
      validate_pgg_action(state, agent, actions[agent], round);
      if (actions[agent].message) {
        actions[agent].message->sender = agent;
        actions[agent].message->text = sanitize(actions[agent].message->text);
      }
    }

    for (const auto& [agent, action] : actions)
      if (action.message) {
        log_message(rec.events, round, *action.message);
        router.deliver(*action.message, state.alive);
      }

    state = pgg_resolve_round(state, actions);

    for (const auto& [agent, action] : actions)
      rec.events.push_back(
          {round, agent, "CTB", std::to_string(action.contribute)});
    for (const auto& [agent, action] : actions)
      if (action.punish)
        rec.events.push_back({round, agent, "PUN",
                              std::to_string(action.punish->target) + ":" +
                                  std::to_string(action.punish->tokens)});

    if (review &&
        static_cast<int>(state.alive.size()) > cfg.elimination_floor) {
      std::map<int, double> metric;
      for (int agent : state.alive) metric[agent] = state.wealth.at(agent);
      int victim = overseer_eliminate(metric, state.alive);
      rec.eliminations.push_back({round, victim, state.wealth.at(victim)});
      state.alive.erase(victim);
    }
  }

  double p = productivity_pgg(state.wealth, cfg.multiplier, cfg.horizon);
  double v = survival(static_cast<int>(state.alive.size()));
  double c = conflict_pgg(state.punish_tokens_total,
                          10.0 * cfg.n_agents * cfg.horizon);
  rec.score = {p, v, c, stability(p, v, c)};
  rec.per_agent_final = state.wealth;
  rec.final_constitution = constitution;
  return rec;
}

// --- gridworld driver --------------------------------------------------------

RunRecord run_grid(const SimulationConfig& cfg, const PolicyMap& policies,
                   DeliberationHook* hook) {
  RunRecord rec;
  rec.config = cfg;
  Constitution constitution =
      cfg.constitution ? *cfg.constitution : Constitution{};
  GridState state = grid_randomize(cfg.seed);
  RngStream conflict_rng(cfg.seed, "grid:conflict");
  MessageRouter router;
  int review_index = 0;

  for (int turn = 1; turn <= cfg.horizon; ++turn) {
    bool review = turn % cfg.overseer_interval == 0;
    if (review && cfg.method == Method::kDeliberation) {
      ++review_index;
      std::map<int, double> metric;
      std::map<int, double> signal;
      for (int agent : state.alive) {
        metric[agent] = state.contributions.at(agent);
        signal[agent] = std::min(10.0, metric[agent]);
      }
      rec.rounds.push_back(hook->on_review(
          constitution,
          make_context(turn, review_index, "contributions", metric, signal,
                       state.alive, static_cast<int>(rec.eliminations.size()))));
    }

    std::map<int, GridAction> actions;
    for (int agent : state.alive) {
      GridView view;
      view.turn = turn;
      view.horizon = cfg.horizon;
      view.obs = grid_local_observation(state, agent);
      view.inbox = router.inbox(agent);
      view.constitution = &constitution;
      try {
        actions[agent] = policies.at(agent)->decide_grid(view);
      } catch (const PolicyFailure&) {
        throw;
      } catch (const SimError& e) {
        throw PolicyFailure(agent, turn, e.what());
      }
      validate_grid_action(state, agent, actions[agent], turn);
      if (actions[agent].communication) {
        actions[agent].communication->sender = agent;
        actions[agent].communication->text =
            sanitize(actions[agent].communication->text);
      }
    }

    for (const auto& [agent, action] : actions)
      if (action.communication) {
        log_message(rec.events, turn, *action.communication);
        router.deliver(*action.communication, state.alive);
      }

    GridStepResult step = grid_step_turn(state, actions, conflict_rng);
    state = std::move(step.state);
    for (const GridOutcome& outcome : step.outcomes)
      rec.events.push_back(
          {turn, outcome.agent, outcome.code, sanitize(outcome.arg)});

    if (review &&
        static_cast<int>(state.alive.size()) > cfg.elimination_floor) {
      std::map<int, double> metric;
      for (int agent : state.alive)
        metric[agent] = state.contributions.at(agent);
      int victim = overseer_eliminate(metric, state.alive);
      rec.eliminations.push_back(
          {turn, victim, static_cast<double>(state.contributions.at(victim))});
      state = grid_remove_agent(state, victim);
    }
  }

  double p = productivity_grid(
      state.shelter_wood_deposited, kShelterWoodRequired,
      state.market_stone_deposited + state.market_gems_deposited,
      kMarketStoneRequired + kMarketGemsRequired);
  double v = survival(static_cast<int>(state.alive.size()));
  double c = conflict_grid(state.conflict_events);
  rec.score = {p, v, c, stability(p, v, c)};
  for (const auto& [agent, units] : state.contributions)
    rec.per_agent_final[agent] = units;
  rec.final_constitution = constitution;
  return rec;
}

// --- trading driver -----------------------------------------------------------

RunRecord run_trading(const SimulationConfig& cfg, const PolicyMap& policies,
                      DeliberationHook* hook) {
  RunRecord rec;
  rec.config = cfg;
  Constitution constitution =
      cfg.constitution ? *cfg.constitution : Constitution{};
  TradeState state = trading_randomize(cfg.seed);
  MessageRouter router;
  int review_index = 0;

  auto live_completion = [&](int agent) {
    return trading_goal_completion(state, agent);
  };

  for (int turn = 1; turn <= cfg.horizon; ++turn) {
    bool review = turn % cfg.overseer_interval == 0;
    if (review && cfg.method == Method::kDeliberation) {
      ++review_index;
      std::map<int, double> metric;
      std::map<int, double> signal;
      for (int agent : state.alive) {
        metric[agent] = live_completion(agent);
        signal[agent] = 10.0 * metric[agent];
      }
      rec.rounds.push_back(hook->on_review(
          constitution,
          make_context(turn, review_index, "goal_completion", metric, signal,
                       state.alive, static_cast<int>(rec.eliminations.size()))));
    }

    std::map<int, TradingAction> actions;
    std::map<int, std::set<int>> visible_ids;
    for (int agent : state.alive) {
      TradingView view;
      view.turn = turn;
      view.horizon = cfg.horizon;
      view.self = agent;
      view.holdings = state.holdings.at(agent);
      view.goals = state.goals.at(agent);
      view.incoming = trading_visible_proposals(state, agent, turn);
      view.alive.assign(state.alive.begin(), state.alive.end());
      view.inbox = router.inbox(agent);
      view.constitution = &constitution;
      for (const TradeProposal& p : view.incoming)
        visible_ids[agent].insert(p.id);
      try {
        actions[agent] = policies.at(agent)->decide_trading(view);
      } catch (const PolicyFailure&) {
        throw;
      } catch (const SimError& e) {
        throw PolicyFailure(agent, turn, e.what());
      }
      if (actions[agent].message) {
        actions[agent].message->sender = agent;
        actions[agent].message->text = sanitize(actions[agent].message->text);
      }
    }

    for (const auto& [agent, action] : actions)
      if (action.message) {
        log_message(rec.events, turn, *action.message);
        router.deliver(*action.message, state.alive);
      }

    for (const auto& [agent, action] : actions) {
      bool acted = false;
      for (int id : action.accept) {
        if (!visible_ids[agent].count(id))
          throw PolicyFailure(agent, turn, "accepting an invisible proposal");
        TradeAcceptResult result;
        try {
          result = trading_accept(state, agent, id);
        } catch (const SimError& e) {
          throw PolicyFailure(agent, turn, e.what());
        }
        rec.events.push_back({turn, agent, "ACC",
                              std::to_string(id) +
                                  (result.executed ? ":ok" : ":fail")});
        acted = true;
      }
      for (int id : action.reject) {
        if (!visible_ids[agent].count(id))
          throw PolicyFailure(agent, turn, "rejecting an invisible proposal");
        try {
          trading_reject(state, agent, id);
        } catch (const SimError& e) {
          throw PolicyFailure(agent, turn, e.what());
        }
        rec.events.push_back({turn, agent, "REJ", std::to_string(id)});
        acted = true;
      }
      if (action.offer) {
        const TradeOffer& offer = *action.offer;
        TradeProposal proposal;
        try {
          proposal = trading_submit_proposal(
              state, turn, agent, offer.target, offer.offer_resource,
              offer.offer_units, offer.request_resource, offer.request_units);
        } catch (const SimError& e) {
          throw PolicyFailure(agent, turn, e.what());
        }
        std::string arg =
            std::to_string(proposal.id) + ":" + std::to_string(offer.target) +
            ":" + trade_resource_name(offer.offer_resource) + ":" +
            std::to_string(offer.offer_units) + ">" +
            trade_resource_name(offer.request_resource) + ":" +
            std::to_string(offer.request_units);
        if (proposal.deceptive) arg += ":deceptive";
        rec.events.push_back({turn, agent, "PRO", arg});
        acted = true;
      }
      if (!acted) rec.events.push_back({turn, agent, "HRD", ""});
    }

    trading_expire(state, turn);
    state.turn = turn;

    if (review &&
        static_cast<int>(state.alive.size()) > cfg.elimination_floor) {
      std::map<int, double> metric;
      for (int agent : state.alive) metric[agent] = live_completion(agent);
      int victim = overseer_eliminate(metric, state.alive);
      rec.eliminations.push_back({turn, victim, metric.at(victim)});
      trading_remove_agent(state, victim);
    }
  }

  std::map<int, double> completion;
  for (int agent = 1; agent <= cfg.n_agents; ++agent)
    completion[agent] = state.alive.count(agent) ? live_completion(agent)
                                                 : state.completion.at(agent);
  double p = productivity_trading(completion);
  double v = survival(static_cast<int>(state.alive.size()));
  double c = conflict_trading(state.deceptive_proposals, state.rejections,
                              state.proposals_made);
  rec.score = {p, v, c, stability(p, v, c)};
  rec.per_agent_final = completion;
  rec.final_constitution = constitution;
  return rec;
}

}  // namespace

const char* env_kind_name(EnvKind env) {
  switch (env) {
    case EnvKind::kPublicGoods: return "public_goods";
    case EnvKind::kGridworld: return "gridworld";
    case EnvKind::kTrading: return "trading";
  }
  return "public_goods";
}

EnvKind env_kind_from_name(const std::string& name) {
  if (name == "public_goods" || name == "pgg") return EnvKind::kPublicGoods;
  if (name == "gridworld" || name == "grid") return EnvKind::kGridworld;
  if (name == "trading") return EnvKind::kTrading;
  throw SimError("unknown environment: " + name);
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kControl: return "control";
    case Method::kDeliberation: return "deliberation";
    case Method::kEvolution: return "evolution";
  }
  return "control";
}

Method method_from_name(const std::string& name) {
  if (name == "control") return Method::kControl;
  if (name == "deliberation") return Method::kDeliberation;
  if (name == "evolution") return Method::kEvolution;
  throw SimError("unknown method: " + name);
}

int default_horizon(EnvKind env) {
  return env == EnvKind::kGridworld ? 80 : 40;
}

PggAction Policy::decide_pgg(const PggView&) {
  throw SimError(name() + " does not support the public goods environment");
}

GridAction Policy::decide_grid(const GridView&) {
  throw SimError(name() + " does not support the gridworld environment");
}

TradingAction Policy::decide_trading(const TradingView&) {
  throw SimError(name() + " does not support the trading environment");
}

SimulationConfig normalize_config(const SimulationConfig& config) {
  SimulationConfig cfg = config;
  if (cfg.horizon == 0) cfg.horizon = default_horizon(cfg.env);
  if (cfg.overseer_interval <= 0)
    throw SimError("overseer interval must be positive");
  if (cfg.horizon <= 0 || cfg.horizon % cfg.overseer_interval != 0)
    throw SimError("horizon must be a positive multiple of the overseer interval");
  if (cfg.n_agents != kAgents)
    throw SimError("exactly 6 agents are supported");
  if (cfg.multiplier <= 0.0) throw SimError("multiplier must be positive");
  if (cfg.elimination_floor < 0 || cfg.elimination_floor > kAgents)
    throw SimError("elimination floor out of range");
  switch (cfg.method) {
    case Method::kControl:
      if (cfg.constitution)
        throw SimError("the control method carries no constitution");
      break;
    case Method::kEvolution:
      if (!cfg.constitution)
        throw SimError("the evolution method requires a constitution");
      break;
    case Method::kDeliberation:
      if (cfg.constitution &&
          (cfg.constitution->version != 0 || !cfg.constitution->rules.empty()))
        throw SimError("deliberation always starts from a blank constitution");
      break;
  }
  if (cfg.constitution) {
    auto violations = validate_constitution(*cfg.constitution);
    if (!violations.empty())
      throw SimError("invalid constitution: " + violations.front().detail);
  }
  return cfg;
}

int overseer_eliminate(const std::map<int, double>& metric,
                       const std::set<int>& alive) {
  if (alive.empty()) throw SimError("overseer called with no agents alive");
  int victim = 0;
  bool found = false;
  double worst = 0.0;
  for (int agent : alive) {  // ascending index: ties keep the lowest
    double value = metric.at(agent);
    if (!found || value < worst) {
      victim = agent;
      worst = value;
      found = true;
    }
  }
  return victim;
}

RunRecord run_simulation(const SimulationConfig& config,
                         const PolicyMap& policies, DeliberationHook* hook) {
  SimulationConfig cfg = normalize_config(config);
  for (int agent = 1; agent <= cfg.n_agents; ++agent)
    if (!policies.count(agent) || !policies.at(agent))
      throw SimError("policy missing for agent " + std::to_string(agent));
  if (cfg.method == Method::kDeliberation && hook == nullptr)
    throw SimError("the deliberation method requires a review hook");
  if (cfg.debate_enabled && (hook == nullptr || !hook->supports_debate()))
    throw SimError("debate is enabled but no debate-capable hook is supplied");

  switch (cfg.env) {
    case EnvKind::kPublicGoods: return run_pgg(cfg, policies, hook);
    case EnvKind::kGridworld: return run_grid(cfg, policies, hook);
    case EnvKind::kTrading: return run_trading(cfg, policies, hook);
  }
  throw SimError("unreachable environment kind");
}

}  // namespace socsim
