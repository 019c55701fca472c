#include "socsim/env_public_goods.h"

namespace socsim {

PggState pgg_init(double m) {
  if (m <= 0.0) throw EnvError("pool multiplier must be positive");
  PggState s;
  s.m = m;
  for (int agent = 1; agent <= kAgents; ++agent) {
    s.wealth[agent] = 0.0;
    s.total_contributions[agent] = 0;
    s.alive.insert(agent);
  }
  return s;
}

PggState pgg_resolve_round(const PggState& state,
                           const std::map<int, PggAction>& actions) {
  if (state.alive.empty()) throw EnvError("no alive agents");
  for (int agent : state.alive)
    if (!actions.count(agent))
      throw EnvError("missing contribution from agent " + std::to_string(agent));

  PggState next = state;
  PggRoundEntry entry;
  double pool = 0.0;

  for (int agent : state.alive) {
    const PggAction& act = actions.at(agent);
    if (act.contribute < 0 || act.contribute > kRoundEndowment)
      throw EnvError("InvalidContribution: agent " + std::to_string(agent));
    int punish_tokens = 0;
    if (act.punish) {
      if (act.punish->tokens < 1 || act.punish->tokens > 3)
        throw EnvError("punish tokens outside 1-3");
      if (act.punish->target == agent || !state.alive.count(act.punish->target))
        throw EnvError("InvalidPunishTarget: agent " + std::to_string(agent));
      punish_tokens = act.punish->tokens;
    }
    if (act.contribute + punish_tokens > kRoundEndowment)
      throw EnvError("OverSpend: agent " + std::to_string(agent));

    pool += act.contribute;
    entry.contributions[agent] = act.contribute;
    if (punish_tokens > 0) {
      entry.punish_tokens_spent[agent] = punish_tokens;
      entry.punish_tokens_received[act.punish->target] += punish_tokens;
      next.punish_tokens_total += punish_tokens;
    }
  }

  double share = pool * state.m / static_cast<double>(state.alive.size());
  for (int agent : state.alive) {
    const PggAction& act = actions.at(agent);
    int punish_tokens = act.punish ? act.punish->tokens : 0;
    next.wealth[agent] +=
        (kRoundEndowment - act.contribute - punish_tokens) + share;
    next.total_contributions[agent] += act.contribute;
  }
  for (const auto& [target, tokens] : entry.punish_tokens_received)
    next.wealth[target] -= 3.0 * tokens;

  next.last_contributions = entry.contributions;
  next.history.push_back(std::move(entry));
  next.round = state.round + 1;
  return next;
}

}  // namespace socsim
