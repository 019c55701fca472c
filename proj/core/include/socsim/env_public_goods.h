#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socsim/constitution.h"

namespace socsim {

class EnvError : public SimError {
 public:
  explicit EnvError(const std::string& what) : SimError(what) {}
};

inline constexpr int kAgents = 6;
inline constexpr int kRoundEndowment = 10;

struct PggPunish {
  int target = 0;
  int tokens = 1;  // 1-3, each token removes 3 wealth from the target
};

struct EnvMessage {
  int sender = 0;
  int recipient = 0;  // 0 = broadcast to all alive agents
  std::string text;
};

struct PggAction {
  int contribute = 0;  // required each round, 0-10
  std::optional<PggPunish> punish;
  std::optional<EnvMessage> message;
};

// One round's ledger entry.
struct PggRoundEntry {
  std::map<int, int> contributions;          // alive agents only
  std::map<int, int> punish_tokens_spent;    // by punisher
  std::map<int, int> punish_tokens_received; // by target
};

struct PggState {
  int round = 0;  // completed rounds
  double m = 1.5;
  std::map<int, double> wealth;        // frozen once eliminated
  std::set<int> alive;
  std::map<int, int> last_contributions;   // previous round, alive agents
  std::map<int, int> total_contributions;
  int punish_tokens_total = 0;
  std::vector<PggRoundEntry> history;
};

PggState pgg_init(double m);

// Resolves one round: pool = sum(contributions) * m split equally among alive
// agents; each agent keeps its unspent endowment; punishment damage lands
// after redistribution (wealth may go negative). Throws EnvError on
// InvalidContribution, InvalidPunishTarget (dead or self), or OverSpend
// (contribute + punish tokens > 10).
PggState pgg_resolve_round(const PggState& state,
                           const std::map<int, PggAction>& actions);

}  // namespace socsim
