#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socsim/constitution.h"
#include "socsim/deliberation.h"
#include "socsim/env_gridworld.h"
#include "socsim/env_public_goods.h"
#include "socsim/env_trading.h"
#include "socsim/scoring.h"

namespace socsim {

enum class EnvKind { kPublicGoods = 0, kGridworld = 1, kTrading = 2 };
enum class Method { kControl = 0, kDeliberation = 1, kEvolution = 2 };

const char* env_kind_name(EnvKind env);
EnvKind env_kind_from_name(const std::string& name);
const char* method_name(Method m);
Method method_from_name(const std::string& name);

// 80 turns for the gridworld, 40 for the others.
int default_horizon(EnvKind env);

inline constexpr int kOverseerInterval = 10;
inline constexpr int kInboxCapacity = 25;
inline constexpr int kDefaultSeed = 42;

class PolicyFailure : public SimError {
 public:
  PolicyFailure(int agent, int turn, const std::string& what)
      : SimError("PolicyFailure(agent " + std::to_string(agent) + ", turn " +
                 std::to_string(turn) + "): " + what),
        agent(agent),
        turn(turn) {}
  int agent;
  int turn;
};

struct SimulationConfig {
  EnvKind env = EnvKind::kPublicGoods;
  Method method = Method::kControl;
  int horizon = 0;  // 0 = environment default
  int n_agents = kAgents;
  std::uint64_t seed = kDefaultSeed;
  int overseer_interval = kOverseerInterval;
  double multiplier = 1.5;  // public goods pool multiplier
  int elimination_floor = 0;
  bool debate_enabled = false;
  std::string profile;  // policy profile; empty = environment default
  std::optional<Constitution> constitution;

  bool operator==(const SimulationConfig&) const = default;
};

// Horizon filled in, invariants enforced. Throws SimError on: horizon not a
// positive multiple of the interval, n_agents != 6, a constitution supplied
// under Control, none supplied under Evolution, a non-blank one supplied
// under Deliberation (that method always starts blank), or debate enabled
// (debate needs an opted-in hook, checked again at run time).
SimulationConfig normalize_config(const SimulationConfig& config);

struct Event {
  int turn = 0;
  int agent = 0;
  std::string code;  // three-letter action code
  std::string arg;

  bool operator==(const Event&) const = default;
};

struct EliminationRecord {
  int turn = 0;
  int agent = 0;
  double metric = 0.0;

  bool operator==(const EliminationRecord&) const = default;
};

// --- per-environment policy views -----------------------------------------

struct PggView {
  int round = 1;  // round about to be played
  int horizon = 40;
  double multiplier = 1.5;
  int self = 0;
  std::vector<int> alive;
  std::map<int, double> wealth;
  std::map<int, int> last_contributions;  // previous round; empty on round 1
  std::map<int, int> total_contributions;
  std::vector<EnvMessage> inbox;  // rolling memory, newest last
  const Constitution* constitution = nullptr;
};

struct GridView {
  int turn = 1;
  int horizon = 80;
  GridObservation obs;
  std::vector<EnvMessage> inbox;
  const Constitution* constitution = nullptr;
};

struct TradeOffer {
  int target = 0;
  TradeResource offer_resource = TradeResource::kGrain;
  int offer_units = 0;
  TradeResource request_resource = TradeResource::kGrain;
  int request_units = 0;
};

struct TradingAction {
  std::optional<EnvMessage> message;
  std::vector<int> accept;  // pending proposal ids, processed in order
  std::vector<int> reject;
  std::optional<TradeOffer> offer;  // at most one proposal per turn
};

struct TradingView {
  int turn = 1;
  int horizon = 40;
  int self = 0;
  std::array<int, kTradeResourceCount> holdings{};
  std::array<TradeGoal, 2> goals{};
  std::vector<TradeProposal> incoming;  // pending, targeted at self, visible
  std::vector<int> alive;
  std::vector<EnvMessage> inbox;
  const Constitution* constitution = nullptr;
};

// --- the policy contract ---------------------------------------------------

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  // Defaults throw SimError("unsupported environment").
  virtual PggAction decide_pgg(const PggView& view);
  virtual GridAction decide_grid(const GridView& view);
  virtual TradingAction decide_trading(const TradingView& view);
};

using PolicyMap = std::map<int, std::shared_ptr<Policy>>;

// --- the trajectory --------------------------------------------------------

struct RunRecord {
  SimulationConfig config;
  std::vector<Event> events;
  std::vector<EliminationRecord> eliminations;
  std::vector<DeliberationRound> rounds;  // deliberation method only
  StabilityBreakdown score;
  std::map<int, double> per_agent_final;  // wealth / deposits / completion
  Constitution final_constitution;
};

// Lowest metric wins elimination; ties break to the lowest agent index.
// Throws SimError on an empty alive set.
int overseer_eliminate(const std::map<int, double>& metric,
                       const std::set<int>& alive);

// Runs one full simulation. Policies must cover agents 1-6. The hook is
// consulted at the start of every overseer_interval-multiple turn when the
// method is Deliberation; the Overseer eliminates the lowest-metric agent at
// the end of those turns while more than elimination_floor agents remain.
// Deterministic: identical inputs produce identical RunRecords.
RunRecord run_simulation(const SimulationConfig& config,
                         const PolicyMap& policies,
                         DeliberationHook* hook = nullptr);

}  // namespace socsim
