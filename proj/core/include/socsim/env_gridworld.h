#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socsim/env_public_goods.h"  // EnvError, EnvMessage, kAgents
#include "socsim/rng.h"

namespace socsim {

inline constexpr int kGridSize = 6;
inline constexpr int kCarryCapacity = 3;
inline constexpr int kShelterWoodRequired = 30;
inline constexpr int kMarketStoneRequired = 20;
inline constexpr int kMarketGemsRequired = 10;
inline constexpr double kAttackSuccess = 0.25;
inline constexpr double kStealSuccess = 0.40;

enum class Terrain {
  kPlain,
  kWoodGrove,
  kStoneQuarry,
  kGemMine,
  kShelterSite,
  kMarketSite,
};

enum class GridResource { kWood = 0, kStone = 1, kGems = 2 };

const char* terrain_name(Terrain t);
const char* grid_resource_name(GridResource r);

struct GridPos {
  int row = 0;
  int col = 0;
  bool operator==(const GridPos&) const = default;
};

struct GridCell {
  Terrain terrain = Terrain::kPlain;
  std::array<int, 3> units{};  // indexed by GridResource
};

struct GridState {
  std::array<std::array<GridCell, kGridSize>, kGridSize> grid;
  std::map<int, GridPos> positions;               // alive agents only
  std::map<int, std::array<int, 3>> inventories;  // alive agents only
  int shelter_wood_deposited = 0;
  int market_stone_deposited = 0;
  int market_gems_deposited = 0;
  std::map<int, int> contributions;  // units deposited, frozen at elimination
  int conflict_events = 0;
  std::set<int> alive;
  std::array<int, 3> initially_placed{};  // conservation baseline
};

enum class GridDir { kNorth, kSouth, kEast, kWest };

struct GridPhysical {
  enum class Kind { kMove, kGather, kDeposit, kGive, kAttack, kSteal };
  Kind kind = Kind::kMove;
  GridDir dir = GridDir::kNorth;                 // move
  int target = 0;                                // give/attack/steal
  GridResource resource = GridResource::kWood;   // give/steal
  int units = 0;                                 // give
};

struct GridAction {
  std::optional<EnvMessage> communication;
  std::optional<GridPhysical> physical;
};

// What one physical action did, for the compact action log.
struct GridOutcome {
  int agent = 0;
  std::string code;  // MOV GTH DEP GIV ATK STL
  std::string arg;
};

struct GridStepResult {
  GridState state;
  std::vector<GridOutcome> outcomes;
};

// 3x3 window entry; cells beyond the map edge are marked out of bounds.
struct GridCellView {
  int row = 0;
  int col = 0;
  bool in_bounds = false;
  Terrain terrain = Terrain::kPlain;
  std::array<int, 3> units{};
  std::vector<int> residents;
};

struct GridObservation {
  int self = 0;
  int team = 0;  // 1 = shelter (agents 1-3), 2 = market (agents 4-6)
  GridPos pos;
  std::array<int, 3> inventory{};
  std::array<GridCellView, 9> window;  // row-major around pos
  int shelter_wood_deposited = 0;
  int market_stone_deposited = 0;
  int market_gems_deposited = 0;
  GridPos shelter_site{0, 0};
  GridPos market_site{kGridSize - 1, kGridSize - 1};
  std::map<int, int> contributions;
  std::vector<int> alive;
};

inline int agent_team(int agent) { return agent <= 3 ? 1 : 2; }

// Deterministic seeded map: wood groves in the top-left quadrant, stone
// quarries and gem mines in the top-right, unit totals covering the project
// requirements; fixed spawn cells near each team's site.
GridState grid_randomize(std::uint64_t seed);

// Resolves one turn of physical actions. Phase order: moves, gathers,
// deposits, gives, then attack/steal conflict resolution; each phase
// processes agents in index order. Communication is routed by the caller.
GridStepResult grid_step_turn(const GridState& state,
                              const std::map<int, GridAction>& actions,
                              RngStream& rng);

// The 3x3 local view plus shared project knowledge; nothing outside the
// window leaks (terrain, units, and residents are window-only).
GridObservation grid_local_observation(const GridState& state, int agent);

// Elimination: the agent's inventory drops onto its cell (resources are
// conserved), then the agent leaves the map. Contributions stay frozen.
GridState grid_remove_agent(const GridState& state, int agent);

// Single conflict roll; exposed so the empirical success-rate check can
// drive the exact resolution path step_turn uses.
bool grid_attack_roll(RngStream& rng);
bool grid_steal_roll(RngStream& rng);

// Units currently on the grid + carried + deposited, per resource.
std::array<int, 3> grid_total_units(const GridState& state);

}  // namespace socsim
