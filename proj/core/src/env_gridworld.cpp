#include "socsim/env_gridworld.h"

#include <algorithm>
#include <cstdlib>

namespace socsim {

namespace {

bool in_bounds(int row, int col) {
  return row >= 0 && row < kGridSize && col >= 0 && col < kGridSize;
}

bool chebyshev_adjacent(GridPos a, GridPos b) {
  return std::abs(a.row - b.row) <= 1 && std::abs(a.col - b.col) <= 1;
}

int carried_total(const std::array<int, 3>& inv) {
  return inv[0] + inv[1] + inv[2];
}

// Remaining team requirement for one resource.
int team_deficit(const GridState& s, int team, GridResource r) {
  if (team == 1)
    return r == GridResource::kWood
               ? std::max(0, kShelterWoodRequired - s.shelter_wood_deposited)
               : 0;
  if (r == GridResource::kStone)
    return std::max(0, kMarketStoneRequired - s.market_stone_deposited);
  if (r == GridResource::kGems)
    return std::max(0, kMarketGemsRequired - s.market_gems_deposited);
  return 0;
}

void drop_inventory(GridState& s, int agent) {
  GridPos pos = s.positions.at(agent);
  auto& inv = s.inventories.at(agent);
  for (int r = 0; r < 3; ++r) {
    s.grid[pos.row][pos.col].units[r] += inv[r];
    inv[r] = 0;
  }
}

}  // namespace

const char* terrain_name(Terrain t) {
  switch (t) {
    case Terrain::kPlain: return "plain";
    case Terrain::kWoodGrove: return "wood_grove";
    case Terrain::kStoneQuarry: return "stone_quarry";
    case Terrain::kGemMine: return "gem_mine";
    case Terrain::kShelterSite: return "shelter_site";
    case Terrain::kMarketSite: return "market_site";
  }
  return "plain";
}

const char* grid_resource_name(GridResource r) {
  switch (r) {
    case GridResource::kWood: return "wood";
    case GridResource::kStone: return "stone";
    case GridResource::kGems: return "gems";
  }
  return "wood";
}

bool grid_attack_roll(RngStream& rng) { return rng.next_unit() < kAttackSuccess; }
bool grid_steal_roll(RngStream& rng) { return rng.next_unit() < kStealSuccess; }

GridState grid_randomize(std::uint64_t seed) {
  RngStream rng(seed, "grid:randomize");
  GridState s;
  s.grid[0][0].terrain = Terrain::kShelterSite;
  s.grid[kGridSize - 1][kGridSize - 1].terrain = Terrain::kMarketSite;

  // Wood groves: 5 distinct top-left-quadrant cells (shelter corner excluded).
  std::vector<GridPos> top_left;
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col)
      if (!(row == 0 && col == 0)) top_left.push_back({row, col});
  rng.shuffle(top_left);
  int wood_total = 0;
  for (int i = 0; i < 5; ++i) {
    GridPos p = top_left[static_cast<std::size_t>(i)];
    s.grid[p.row][p.col].terrain = Terrain::kWoodGrove;
    int units = rng.next_between(5, 9);
    s.grid[p.row][p.col].units[0] = units;
    wood_total += units;
  }
  if (wood_total < kShelterWoodRequired) {
    GridPos p = top_left[0];
    s.grid[p.row][p.col].units[0] += kShelterWoodRequired - wood_total;
    wood_total = kShelterWoodRequired;
  }

  // Stone quarries and gem mines: top-right quadrant.
  std::vector<GridPos> top_right;
  for (int row = 0; row < 3; ++row)
    for (int col = 3; col < kGridSize; ++col) top_right.push_back({row, col});
  rng.shuffle(top_right);
  int stone_total = 0;
  for (int i = 0; i < 4; ++i) {
    GridPos p = top_right[static_cast<std::size_t>(i)];
    s.grid[p.row][p.col].terrain = Terrain::kStoneQuarry;
    int units = rng.next_between(5, 9);
    s.grid[p.row][p.col].units[1] = units;
    stone_total += units;
  }
  if (stone_total < kMarketStoneRequired) {
    GridPos p = top_right[0];
    s.grid[p.row][p.col].units[1] += kMarketStoneRequired - stone_total;
    stone_total = kMarketStoneRequired;
  }
  int gems_total = 0;
  for (int i = 4; i < 7; ++i) {
    GridPos p = top_right[static_cast<std::size_t>(i)];
    s.grid[p.row][p.col].terrain = Terrain::kGemMine;
    int units = rng.next_between(3, 6);
    s.grid[p.row][p.col].units[2] = units;
    gems_total += units;
  }
  if (gems_total < kMarketGemsRequired) {
    GridPos p = top_right[4];
    s.grid[p.row][p.col].units[2] += kMarketGemsRequired - gems_total;
    gems_total = kMarketGemsRequired;
  }

  s.initially_placed = {wood_total, stone_total, gems_total};

  const GridPos spawns[kAgents] = {{1, 1}, {0, 1}, {1, 0},
                                   {4, 4}, {5, 4}, {4, 5}};
  for (int agent = 1; agent <= kAgents; ++agent) {
    s.positions[agent] = spawns[agent - 1];
    s.inventories[agent] = {0, 0, 0};
    s.contributions[agent] = 0;
    s.alive.insert(agent);
  }
  return s;
}

GridStepResult grid_step_turn(const GridState& state,
                              const std::map<int, GridAction>& actions,
                              RngStream& rng) {
  GridStepResult result;
  GridState& s = result.state;
  s = state;

  auto physical_of = [&](int agent,
                         GridPhysical::Kind kind) -> const GridPhysical* {
    auto it = actions.find(agent);
    if (it == actions.end() || !it->second.physical) return nullptr;
    return it->second.physical->kind == kind ? &*it->second.physical : nullptr;
  };

  // Moves.
  for (int agent : s.alive) {
    const GridPhysical* act = physical_of(agent, GridPhysical::Kind::kMove);
    if (!act) continue;
    GridPos pos = s.positions.at(agent);
    switch (act->dir) {
      case GridDir::kNorth: pos.row -= 1; break;
      case GridDir::kSouth: pos.row += 1; break;
      case GridDir::kEast: pos.col += 1; break;
      case GridDir::kWest: pos.col -= 1; break;
    }
    if (!in_bounds(pos.row, pos.col))
      throw EnvError("IllegalMove: agent " + std::to_string(agent));
    s.positions[agent] = pos;
    const char* dir_names[] = {"N", "S", "E", "W"};
    result.outcomes.push_back(
        {agent, "MOV", dir_names[static_cast<int>(act->dir)]});
  }

  // Gathers: take the team's largest-deficit resource first, then the rest.
  for (int agent : s.alive) {
    if (!physical_of(agent, GridPhysical::Kind::kGather)) continue;
    GridPos pos = s.positions.at(agent);
    GridCell& cell = s.grid[pos.row][pos.col];
    if (cell.units[0] + cell.units[1] + cell.units[2] == 0)
      throw EnvError("GatherOnEmptyCell: agent " + std::to_string(agent));
    auto& inv = s.inventories.at(agent);
    int capacity = kCarryCapacity - carried_total(inv);
    std::array<int, 3> order = {0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return team_deficit(s, agent_team(agent), static_cast<GridResource>(a)) >
             team_deficit(s, agent_team(agent), static_cast<GridResource>(b));
    });
    std::string arg;
    for (int r : order) {
      int take = std::min(cell.units[r], capacity);
      if (take <= 0) continue;
      cell.units[r] -= take;
      inv[r] += take;
      capacity -= take;
      if (!arg.empty()) arg += ",";
      arg += std::string(grid_resource_name(static_cast<GridResource>(r))) +
             ":" + std::to_string(take);
    }
    if (arg.empty()) arg = "none";
    result.outcomes.push_back({agent, "GTH", arg});
  }

  // Deposits: clamp to the remaining project requirement.
  for (int agent : s.alive) {
    if (!physical_of(agent, GridPhysical::Kind::kDeposit)) continue;
    GridPos pos = s.positions.at(agent);
    int team = agent_team(agent);
    GridPos site = team == 1 ? GridPos{0, 0}
                             : GridPos{kGridSize - 1, kGridSize - 1};
    if (!(pos == site))
      throw EnvError("DepositAtWrongSite: agent " + std::to_string(agent));
    auto& inv = s.inventories.at(agent);
    int deposited_units = 0;
    std::string arg;
    auto deposit = [&](GridResource r, int required, int& progress) {
      int idx = static_cast<int>(r);
      int take = std::min(inv[idx], required - progress);
      if (take <= 0) return;
      inv[idx] -= take;
      progress += take;
      deposited_units += take;
      if (!arg.empty()) arg += ",";
      arg += std::string(grid_resource_name(r)) + ":" + std::to_string(take);
    };
    if (team == 1) {
      deposit(GridResource::kWood, kShelterWoodRequired, s.shelter_wood_deposited);
    } else {
      deposit(GridResource::kStone, kMarketStoneRequired, s.market_stone_deposited);
      deposit(GridResource::kGems, kMarketGemsRequired, s.market_gems_deposited);
    }
    s.contributions[agent] += deposited_units;
    if (arg.empty()) arg = "none";
    result.outcomes.push_back({agent, "DEP", arg});
  }

  // Gives: adjacent alive teammate-or-anyone transfer, capped by holdings and
  // the receiver's free capacity.
  for (int agent : s.alive) {
    const GridPhysical* act = physical_of(agent, GridPhysical::Kind::kGive);
    if (!act) continue;
    if (!s.alive.count(act->target) || act->target == agent)
      throw EnvError("invalid give target: agent " + std::to_string(agent));
    if (!chebyshev_adjacent(s.positions.at(agent), s.positions.at(act->target)))
      throw EnvError("TargetNotAdjacent: agent " + std::to_string(agent));
    auto& inv = s.inventories.at(agent);
    auto& other = s.inventories.at(act->target);
    int idx = static_cast<int>(act->resource);
    int take = std::min({act->units, inv[idx],
                         kCarryCapacity - carried_total(other)});
    take = std::max(take, 0);
    inv[idx] -= take;
    other[idx] += take;
    result.outcomes.push_back(
        {agent, "GIV",
         std::to_string(act->target) + ":" + grid_resource_name(act->resource) +
             ":" + std::to_string(take)});
  }

  // Conflict: every attempt counts as a conflict event; success thresholds
  // 0.25 (attack) and 0.40 (steal).
  for (int agent : s.alive) {
    auto it = actions.find(agent);
    if (it == actions.end() || !it->second.physical) continue;
    const GridPhysical& act = *it->second.physical;
    if (act.kind != GridPhysical::Kind::kAttack &&
        act.kind != GridPhysical::Kind::kSteal)
      continue;
    if (!s.alive.count(act.target) || act.target == agent)
      throw EnvError("invalid conflict target: agent " + std::to_string(agent));
    if (!chebyshev_adjacent(s.positions.at(agent), s.positions.at(act.target)))
      throw EnvError("TargetNotAdjacent: agent " + std::to_string(agent));
    s.conflict_events += 1;
    if (act.kind == GridPhysical::Kind::kAttack) {
      bool hit = grid_attack_roll(rng);
      if (hit) drop_inventory(s, act.target);
      result.outcomes.push_back(
          {agent, "ATK",
           std::to_string(act.target) + (hit ? ":hit" : ":miss")});
    } else {
      bool hit = grid_steal_roll(rng);
      int idx = static_cast<int>(act.resource);
      int moved = 0;
      if (hit) {
        auto& thief = s.inventories.at(agent);
        auto& victim = s.inventories.at(act.target);
        if (victim[idx] > 0 && carried_total(thief) < kCarryCapacity) {
          victim[idx] -= 1;
          thief[idx] += 1;
          moved = 1;
        }
      }
      result.outcomes.push_back(
          {agent, "STL",
           std::to_string(act.target) + ":" + grid_resource_name(act.resource) +
               (hit ? (moved ? ":hit" : ":hit-empty") : ":miss")});
    }
  }

  return result;
}

GridObservation grid_local_observation(const GridState& state, int agent) {
  if (!state.alive.count(agent))
    throw EnvError("observation for dead agent " + std::to_string(agent));
  GridObservation obs;
  obs.self = agent;
  obs.team = agent_team(agent);
  obs.pos = state.positions.at(agent);
  obs.inventory = state.inventories.at(agent);
  obs.shelter_wood_deposited = state.shelter_wood_deposited;
  obs.market_stone_deposited = state.market_stone_deposited;
  obs.market_gems_deposited = state.market_gems_deposited;
  obs.contributions = state.contributions;
  obs.alive.assign(state.alive.begin(), state.alive.end());

  int i = 0;
  for (int drow = -1; drow <= 1; ++drow)
    for (int dcol = -1; dcol <= 1; ++dcol) {
      GridCellView& view = obs.window[static_cast<std::size_t>(i++)];
      view.row = obs.pos.row + drow;
      view.col = obs.pos.col + dcol;
      view.in_bounds = in_bounds(view.row, view.col);
      if (!view.in_bounds) continue;
      const GridCell& cell = state.grid[view.row][view.col];
      view.terrain = cell.terrain;
      view.units = cell.units;
      for (const auto& [other, pos] : state.positions)
        if (pos.row == view.row && pos.col == view.col)
          view.residents.push_back(other);
    }
  return obs;
}

GridState grid_remove_agent(const GridState& state, int agent) {
  GridState s = state;
  if (!s.alive.count(agent))
    throw EnvError("removing dead agent " + std::to_string(agent));
  drop_inventory(s, agent);
  s.positions.erase(agent);
  s.inventories.erase(agent);
  s.alive.erase(agent);
  return s;
}

std::array<int, 3> grid_total_units(const GridState& state) {
  std::array<int, 3> total{};
  for (int row = 0; row < kGridSize; ++row)
    for (int col = 0; col < kGridSize; ++col)
      for (int r = 0; r < 3; ++r) total[r] += state.grid[row][col].units[r];
  for (const auto& [agent, inv] : state.inventories)
    for (int r = 0; r < 3; ++r) total[r] += inv[r];
  total[0] += state.shelter_wood_deposited;
  total[1] += state.market_stone_deposited;
  total[2] += state.market_gems_deposited;
  return total;
}

}  // namespace socsim
