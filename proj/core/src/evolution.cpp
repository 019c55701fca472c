#include "socsim/evolution.h"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "socsim/action_log.h"
#include "socsim/policies.h"

namespace socsim {

namespace {

constexpr std::size_t kArtifactByteBudget = 32 * 1024;

std::string cap_artifact(std::string text) {
  if (text.size() <= kArtifactByteBudget) return text;
  std::size_t cut = text.rfind('\n', kArtifactByteBudget);
  if (cut == std::string::npos) cut = kArtifactByteBudget;
  text.resize(cut);
  text += "\n#truncated-bytes";
  return text;
}

std::vector<ConstitutionRule> template_library(EnvKind env) {
  std::vector<ConstitutionRule> rules;
  auto add = [&](std::string name, std::string guidance, std::string summary,
                 int priority, Directive directive) {
    ConstitutionRule rule;
    rule.name = std::move(name);
    rule.guidance = std::move(guidance);
    rule.summary = std::move(summary);
    rule.priority = priority;
    rule.directive = directive;
    rules.push_back(std::move(rule));
  };
  switch (env) {
    case EnvKind::kPublicGoods: {
      Directive full;
      full.kind = DirectiveKind::kContributeFixed;
      full.amount = 10;
      add("Full Contribution Mandate",
          "Contribute the full 10 tokens to the common pool every round.",
          "Always contribute everything.", 1, full);
      Directive punish;
      punish.kind = DirectiveKind::kPunishBelowMax;
      punish.tokens = 1;
      punish.per_round_cap = 1;
      add("Minimal Punishment For Free Riders",
          "If any player contributed less than the round maximum last round, "
          "punish that player with one token; never spend more than one "
          "punishment token in a round.",
          "Punish the worst under-contributor with one token.", 2, punish);
      Directive broadcast;
      broadcast.kind = DirectiveKind::kBroadcastEachRound;
      broadcast.text = "I will contribute 10";
      add("Cooperative Intent Broadcast",
          "Broadcast your contribution intention to the group every round.",
          "Announce full contribution each round.", 3, broadcast);
      Directive steady;
      steady.kind = DirectiveKind::kContributeFixed;
      steady.amount = 5;
      add("Steady Contribution Mandate",
          "Contribute 5 tokens to the common pool every round.",
          "Contribute half the endowment.", 1, steady);
      break;
    }
    case EnvKind::kGridworld: {
      Directive deposit;
      deposit.kind = DirectiveKind::kDepositFirst;
      add("Deposit Needed Resources Immediately",
          "When carrying a resource your team project still needs, travel to "
          "your deposit site and deposit before doing anything else.",
          "Bank needed resources before anything else.", 1, deposit);
      Directive gather;
      gather.kind = DirectiveKind::kGatherNeeded;
      add("Gather What The Project Needs",
          "When standing on a cell holding a resource your project still "
          "needs and you have carry capacity, gather it.",
          "Harvest needed resources on contact.", 2, gather);
      Directive seek;
      seek.kind = DirectiveKind::kMoveToLargestDeficit;
      add("Seek The Largest Deficit",
          "Move toward the resource with the largest outstanding project "
          "deficit.",
          "Head for the scarcest requirement.", 3, seek);
      Directive share;
      share.kind = DirectiveKind::kShareSurplus;
      share.max_units = 2;
      add("Share Surplus With Teammates",
          "Give surplus resources to an adjacent teammate, up to 2 units per "
          "turn.",
          "Hand spare resources to teammates.", 4, share);
      Directive report;
      report.kind = DirectiveKind::kReportRichCluster;
      report.min_units = 2;
      add("Report Rich Resource Cells",
          "Broadcast the location of any visible cell holding at least 2 "
          "units of a needed resource.",
          "Announce rich cells to the team.", 5, report);
      Directive peace;
      peace.kind = DirectiveKind::kNoAggressionUnlessAttacked;
      add("No Aggression Unless Attacked",
          "Never attack another agent or steal from one unless that agent "
          "attacked you first this turn.",
          "Keep the peace unless provoked.", 5, peace);
      break;
    }
    case EnvKind::kTrading: {
      Directive honest;
      honest.kind = DirectiveKind::kNoDeceptiveProposals;
      add("No Deceptive Proposals",
          "Never offer more units of a resource than you currently hold.",
          "Offer only what you can deliver.", 1, honest);
      Directive accept;
      accept.kind = DirectiveKind::kAcceptIfNeededAndFulfillable;
      add("Accept Needed Fulfillable Trades",
          "Accept any pending proposal that offers a resource you still need "
          "whenever you can cover the requested side.",
          "Take useful deals you can afford.", 2, accept);
      Directive needs;
      needs.kind = DirectiveKind::kBroadcastNeeds;
      add("Broadcast Outstanding Needs",
          "Broadcast your outstanding goal deficits to the group each turn.",
          "Tell the group what you still need.", 3, needs);
      Directive reject;
      reject.kind = DirectiveKind::kRejectOnlyIfCannotFulfill;
      add("Reject Only When Unable To Fulfill",
          "Reject a pending proposal only when you cannot cover the requested "
          "side; otherwise let it stand for consideration.",
          "Decline only unaffordable deals.", 4, reject);
      Directive move;
      move.kind = DirectiveKind::kAvoidHoarding;
      add("Keep Resources Moving",
          "When holding surplus beyond your goals, propose a trade that "
          "exchanges surplus for a deficit resource instead of hoarding.",
          "Trade surplus instead of sitting on it.", 5, move);
      break;
    }
  }
  return rules;
}

struct NumericKnob {
  std::size_t rule_index;
  int lo;
  int hi;
  int* value;  // into a working copy
};

std::vector<NumericKnob> numeric_knobs(Constitution& c) {
  std::vector<NumericKnob> knobs;
  for (std::size_t i = 0; i < c.rules.size(); ++i) {
    if (!c.rules[i].directive) continue;
    Directive& d = *c.rules[i].directive;
    switch (d.kind) {
      case DirectiveKind::kContributeFixed:
        knobs.push_back({i, 0, 10, &d.amount});
        break;
      case DirectiveKind::kPunishBelowMax:
        knobs.push_back({i, 1, 3, &d.tokens});
        break;
      case DirectiveKind::kShareSurplus:
        knobs.push_back({i, 1, 3, &d.max_units});
        break;
      case DirectiveKind::kReportRichCluster:
        knobs.push_back({i, 1, 5, &d.min_units});
        break;
      default:
        break;
    }
  }
  return knobs;
}

int occupied_count(const IslandArchive& archive) {
  int count = 0;
  for (const auto& row : archive.cells)
    for (const auto& cell : row)
      if (cell) ++count;
  return count;
}

// Occupied cells in row-major order.
std::vector<const Candidate*> occupied_cells(const IslandArchive& archive) {
  std::vector<const Candidate*> out;
  for (const auto& row : archive.cells)
    for (const auto& cell : row)
      if (cell) out.push_back(&*cell);
  return out;
}

}  // namespace

int IslandArchive::occupied() const { return occupied_count(*this); }

const Candidate* IslandArchive::best() const {
  const Candidate* best = nullptr;
  for (const auto& row : cells)
    for (const auto& cell : row)
      if (cell && cell->fitness &&
          (!best || *cell->fitness > *best->fitness))
        best = &*cell;
  return best;
}

double stage1_structural(const Constitution& c, int max_text_length) {
  if (!validate_constitution(c).empty()) return 0.0;
  if (constitution_text_length(c) > static_cast<std::size_t>(max_text_length))
    return 0.0;
  return 0.31;
}

std::pair<int, int> features_of(const Constitution& c, double fitness,
                                int max_text_length) {
  double length = static_cast<double>(constitution_text_length(c));
  int complexity = static_cast<int>(
      std::floor(length / max_text_length * kFeatureBins));
  int score = static_cast<int>(std::floor(fitness * kFeatureBins));
  return {std::clamp(complexity, 0, kFeatureBins - 1),
          std::clamp(score, 0, kFeatureBins - 1)};
}

EvaluationResult evaluate_candidate(const Constitution& c, EnvKind env,
                                    double multiplier, int k,
                                    std::uint64_t base_seed) {
  if (k < 1) throw SimError("evaluation needs at least one run");
  EvaluationResult result;
  PolicyMap policies = make_policies("directive", env);
  double total = 0.0;
  for (int run = 0; run < k; ++run) {
    SimulationConfig cfg;
    cfg.env = env;
    cfg.method = Method::kEvolution;
    cfg.seed = base_seed + static_cast<std::uint64_t>(run);
    cfg.multiplier = multiplier;
    cfg.profile = "directive";
    cfg.constitution = c;
    try {
      RunRecord record = run_simulation(cfg, policies);
      total += record.score.stability;
      if (run == 0)
        result.artifact = cap_artifact(encode_action_log(record.events));
    } catch (const PolicyFailure& e) {
      result.fitness = 0.0;
      result.diagnostic = e.what();
      return result;
    }
  }
  result.fitness = total / k;
  return result;
}

Mutator make_scripted_mutator(EnvKind env) {
  auto library = template_library(env);
  return [library](const Constitution& parent,
                   RngStream& rng) -> MutationResult {
    for (int attempt = 0; attempt < 5; ++attempt) {
      Constitution child = parent;
      std::string op;
      switch (rng.next_int(4)) {
        case 0: {  // add a template rule not yet present
          std::vector<const ConstitutionRule*> missing;
          for (const ConstitutionRule& rule : library)
            if (!find_rule(child, rule.name)) missing.push_back(&rule);
          if (missing.empty()) break;
          const ConstitutionRule* pick =
              missing[rng.next_int(missing.size())];
          child.rules.push_back(*pick);
          op = "add:" + pick->name;
          break;
        }
        case 1: {  // remove a random rule
          if (child.rules.empty()) break;
          std::size_t index = rng.next_int(child.rules.size());
          op = "remove:" + child.rules[index].name;
          child.rules.erase(child.rules.begin() +
                            static_cast<std::ptrdiff_t>(index));
          break;
        }
        case 2: {  // perturb a numeric payload by +-1 within bounds
          auto knobs = numeric_knobs(child);
          if (knobs.empty()) break;
          const NumericKnob& knob = knobs[rng.next_int(knobs.size())];
          int delta = rng.next_int(2) == 0 ? 1 : -1;
          int next = *knob.value + delta;
          if (next < knob.lo || next > knob.hi) break;  // boundary: redraw
          *knob.value = next;
          op = "perturb:" + child.rules[knob.rule_index].name;
          break;
        }
        default: {  // swap two rules' priorities
          if (child.rules.size() < 2) break;
          std::size_t i = rng.next_int(child.rules.size());
          std::size_t j = rng.next_int(child.rules.size() - 1);
          if (j >= i) ++j;
          std::swap(child.rules[i].priority, child.rules[j].priority);
          op = "swap:" + child.rules[i].name + "/" + child.rules[j].name;
          break;
        }
      }
      if (op.empty()) continue;
      child.version = child.rules.empty() ? 0 : 1;
      if (!validate_constitution(child).empty()) continue;
      return {std::move(child), std::move(op)};
    }
    return {parent, "copy"};
  };
}

EvolveResult evolve(const EvolutionConfig& config, EnvKind env,
                    double multiplier, const Mutator& mutator) {
  if (config.iterations < 1) throw SimError("iterations must be at least 1");
  if (config.islands < 1) throw SimError("at least one island is required");
  if (config.migration_interval < 1)
    throw SimError("migration interval must be at least 1");

  int per_iteration =
      std::max(1, config.population / config.migration_interval);
  int migrants_per_island = static_cast<int>(
      std::ceil(config.migration_rate * config.population));

  EvolveResult result;
  result.islands.resize(static_cast<std::size_t>(config.islands));
  std::optional<Candidate> global_best;

  auto trace = [&](const nlohmann::json& object) {
    result.trace_lines.push_back(object.dump());
  };

  for (int iteration = 1; iteration <= config.iterations; ++iteration) {
    for (int island = 0; island < config.islands; ++island) {
      IslandArchive& archive =
          result.islands[static_cast<std::size_t>(island)];
      for (int candidate_index = 0; candidate_index < per_iteration;
           ++candidate_index) {
        RngStream rng(config.base_seed,
                      "evolve:island" + std::to_string(island) + ":iter" +
                          std::to_string(iteration) + ":cand" +
                          std::to_string(candidate_index));
        Constitution parent;  // blank seed when the archive is empty
        std::string parent_cell = "blank";
        auto occupied = occupied_cells(archive);
        if (!occupied.empty()) {
          const Candidate* pick = occupied[rng.next_int(occupied.size())];
          parent = pick->constitution;
          parent_cell = std::to_string(pick->complexity_bin) + "," +
                        std::to_string(pick->score_bin);
        }
        MutationResult mutation = mutator(parent, rng);

        Candidate candidate;
        candidate.constitution = mutation.child;
        candidate.stage1 =
            stage1_structural(mutation.child, config.max_text_length);
        candidate.lineage = "island" + std::to_string(island) + ":iter" +
                            std::to_string(iteration) + ":cand" +
                            std::to_string(candidate_index) + " parent=" +
                            parent_cell + " op=" + mutation.op;

        nlohmann::json record;
        record["type"] = "candidate";
        record["island"] = island;
        record["iteration"] = iteration;
        record["candidate"] = candidate_index;
        record["lineage"] = candidate.lineage;
        record["op"] = mutation.op;
        record["stage1"] = candidate.stage1;

        if (candidate.stage1 < config.cascade_stage1) {
          record["gated"] = true;
          record["inserted"] = false;
          trace(record);
          continue;
        }

        EvaluationResult evaluation =
            evaluate_candidate(mutation.child, env, multiplier,
                               config.k_evolution, config.base_seed);
        candidate.fitness = evaluation.fitness;
        auto [complexity_bin, score_bin] = features_of(
            mutation.child, evaluation.fitness, config.max_text_length);
        candidate.complexity_bin = complexity_bin;
        candidate.score_bin = score_bin;

        auto& cell =
            archive.cells[static_cast<std::size_t>(complexity_bin)]
                         [static_cast<std::size_t>(score_bin)];
        bool inserted = !cell || evaluation.fitness > *cell->fitness;
        if (inserted) cell = candidate;
        if (candidate.fitness &&
            (!global_best || *candidate.fitness > *global_best->fitness))
          global_best = candidate;

        record["gated"] = false;
        record["fitness"] = evaluation.fitness;
        record["features"] = {complexity_bin, score_bin};
        record["inserted"] = inserted;
        if (!evaluation.diagnostic.empty())
          record["diagnostic"] = evaluation.diagnostic;
        record["artifact"] = evaluation.artifact;
        trace(record);
      }
    }

    if (iteration % config.migration_interval == 0 && config.islands > 1) {
      // Snapshot migrants from every island first so a ring neighbor's new
      // arrivals never migrate twice in one epoch.
      std::vector<std::vector<Candidate>> migrants(
          static_cast<std::size_t>(config.islands));
      for (int island = 0; island < config.islands; ++island) {
        auto occupied =
            occupied_cells(result.islands[static_cast<std::size_t>(island)]);
        std::stable_sort(occupied.begin(), occupied.end(),
                         [](const Candidate* a, const Candidate* b) {
                           return *a->fitness > *b->fitness;
                         });
        int take = std::min<int>(migrants_per_island,
                                 static_cast<int>(occupied.size()));
        for (int i = 0; i < take; ++i)
          migrants[static_cast<std::size_t>(island)].push_back(*occupied[i]);
      }
      for (int island = 0; island < config.islands; ++island) {
        int destination = (island + 1) % config.islands;
        IslandArchive& target =
            result.islands[static_cast<std::size_t>(destination)];
        for (const Candidate& migrant :
             migrants[static_cast<std::size_t>(island)]) {
          auto& cell =
              target.cells[static_cast<std::size_t>(migrant.complexity_bin)]
                          [static_cast<std::size_t>(migrant.score_bin)];
          if (!cell || *migrant.fitness > *cell->fitness) cell = migrant;
        }
        nlohmann::json record;
        record["type"] = "migration";
        record["iteration"] = iteration;
        record["from"] = island;
        record["to"] = destination;
        record["migrants"] =
            static_cast<int>(migrants[static_cast<std::size_t>(island)].size());
        trace(record);
      }
    }
  }

  if (!global_best)
    throw SimError("no candidate passed the structural gate");

  result.best = *global_best;
  EvaluationResult final_eval =
      evaluate_candidate(global_best->constitution, env, multiplier,
                         config.k_final, config.base_seed);
  result.final_fitness = final_eval.fitness;

  nlohmann::json record;
  record["type"] = "final";
  record["fitness"] = result.final_fitness;
  record["k"] = config.k_final;
  record["lineage"] = result.best.lineage;
  trace(record);
  return result;
}

}  // namespace socsim
