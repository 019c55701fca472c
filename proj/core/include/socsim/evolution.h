#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "socsim/constitution.h"
#include "socsim/rng.h"
#include "socsim/sim.h"

namespace socsim {

inline constexpr int kFeatureBins = 8;

struct EvolutionConfig {
  int iterations = 30;
  int population = 10;  // candidates per island per migration epoch
  int islands = 3;
  int migration_interval = 5;
  double migration_rate = 0.2;
  int k_evolution = 1;
  int k_final = 10;
  int max_text_length = 20000;
  std::uint64_t base_seed = 42;
  // Cascade thresholds; only the first gates anything (the pipeline has two
  // stages), the others are configured but inert beyond stage-2 admission.
  double cascade_stage1 = 0.30;
  double cascade_stage2 = 0.50;
  double cascade_stage3 = 0.70;
};

struct Candidate {
  Constitution constitution;
  double stage1 = 0.0;
  std::optional<double> fitness;  // present only when the cascade passed
  int complexity_bin = 0;
  int score_bin = 0;
  std::string lineage;  // parent cell + mutation op
};

// 8x8 best-per-cell grid, indexed [complexity_bin][score_bin].
struct IslandArchive {
  std::array<std::array<std::optional<Candidate>, kFeatureBins>, kFeatureBins>
      cells;

  int occupied() const;
  const Candidate* best() const;  // highest fitness; ties to the earlier cell
};

struct MutationResult {
  Constitution child;
  std::string op;  // add | remove | perturb | swap | copy
};

using Mutator =
    std::function<MutationResult(const Constitution& parent, RngStream& rng)>;

struct EvaluationResult {
  double fitness = 0.0;
  std::string artifact;    // compact action log of the first run
  std::string diagnostic;  // set when a run failed and fitness fell to 0
};

struct EvolveResult {
  Candidate best;
  double final_fitness = 0.0;  // best re-evaluated with k_final runs
  std::vector<IslandArchive> islands;
  std::vector<std::string> trace_lines;  // one JSON object per candidate
};

// 0.31 when the constitution validates cleanly and its serialized form fits
// the length cap, else 0.0.
double stage1_structural(const Constitution& c, int max_text_length = 20000);

// (complexity bin, score bin) per the binning rule: serialized length against
// the cap, fitness against [0, 1], both clamped to bin 7.
std::pair<int, int> features_of(const Constitution& c, double fitness,
                                int max_text_length = 20000);

// Mean stability over K runs at seeds base..base+K-1 with every agent a
// directive follower; a PolicyFailure degrades fitness to 0 with a
// diagnostic instead of propagating.
EvaluationResult evaluate_candidate(const Constitution& c, EnvKind env,
                                    double multiplier, int k,
                                    std::uint64_t base_seed);

// Template-library mutator: add a missing template rule, remove a random
// rule, perturb a numeric directive payload by +-1 within bounds, or swap two
// rules' priorities; redraws until the child validates (max 5, then a parent
// copy).
Mutator make_scripted_mutator(EnvKind env);

// Multi-island search: per iteration each island mutates
// population/migration_interval parents picked uniformly from occupied cells,
// gates them structurally, evaluates survivors, and inserts on strict fitness
// improvement; every migration_interval iterations each island copies its
// ceil(rate x population) fittest candidates to the next island on the ring.
// The global best is re-evaluated with k_final runs at the end. Throws
// SimError when iterations < 1 or no candidate ever passes the gate.
EvolveResult evolve(const EvolutionConfig& config, EnvKind env,
                    double multiplier, const Mutator& mutator);

}  // namespace socsim
