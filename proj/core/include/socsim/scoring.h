#pragma once

#include <map>
#include <vector>

#include "socsim/constitution.h"

namespace socsim {

class ScoringError : public SimError {
 public:
  explicit ScoringError(const std::string& what) : SimError(what) {}
};

// (P, V, C, S) quadruple for one run.
struct StabilityBreakdown {
  double productivity = 0.0;
  double survival = 0.0;
  double conflict = 0.0;
  double stability = 0.0;

  bool operator==(const StabilityBreakdown&) const = default;
};

// S = max(0, min(1, 0.5 P + 0.3 V - 0.2 C)). Components must be in [0, 1];
// throws ScoringError otherwise.
double stability(double productivity, double survival, double conflict);

// Per-agent payoff per round when all six contribute fully: 60m/6.
double pareto_wealth(double m, int rounds);

// Single defector among six full contributors: 10 + 50m/6.
double nash_freerider_payoff(double m);

// Mean final wealth over all six agents (eliminated agents frozen) against
// the Pareto benchmark, clipped to [0, 1].
double productivity_pgg(const std::map<int, double>& final_wealth, double m,
                        int rounds);

// Mean fractional progress across the two team projects, each capped at 1.
double productivity_grid(double shelter_deposited, double shelter_required,
                         double market_deposited, double market_required);

// Mean per-agent goal completion fraction (values already in [0, 1]).
double productivity_trading(const std::map<int, double>& completion);

double conflict_grid(int conflict_events);
double conflict_pgg(int punish_tokens_spent, double total_token_budget);
double conflict_trading(int deceptive, int rejections, int proposals);

// survivors / 6.
double survival(int alive_at_end);

}  // namespace socsim
