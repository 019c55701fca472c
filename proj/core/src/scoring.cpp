#include "socsim/scoring.h"

#include <algorithm>

namespace socsim {

namespace {

double clamp01(double x) { return std::max(0.0, std::min(1.0, x)); }

}  // namespace

double stability(double productivity, double survival, double conflict) {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ScoringError(std::string("ComponentOutOfRange: ") + name);
  };
  check(productivity, "productivity");
  check(survival, "survival");
  check(conflict, "conflict");
  return clamp01(0.5 * productivity + 0.3 * survival - 0.2 * conflict);
}

double pareto_wealth(double m, int rounds) {
  if (m <= 0.0 || rounds < 1)
    throw ScoringError("pareto_wealth requires m > 0 and rounds >= 1");
  return rounds * 60.0 * m / 6.0;
}

double nash_freerider_payoff(double m) {
  if (m < 0.0) throw ScoringError("nash_freerider_payoff requires m >= 0");
  return 10.0 + 50.0 * m / 6.0;
}

double productivity_pgg(const std::map<int, double>& final_wealth, double m,
                        int rounds) {
  if (final_wealth.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [agent, wealth] : final_wealth) sum += wealth;
  double avg = sum / static_cast<double>(final_wealth.size());
  return clamp01(avg / pareto_wealth(m, rounds));
}

double productivity_grid(double shelter_deposited, double shelter_required,
                         double market_deposited, double market_required) {
  if (shelter_required <= 0.0 || market_required <= 0.0)
    throw ScoringError("project requirements must be positive");
  double shelter = std::min(1.0, shelter_deposited / shelter_required);
  double market = std::min(1.0, market_deposited / market_required);
  return (shelter + market) / 2.0;
}

double productivity_trading(const std::map<int, double>& completion) {
  if (completion.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [agent, frac] : completion) sum += frac;
  return clamp01(sum / static_cast<double>(completion.size()));
}

double conflict_grid(int conflict_events) {
  if (conflict_events < 0) throw ScoringError("negative conflict counter");
  return clamp01(conflict_events / 10.0);
}

double conflict_pgg(int punish_tokens_spent, double total_token_budget) {
  if (punish_tokens_spent < 0 || total_token_budget <= 0.0)
    throw ScoringError("invalid punishment counters");
  return clamp01(punish_tokens_spent / total_token_budget);
}

double conflict_trading(int deceptive, int rejections, int proposals) {
  if (deceptive < 0 || rejections < 0 || proposals < 0)
    throw ScoringError("negative trading counters");
  if (proposals == 0) return 0.0;
  return clamp01(static_cast<double>(deceptive + rejections) / proposals);
}

double survival(int alive_at_end) {
  if (alive_at_end < 0 || alive_at_end > 6)
    throw ScoringError("survivor count outside 0-6");
  return alive_at_end / 6.0;
}

}  // namespace socsim
