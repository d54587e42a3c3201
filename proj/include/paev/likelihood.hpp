#pragma once

// Parametric estimators of the linear PA model: the full-history MLE and the
// single-snapshot (SN) procedure.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "paev/roots.hpp"
#include "paev/types.hpp"

namespace paev {

/// delta -> residual of one estimating equation.  MLE residuals decrease
/// through their root; SN step residuals increase through theirs.
struct ScoreEquation {
  std::function<double(double)> evaluate;
  double lo = 1e-6;
  double hi = 10.0;
  std::string label;

  double operator()(double delta) const { return evaluate(delta); }
};

/// Optional per-event mask; events with removed[k] set contribute neither
/// to the scheme frequencies nor to the score terms, while the graph state
/// they see is still that of the full timeline.
using EventMask = std::vector<bool>;

struct MleEquations {
  ScoreEquation in;
  ScoreEquation out;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t used_events = 0;
};

/// Counts and score equations of the history; throws DataError when no event
/// is used and ReplayError on an inconsistent history.
MleEquations mle_equations(const GrowthHistory& history, const EventMask* removed = nullptr);

/// Per-event score form of the same equations, sum over PA steps of
/// 1/(I_{t-1}(w)+delta) - N(t-1)/(t-1+delta N(t-1)); without a mask it
/// equals the tail-sum form.  Exposed as an independent cross-check.
MleEquations mle_equations_per_event(const GrowthHistory& history,
                                     const EventMask* removed = nullptr);

ThetaEstimate mle_estimate(const GrowthHistory& history, const EventMask* removed = nullptr);

struct SnEquations {
  double n = 0.0;
  double beta = 0.0;
  double in_zero = 0.0;   // N^in_0 / n
  double out_zero = 0.0;  // N^out_0 / n
  ScoreEquation step2;    // delta_in^0
  ScoreEquation step4;    // delta_out^0
  std::vector<double> in_tail;   // N^in_{>i} / n
  std::vector<double> out_tail;  // N^out_{>j} / n
};

SnEquations sn_equations(const DegreeSnapshot& snapshot);

/// Step-7 equation for delta_in given (alpha, beta) or for delta_out given
/// (gamma, beta); `tail` holds N_{>i}/n.
ScoreEquation sn_final_equation(const std::vector<double>& tail, double same_side,
                                double beta, const std::string& label);

ThetaEstimate snapshot_estimate(const DegreeSnapshot& snapshot);

/// Root of a score equation by the shared expanding-bracket bisection.
RootResult solve_score(const ScoreEquation& eq);

}  // namespace paev
