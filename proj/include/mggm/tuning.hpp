#pragma once

#include <vector>

#include "mggm/teststat.hpp"

namespace mggm {

struct TuningGrid {
  std::vector<double> lambdas;  // ascending threshold multipliers
  std::vector<double> deltas;   // ascending penalty multipliers

  static TuningGrid defaults();
};

struct TuningResult {
  double lambda_hat = 0.0;
  double delta_hat = 0.0;
  double objective = 0.0;
  Matrix objective_table;  // lambdas x deltas
};

// Distance of the empirical tail counts of the statistics from the standard
// normal: sum over k = 3..9 of
//   (#{i != j : |T_ij| >= Phi^{-1}(1 - k/20)} / (k (q^2 - q) / 10) - 1)^2,
// counting ordered pairs.
double ats_objective(const TestMatrix& t);

// Grid scan of the objective; the per-column fits are shared across lambdas
// and the correction across deltas, so the scan costs little more than one
// pass per delta. Ties resolve to the smallest lambda, then smallest delta.
TuningResult tune(AxisAnalysis& analysis, const TuningGrid& grid);
TuningResult tune(const Dataset& d, const TuningGrid& grid, const LassoConfig& base,
                  Axis axis = Axis::gamma);

}  // namespace mggm
