#include "mggm/tuning.hpp"

#include <cmath>

#include "mggm/errors.hpp"
#include "mggm/stats.hpp"

namespace mggm {

TuningGrid TuningGrid::defaults() {
  return TuningGrid{{0.5, 1.0, 1.5, 2.0, 2.5, 3.0}, {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}};
}

double ats_objective(const TestMatrix& t) {
  const int q = t.dim();
  if (q < 5) throw ConfigError("ats_objective: at least 5 tested columns required");
  const double pairs = static_cast<double>(q) * q - q;  // ordered i != j

  double objective = 0.0;
  for (int k = 3; k <= 9; ++k) {
    const double z = normal_quantile(1.0 - k / 20.0);
    long long count = 0;
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) {
        if (std::fabs(t.t(i, j)) >= z) count += 2;
      }
    }
    const double expected = k * pairs / 10.0;
    const double ratio = static_cast<double>(count) / expected - 1.0;
    objective += ratio * ratio;
  }
  return objective;
}

TuningResult tune(AxisAnalysis& analysis, const TuningGrid& grid) {
  if (grid.lambdas.empty() || grid.deltas.empty()) {
    throw ConfigError("tune: the tuning grid must be non-empty");
  }
  for (double v : grid.lambdas) {
    if (v < 0.0) throw ConfigError("tune: lambda candidates must be nonnegative");
  }
  for (double v : grid.deltas) {
    if (v < 0.0) throw ConfigError("tune: delta candidates must be nonnegative");
  }

  TuningResult best;
  best.objective_table.resize(grid.lambdas.size(), grid.deltas.size());
  bool first = true;
  for (std::size_t il = 0; il < grid.lambdas.size(); ++il) {
    for (std::size_t id = 0; id < grid.deltas.size(); ++id) {
      const TestMatrix t = analysis.statistics(grid.lambdas[il], grid.deltas[id]);
      const double obj = ats_objective(t);
      best.objective_table(il, id) = obj;
      if (first || obj < best.objective) {
        first = false;
        best.objective = obj;
        best.lambda_hat = grid.lambdas[il];
        best.delta_hat = grid.deltas[id];
      }
    }
  }
  return best;
}

TuningResult tune(const Dataset& d, const TuningGrid& grid, const LassoConfig& base,
                  Axis axis) {
  AxisAnalysis analysis(d, axis, base);
  return tune(analysis, grid);
}

}  // namespace mggm
