#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mggm/fdr.hpp"
#include "mggm/model.hpp"
#include "mggm/tuning.hpp"

namespace mggm {

struct SimConfig {
  int n = 20;
  int p = 100;
  int q = 100;
  GraphKind omega_kind{GraphFamily::band, 1.0, 0.05};
  GraphKind gamma_kind{GraphFamily::band, 1.0, 0.05};
  double alpha = 0.1;            // per-axis BH level
  int replications = 30;
  std::uint64_t seed = 1;
  double nu = 0.0;
  TuningGrid tuning_grid = TuningGrid::defaults();
  LassoConfig lasso;
  std::string output_dir;
  int threads = 0;  // 0 = hardware default
};

// Strict parse: every field has a default, unknown keys are rejected.
SimConfig parse_sim_config(const nlohmann::json& j);
SimConfig load_sim_config(const std::string& path);
nlohmann::json sim_config_to_json(const SimConfig& cfg);

struct ReplicationRecord {
  int replication = 0;
  std::uint64_t seed = 0;
  long long a = 0, b = 0, a0 = 0, b0 = 0;
  double fdp_gamma = 0.0, fdp_omega = 0.0, fdp_joint = 0.0;
  double alpha_prime = 0.0, power = 0.0;
  double lambda_gamma = 0.0, delta_gamma = 0.0;
  double lambda_omega = 0.0, delta_omega = 0.0;
  double kkt_max = 0.0;
  double wall_seconds = 0.0;  // kept out of replications.csv; see emit_report
};

struct ReplicationFailure {
  int replication = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct SummaryStat {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation
};

struct Aggregates {
  long long count = 0;
  SummaryStat fdp_joint, alpha_prime, power, a, b;
};

Aggregates aggregate_records(const std::vector<ReplicationRecord>& records);

struct RunReport {
  nlohmann::json config_echo;
  std::vector<ReplicationRecord> records;  // ordered by replication index
  std::vector<ReplicationFailure> failures;
  double total_wall_seconds = 0.0;
};

// Seeded replication engine: replication r runs on seed^r with independent
// sub-streams for the two graph draws and the sampler. Per-replication errors
// are logged and counted, not fatal. Writes results through emit_report when
// the config names an output directory. Deterministic for a fixed config.
RunReport run_simulation(const SimConfig& cfg);

struct RocPoint {
  int replication = 0;
  double alpha = 0.0;
  double fdp = 0.0;
  double power = 0.0;
  long long a = 0, b = 0;
};

struct RocTable {
  nlohmann::json config_echo;
  std::vector<double> alphas;
  std::vector<RocPoint> points;
  std::vector<ReplicationFailure> failures;
};

// FDP/power sweep over the alpha grid, reusing each replication's test
// matrices across the grid (the statistics do not depend on alpha).
RocTable run_roc(const SimConfig& cfg, const std::vector<double>& alphas);

struct RealLayout {
  std::string row_axis = "row";  // label of the p axis
  std::string col_axis = "col";  // label of the q axis
  bool transpose = false;        // set when files are stored q x p
};

RealLayout load_layout(const std::string& path);

// Reads a directory of per-time-point CSV matrices (time order = sorted file
// names), applies log(x+1) entrywise and lag-one differences along time, and
// returns the resulting n-1 observations.
Dataset ingest_real(const std::string& dir, const RealLayout& layout);

// replications.csv + summary.json. Aggregates in summary.json are recomputed
// from the serialized CSV and verified before the write is declared good.
void emit_report(const RunReport& r, const std::string& dir);

// roc.csv with (alpha, mean_fdp, mean_power) rows.
void emit_roc(const RocTable& t, const std::string& dir);

// edges_<axis>.csv with one row per tested pair: i, j (1-based), statistic,
// p-value, rejected flag.
void emit_edges(const std::string& dir, const TestMatrix& t, const PValueSet& pv,
                const BhSelection& sel);

}  // namespace mggm
