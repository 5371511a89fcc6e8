#include "mggm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "mggm/csv.hpp"
#include "mggm/errors.hpp"
#include "mggm/rng.hpp"

namespace mggm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

GraphKind parse_graph_kind(const json& j, const std::string& where) {
  check_keys(j, {"kind", "factor", "edge_prob_cap"}, where);
  GraphKind kind;
  if (j.contains("kind")) kind.family = graph_family_from_name(j.at("kind").get<std::string>());
  if (j.contains("factor")) kind.factor = j.at("factor").get<double>();
  if (j.contains("edge_prob_cap")) kind.edge_prob_cap = j.at("edge_prob_cap").get<double>();
  if (!(kind.factor > 0.0)) throw ConfigError(where + ": factor must be positive");
  return kind;
}

json graph_kind_to_json(const GraphKind& k) {
  return json{{"kind", graph_family_name(k.family)},
              {"factor", k.factor},
              {"edge_prob_cap", k.edge_prob_cap}};
}

std::vector<double> parse_ascending(const json& j, const std::string& where) {
  std::vector<double> out = j.get<std::vector<double>>();
  if (out.empty()) throw ConfigError(where + ": list must be non-empty");
  if (!std::is_sorted(out.begin(), out.end())) {
    throw ConfigError(where + ": list must be ascending");
  }
  for (double v : out) {
    if (v < 0.0) throw ConfigError(where + ": values must be nonnegative");
  }
  return out;
}

std::string iso8601_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

SimConfig parse_sim_config(const json& j) {
  check_keys(j,
             {"n", "p", "q", "omega", "gamma", "alpha", "replications", "seed", "nu",
              "tuning", "lasso", "output_dir", "threads"},
             "config");
  SimConfig cfg;
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("p")) cfg.p = j.at("p").get<int>();
  if (j.contains("q")) cfg.q = j.at("q").get<int>();
  if (j.contains("omega")) cfg.omega_kind = parse_graph_kind(j.at("omega"), "config.omega");
  if (j.contains("gamma")) cfg.gamma_kind = parse_graph_kind(j.at("gamma"), "config.gamma");
  if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
  if (j.contains("replications")) cfg.replications = j.at("replications").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("nu")) cfg.nu = j.at("nu").get<double>();
  if (j.contains("tuning")) {
    const json& t = j.at("tuning");
    check_keys(t, {"lambdas", "deltas"}, "config.tuning");
    if (t.contains("lambdas")) cfg.tuning_grid.lambdas = parse_ascending(t.at("lambdas"), "config.tuning.lambdas");
    if (t.contains("deltas")) cfg.tuning_grid.deltas = parse_ascending(t.at("deltas"), "config.tuning.deltas");
  }
  if (j.contains("lasso")) {
    const json& l = j.at("lasso");
    check_keys(l, {"max_sweeps", "kkt_tol", "coord_tol"}, "config.lasso");
    if (l.contains("max_sweeps")) cfg.lasso.max_sweeps = l.at("max_sweeps").get<int>();
    if (l.contains("kkt_tol")) cfg.lasso.kkt_tol = l.at("kkt_tol").get<double>();
    if (l.contains("coord_tol")) cfg.lasso.coord_tol = l.at("coord_tol").get<double>();
  }
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();

  if (cfg.n < 2) throw ConfigError("config: n must be at least 2");
  if (cfg.p < 3 || cfg.q < 3) throw ConfigError("config: p and q must be at least 3");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError("config: alpha must lie in (0, 1)");
  if (cfg.replications < 1) throw ConfigError("config: replications must be at least 1");
  if (cfg.nu < 0.0) throw ConfigError("config: nu must be nonnegative");
  if (cfg.threads < 0) throw ConfigError("config: threads must be nonnegative");
  if (cfg.lasso.max_sweeps < 1 || !(cfg.lasso.kkt_tol > 0.0) || !(cfg.lasso.coord_tol > 0.0)) {
    throw ConfigError("config: invalid lasso solver settings");
  }
  return cfg;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
  return parse_sim_config(j);
}

json sim_config_to_json(const SimConfig& cfg) {
  return json{{"n", cfg.n},
              {"p", cfg.p},
              {"q", cfg.q},
              {"omega", graph_kind_to_json(cfg.omega_kind)},
              {"gamma", graph_kind_to_json(cfg.gamma_kind)},
              {"alpha", cfg.alpha},
              {"replications", cfg.replications},
              {"seed", cfg.seed},
              {"nu", cfg.nu},
              {"tuning", {{"lambdas", cfg.tuning_grid.lambdas}, {"deltas", cfg.tuning_grid.deltas}}},
              {"lasso",
               {{"max_sweeps", cfg.lasso.max_sweeps},
                {"kkt_tol", cfg.lasso.kkt_tol},
                {"coord_tol", cfg.lasso.coord_tol}}},
              {"output_dir", cfg.output_dir},
              {"threads", cfg.threads}};
}

Aggregates aggregate_records(const std::vector<ReplicationRecord>& records) {
  Aggregates agg;
  agg.count = static_cast<long long>(records.size());
  auto stat = [&](auto getter) {
    SummaryStat s;
    if (records.empty()) return s;
    double sum = 0.0;
    for (const auto& r : records) sum += getter(r);
    s.mean = sum / records.size();
    if (records.size() > 1) {
      double ss = 0.0;
      for (const auto& r : records) {
        const double d = getter(r) - s.mean;
        ss += d * d;
      }
      s.sd = std::sqrt(ss / (records.size() - 1));
    }
    return s;
  };
  agg.fdp_joint = stat([](const ReplicationRecord& r) { return r.fdp_joint; });
  agg.alpha_prime = stat([](const ReplicationRecord& r) { return r.alpha_prime; });
  agg.power = stat([](const ReplicationRecord& r) { return r.power; });
  agg.a = stat([](const ReplicationRecord& r) { return static_cast<double>(r.a); });
  agg.b = stat([](const ReplicationRecord& r) { return static_cast<double>(r.b); });
  return agg;
}

namespace {

struct ReplicationProducts {
  ModelSpec spec;
  TestMatrix t_gamma, t_omega;
  PValueSet pv_gamma, pv_omega;
  TuningResult tune_gamma, tune_omega;
  double kkt_max = 0.0;
};

// Model generation through BH-ready p-values for replication r; everything
// downstream of the test matrices is alpha-dependent and cheap.
ReplicationProducts build_replication(const SimConfig& cfg, std::uint64_t seed_r) {
  ReplicationProducts out;
  PrecisionMatrix omega = gen_precision(cfg.omega_kind, cfg.p, derive_seed(seed_r, 0));
  PrecisionMatrix gamma = gen_precision(cfg.gamma_kind, cfg.q, derive_seed(seed_r, 1));
  out.spec = make_model_spec(std::move(omega), std::move(gamma), Matrix(), cfg.nu);
  const Dataset d = sample_dataset(out.spec, cfg.n, derive_seed(seed_r, 2));

  AxisAnalysis ag(d, Axis::gamma, cfg.lasso);
  AxisAnalysis ao(d, Axis::omega, cfg.lasso);
  out.tune_gamma = tune(ag, cfg.tuning_grid);
  out.tune_omega = tune(ao, cfg.tuning_grid);
  out.t_gamma = ag.statistics(out.tune_gamma.lambda_hat, out.tune_gamma.delta_hat);
  out.t_omega = ao.statistics(out.tune_omega.lambda_hat, out.tune_omega.delta_hat);
  out.pv_gamma = p_values(out.t_gamma);
  out.pv_omega = p_values(out.t_omega);
  out.kkt_max = std::max(ag.max_kkt_residual(), ao.max_kkt_residual());
  return out;
}

JointMetrics metrics_at_alpha(const ReplicationProducts& prod, double alpha, int p, int q) {
  const SupportEstimate est_gamma = support_estimate(bh_select(prod.pv_gamma, alpha), q);
  const SupportEstimate est_omega = support_estimate(bh_select(prod.pv_omega, alpha), p);
  return joint_metrics(est_omega, est_gamma,
                       std::make_pair(&prod.spec.omega, &prod.spec.gamma), alpha);
}

int worker_count(const SimConfig& cfg) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int workers = cfg.threads > 0 ? cfg.threads : hw;
  return std::max(1, std::min(workers, cfg.replications));
}

template <typename PerReplication>
void run_replicated(const SimConfig& cfg, PerReplication&& body) {
  const int workers = worker_count(cfg);
  if (workers == 1) {
    for (int r = 0; r < cfg.replications; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < cfg.replications; r = next.fetch_add(1)) {
        body(r);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace

RunReport run_simulation(const SimConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  std::vector<std::optional<ReplicationRecord>> slots(cfg.replications);
  std::vector<std::optional<ReplicationFailure>> fail_slots(cfg.replications);

  run_replicated(cfg, [&](int r) {
    const std::uint64_t seed_r = cfg.seed ^ static_cast<std::uint64_t>(r);
    const auto rep_start = std::chrono::steady_clock::now();
    try {
      const ReplicationProducts prod = build_replication(cfg, seed_r);
      const JointMetrics jm = metrics_at_alpha(prod, cfg.alpha, cfg.p, cfg.q);
      ReplicationRecord rec;
      rec.replication = r;
      rec.seed = seed_r;
      rec.a = jm.a;
      rec.b = jm.b;
      rec.a0 = jm.a0.value();
      rec.b0 = jm.b0.value();
      rec.fdp_gamma = jm.fdp_gamma.value();
      rec.fdp_omega = jm.fdp_omega.value();
      rec.fdp_joint = jm.fdp_joint.value();
      rec.alpha_prime = jm.alpha_prime;
      rec.power = jm.power_joint.value();
      rec.lambda_gamma = prod.tune_gamma.lambda_hat;
      rec.delta_gamma = prod.tune_gamma.delta_hat;
      rec.lambda_omega = prod.tune_omega.lambda_hat;
      rec.delta_omega = prod.tune_omega.delta_hat;
      rec.kkt_max = prod.kkt_max;
      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - rep_start).count();
      slots[r] = std::move(rec);
    } catch (const std::exception& e) {
      fail_slots[r] = ReplicationFailure{r, seed_r, e.what()};
    }
  });

  RunReport report;
  report.config_echo = sim_config_to_json(cfg);
  for (int r = 0; r < cfg.replications; ++r) {
    if (slots[r]) report.records.push_back(*slots[r]);
    if (fail_slots[r]) report.failures.push_back(*fail_slots[r]);
  }
  report.total_wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  if (!cfg.output_dir.empty()) emit_report(report, cfg.output_dir);
  return report;
}

RocTable run_roc(const SimConfig& cfg, const std::vector<double>& alphas) {
  if (alphas.empty()) throw ConfigError("run_roc: the alpha grid must be non-empty");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("run_roc: alphas must lie in (0, 1)");
  }
  std::vector<double> sorted_alphas = alphas;
  std::sort(sorted_alphas.begin(), sorted_alphas.end());

  std::vector<std::vector<RocPoint>> slots(cfg.replications);
  std::vector<std::optional<ReplicationFailure>> fail_slots(cfg.replications);

  run_replicated(cfg, [&](int r) {
    const std::uint64_t seed_r = cfg.seed ^ static_cast<std::uint64_t>(r);
    try {
      const ReplicationProducts prod = build_replication(cfg, seed_r);
      for (double alpha : sorted_alphas) {
        const JointMetrics jm = metrics_at_alpha(prod, alpha, cfg.p, cfg.q);
        RocPoint pt;
        pt.replication = r;
        pt.alpha = alpha;
        pt.fdp = jm.fdp_joint.value();
        pt.power = jm.power_joint.value();
        pt.a = jm.a;
        pt.b = jm.b;
        slots[r].push_back(pt);
      }
    } catch (const std::exception& e) {
      fail_slots[r] = ReplicationFailure{r, seed_r, e.what()};
    }
  });

  RocTable table;
  table.config_echo = sim_config_to_json(cfg);
  table.alphas = sorted_alphas;
  for (int r = 0; r < cfg.replications; ++r) {
    for (const RocPoint& pt : slots[r]) table.points.push_back(pt);
    if (fail_slots[r]) table.failures.push_back(*fail_slots[r]);
  }
  if (!cfg.output_dir.empty()) emit_roc(table, cfg.output_dir);
  return table;
}

RealLayout load_layout(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open layout file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
  check_keys(j, {"row_axis", "col_axis", "transpose"}, "layout");
  RealLayout layout;
  if (j.contains("row_axis")) layout.row_axis = j.at("row_axis").get<std::string>();
  if (j.contains("col_axis")) layout.col_axis = j.at("col_axis").get<std::string>();
  if (j.contains("transpose")) layout.transpose = j.at("transpose").get<bool>();
  return layout;
}

Dataset ingest_real(const std::string& dir, const RealLayout& layout) {
  if (!fs::is_directory(dir)) throw DataError("data directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.size() < 3) {
    throw DataError("ingest_real: need at least 3 time points in " + dir +
                    " (differencing leaves n-1 and the pipeline needs n >= 2)");
  }

  std::vector<Matrix> raw;
  raw.reserve(files.size());
  int p = -1, q = -1;
  for (const fs::path& file : files) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    // Data matrices are header-less numeric grids; reuse the CSV splitter by
    // treating every record as a row.
    const CsvTable parsed = parse_csv(text, file.string());
    std::vector<std::vector<std::string>> all_rows;
    all_rows.push_back(parsed.header);
    for (const auto& row : parsed.rows) all_rows.push_back(row);
    if (all_rows.empty() || all_rows[0].empty()) {
      throw DataError("empty data file " + file.string());
    }
    const std::size_t width = all_rows[0].size();
    Matrix m(all_rows.size(), width);
    for (std::size_t r = 0; r < all_rows.size(); ++r) {
      if (all_rows[r].size() != width) {
        throw DataError("ragged matrix in " + file.string() + ": row " +
                        std::to_string(r + 1) + " has " + std::to_string(all_rows[r].size()) +
                        " cells, expected " + std::to_string(width));
      }
      for (std::size_t c = 0; c < width; ++c) {
        const double x = parse_csv_number(all_rows[r][c], file.string(), r, c);
        if (x <= -1.0) {
          throw DataError("value " + all_rows[r][c] + " in " + file.string() + " at row " +
                          std::to_string(r + 1) + ", column " + std::to_string(c + 1) +
                          " is <= -1, log(x+1) undefined");
        }
        m(r, c) = std::log1p(x);
      }
    }
    if (layout.transpose) m = m.transpose().eval();
    if (p < 0) {
      p = static_cast<int>(m.rows());
      q = static_cast<int>(m.cols());
    } else if (m.rows() != p || m.cols() != q) {
      throw DataError("matrix in " + file.string() + " is " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", expected " + std::to_string(p) + "x" +
                      std::to_string(q) + " (" + layout.row_axis + " x " + layout.col_axis + ")");
    }
    raw.push_back(std::move(m));
  }

  std::vector<Matrix> diffs;
  diffs.reserve(raw.size() - 1);
  for (std::size_t t = 1; t < raw.size(); ++t) diffs.push_back(raw[t] - raw[t - 1]);
  return Dataset::from_samples(std::move(diffs));
}

namespace {

const char* kReplicationsHeader =
    "replication,seed,a,b,a0,b0,fdp_gamma,fdp_omega,fdp_joint,alpha_prime,power,"
    "lambda_gamma,delta_gamma,lambda_omega,delta_omega,kkt_max";

std::string record_to_csv(const ReplicationRecord& r) {
  std::string line;
  line += std::to_string(r.replication);
  line += ',';
  line += std::to_string(r.seed);
  line += ',';
  line += std::to_string(r.a);
  line += ',';
  line += std::to_string(r.b);
  line += ',';
  line += std::to_string(r.a0);
  line += ',';
  line += std::to_string(r.b0);
  for (double v : {r.fdp_gamma, r.fdp_omega, r.fdp_joint, r.alpha_prime, r.power,
                   r.lambda_gamma, r.delta_gamma, r.lambda_omega, r.delta_omega, r.kkt_max}) {
    line += ',';
    line += csv_double(v);
  }
  return line;
}

std::vector<ReplicationRecord> records_from_csv(const std::string& text, const std::string& origin) {
  const CsvTable table = parse_csv(text, origin);
  std::vector<ReplicationRecord> records;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != 16) throw DataError("unexpected column count in " + origin);
    ReplicationRecord rec;
    std::size_t c = 0;
    auto num = [&] {
      const std::size_t col = c++;
      return parse_csv_number(row[col], origin, r, col);
    };
    rec.replication = static_cast<int>(num());
    rec.seed = static_cast<std::uint64_t>(num());
    rec.a = static_cast<long long>(num());
    rec.b = static_cast<long long>(num());
    rec.a0 = static_cast<long long>(num());
    rec.b0 = static_cast<long long>(num());
    rec.fdp_gamma = num();
    rec.fdp_omega = num();
    rec.fdp_joint = num();
    rec.alpha_prime = num();
    rec.power = num();
    rec.lambda_gamma = num();
    rec.delta_gamma = num();
    rec.lambda_omega = num();
    rec.delta_omega = num();
    rec.kkt_max = num();
    records.push_back(rec);
  }
  return records;
}

json stat_to_json(const SummaryStat& s) { return json{{"mean", s.mean}, {"sd", s.sd}}; }

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace

void emit_report(const RunReport& r, const std::string& dir) {
  fs::create_directories(dir);

  std::string csv = kReplicationsHeader;
  csv += '\n';
  for (const ReplicationRecord& rec : r.records) {
    csv += record_to_csv(rec);
    csv += '\n';
  }
  const fs::path csv_path = fs::path(dir) / "replications.csv";
  write_file(csv_path, csv);

  // The summary aggregates must be recomputable from the CSV exactly as
  // written; verify on the serialized bytes before declaring success.
  const Aggregates agg = aggregate_records(r.records);
  const Aggregates reread = aggregate_records(records_from_csv(csv, csv_path.string()));
  const double drift =
      std::max({std::fabs(agg.fdp_joint.mean - reread.fdp_joint.mean),
                std::fabs(agg.alpha_prime.mean - reread.alpha_prime.mean),
                std::fabs(agg.power.mean - reread.power.mean),
                std::fabs(agg.fdp_joint.sd - reread.fdp_joint.sd),
                std::fabs(agg.power.sd - reread.power.sd)});
  if (drift > 1e-12) {
    throw DataError("emit_report: serialized aggregates drifted by more than 1e-12");
  }

  json summary;
  summary["config"] = r.config_echo;
  summary["version"] = kVersion;
  summary["rng"] = {{"algorithm", kRngAlgorithm}};
  summary["replications"] = {
      {"requested", r.records.size() + r.failures.size()},
      {"completed", r.records.size()},
      {"failed", r.failures.size()}};
  summary["aggregates"] = {{"fdp_joint", stat_to_json(agg.fdp_joint)},
                           {"alpha_prime", stat_to_json(agg.alpha_prime)},
                           {"power", stat_to_json(agg.power)},
                           {"a", stat_to_json(agg.a)},
                           {"b", stat_to_json(agg.b)}};
  json failures = json::array();
  for (const ReplicationFailure& f : r.failures) {
    failures.push_back({{"replication", f.replication}, {"seed", f.seed}, {"message", f.message}});
  }
  summary["failures"] = failures;
  summary["timing"] = {{"total_seconds", r.total_wall_seconds}, {"written_at", iso8601_now()}};
  write_file(fs::path(dir) / "summary.json", summary.dump(2) + "\n");
}

void emit_roc(const RocTable& t, const std::string& dir) {
  fs::create_directories(dir);
  std::string csv = "alpha,mean_fdp,mean_power,replications\n";
  for (double alpha : t.alphas) {
    double fdp = 0.0, power = 0.0;
    long long count = 0;
    for (const RocPoint& pt : t.points) {
      if (pt.alpha == alpha) {
        fdp += pt.fdp;
        power += pt.power;
        ++count;
      }
    }
    if (count > 0) {
      fdp /= count;
      power /= count;
    }
    csv += csv_double(alpha);
    csv += ',';
    csv += csv_double(fdp);
    csv += ',';
    csv += csv_double(power);
    csv += ',';
    csv += std::to_string(count);
    csv += '\n';
  }
  write_file(fs::path(dir) / "roc.csv", csv);

  std::string per_rep = "replication,alpha,fdp,power,a,b\n";
  for (const RocPoint& pt : t.points) {
    per_rep += std::to_string(pt.replication);
    per_rep += ',';
    per_rep += csv_double(pt.alpha);
    per_rep += ',';
    per_rep += csv_double(pt.fdp);
    per_rep += ',';
    per_rep += csv_double(pt.power);
    per_rep += ',';
    per_rep += std::to_string(pt.a);
    per_rep += ',';
    per_rep += std::to_string(pt.b);
    per_rep += '\n';
  }
  write_file(fs::path(dir) / "roc_replications.csv", per_rep);
}

void emit_edges(const std::string& dir, const TestMatrix& t, const PValueSet& pv,
                const BhSelection& sel) {
  fs::create_directories(dir);
  std::set<std::pair<int, int>> rejected(sel.rejected.begin(), sel.rejected.end());
  std::string csv = "i,j,statistic,p_value,rejected\n";
  for (const PairPValue& e : pv.entries) {
    csv += std::to_string(e.i + 1);
    csv += ',';
    csv += std::to_string(e.j + 1);
    csv += ',';
    csv += csv_double(t.t(e.i, e.j));
    csv += ',';
    csv += csv_double(e.p);
    csv += ',';
    csv += rejected.count({e.i, e.j}) ? '1' : '0';
    csv += '\n';
  }
  const std::string name = std::string("edges_") + axis_name(t.axis) + ".csv";
  write_file(fs::path(dir) / name, csv);
}

}  // namespace mggm
