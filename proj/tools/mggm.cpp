// Command-line front end: simulation reports, ROC sweeps, and support
// estimation on real matrix-variate data.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mggm/errors.hpp"
#include "mggm/pipeline.hpp"

namespace {

using namespace mggm;

std::vector<double> parse_alpha_list(const std::string& csv_list) {
  std::vector<double> alphas;
  std::size_t start = 0;
  while (start <= csv_list.size()) {
    const std::size_t comma = csv_list.find(',', start);
    const std::string tok = csv_list.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) {
      try {
        alphas.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ConfigError("cannot parse alpha value '" + tok + "'");
      }
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (alphas.empty()) throw ConfigError("--alphas produced an empty list");
  return alphas;
}

void print_aggregates(const RunReport& report) {
  const Aggregates agg = aggregate_records(report.records);
  std::printf("replications completed: %lld (failed: %zu)\n", agg.count,
              report.failures.size());
  std::printf("mean FDP        %.4f (sd %.4f)\n", agg.fdp_joint.mean, agg.fdp_joint.sd);
  std::printf("mean alpha'     %.4f (sd %.4f)\n", agg.alpha_prime.mean, agg.alpha_prime.sd);
  std::printf("mean power      %.4f (sd %.4f)\n", agg.power.mean, agg.power.sd);
  std::printf("mean a, b       %.1f, %.1f\n", agg.a.mean, agg.b.mean);
  std::printf("wall time       %.1f s\n", report.total_wall_seconds);
}

struct EstimateOptions {
  std::string data_dir;
  std::string layout_path;
  std::string output_dir;
  double alpha = 0.1;
  bool use_target = false;
  double target_alpha_prime = 0.1;
  bool emit_edge_files = true;
  LassoConfig lasso;
  TuningGrid grid = TuningGrid::defaults();
};

int run_estimate(const EstimateOptions& opt) {
  const RealLayout layout = load_layout(opt.layout_path);
  const Dataset d = ingest_real(opt.data_dir, layout);
  std::printf("loaded %d observations of %d x %d (%s x %s)\n", d.n, d.p, d.q,
              layout.row_axis.c_str(), layout.col_axis.c_str());

  AxisAnalysis ag(d, Axis::gamma, opt.lasso);
  AxisAnalysis ao(d, Axis::omega, opt.lasso);
  const TuningResult tg = tune(ag, opt.grid);
  const TuningResult to = tune(ao, opt.grid);
  const TestMatrix mg = ag.statistics(tg.lambda_hat, tg.delta_hat);
  const TestMatrix mo = ao.statistics(to.lambda_hat, to.delta_hat);
  const PValueSet pvg = p_values(mg);
  const PValueSet pvo = p_values(mo);

  double alpha = opt.alpha;
  if (opt.use_target) {
    const AlphaChoice choice = choose_alpha_for_target(
        opt.target_alpha_prime, d.p, d.q, [&](double a) {
          const BhSelection so = bh_select(pvo, a);
          const BhSelection sg = bh_select(pvg, a);
          return std::make_pair(2LL * static_cast<long long>(so.rejected.size()),
                                2LL * static_cast<long long>(sg.rejected.size()));
        });
    alpha = choice.alpha;
    std::printf("target alpha' %.4f -> alpha %.4f (realized alpha' %.4f)%s\n",
                opt.target_alpha_prime, choice.alpha, choice.alpha_prime,
                choice.zero_discovery ? " [no discoveries on the grid]" : "");
  }

  const BhSelection sel_g = bh_select(pvg, alpha);
  const BhSelection sel_o = bh_select(pvo, alpha);
  const SupportEstimate est_g = support_estimate(sel_g, d.q);
  const SupportEstimate est_o = support_estimate(sel_o, d.p);
  const JointMetrics jm = joint_metrics(est_o, est_g, std::nullopt, alpha);

  std::printf("%s graph: %zu edges of %d*(%d-1)/2 pairs\n", layout.row_axis.c_str(),
              sel_o.rejected.size(), d.p, d.p);
  std::printf("%s graph: %zu edges of %d*(%d-1)/2 pairs\n", layout.col_axis.c_str(),
              sel_g.rejected.size(), d.q, d.q);
  std::printf("alpha %.4f -> estimated joint FDP alpha' %.4f\n", alpha, jm.alpha_prime);

  if (!opt.output_dir.empty()) {
    if (opt.emit_edge_files) {
      emit_edges(opt.output_dir, mg, pvg, sel_g);
      emit_edges(opt.output_dir, mo, pvo, sel_o);
    }
    nlohmann::json summary;
    summary["version"] = kVersion;
    summary["data"] = {{"n", d.n}, {"p", d.p}, {"q", d.q},
                       {"row_axis", layout.row_axis}, {"col_axis", layout.col_axis}};
    summary["alpha"] = alpha;
    summary["alpha_prime"] = jm.alpha_prime;
    summary["a"] = jm.a;
    summary["b"] = jm.b;
    summary["tuning"] = {
        {"gamma", {{"lambda", tg.lambda_hat}, {"delta", tg.delta_hat}, {"objective", tg.objective}}},
        {"omega", {{"lambda", to.lambda_hat}, {"delta", to.delta_hat}, {"objective", to.objective}}}};
    std::filesystem::create_directories(opt.output_dir);
    std::ofstream out(std::filesystem::path(opt.output_dir) / "estimate_summary.json");
    out << summary.dump(2) << "\n";
  }
  return 0;
}

int run_tune_cmd(const EstimateOptions& opt) {
  const RealLayout layout = load_layout(opt.layout_path);
  const Dataset d = ingest_real(opt.data_dir, layout);
  for (Axis axis : {Axis::gamma, Axis::omega}) {
    const TuningResult res = tune(d, opt.grid, opt.lasso, axis);
    std::printf("%s axis: lambda %.3f, delta %.3f (objective %.6f)\n", axis_name(axis),
                res.lambda_hat, res.delta_hat, res.objective);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Support recovery for matrix-variate Gaussian graphical models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  auto* simulate = app.add_subcommand("simulate", "Replicated simulation study");
  simulate->add_option("--config", config_path, "JSON config file")->required();
  simulate->add_option("--output", output_override, "Override the config's output_dir");

  std::string alphas_arg = "0.05,0.1,0.15,0.2,0.25,0.3";
  auto* roc = app.add_subcommand("roc", "FDP/power sweep over BH levels");
  roc->add_option("--config", config_path, "JSON config file")->required();
  roc->add_option("--alphas", alphas_arg, "Comma-separated BH levels");
  roc->add_option("--output", output_override, "Override the config's output_dir");

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Estimate supports from real data");
  estimate->add_option("--data", est.data_dir, "Directory of per-time-point CSV matrices")
      ->required();
  estimate->add_option("--layout", est.layout_path, "Layout descriptor JSON")->required();
  estimate->add_option("--alpha", est.alpha, "Per-axis BH level");
  auto* target_opt = estimate->add_option("--target-alpha-prime", est.target_alpha_prime,
                                          "Pick alpha so the joint FDP estimate hits this");
  estimate->add_option("--output", est.output_dir, "Directory for edge lists and summary");

  EstimateOptions tune_opt;
  auto* tune_cmd = app.add_subcommand("tune", "Report the data-driven (lambda, delta) choice");
  tune_cmd->add_option("--data", tune_opt.data_dir, "Directory of per-time-point CSV matrices")
      ->required();
  tune_cmd->add_option("--layout", tune_opt.layout_path, "Layout descriptor JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      SimConfig cfg = load_sim_config(config_path);
      if (!output_override.empty()) cfg.output_dir = output_override;
      const RunReport report = run_simulation(cfg);
      print_aggregates(report);
      return report.failures.empty() ? 0 : 4;
    }
    if (roc->parsed()) {
      SimConfig cfg = load_sim_config(config_path);
      if (!output_override.empty()) cfg.output_dir = output_override;
      const RocTable table = run_roc(cfg, parse_alpha_list(alphas_arg));
      std::printf("%zu replication/alpha points", table.points.size());
      if (!cfg.output_dir.empty()) std::printf(" -> %s/roc.csv", cfg.output_dir.c_str());
      std::printf("\n");
      return table.failures.empty() ? 0 : 4;
    }
    if (estimate->parsed()) {
      est.use_target = target_opt->count() > 0;
      return run_estimate(est);
    }
    if (tune_cmd->parsed()) {
      return run_tune_cmd(tune_opt);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 3;
  } catch (const DegenerateDataError& e) {
    std::fprintf(stderr, "numerical degeneracy: %s\n", e.what());
    return 4;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "numerical degeneracy: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
