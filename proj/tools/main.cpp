// lrpi: prediction intervals for the temporal average of the next m values of
// a univariate time series, plus a Monte-Carlo coverage harness and a rolling
// pseudo-out-of-sample evaluator.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lrpi/csv.hpp"
#include "lrpi/errors.hpp"
#include "lrpi/harness.hpp"
#include "lrpi/report.hpp"

namespace {

using lrpi::harness::CoverageReport;
using lrpi::harness::Method;

std::vector<Method> to_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) out.push_back(lrpi::harness::method_from_name(n));
  return out;
}

void emit(const CoverageReport& report, const std::string& out_path,
          const std::string& format) {
  if (format != "csv" && format != "table") {
    throw lrpi::InvalidInputError("format must be 'csv' or 'table'");
  }
  if (out_path.empty()) {
    if (format == "csv") {
      lrpi::harness::write_report_csv(report, std::cout);
    } else {
      lrpi::harness::write_report_table(report, std::cout);
    }
    return;
  }
  if (format == "csv") {
    lrpi::harness::write_report_csv(report, out_path);
  } else {
    std::ofstream out(out_path);
    if (!out) throw lrpi::IoError("cannot open output file: " + out_path);
    lrpi::harness::write_report_table(report, out);
    if (!out.good()) throw lrpi::IoError("failed while writing: " + out_path);
  }
}

// --d accepts either a single order for every differencing-aware method or
// per-method entries like kernel-boot=1,clt-tdist=0.5.
std::map<Method, double> parse_d_tokens(const std::vector<std::string>& tokens) {
  std::map<Method, double> out;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      const double d = std::stod(tok);
      out[Method::kCltTdist] = d;
      out[Method::kKernelBoot] = d;
    } else {
      out[lrpi::harness::method_from_name(tok.substr(0, eq))] =
          std::stod(tok.substr(eq + 1));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prediction intervals for temporal averages of a univariate series"};
  app.require_subcommand(1);

  // --- simulate ---
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo coverage experiment");
  lrpi::harness::SimConfig sim_cfg;
  std::vector<std::string> sim_methods = {"qtl-original", "kernel-boot", "clt-original",
                                          "clt-tdist"};
  std::string sim_out, sim_format = "table";
  sim->set_config("--config");
  sim->add_option("--scenario", sim_cfg.scenarios,
                  "Scenarios: short-light long-light short-heavy long-heavy")
      ->delimiter(',');
  sim->add_option("--trials", sim_cfg.n_trials, "Monte-Carlo trials per scenario");
  sim->add_option("--t", sim_cfg.sample_len, "Estimation sample length T");
  sim->add_option("--horizons", sim_cfg.horizons, "Forecast horizons m")->delimiter(',');
  sim->add_option("--levels", sim_cfg.levels, "Nominal coverage levels")->delimiter(',');
  sim->add_option("--methods", sim_methods, "PI methods to evaluate")->delimiter(',');
  sim->add_option("--seed", sim_cfg.base_seed, "Base seed (trial i uses seed + i)");
  sim->add_option("--sigma", sim_cfg.sigma, "Innovation scale of the scenarios");
  sim->add_option("--b-reps", sim_cfg.bootstrap_reps, "Bootstrap replicates");
  sim->add_option("--d", sim_cfg.d, "Differencing order for adjusted methods");
  sim->add_option("--threads", sim_cfg.n_threads, "Worker threads (0 = hardware)");
  sim->add_option("--out", sim_out, "Output path (default stdout)");
  sim->add_option("--format", sim_format, "csv or table");

  // --- pi ---
  auto* one = app.add_subcommand("pi", "One-shot interval from a CSV column");
  std::string pi_csv, pi_column, pi_method = "kernel-boot";
  int pi_m = 0;
  double pi_level = 0.90;
  lrpi::harness::MethodConfig pi_mc;
  std::uint64_t pi_seed = 1;
  one->set_config("--config");
  one->add_option("--csv", pi_csv, "Input CSV path")->required();
  one->add_option("--column", pi_column, "Target column name")->required();
  one->add_option("--m", pi_m, "Forecast horizon")->required();
  one->add_option("--level", pi_level, "Nominal coverage level");
  one->add_option("--method", pi_method, "PI method");
  one->add_option("--d", pi_mc.d, "Differencing order (clt-tdist / kernel-boot)");
  one->add_option("--b-reps", pi_mc.bootstrap_reps, "Bootstrap replicates");
  one->add_option("--q", pi_mc.lowfreq_q, "Cosine frequencies for the naive method");
  one->add_flag("--trend-shift", pi_mc.trend_shift,
                "Recenter d=1 intervals for trending series");
  one->add_option("--seed", pi_seed, "Seed for stochastic methods");

  // --- poos ---
  auto* poos = app.add_subcommand("poos", "Rolling pseudo-out-of-sample evaluation");
  lrpi::harness::PoosConfig poos_cfg;
  std::vector<std::string> poos_methods = {"kernel-boot", "clt-tdist"};
  std::vector<std::string> poos_d;
  std::string poos_out, poos_format = "table";
  poos->set_config("--config");
  poos->add_option("--csv", poos_cfg.csv_path, "Input CSV path")->required();
  poos->add_option("--column", poos_cfg.column, "Target column name")->required();
  poos->add_option("--window", poos_cfg.window, "Rolling estimation window T");
  poos->add_option("--horizons", poos_cfg.horizons, "Forecast horizons m")->delimiter(',');
  poos->add_option("--levels", poos_cfg.levels, "Nominal coverage levels")->delimiter(',');
  poos->add_option("--methods", poos_methods, "PI methods to evaluate")->delimiter(',');
  poos->add_option("--d", poos_d,
                   "Differencing order: a single value or method=d entries")
      ->delimiter(',');
  poos->add_option("--step", poos_cfg.step, "Window stride (0 = horizon)");
  poos->add_option("--seed", poos_cfg.base_seed, "Base seed");
  poos->add_option("--b-reps", poos_cfg.bootstrap_reps, "Bootstrap replicates");
  poos->add_option("--threads", poos_cfg.n_threads, "Worker threads (0 = hardware)");
  poos->add_flag("--trend-shift", poos_cfg.trend_shift,
                 "Recenter d=1 intervals for trending series");
  poos->add_option("--out", poos_out, "Output path (default stdout)");
  poos->add_option("--format", poos_format, "csv or table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      sim_cfg.methods = to_methods(sim_methods);
      emit(lrpi::harness::run_simulation(sim_cfg), sim_out, sim_format);
    } else if (one->parsed()) {
      const auto series = lrpi::read_csv_column(pi_csv, pi_column);
      const auto method = lrpi::harness::method_from_name(pi_method);
      const auto interval =
          lrpi::harness::build_interval(method, series, pi_m, pi_level, pi_mc, pi_seed);
      std::printf("method=%s horizon=%d level=%.4g lower=%.8g upper=%.8g\n",
                  interval.method.c_str(), interval.horizon_m, interval.level,
                  interval.lower, interval.upper);
      if (!interval.note.empty()) {
        std::printf("note=%s\n", interval.note.c_str());
      }
    } else if (poos->parsed()) {
      poos_cfg.methods = to_methods(poos_methods);
      poos_cfg.d_per_method = parse_d_tokens(poos_d);
      emit(lrpi::harness::run_poos(poos_cfg), poos_out, poos_format);
    }
  } catch (const lrpi::InvalidInputError& e) {
    std::cerr << "error (invalid input): " << e.what() << "\n";
    return 1;
  } catch (const lrpi::IoError& e) {
    std::cerr << "error (I/O): " << e.what() << "\n";
    return 3;
  } catch (const lrpi::NumericError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (invalid input): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
