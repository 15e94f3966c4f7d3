#include "dmdl/cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dmdl/calibration.hpp"
#include "dmdl/detectors.hpp"
#include "dmdl/evaluation.hpp"
#include "dmdl/format.hpp"
#include "dmdl/growth_model.hpp"
#include "dmdl/ingest.hpp"
#include "dmdl/report.hpp"
#include "dmdl/synthgen.hpp"

namespace dmdl {

namespace {

using nlohmann::json;

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Applies `key=value` lines from a config file to a subcommand's options.
// Keys already given as command-line flags keep their values, so the
// precedence is flags > config file > built-in defaults.
void apply_config_file(CLI::App& sub, const std::string& path) {
  CLI::ConfigTOML reader;
  for (const auto& item : reader.from_file(path)) {
    if (!item.parents.empty()) {
      throw DataError("config: sections are not supported (saw '" +
                      item.fullname() + "')");
    }
    if (item.name == "config") {
      throw DataError("config: a config file cannot name another one");
    }
    CLI::Option* op = sub.get_option_no_throw("--" + item.name);
    if (op == nullptr) {
      throw DataError("config: unknown key '" + item.name + "'");
    }
    if (op->count() > 0) continue;  // an explicit flag wins
    if (item.inputs.size() != 1) {
      throw DataError("config: key '" + item.name +
                      "' needs exactly one value");
    }
    op->add_result(item.inputs.front());
    op->run_callback();
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw DataError("cannot write '" + path + "'");
}

struct SynthArgs {
  SynthConfig cfg;
  std::string out;
};

int run_synth(const SynthArgs& args) {
  const SynthSeries series = generate(args.cfg);
  std::ostringstream csv;
  csv << "t,x,"
      << (args.cfg.kind == SynthKind::mean ? "true_mu" : "true_sigma")
      << '\n';
  for (std::size_t t = 0; t < series.x.size(); ++t) {
    csv << t << ',' << format_g17(series.x[t]) << ','
        << format_g17(series.truth[t]) << '\n';
  }
  write_text(args.out, csv.str());
  return 0;
}

struct DetectArgs {
  std::string input;
  std::string value_column = "x";
  std::string date_column;
  std::string country;
  DetectorConfig cfg;
  int order = 0;
  std::optional<double> mu_max, sigma_min, sigma_max;
  std::optional<double> delta1, delta2;
  std::optional<std::size_t> calibrate_at;
  std::string out;
  std::string scores_out;
  std::string svg_out;
};

int run_detect(DetectArgs args) {
  // Ingest.
  Series series;
  std::size_t negatives_clamped = 0;
  if (!args.country.empty()) {
    EcdcIngestResult ecdc = ingest_ecdc(args.input, args.country);
    series = std::move(ecdc.series);
    negatives_clamped = ecdc.negatives_clamped;
  } else {
    series = ingest_csv(args.input, args.value_column, args.date_column);
  }
  const std::string provenance = fnv1a_hex(read_file_bytes(args.input));

  // The exponential model scores the log of the cumulative counts; the
  // leading zero-cases prefix is dropped and recorded as an offset.
  std::vector<double> analyzed;
  std::size_t log_offset = 0;
  if (args.cfg.model == DataModel::exponential_residual) {
    const std::vector<double> cumulative =
        cumulative_from_daily(series.values);
    analyzed = log_cumulative(cumulative);
    log_offset = cumulative.size() - analyzed.size();
  } else {
    analyzed = series.values;
  }

  // Apply the by-default-absent deltas and model-class bound overrides.
  if (args.delta1) args.cfg.thresholds.delta1 = *args.delta1;
  if (args.delta2) args.cfg.thresholds.delta2 = *args.delta2;
  if (args.mu_max || args.sigma_min || args.sigma_max) {
    DetectorConfig probe = args.cfg;
    probe.nml.reset();
    GaussianNmlConfig bounds = effective_nml_config(analyzed, probe);
    if (args.mu_max) bounds.mu_max = *args.mu_max;
    if (args.sigma_min) bounds.sigma_min = *args.sigma_min;
    if (args.sigma_max) bounds.sigma_max = *args.sigma_max;
    args.cfg.nml = bounds;
  }

  std::optional<CalibratedDeltas> calibrated;
  if (args.calibrate_at) {
    calibrated = calibrate_deltas(analyzed, *args.calibrate_at, args.cfg);
    args.cfg.thresholds.delta1 = calibrated->delta1;
    args.cfg.thresholds.delta2 = calibrated->delta2;
  }

  std::vector<ScoreRecord> records =
      run_detector(analyzed, args.cfg, args.order);
  normalize_scores(records);

  const GaussianNmlConfig resolved =
      effective_nml_config(analyzed, args.cfg);
  json echo;
  echo["command"] = "detect";
  echo["input"] = args.input;
  echo["value_column"] = args.value_column;
  echo["date_column"] = args.date_column;
  echo["country"] = args.country;
  echo["series_name"] = series.name;
  echo["model"] = to_string(args.cfg.model);
  echo["mode"] = to_string(args.cfg.mode);
  echo["order"] = args.order;
  echo["h"] = args.cfg.h;
  echo["beta"] = args.cfg.beta;
  echo["delta"] = args.cfg.thresholds.delta;
  echo["delta1"] = args.cfg.thresholds.delta1;
  echo["delta2"] = args.cfg.thresholds.delta2;
  echo["d"] = args.cfg.thresholds.d;
  echo["max_window"] = args.cfg.max_window;
  echo["sign_cut"] = to_string(args.cfg.sign_cut);
  echo["mu_max"] = resolved.mu_max;
  echo["sigma_min"] = resolved.sigma_min;
  echo["sigma_max"] = resolved.sigma_max;
  if (!args.country.empty()) echo["negatives_clamped"] = negatives_clamped;
  if (args.cfg.model == DataModel::exponential_residual) {
    echo["log_offset"] = log_offset;
  }
  if (args.calibrate_at) echo["calibrate_at"] = *args.calibrate_at;

  const RunReport report =
      make_report(std::move(records), echo.dump(), provenance);
  write_text(args.out, to_json(report));
  if (!args.scores_out.empty()) {
    write_scores_csv(args.scores_out, analyzed, report.records);
  }
  if (!args.svg_out.empty()) {
    render_svg(args.svg_out, report.records);
  }
  return 0;
}

struct BenchArgs {
  std::size_t seeds = 5;
  SynthKind kind = SynthKind::mean;
  Transition transition = Transition::abrupt;
  double horizon = 100.0;
  std::size_t h = 100;
  std::size_t grid = 200;
  std::size_t length = 10000;
  std::string out;
};

int run_bench(const BenchArgs& args) {
  SynthConfig synth_cfg;
  synth_cfg.kind = args.kind;
  synth_cfg.transition = args.transition;
  synth_cfg.length = args.length;

  EvalConfig eval_cfg;
  eval_cfg.horizon = args.horizon;
  eval_cfg.grid_size = args.grid;
  for (const std::size_t cp : change_points(synth_cfg)) {
    eval_cfg.change_points.push_back(static_cast<double>(cp));
  }

  DetectorConfig det_cfg;
  det_cfg.mode = DetectorMode::fixed;
  det_cfg.h = args.h;

  std::vector<std::vector<double>> aucs(3);
  for (std::size_t seed = 1; seed <= args.seeds; ++seed) {
    synth_cfg.seed = seed;
    const SynthSeries data = generate(synth_cfg);
    const std::vector<ScoreRecord> records = run_fixed(data.x, det_cfg);

    const std::optional<double> ScoreRecord::* raws[3] = {
        &ScoreRecord::raw0, &ScoreRecord::raw1, &ScoreRecord::raw2};
    for (int order = 0; order < 3; ++order) {
      std::vector<double> times, scores;
      for (const ScoreRecord& rec : records) {
        if (const auto& v = rec.*raws[order]) {
          times.push_back(static_cast<double>(rec.t));
          scores.push_back(*v);
        }
      }
      aucs[order].push_back(
          auc_benefit(times, scores, eval_cfg).auc);
    }
  }

  json out;
  out["config"] = {{"command", "bench"},
                   {"seeds", args.seeds},
                   {"kind", args.kind == SynthKind::mean ? "mean"
                                                         : "variance"},
                   {"transition", args.transition == Transition::abrupt
                                      ? "abrupt"
                                      : "gradual"},
                   {"T", args.horizon},
                   {"h", args.h},
                   {"grid", args.grid},
                   {"length", args.length}};
  out["orders"] = json::array();
  for (int order = 0; order < 3; ++order) {
    const std::vector<double>& v = aucs[order];
    double mean = 0.0;
    for (const double a : v) mean += a;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (const double a : v) var += (a - mean) * (a - mean);
    const double sd =
        v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1))
                     : 0.0;
    json per_seed = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
      per_seed.push_back({{"seed", i + 1}, {"auc", v[i]}});
    }
    out["orders"].push_back({{"order", order},
                             {"mean_auc", mean},
                             {"std_auc", sd},
                             {"per_seed", per_seed}});
  }
  write_text(args.out, out.dump(2));
  return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
  CLI::App app{"Differential MDL change statistics toolkit"};
  app.require_subcommand(1);
  // Reserve short single-letter names for statistics parameters (--h mirrors
  // --T); help stays reachable as --help everywhere.
  app.set_help_flag("--help", "print help and exit");

  const std::map<std::string, SynthKind> kind_map{
      {"mean", SynthKind::mean}, {"variance", SynthKind::variance}};
  const std::map<std::string, Transition> transition_map{
      {"abrupt", Transition::abrupt}, {"gradual", Transition::gradual}};
  const std::map<std::string, DataModel> model_map{
      {"gaussian", DataModel::gaussian_direct},
      {"exponential", DataModel::exponential_residual}};
  const std::map<std::string, DetectorMode> mode_map{
      {"fixed", DetectorMode::fixed},
      {"adaptive", DetectorMode::adaptive},
      {"hierarchical", DetectorMode::hierarchical}};
  const std::map<std::string, SignCut> sign_cut_map{
      {"per_order", SignCut::per_order},
      {"zeroth_argmax", SignCut::zeroth_argmax}};

  // synth
  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a piecewise Gaussian benchmark series as CSV");
  synth->set_help_flag("--help", "print help and exit");
  synth->add_option("--kind", synth_args.cfg.kind, "mean or variance")
      ->transform(CLI::CheckedTransformer(kind_map, CLI::ignore_case));
  synth
      ->add_option("--transition", synth_args.cfg.transition,
                   "abrupt or gradual")
      ->transform(CLI::CheckedTransformer(transition_map, CLI::ignore_case));
  synth->add_option("--seed", synth_args.cfg.seed, "RNG seed")
      ->envname("DMDL_SEED");
  synth->add_option("--length", synth_args.cfg.length, "series length");
  synth->add_option("--amplitude", synth_args.cfg.amplitude,
                    "shift unit (default 0.3 mean / 0.1 log-sigma)");
  synth->add_option("--spacing", synth_args.cfg.spacing,
                    "steps between changes");
  synth->add_option("--ramp", synth_args.cfg.ramp,
                    "gradual transition length");
  synth->add_option("--changes", synth_args.cfg.num_changes,
                    "number of changes");
  synth->add_option("--out", synth_args.out, "output CSV path (default stdout)");

  // detect
  DetectArgs detect_args;
  double detect_delta1 = 0.0, detect_delta2 = 0.0;
  double detect_mu_max = 0.0, detect_sigma_min = 0.0, detect_sigma_max = 0.0;
  std::int64_t detect_calibrate_at = 0;
  CLI::App* detect = app.add_subcommand(
      "detect", "Run a change detector over a CSV series");
  detect->set_help_flag("--help", "print help and exit");
  std::string detect_config;
  detect->add_option("--config", detect_config,
                     "read defaults from a key=value config file (flags win)");
  detect->add_option("--input", detect_args.input, "input CSV path")
      ->required();
  detect->add_option("--value-column", detect_args.value_column,
                     "value column name");
  detect->add_option("--date-column", detect_args.date_column,
                     "date column name (sorts rows)");
  detect->add_option("--country", detect_args.country,
                     "ECDC layout: keep this country's rows");
  detect->add_option("--model", detect_args.cfg.model,
                     "gaussian or exponential")
      ->transform(CLI::CheckedTransformer(model_map, CLI::ignore_case));
  detect->add_option("--mode", detect_args.cfg.mode,
                     "fixed, adaptive or hierarchical")
      ->transform(CLI::CheckedTransformer(mode_map, CLI::ignore_case));
  detect->add_option("--order", detect_args.order,
                     "difference order (adaptive mode)")
      ->check(CLI::Range(0, 2));
  detect->add_option("--h", detect_args.cfg.h, "fixed-mode half window");
  detect->add_option("--beta", detect_args.cfg.beta,
                     "fixed-mode alarm threshold");
  detect->add_option("--delta", detect_args.cfg.thresholds.delta,
                     "confidence parameter (order 0)");
  CLI::Option* opt_d1 = detect->add_option(
      "--delta1", detect_delta1, "confidence parameter (order 1)");
  CLI::Option* opt_d2 = detect->add_option(
      "--delta2", detect_delta2, "confidence parameter (order 2)");
  CLI::Option* opt_mu = detect->add_option("--mu-max", detect_mu_max,
                                           "mean bound of the model class");
  CLI::Option* opt_smin = detect->add_option(
      "--sigma-min", detect_sigma_min, "lower sigma bound");
  CLI::Option* opt_smax = detect->add_option(
      "--sigma-max", detect_sigma_max, "upper sigma bound");
  detect->add_option("--max-window", detect_args.cfg.max_window,
                     "growing-window cap (0 = unbounded)");
  detect->add_option("--sign-cut", detect_args.cfg.sign_cut,
                     "per_order or zeroth_argmax")
      ->transform(CLI::CheckedTransformer(sign_cut_map, CLI::ignore_case));
  CLI::Option* opt_cal = detect->add_option(
      "--calibrate-at", detect_calibrate_at,
      "calibrate delta1/delta2 at this index of the analyzed series")
      ->check(CLI::NonNegativeNumber);
  detect->add_option("--out", detect_args.out,
                     "report JSON path (default stdout)");
  detect->add_option("--scores", detect_args.scores_out,
                     "score trace CSV path");
  detect->add_option("--svg", detect_args.svg_out,
                     "normalized-score plot SVG path");

  // bench
  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Benchmark AUC per order over seeded synthetic series");
  bench->set_help_flag("--help", "print help and exit");
  std::string bench_config;
  bench->add_option("--config", bench_config,
                    "read defaults from a key=value config file (flags win)");
  bench->add_option("--seeds", bench_args.seeds, "number of seeds (1..N)")
      ->check(CLI::PositiveNumber);
  bench->add_option("--kind", bench_args.kind, "mean or variance")
      ->transform(CLI::CheckedTransformer(kind_map, CLI::ignore_case));
  bench->add_option("--transition", bench_args.transition,
                    "abrupt or gradual")
      ->transform(CLI::CheckedTransformer(transition_map, CLI::ignore_case));
  bench->add_option("--T", bench_args.horizon, "benefit horizon")
      ->check(CLI::PositiveNumber);
  bench->add_option("--h", bench_args.h, "fixed-mode half window");
  bench->add_option("--grid", bench_args.grid, "threshold grid size");
  bench->add_option("--length", bench_args.length, "series length");
  bench->add_option("--out", bench_args.out,
                    "output JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*synth) return run_synth(synth_args);
    if (*detect) {
      if (!detect_config.empty()) apply_config_file(*detect, detect_config);
      if (opt_d1->count() > 0) detect_args.delta1 = detect_delta1;
      if (opt_d2->count() > 0) detect_args.delta2 = detect_delta2;
      if (opt_mu->count() > 0) detect_args.mu_max = detect_mu_max;
      if (opt_smin->count() > 0) detect_args.sigma_min = detect_sigma_min;
      if (opt_smax->count() > 0) detect_args.sigma_max = detect_sigma_max;
      if (opt_cal->count() > 0) {
        detect_args.calibrate_at =
            static_cast<std::size_t>(detect_calibrate_at);
      }
      return run_detect(std::move(detect_args));
    }
    if (*bench) {
      if (!bench_config.empty()) apply_config_file(*bench, bench_config);
      return run_bench(bench_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace dmdl
