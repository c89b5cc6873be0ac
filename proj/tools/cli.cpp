// Copyright 2026 The Quadbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "quadbench/actuator.hpp"
#include "quadbench/bench.hpp"
#include "quadbench/config.hpp"
#include "quadbench/errors.hpp"
#include "quadbench/rng.hpp"
#include "quadbench/trial_log.hpp"
#include "quadbench/tune.hpp"

namespace quadbench::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir;
};

RunConfig load(const Common& c) {
  return c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
}

fs::path output_dir(const Common& c, const RunConfig& config) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv(kOutputEnv); env != nullptr && *env != '\0') return env;
  return config.run.output_dir;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f) throw Error("failed writing " + path.string());
}

std::string provenance_line(const RunConfig& config) {
  return "# quadbench " + std::string(tool_version()) + " config_hash=" + config_hash(config);
}

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << x;
  return os.str();
}

// ---- sprint / scramble ----

struct BenchOptions {
  Common common;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
};

int cmd_benchmark(Task task, const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  RunConfig config = load(opt.common);
  if (opt.trials) config.run.trials = *opt.trials;
  if (opt.seed) config.run.seed = *opt.seed;
  config.validate();

  const fs::path dir = output_dir(opt.common, config);
  const std::string name(task_name(task));
  const std::string hash = config_hash(config);
  out << name << ": " << config.run.trials << " trial(s), seed " << config.run.seed
      << ", config " << hash << "\n";

  std::vector<TrialResult> results;
  for (int k = 0; k < config.run.trials; ++k) {
    const std::uint64_t seed =
        derive_seed(config.run.seed, SeedStream::kTrial, static_cast<std::uint64_t>(k));
    TrialLog log;
    try {
      log = run_trial(config, task, seed);
    } catch (const NumericalDivergence& e) {
      err << "error: trial " << k << " (seed " << seed << "): " << e.what() << "\n";
      return kDiverged;
    }
    TrialResult r = evaluate_trial(log);
    r.seed = seed;
    if (r.completed) log.score = r.score;
    const fs::path log_path = dir / (name + "_trial_" + std::to_string(k) + ".jsonl");
    write_file(log_path, to_jsonl(log));

    out << "  trial " << k << " seed " << seed << ": ";
    if (r.completed) {
      out << "score " << fmt(r.score) << (task == Task::Sprint ? " m/s" : " s");
    } else {
      out << "DNF (" << r.dnf_reason << ")";
    }
    out << ", mean power " << fmt(r.metrics.mean_power_w, 2) << " W";
    if (r.metrics.cost_of_transport) out << ", CoT " << fmt(*r.metrics.cost_of_transport, 3);
    out << ", tilt rms " << fmt(r.metrics.orientation_error_rad) << " rad\n";
    results.push_back(std::move(r));
  }

  const BenchmarkResult summary = summarize(task, results);
  const LeaderboardMeta meta{config.run.controller, hash, std::string(tool_version())};
  write_file(dir / (name + "_summary.csv"), summary_csv(summary, meta));
  write_file(dir / (name + "_leaderboard.json"),
             export_leaderboard(make_leaderboard_entry(summary, meta)));

  const std::size_t completed = summary.trials.size() - summary.dnf_count;
  out << "completed " << completed << "/" << summary.trials.size();
  if (completed > 0) {
    const Statistics& s = summary.stats;
    out << ": mean " << fmt(s.mean) << ", std " << (s.std_defined ? fmt(s.std) : "n/a")
        << ", median " << fmt(s.median) << ", min " << fmt(s.min) << ", max " << fmt(s.max);
  }
  out << "\noutput: " << dir.string() << "\n";
  if (completed == 0) {
    err << "error: every trial did not finish\n";
    for (std::size_t k = 0; k < summary.trials.size(); ++k) {
      err << "  trial " << k << ": " << summary.trials[k].dnf_reason << "\n";
    }
    return kAllDnf;
  }
  return kOk;
}

// ---- dyno ----

int cmd_dyno(const Common& common, std::ostream& out) {
  const RunConfig config = load(common);
  config.validate();
  const fs::path dir = output_dir(common, config);
  const ActuatorParams& p = config.actuator;

  const auto speeds = default_dyno_speeds();
  const auto currents = default_dyno_currents(p);
  const auto surface = dyno_torque_surface(speeds, currents, p);
  std::ostringstream s;
  s << provenance_line(config) << "\nspeed_rad_s,current_a,torque_nm\n" << std::setprecision(17);
  double peak_pos = 0.0;
  double peak_neg = 0.0;
  for (const DynoSample& d : surface) {
    s << d.speed_rad_s << ',' << d.current_a << ',' << d.torque_nm << '\n';
    if (d.torque_nm * d.speed_rad_s > 0.0) peak_pos = std::max(peak_pos, std::abs(d.torque_nm));
    if (d.torque_nm * d.speed_rad_s < 0.0) peak_neg = std::max(peak_neg, std::abs(d.torque_nm));
  }
  write_file(dir / "dyno_surface.csv", s.str());

  const auto freqs = default_bode_frequencies();
  const auto bode = frequency_response(freqs, p);
  std::ostringstream b;
  b << provenance_line(config) << "\nfreq_hz,gain\n" << std::setprecision(17);
  for (const BodeSample& x : bode) b << x.freq_hz << ',' << x.gain << '\n';
  write_file(dir / "dyno_bode.csv", b.str());

  out << "torque surface: " << surface.size() << " points, peak positive-work "
      << fmt(peak_pos, 3) << " Nm, peak negative-work " << fmt(peak_neg, 3) << " Nm\n";
  out << "frequency response: " << bode.size() << " points, gain " << fmt(bode.front().gain)
      << " at " << bode.front().freq_hz << " Hz\n";
  out << "output: " << dir.string() << "\n";
  return kOk;
}

// ---- tune ----

struct TuneCliOptions {
  Common common;
  std::string task = "sprint";
  std::string method = "cross-entropy";
  std::size_t budget = 200;
  std::optional<std::uint64_t> seed;
  std::size_t population = 16;
  std::size_t threads = 0;
};

int cmd_tune(const TuneCliOptions& opt, std::ostream& out, std::ostream& err) {
  const RunConfig config = load(opt.common);
  config.validate();
  const Task task = parse_task(opt.task);
  if (task == Task::Custom) throw ConfigError("tune --task must be sprint or scramble");

  TuneOptions to;
  to.method = parse_method(opt.method);
  to.budget = opt.budget;
  to.seed = opt.seed.value_or(config.run.seed);
  to.population = opt.population;
  to.threads = opt.threads;

  TuneReport report;
  try {
    report = optimize(SearchSpace{}, task, to, config);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  const fs::path dir = output_dir(opt.common, config);
  const std::string name(task_name(task));
  write_file(dir / ("tune_" + name + "_report.json"), tune_report_json(report));
  write_file(dir / ("tune_" + name + "_best_gait.json"), gait_fragment(report.best_params));

  const GaitParams& g = report.best_params;
  out << "tune " << name << " (" << method_name(to.method) << ", seed " << to.seed << "): "
      << report.evaluations_used << " evaluation(s)\n";
  out << "best score " << fmt(report.best_score) << " with frequency " << fmt(g.frequency, 3)
      << " Hz, step_height " << fmt(g.step_height, 4) << " m, stance_fraction "
      << fmt(g.stance_fraction, 3) << ", stand_height " << fmt(g.stand_height, 4) << " m\n";
  out << "output: " << dir.string() << "\n";
  return kOk;
}

// ---- replay ----

struct ReplayOptions {
  std::string log_path;
  std::string config_path;
  bool allow_hash_mismatch = false;
};

int cmd_replay(const ReplayOptions& opt, std::ostream& out, std::ostream& err) {
  std::ifstream f(opt.log_path, std::ios::binary);
  if (!f) throw ConfigError("cannot open log " + opt.log_path);
  const TrialLog log = read_jsonl(f);

  if (!opt.config_path.empty()) {
    const std::string expected = config_hash(load_config(opt.config_path));
    if (expected != log.meta.config_hash) {
      if (!opt.allow_hash_mismatch) {
        err << "error: log config hash " << log.meta.config_hash << " does not match "
            << opt.config_path << " (" << expected << "); pass --allow-hash-mismatch to replay anyway\n";
        return kConfigError;
      }
      err << "warning: log config hash " << log.meta.config_hash << " differs from "
          << expected << "\n";
    }
  }

  const TrialResult r = evaluate_trial(log);
  out << "log: " << opt.log_path << "\n";
  out << "task " << task_name(log.meta.task) << ", seed " << log.meta.seed << ", config "
      << log.meta.config_hash << ", tool " << log.meta.tool_version << ", " << log.ticks.size()
      << " ticks\n";
  out << std::setprecision(17);
  if (r.completed) {
    out << "score " << r.score;
    if (log.score) out << (*log.score == r.score ? " (matches stored)" : " (DIFFERS from stored)");
    out << "\n";
  } else {
    out << "DNF: " << r.dnf_reason << "\n";
  }
  out << "mean power " << r.metrics.mean_power_w << " W\n";
  out << "cost of transport "
      << (r.metrics.cost_of_transport ? fmt(*r.metrics.cost_of_transport, 6) : std::string("n/a"))
      << "\n";
  out << "orientation error " << r.metrics.orientation_error_rad << " rad\n";
  if (r.completed && log.score && *log.score != r.score) return kConfigError;
  return r.completed ? kOk : kAllDnf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Desk-scale quadruped locomotion benchmarks", "quadbench"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, Common& c) {
    sub->add_option("-c,--config", c.config_path, "Run configuration (JSON)");
    sub->add_option("-o,--out", c.out_dir, "Output directory (default $QUADBENCH_OUT)");
  };

  BenchOptions sprint_opt;
  BenchOptions scramble_opt;
  for (auto [name, help, opt] :
       {std::tuple{"sprint", "Run Sprint trials on the flat 5 m course", &sprint_opt},
        std::tuple{"scramble", "Run Scramble trials over the obstacle course", &scramble_opt}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, opt->common);
    sub->add_option("-n,--trials", opt->trials, "Number of trials")->check(CLI::PositiveNumber);
    sub->add_option("-s,--seed", opt->seed, "Base seed");
  }

  Common dyno_opt;
  CLI::App* dyno = app.add_subcommand("dyno", "Export actuator torque surface and frequency response");
  add_common(dyno, dyno_opt);

  TuneCliOptions tune_opt;
  CLI::App* tune = app.add_subcommand("tune", "Optimize gait parameters");
  add_common(tune, tune_opt.common);
  tune->add_option("-t,--task", tune_opt.task, "sprint or scramble")->capture_default_str();
  tune->add_option("-m,--method", tune_opt.method, "random-search or cross-entropy")
      ->capture_default_str();
  tune->add_option("-b,--budget", tune_opt.budget, "Evaluation budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tune->add_option("-s,--seed", tune_opt.seed, "Seed");
  tune->add_option("--population", tune_opt.population, "Candidates per iteration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tune->add_option("-j,--threads", tune_opt.threads, "Worker threads (0 = all cores)");

  ReplayOptions replay_opt;
  CLI::App* replay = app.add_subcommand("replay", "Recompute scores and metrics from a trial log");
  replay->add_option("log", replay_opt.log_path, "Trial log (JSONL)")->required();
  replay->add_option("-c,--config", replay_opt.config_path, "Check the log against this config");
  replay->add_flag("--allow-hash-mismatch", replay_opt.allow_hash_mismatch,
                   "Warn instead of failing on a config hash mismatch");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << tool_version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (app.got_subcommand("sprint")) return cmd_benchmark(Task::Sprint, sprint_opt, out, err);
    if (app.got_subcommand("scramble")) {
      return cmd_benchmark(Task::Scramble, scramble_opt, out, err);
    }
    if (app.got_subcommand("dyno")) return cmd_dyno(dyno_opt, out);
    if (app.got_subcommand("tune")) return cmd_tune(tune_opt, out, err);
    if (app.got_subcommand("replay")) return cmd_replay(replay_opt, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const LogParseError& e) {
    err << "log error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalDivergence& e) {
    err << "error: " << e.what() << "\n";
    return kDiverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace quadbench::cli
