// Command-line front end: approximate, recover, synthesize, benchmark, eval-grid.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hardy/hardy.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 2, kSearchCap = 3, kStall = 4 };

struct InputArgs {
  std::string input;
  std::string builtin;
  std::size_t samples = 1024;
};

void add_input(CLI::App* cmd, InputArgs& in) {
  auto* file = cmd->add_option("--input", in.input, "signal CSV (index,re,im)");
  auto* builtin = cmd->add_option("--builtin", in.builtin, "registered target name");
  file->excludes(builtin);
  cmd->add_option("--samples", in.samples, "sample count for --builtin")->capture_default_str();
}

hardy::Signal load_input(const InputArgs& in) {
  if (!in.input.empty()) return hardy::io::read_signal_csv(in.input);
  if (!in.builtin.empty()) return hardy::require_target(in.builtin).sample(in.samples);
  throw hardy::ValidationError("one of --input or --builtin is required");
}

void add_run_flags(CLI::App* cmd, hardy::RunConfig& cfg) {
  cmd->add_option("--radial", cfg.search.radial, "polar grid radial divisions M")->capture_default_str();
  cmd->add_option("--angular", cfg.search.angular, "polar grid angular divisions N")->capture_default_str();
  cmd->add_option("--eta-rel", cfg.search.eta_rel, "search improvement tolerance relative to ||f||^2")
      ->capture_default_str();
  cmd->add_option("--max-sweeps", cfg.search.max_sweeps, "search sweep cap")->capture_default_str();
  cmd->add_option("--beta", cfg.cgd.beta, "backtracking factor")->capture_default_str();
  cmd->add_option("--trust", cfg.cgd.neighbor_radius, "per-iteration trust radius")->capture_default_str();
  cmd->add_option("--tol", cfg.cgd.tol, "gradient norm^2 tolerance")->capture_default_str();
  cmd->add_option("--max-iters", cfg.cgd.max_iters, "refinement iteration cap")->capture_default_str();
  cmd->add_option("--max-backtracks", cfg.cgd.max_backtracks, "step halvings per iteration")->capture_default_str();
  cmd->add_option("--step-ceiling", cfg.cgd.step_ceiling, "upper bound on the initial trial step");
  cmd->add_option("--seed", cfg.seed, "seed of the random starting tuple")->capture_default_str();
}

int run_fit(const InputArgs& in, std::size_t degree, hardy::RunConfig cfg, const std::string& out,
            const std::string& truth_path, bool recover, const std::string& builtin) {
  cfg.degree = degree;
  cfg.samples = in.samples;
  cfg.validate();
  const auto f = load_input(in);

  std::optional<hardy::PoleTuple> truth;
  if (!truth_path.empty()) {
    truth = hardy::io::read_tuple(truth_path);
  } else if (recover && !builtin.empty()) {
    if (auto t = hardy::require_target(builtin); t.form) truth = t.form->tuple;
  }
  if (recover && !truth) throw hardy::ValidationError("recover needs --truth or a builtin with a known tuple");
  if (truth && truth->size() != degree) throw hardy::ValidationError("truth tuple length differs from --degree");

  const auto run = hardy::cafd_cgd_run(f, degree, cfg);
  hardy::io::write_model(out, run.model);

  const double err = hardy::l2_relative_error(f, hardy::synthesize(run.model, f.size()));
  std::printf("sweeps %zu  cgd %s after %zu iterations\n", run.search.sweeps,
              std::string(hardy::to_string(run.cgd.status)).c_str(), run.cgd.iterations);
  std::printf("l2_rel_error %.6g%%\n", 100.0 * err);
  if (truth) std::printf("tuple_distance %.6g\n", hardy::tuple_distance(run.model.tuple, *truth));
  std::printf("wall_time_s %.3f\n", run.wall_time_seconds);
  return run.cgd.status == hardy::CgdStatus::line_search_stall ? kStall : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational approximation in the Hardy space of the unit disk"};
  app.require_subcommand(1);

  InputArgs approx_in, recover_in, grid_in;
  hardy::RunConfig approx_cfg, recover_cfg;
  std::size_t approx_degree = 0, recover_degree = 0;
  std::string approx_out, recover_out, truth_path;

  auto* approx = app.add_subcommand("approximate", "fit an n-pole Blaschke form to a signal");
  add_input(approx, approx_in);
  approx->add_option("--degree", approx_degree, "number of poles")->required();
  approx->add_option("--out", approx_out, "model JSON")->required();
  add_run_flags(approx, approx_cfg);

  auto* recover = app.add_subcommand("recover", "approximate and score against a ground-truth tuple");
  add_input(recover, recover_in);
  recover->add_option("--degree", recover_degree, "number of poles")->required();
  recover->add_option("--out", recover_out, "model JSON")->required();
  recover->add_option("--truth", truth_path, "ground-truth tuple JSON");
  add_run_flags(recover, recover_cfg);

  std::string model_path, synth_out;
  std::size_t synth_samples = 1024;
  auto* synth = app.add_subcommand("synthesize", "sample a model on the circle");
  synth->add_option("--model", model_path, "model JSON")->required();
  synth->add_option("--samples", synth_samples, "sample count")->capture_default_str();
  synth->add_option("--out", synth_out, "signal CSV")->required();

  std::string suite, bench_out;
  std::size_t threads = 0;
  auto* bench = app.add_subcommand("benchmark", "run a benchmark suite");
  bench->add_option("--suite", suite, "suite name or descriptor JSON")->required();
  bench->add_option("--out", bench_out, "table CSV")->required();
  bench->add_option("--threads", threads, "concurrent runs (0: one per core)");

  std::size_t grid_radial = 100, grid_angular = 256;
  std::string grid_out;
  auto* grid = app.add_subcommand("eval-grid", "dump <f, e_z> over a polar grid");
  add_input(grid, grid_in);
  grid->add_option("--radial", grid_radial, "radial divisions M")->capture_default_str();
  grid->add_option("--angular", grid_angular, "angular divisions N")->capture_default_str();
  grid->add_option("--out", grid_out, "table CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*approx) return run_fit(approx_in, approx_degree, approx_cfg, approx_out, "", false, approx_in.builtin);
    if (*recover) {
      return run_fit(recover_in, recover_degree, recover_cfg, recover_out, truth_path, true, recover_in.builtin);
    }
    if (*synth) {
      if (synth_samples < 2 || !hardy::is_power_of_two(synth_samples)) {
        throw hardy::ValidationError("--samples must be a power of two >= 2");
      }
      hardy::io::write_signal_csv(synth_out, hardy::synthesize(hardy::io::read_model(model_path), synth_samples));
      return kOk;
    }
    if (*bench) {
      const auto rows = hardy::run_benchmark(hardy::load_suite(suite), threads);
      hardy::write_benchmark_csv(bench_out, rows);
      std::printf("%zu rows\n", rows.size());
      return kOk;
    }
    if (*grid) {
      const hardy::PolarGrid g(grid_radial, grid_angular);
      const auto f = load_input(grid_in);
      hardy::io::write_feval_csv(grid_out, g, hardy::feval_table(f, g));
      return kOk;
    }
  } catch (const hardy::SearchNonConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSearchCap;
  } catch (const hardy::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kOk;
}
