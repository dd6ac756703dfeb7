#pragma once

// Benchmark harness: named suites or a JSON descriptor expand to a list of
// runs; runs execute concurrently and the table keeps descriptor order.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hardy/errors.hpp"
#include "hardy/io.hpp"
#include "hardy/pipeline.hpp"
#include "hardy/search.hpp"

namespace hardy {

enum class Algorithm { cafd_cgd, rect_cafd };

inline std::string_view to_string(Algorithm a) { return a == Algorithm::cafd_cgd ? "cafd_cgd" : "rect_cafd"; }

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "cafd_cgd") return Algorithm::cafd_cgd;
  if (s == "rect_cafd") return Algorithm::rect_cafd;
  throw ValidationError("unknown algorithm '" + s + "'");
}

/// A fixed target run under each listed algorithm.
struct TargetRun {
  std::string target;
  std::optional<std::size_t> degree;  // target default when empty
};

/// `count` random forms of one degree, seeds seed, seed + 1, ...
struct RandomBatch {
  std::string name;
  std::size_t count = 20;
  std::size_t degree = 5;
  std::uint64_t seed = 0;
};

struct BenchmarkDescriptor {
  std::vector<TargetRun> targets;
  std::vector<RandomBatch> batches;
  std::vector<Algorithm> algorithms{Algorithm::cafd_cgd};
  RunConfig run;
  RectGridConfig rect;
};

struct BenchmarkRow {
  std::string target;
  std::string algorithm;
  std::size_t degree = 0;
  double l2_rel_error = 0.0;
  std::optional<double> tuple_distance;
  double wall_time_s = 0.0;
};

inline std::vector<std::string> suite_names() {
  return {"ex5_1", "ex5_2", "ex5_3", "ex5_4", "ex5_5", "ex5_6", "ex5_7_n5", "ex5_7_n6", "empty"};
}

inline BenchmarkDescriptor builtin_suite(const std::string& name) {
  BenchmarkDescriptor d;
  if (name == "ex5_1" || name == "ex5_2") {
    for (const char* f : {"_f1", "_f2", "_f3"}) d.targets.push_back({name + f, std::nullopt});
  } else if (name == "ex5_3" || name == "ex5_4" || name == "ex5_5" || name == "ex5_6") {
    d.targets.push_back({name, std::nullopt});
    d.algorithms = {Algorithm::cafd_cgd, Algorithm::rect_cafd};
  } else if (name == "ex5_7_n5" || name == "ex5_7_n6") {
    const std::size_t n = name.back() == '5' ? 5 : 6;
    d.batches.push_back({name, 20, n, 1000 * n});
  } else if (name != "empty") {
    throw ValidationError("unknown suite '" + name + "'");
  }
  return d;
}

/// JSON descriptor:
///   {"targets": [{"name": "ex5_3", "degree": 5}, ...],
///    "batches": [{"name": "b5", "count": 20, "degree": 5, "seed": 7}, ...],
///    "algorithms": ["cafd_cgd", "rect_cafd"],
///    "samples": 1024, "seed": 0, "radial": 100, "angular": 256}
/// Every key is optional.
inline BenchmarkDescriptor descriptor_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("benchmark descriptor must be a JSON object");
  BenchmarkDescriptor d;
  try {
    for (const auto& t : j.value("targets", nlohmann::json::array())) {
      TargetRun run;
      if (t.is_string()) {
        run.target = t.get<std::string>();
      } else {
        run.target = t.at("name").get<std::string>();
        if (t.contains("degree")) run.degree = t["degree"].get<std::size_t>();
      }
      require_target(run.target);
      d.targets.push_back(run);
    }
    for (const auto& b : j.value("batches", nlohmann::json::array())) {
      RandomBatch batch;
      batch.name = b.value("name", "batch" + std::to_string(d.batches.size()));
      batch.count = b.value("count", batch.count);
      batch.degree = b.value("degree", batch.degree);
      batch.seed = b.value("seed", batch.seed);
      if (batch.degree < 1) throw ValidationError("batch degree must be >= 1");
      d.batches.push_back(batch);
    }
    if (j.contains("algorithms")) {
      d.algorithms.clear();
      for (const auto& a : j["algorithms"]) d.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    d.run.samples = j.value("samples", d.run.samples);
    d.run.seed = j.value("seed", d.run.seed);
    d.run.search.radial = j.value("radial", d.run.search.radial);
    d.run.search.angular = j.value("angular", d.run.search.angular);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("benchmark descriptor: ") + e.what());
  }
  d.run.search.validate();
  return d;
}

/// A suite name, or a path to a JSON descriptor.
inline BenchmarkDescriptor load_suite(const std::string& name_or_path) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return builtin_suite(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw ValidationError("'" + name_or_path + "' is neither a suite name nor a readable descriptor file");
  return descriptor_from_json(io::detail::parse_json(in));
}

namespace detail {

struct PlannedRun {
  std::string label;
  Target target;
  std::size_t degree;
  Algorithm algorithm;
};

inline BenchmarkRow execute(const PlannedRun& p, const RunConfig& run, const RectGridConfig& rect) {
  const Signal f = p.target.sample(run.samples);
  BenchmarkRow row{p.label, std::string(to_string(p.algorithm)), p.degree, 0.0, std::nullopt, 0.0};
  BlaschkeModel model;
  if (p.algorithm == Algorithm::cafd_cgd) {
    const auto r = cafd_cgd_run(f, p.degree, run);
    model = r.model;
    row.wall_time_s = r.wall_time_seconds;
  } else {
    RectGridConfig cfg = rect;
    cfg.seed = run.seed;
    const auto t0 = std::chrono::steady_clock::now();
    const auto tuple = rect_cafd_search(f, p.degree, cfg);
    row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    model = project(f, tuple);
  }
  row.l2_rel_error = l2_relative_error(f, synthesize(model, run.samples));
  if (p.target.form && p.target.form->tuple.size() == p.degree) {
    row.tuple_distance = tuple_distance(model.tuple, p.target.form->tuple);
  }
  return row;
}

// Runs tasks with at most `width` in flight; results keep task order.
template <typename Task>
auto run_bounded(const std::vector<Task>& tasks, std::size_t width) {
  using Result = decltype(tasks.front()());
  std::vector<std::optional<Result>> results(tasks.size());
  std::vector<std::future<Result>> inflight;
  std::size_t next_collect = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (inflight.size() - next_collect == width) {
      results[next_collect] = inflight[next_collect].get();
      ++next_collect;
    }
    inflight.push_back(std::async(std::launch::async, tasks[i]));
  }
  for (; next_collect < inflight.size(); ++next_collect) results[next_collect] = inflight[next_collect].get();
  std::vector<Result> out;
  out.reserve(results.size());
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

inline double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace detail

/// Executes every run of the descriptor. Batches append three `stat` rows
/// (mean, max, sample std) per algorithm after their per-form rows.
inline std::vector<BenchmarkRow> run_benchmark(const BenchmarkDescriptor& d, std::size_t threads = 0) {
  d.run.search.validate();
  d.run.cgd.validate();
  d.rect.validate();
  if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());

  // Plan first, then run, then stitch stat rows in after each batch block.
  std::vector<detail::PlannedRun> plan;
  struct Block {
    std::size_t begin, end;
    std::optional<std::string> batch;
  };
  std::vector<Block> blocks;
  for (const auto& t : d.targets) {
    const auto target = require_target(t.target);
    const std::size_t begin = plan.size();
    for (auto alg : d.algorithms) plan.push_back({t.target, target, t.degree.value_or(target.default_degree), alg});
    blocks.push_back({begin, plan.size(), std::nullopt});
  }
  for (const auto& b : d.batches) {
    const std::size_t begin = plan.size();
    for (auto alg : d.algorithms) {
      for (std::size_t i = 0; i < b.count; ++i) {
        auto form = random_blaschke_form(b.degree, b.seed + i);
        const std::string label = b.name + "#" + std::to_string(i);
        auto target = blaschke_target(label, std::vector<Complex>(form.tuple.poles().begin(), form.tuple.poles().end()),
                                      form.coeffs);
        plan.push_back({label, std::move(target), b.degree, alg});
      }
    }
    blocks.push_back({begin, plan.size(), b.name});
  }

  std::vector<std::function<BenchmarkRow()>> tasks;
  for (const auto& p : plan) {
    tasks.emplace_back([&p, &d] { return detail::execute(p, d.run, d.rect); });
  }
  const auto rows = detail::run_bounded(tasks, threads);

  std::vector<BenchmarkRow> out;
  for (const auto& block : blocks) {
    out.insert(out.end(), rows.begin() + static_cast<std::ptrdiff_t>(block.begin),
               rows.begin() + static_cast<std::ptrdiff_t>(block.end));
    if (!block.batch) continue;
    for (auto alg : d.algorithms) {
      const std::string name(to_string(alg));
      std::vector<double> err, dist, wall;
      std::size_t degree = 0;
      for (std::size_t i = block.begin; i < block.end; ++i) {
        if (rows[i].algorithm != name) continue;
        degree = rows[i].degree;
        err.push_back(rows[i].l2_rel_error);
        dist.push_back(rows[i].tuple_distance.value_or(std::numeric_limits<double>::quiet_NaN()));
        wall.push_back(rows[i].wall_time_s);
      }
      if (err.empty()) continue;
      auto mean = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
      };
      auto max = [](const std::vector<double>& xs) { return *std::max_element(xs.begin(), xs.end()); };
      const std::string prefix = "stat:" + *block.batch + ":";
      out.push_back({prefix + "mean", name, degree, mean(err), mean(dist), mean(wall)});
      out.push_back({prefix + "max", name, degree, max(err), max(dist), max(wall)});
      out.push_back({prefix + "std", name, degree, detail::sample_std(err), detail::sample_std(dist),
                     detail::sample_std(wall)});
    }
  }
  return out;
}

inline void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  out << "target,algorithm,degree,l2_rel_error,tuple_distance,wall_time_s\n";
  for (const auto& r : rows) {
    out << r.target << ',' << r.algorithm << ',' << r.degree << ',' << io::detail::format_double(r.l2_rel_error) << ','
        << (r.tuple_distance ? io::detail::format_double(*r.tuple_distance) : std::string()) << ','
        << io::detail::format_double(r.wall_time_s) << '\n';
  }
}

inline void write_benchmark_csv(const std::string& path, const std::vector<BenchmarkRow>& rows) {
  auto out = io::detail::open_out(path);
  write_benchmark_csv(out, rows);
}

}  // namespace hardy
