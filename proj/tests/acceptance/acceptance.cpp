// Acceptance checks. Run with a criterion id (1..10 or "ordering") to run a
// single check, or with no argument to run them all. Prints one PASS/FAIL
// line per check; the exit status is nonzero if any check failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace hardy;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double time_of(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return seconds_since(t0);
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Outcome orthonormality() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  const double t = time_of([&] {
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + trial % 6;
      const PoleTuple tuple(oracle::random_tuple(rng, n, 0.9, 1e-3));
      std::vector<Signal> b;
      for (std::size_t k = 1; k <= n; ++k) b.push_back(tm_signal(tuple, k, 1024));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          worst = std::max(worst, std::abs(inner_product(b[j], b[k]) - (j == k ? 1.0 : 0.0)));
    }
  });
  return {worst <= 1e-8 && t < 10.0, fmt("max deviation %.3g, %.2f s", worst, t)};
}

Outcome feval_oracle() {
  std::mt19937_64 rng(202);
  const auto start = std::chrono::steady_clock::now();
  const PolarGrid grid(16, 64);
  double worst = 0.0;
  double t = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = oracle::random_smooth(rng, 0.5);
    const auto f = sample_on_circle(g, 64);
    std::optional<InnerProductTable> table;
    t += time_of([&] { table.emplace(feval_table(f, grid)); });
    // Dense trapezoid rule for <f, e_z>, with f taken from its analytic form.
    constexpr std::size_t dense = 8192;
    std::vector<Complex> w(dense), gw(dense);
    for (std::size_t j = 0; j < dense; ++j) {
      w[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / dense);
      gw[j] = g(w[j]);
    }
    for (std::size_t m = 1; m <= grid.rings(); ++m) {
      for (std::size_t n = 1; n <= grid.angular_divisions(); ++n) {
        const Complex z = grid.node(m, n);
        Complex ref{};
        for (std::size_t j = 0; j < dense; ++j) ref += gw[j] * std::conj(oracle::szego(z, w[j]));
        worst = std::max(worst, std::abs(table->at(m, n) - ref / static_cast<double>(dense)));
      }
    }
  }
  const double total = seconds_since(start);
  return {worst <= 1e-9 && total < 5.0, fmt("max deviation %.3g, tables %.3f s, total %.2f s", worst, t, total)};
}

Outcome gradient_check() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto f = sample_on_circle(oracle::random_smooth(rng, 0.8), 1024);
    const auto poles = oracle::random_tuple(rng, n, 0.85, 0.05);
    const auto eg = energy_gradient(f, PoleTuple(poles));
    for (std::size_t l = 0; l < n; ++l) {
      auto at = [&](Complex d) {
        auto b = poles;
        b[l] += d;
        return energy(f, PoleTuple(b));
      };
      const double h = 1e-6;
      const Complex numeric((at(h) - at(-h)) / (2 * h), (at(Complex(0, h)) - at(Complex(0, -h))) / (2 * h));
      // d(-E)/dz = conj(g) relates to the real partials of E by dE/dx = -2 Re g, dE/dy = 2 Im g.
      const Complex analytic(-2.0 * eg.gradient[l].real(), 2.0 * eg.gradient[l].imag());
      worst = std::max(worst, std::abs(analytic - numeric) / std::max(std::abs(numeric), 1e-3));
    }
  }
  return {worst <= 1e-5, fmt("max relative error %.3g", worst)};
}

Outcome monomial_maximizer() {
  double worst = 0.0;
  std::string detail;
  for (int k : {1, 2, 5}) {
    const auto f = require_target("tau_pow_" + std::to_string(k)).sample(1024);
    RunConfig cfg;
    const auto model = cafd_cgd(f, 1, cfg);
    const double dev = std::abs(std::abs(model.tuple[0]) - std::sqrt(k / (k + 1.0)));
    worst = std::max(worst, dev);
    detail += fmt("k=%d |a|=%.9f ", k, std::abs(model.tuple[0]));
  }
  return {worst <= 1e-6, detail + fmt("max deviation %.3g", worst)};
}

struct Recovery {
  CafdCgdRun run;
  double distance = 0.0;
  double error = 0.0;
  double seconds = 0.0;
};

Recovery recover(const std::string& name, const RunConfig& cfg) {
  const auto target = require_target(name);
  const auto f = target.sample(cfg.samples);
  Recovery r;
  r.seconds = time_of([&] { r.run = cafd_cgd_run(f, target.form->tuple.size(), cfg); });
  r.distance = tuple_distance(r.run.model.tuple, target.form->tuple);
  r.error = l2_relative_error(f, synthesize(r.run.model, cfg.samples));
  return r;
}

Outcome example53() {
  RunConfig cfg;
  cfg.search.radial = 100;
  cfg.search.angular = 128;
  const auto r = recover("ex5_3", cfg);
  return {r.distance <= 5e-3 && r.error <= 5e-4 && r.seconds < 60.0,
          fmt("distance %.3g, error %.3g%%, %s, %.2f s", r.distance, 100 * r.error,
              std::string(to_string(r.run.cgd.status)).c_str(), r.seconds)};
}

Outcome example55() {
  const auto r = recover("ex5_5", RunConfig{});
  const auto target = require_target("ex5_5");
  const auto rect = rect_cafd_search(target.sample(1024), 4, RectGridConfig{});
  const double rect_distance = tuple_distance(rect, target.form->tuple);
  return {r.distance <= 1e-3 && rect_distance == 0.0,
          fmt("distance %.3g, rectangular grid distance %.3g", r.distance, rect_distance)};
}

Outcome example56() {
  const auto r = recover("ex5_6", RunConfig{});
  return {r.distance <= 0.01 && r.error <= 5e-4, fmt("distance %.3g, error %.3g%%", r.distance, 100 * r.error)};
}

Outcome example51() {
  const std::pair<const char*, double> cases[] = {{"ex5_1_f1", 5e-4}, {"ex5_1_f2", 5e-3}, {"ex5_1_f3", 5e-3}};
  bool pass = true;
  std::string detail;
  for (const auto& [name, limit] : cases) {
    const auto f = require_target(name).sample(1024);
    const auto model = cafd_cgd(f, 6, RunConfig{});
    const double err = l2_relative_error(f, synthesize(model, 1024));
    pass = pass && err <= limit;
    detail += fmt("%s %.4g%% (limit %.2g%%) ", name, 100 * err, 100 * limit);
  }
  return {pass, detail};
}

Outcome feval_scaling() {
  std::mt19937_64 rng(909);
  const auto spec = spectrum(sample_on_circle(oracle::random_smooth(rng, 0.9), 1024));
  auto best_time = [&](std::size_t m) {
    const PolarGrid grid(m, 1024);
    double best = 1e300;
    for (int rep = 0; rep < 7; ++rep) best = std::min(best, time_of([&] { (void)feval_table(spec, grid); }));
    return best;
  };
  (void)best_time(64);  // warm FFT plans
  std::vector<double> times;
  for (std::size_t m : {64u, 128u, 256u, 512u}) times.push_back(best_time(m));
  bool pass = true;
  std::string detail;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double ratio = times[i] / times[i - 1];
    pass = pass && ratio <= 2.2;
    detail += fmt("x%.2f ", ratio);
  }
  return {pass, detail + fmt("(M=64: %.4f s)", times[0])};
}

Outcome example54() {
  RunConfig cfg;
  cfg.cgd.max_iters = 50000;
  const auto target = require_target("ex5_4");
  const auto f = target.sample(1024);
  try {
    const auto run = cafd_cgd_run(f, 4, cfg);
    bool valid = run.model.tuple.size() == 4 && std::isfinite(run.model.residual_error);
    for (const auto& c : run.model.coeffs) valid = valid && std::isfinite(c.real()) && std::isfinite(c.imag());
    for (const auto& a : run.model.tuple.poles()) valid = valid && std::abs(a) < 1.0;
    const bool terminated =
        run.cgd.status == CgdStatus::converged || run.cgd.status == CgdStatus::line_search_stall;
    return {valid && terminated,
            fmt("%s after %zu iterations, error %.3g%%", std::string(to_string(run.cgd.status)).c_str(),
                run.cgd.iterations, 100 * l2_relative_error(f, synthesize(run.model, 1024)))};
  } catch (const std::exception& e) {
    return {false, std::string("threw: ") + e.what()};
  }
}

Outcome search_ordering() {
  // One coordinate maximization over each grid, compared per node.
  const auto spec = spectrum(require_target("ex5_3").sample(1024));
  const PolarGrid grid(100, 256);
  const auto nodes = rect_grid_nodes(0.01);
  double polar = 1e300;
  double rect = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    polar = std::min(polar, time_of([&] { (void)best_polar_node(spec, grid, {}); }));
    rect = std::min(rect, time_of([&] {
                      double best = 0.0;
                      for (const auto& z : nodes) best = std::max(best, std::abs(kernel_inner_product(spec, z)));
                      if (!(best > 0.0)) std::abort();
                    }));
  }
  const double polar_per = polar / static_cast<double>(grid.node_count());
  const double rect_per = rect / static_cast<double>(nodes.size());
  return {polar_per < rect_per, fmt("polar %.3g s/node, rectangular %.3g s/node", polar_per, rect_per)};
}

struct Check {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
};

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"1", "orthonormality", orthonormality},
      {"2", "feval matches quadrature", feval_oracle},
      {"3", "gradient vs finite differences", gradient_check},
      {"4", "monomial maximizer", monomial_maximizer},
      {"5", "ex5_3 recovery", example53},
      {"6", "ex5_5 recovery", example55},
      {"7", "ex5_6 recovery", example56},
      {"8", "ex5_1 approximation", example51},
      {"9", "feval scaling", feval_scaling},
      {"10", "ex5_4 terminates", example54},
      {"ordering", "polar search faster than rectangular scan", search_ordering},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  int failures = 0;
  bool ran = false;
  for (const auto& c : checks()) {
    if (!only.empty() && c.id != only) continue;
    ran = true;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s criterion %s (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  if (!ran) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
