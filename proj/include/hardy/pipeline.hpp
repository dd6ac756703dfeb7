#pragma once

// End-to-end driver: polar-grid search for a starting tuple, gradient
// refinement, final projection. Also the recovery metrics, the random
// Blaschke-form generator and the registry of named targets.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hardy/cgd.hpp"
#include "hardy/errors.hpp"
#include "hardy/feval.hpp"
#include "hardy/reduction.hpp"
#include "hardy/search.hpp"
#include "hardy/signal.hpp"
#include "hardy/takenaka.hpp"

namespace hardy {

struct RunConfig {
  std::size_t degree = 1;
  SearchConfig search;
  CgdConfig cgd;
  std::size_t samples = 1024;
  std::uint64_t seed = 0;

  void validate() const {
    if (degree < 1) throw ValidationError("degree must be >= 1");
    if (samples < 2 || !is_power_of_two(samples)) throw ValidationError("sample count must be a power of two >= 2");
    search.validate();
    cgd.validate();
  }
};

struct CafdCgdRun {
  BlaschkeModel model;
  SearchReport search;
  CgdReport cgd;
  /// Residual of the projection on the search tuple, before refinement.
  double search_residual = 0.0;
  double wall_time_seconds = 0.0;
};

/// Search then refine then project. The refinement only ever accepts
/// energy-increasing steps, so a stalled line search leaves the best tuple
/// found so far (the search tuple when no step was accepted).
inline CafdCgdRun cafd_cgd_run(const Signal& f, std::size_t n, const RunConfig& cfg) {
  if (n < 1) throw ValidationError("degree must be >= 1");
  cfg.search.validate();
  cfg.cgd.validate();
  SearchConfig search_cfg = cfg.search;
  search_cfg.seed = cfg.seed;

  CafdCgdRun run;
  const auto t0 = std::chrono::steady_clock::now();
  run.search = its_search_report(f, n, search_cfg);
  run.cgd = cgd_refine(f, run.search.tuple, cfg.cgd);
  run.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  run.search_residual = project(f, run.search.tuple).residual_error;
  run.model = project(f, run.cgd.tuple);
  return run;
}

inline BlaschkeModel cafd_cgd(const Signal& f, std::size_t n, const RunConfig& cfg) {
  return cafd_cgd_run(f, n, cfg).model;
}

namespace detail {

// Minimum-cost perfect matching on a square cost matrix (Hungarian method,
// potentials form). Returns the total cost.
inline double assignment_cost(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
  return total;
}

inline double brute_force_cost(const std::vector<std::vector<double>>& cost) {
  std::vector<std::size_t> perm(cost.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) total += cost[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline std::vector<std::vector<double>> squared_distance_matrix(std::span<const Complex> u,
                                                                std::span<const Complex> v) {
  std::vector<std::vector<double>> cost(u.size(), std::vector<double>(v.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) cost[i][j] = std::norm(u[i] - v[j]);
  }
  return cost;
}

}  // namespace detail

enum class DistanceMethod { automatic, brute_force, assignment };

/// min over permutations P of ||P u - v||. Exhaustive for n <= 8, optimal
/// assignment above that.
inline double tuple_distance(std::span<const Complex> u, std::span<const Complex> v,
                             DistanceMethod method = DistanceMethod::automatic) {
  if (u.size() != v.size()) throw ValidationError("tuple_distance: tuples differ in length");
  if (u.empty()) return 0.0;
  const auto cost = detail::squared_distance_matrix(u, v);
  const bool brute = method == DistanceMethod::brute_force || (method == DistanceMethod::automatic && u.size() <= 8);
  return std::sqrt(std::max(0.0, brute ? detail::brute_force_cost(cost) : detail::assignment_cost(cost)));
}

inline double tuple_distance(const PoleTuple& u, const PoleTuple& v) { return tuple_distance(u.poles(), v.poles()); }

/// ||f - approx|| / ||f|| in the discrete H^2 norm.
inline double l2_relative_error(const Signal& f, const Signal& approx) {
  if (f.size() != approx.size()) throw ValidationError("l2_relative_error: length mismatch");
  const double nf = norm(f);
  if (!(nf > 0.0)) throw ValidationError("l2_relative_error: reference signal has zero norm");
  return norm(f - approx) / nf;
}

struct BlaschkeForm {
  PoleTuple tuple;
  std::vector<Complex> coeffs;
};

/// Poles uniform in the disk of radius 0.9 with pairwise distance >= 0.05,
/// coefficients with real and imaginary parts uniform in [-1, 1].
inline BlaschkeForm random_blaschke_form(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_blaschke_form: degree must be >= 1");
  constexpr double kRadius = 0.9;
  constexpr double kMinSeparation = 0.05;
  constexpr std::size_t kMaxDraws = 100000;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::vector<Complex> poles;
  std::size_t draws = 0;
  while (poles.size() < n) {
    if (++draws > kMaxDraws) throw Error("random_blaschke_form: could not place poles with the required separation");
    const Complex z = std::polar(kRadius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    bool ok = true;
    for (const auto& p : poles) ok = ok && std::abs(p - z) >= kMinSeparation;
    if (ok) poles.push_back(z);
  }
  std::vector<Complex> coeffs(n);
  for (auto& c : coeffs) {
    const double re = sym(rng);
    c = Complex(re, sym(rng));
  }
  return {PoleTuple(std::move(poles)), std::move(coeffs)};
}

/// A named test function. Blaschke-form targets also carry their tuple and
/// coefficients.
struct Target {
  std::string name;
  std::function<Complex(Complex)> fn;
  std::size_t default_degree = 1;
  std::optional<BlaschkeForm> form;

  Signal sample(std::size_t n) const { return sample_on_circle(fn, n); }
};

inline Target blaschke_target(std::string name, std::vector<Complex> poles, std::vector<Complex> coeffs) {
  BlaschkeForm form{PoleTuple(std::move(poles)), std::move(coeffs)};
  const std::size_t degree = form.tuple.size();
  auto fn = [form](Complex z) {
    const Complex pt[1] = {z};
    return evaluate_blaschke_form(form.tuple, form.coeffs, pt)[0];
  };
  return Target{std::move(name), std::move(fn), degree, std::move(form)};
}

/// Registered targets: the closed-form test functions, the fixed Blaschke
/// forms used for tuple recovery and the monomials tau_pow_<k>.
inline std::optional<Target> find_target(const std::string& name) {
  using namespace std::complex_literals;
  static const std::map<std::string, std::function<Target()>> registry = {
      {"ex5_1_f1", [] { return Target{"ex5_1_f1", [](Complex z) { return 1.0 / (2.0 + std::pow(z, 4)); }, 6, {}}; }},
      {"ex5_1_f2", [] { return Target{"ex5_1_f2", [](Complex z) { return std::exp(z * z); }, 6, {}}; }},
      {"ex5_1_f3", [] { return Target{"ex5_1_f3", [](Complex z) { return std::log(2.0 + z * z); }, 6, {}}; }},
      {"ex5_2_f1",
       [] {
         return Target{"ex5_2_f1",
                       [](Complex z) { return 1.0 + z * z + std::pow(z, 4) + 1.0 / (3.0 + z * z); }, 10, {}};
       }},
      {"ex5_2_f2", [] { return Target{"ex5_2_f2", [](Complex z) { return std::cos(z * z); }, 10, {}}; }},
      {"ex5_2_f3",
       [] { return Target{"ex5_2_f3", [](Complex z) { return std::cos(6.0 * z * z) / (2.0 + z * z); }, 30, {}}; }},
      {"ex5_3",
       [] {
         return blaschke_target("ex5_3",
                                {-0.475 + 0.305i, -0.180 + 0.715i, 0.260 - 0.730i, 0.540 + 0.360i, -0.485 - 0.215i},
                                {-0.5861 - 0.04445i, 0.2428 - 0.6878i, 0.4423 - 0.3309i, -0.2703 - 0.8217i,
                                 -0.8085 + 0.3774i});
       }},
      {"ex5_4",
       [] {
         return blaschke_target("ex5_4", {-0.4900 - 0.8000i, 0.3100 + 0.1400i, -0.9400 - 0.2900i, 0.2300 - 0.6900i},
                                {1.0470 + 0.55587i, -0.2269 - 1.1203i, -0.1625 - 1.5327i, 0.6901 - 1.0979i});
       }},
      {"ex5_5",
       [] {
         return blaschke_target("ex5_5", {0.6800 + 0.5200i, 0.3900 + 0.8100i, -0.1300 - 0.8700i, 0.5500 - 0.1000i},
                                {0.1440 + 0.5197i, -1.6387 - 0.0142i, -0.7601 - 1.1555i, -0.8188 - 0.0095i});
       }},
      {"ex5_6",
       [] {
         return blaschke_target("ex5_6", {-0.1800 + 0.7700i, -0.0200 - 0.1800i, 0.1000 + 0.2400i, 0.1800 - 0.5300i},
                                {0.1097 + 0.4754i, 1.1287 + 1.1741i, -0.2900 + 0.1269i, 1.2616 - 0.6568i});
       }},
  };
  if (auto it = registry.find(name); it != registry.end()) return it->second();
  const std::string prefix = "tau_pow_";
  if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
    const auto digits = name.substr(prefix.size());
    if (std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) &&
        digits.size() <= 4) {
      const int k = std::stoi(digits);
      return Target{name, [k](Complex z) { return std::pow(z, k); }, 1, {}};
    }
  }
  return std::nullopt;
}

inline Target require_target(const std::string& name) {
  auto t = find_target(name);
  if (!t) throw ValidationError("unknown target '" + name + "'");
  return *std::move(t);
}

inline std::vector<std::string> target_names() {
  return {"ex5_1_f1", "ex5_1_f2", "ex5_1_f3", "ex5_2_f1", "ex5_2_f2", "ex5_2_f3",
          "ex5_3",    "ex5_4",    "ex5_5",    "ex5_6",    "tau_pow_<k>"};
}

}  // namespace hardy
