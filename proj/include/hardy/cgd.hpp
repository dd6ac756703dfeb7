#pragma once

// Gradient ascent on the energy E over the open polydisk with backtracking.
//
// The ascent direction for pole l is conj(dE/dz_l). Each outer iteration
// starts from the largest step that keeps every pole inside the closed disk
// and inside the trust region of radius r, then shrinks by beta until
//   E(a + s g) >= E(a) + (s / 2) ||g||^2
// holds and the trial tuple is feasible.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/reduction.hpp"
#include "hardy/signal.hpp"
#include "hardy/takenaka.hpp"

namespace hardy {

struct CgdConfig {
  double beta = 0.5;
  double neighbor_radius = 0.05;
  double tol = 1e-18;  // stop once ||grad E||^2 <= tol
  std::size_t max_iters = 500;
  std::size_t max_backtracks = 60;
  /// Upper bound on the initial trial step of every iteration. Unbounded by
  /// default, leaving the boundary and trust-region limits in charge.
  double step_ceiling = std::numeric_limits<double>::infinity();
  /// Width of the round-off band of E, in units of eps * ||f||^2.
  double noise_ulps = 64.0;

  void validate() const {
    if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("cgd: beta must lie in (0, 1)");
    if (!(neighbor_radius > 0.0)) throw ValidationError("cgd: neighbor radius must be > 0");
    if (!(tol > 0.0)) throw ValidationError("cgd: tolerance must be > 0");
    if (!(step_ceiling > 0.0)) throw ValidationError("cgd: step ceiling must be > 0");
  }
};

enum class CgdStatus { converged, iteration_cap, line_search_stall };

inline std::string_view to_string(CgdStatus s) {
  switch (s) {
    case CgdStatus::converged: return "converged";
    case CgdStatus::iteration_cap: return "iteration-cap";
    case CgdStatus::line_search_stall: return "line-search-stall";
  }
  return "unknown";
}

struct CgdReport {
  PoleTuple tuple;
  std::size_t iterations = 0;
  double final_gradient_norm_sq = 0.0;
  std::vector<double> energy_trace;
  CgdStatus status = CgdStatus::converged;
};

inline constexpr double kMaxPoleModulus = 1.0 - 1e-9;
inline constexpr double kMinPoleSeparation = 1e-12;

/// Ascent direction conj(dE/dz_l) = -conj(d(-E)/dz_l).
inline std::vector<Complex> ascent_direction(const EnergyGradient& eg) {
  std::vector<Complex> dir(eg.gradient.size());
  for (std::size_t l = 0; l < dir.size(); ++l) dir[l] = -std::conj(eg.gradient[l]);
  return dir;
}

namespace detail {

// Largest s > 0 with max_l |a_l + s d_l| = 1.
inline double step_to_boundary(std::span<const Complex> a, std::span<const Complex> d) {
  double s = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < a.size(); ++l) {
    const double dd = std::norm(d[l]);
    if (dd == 0.0) continue;
    // |d|^2 s^2 + 2 Re(conj(a) d) s + |a|^2 - 1 = 0, positive root.
    const double b = (std::conj(a[l]) * d[l]).real();
    const double c = std::norm(a[l]) - 1.0;
    const double disc = std::sqrt(b * b - dd * c);
    // Stable form of (-b + disc) / dd given c < 0.
    const double root = b > 0.0 ? -c / (b + disc) : (disc - b) / dd;
    s = std::min(s, root);
  }
  return s;
}

inline bool feasible(std::span<const Complex> c) {
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (!(std::abs(c[j]) <= kMaxPoleModulus)) return false;
    for (std::size_t k = j + 1; k < c.size(); ++k) {
      if (std::abs(c[j] - c[k]) <= kMinPoleSeparation) return false;
    }
  }
  return true;
}

}  // namespace detail

inline CgdReport cgd_refine(const Signal& f, const PoleTuple& start, const CgdConfig& cfg) {
  cfg.validate();
  if (!detail::feasible(start.poles())) {
    throw ValidationError("cgd: start tuple must lie strictly inside the disk with distinct poles");
  }
  CgdReport report;
  std::vector<Complex> a(start.poles().begin(), start.poles().end());
  auto eg = energy_gradient(f, start);
  double e = eg.value;
  auto dir = ascent_direction(eg);
  auto grad_norm_sq = [](const std::vector<Complex>& d) {
    double acc = 0.0;
    for (const auto& v : d) acc += std::norm(v);
    return acc;
  };
  double g2 = grad_norm_sq(dir);
  report.energy_trace.push_back(e);
  const double noise = cfg.noise_ulps * std::numeric_limits<double>::epsilon() * std::max(e, norm_sq(f));

  while (g2 > cfg.tol) {
    if (report.iterations == cfg.max_iters) {
      report.status = CgdStatus::iteration_cap;
      break;
    }
    double dmax = 0.0;
    for (const auto& v : dir) dmax = std::max(dmax, std::abs(v));
    double s = std::min({detail::step_to_boundary(a, dir), cfg.neighbor_radius / dmax, cfg.step_ceiling});

    bool accepted = false;
    std::optional<EnergyGradient> pending;
    std::vector<Complex> c(a.size());
    double ec = 0.0;
    for (std::size_t bt = 0; bt <= cfg.max_backtracks; ++bt, s *= cfg.beta) {
      for (std::size_t l = 0; l < a.size(); ++l) c[l] = a[l] + s * dir[l];
      // The step no longer moves any pole: nothing left to try.
      if (c == a) break;
      if (!detail::feasible(c)) continue;
      ec = energy(f, PoleTuple(c));
      if (std::abs(ec - e) <= noise && 0.5 * s * g2 <= noise) {
        // Inside the round-off band of E the value test carries no
        // information; require a smaller gradient instead.
        auto trial = energy_gradient(f, PoleTuple(c));
        if (grad_norm_sq(ascent_direction(trial)) < g2) {
          accepted = true;
          pending = std::move(trial);
          break;
        }
      } else if (ec >= e + 0.5 * s * g2 && ec > e) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      report.status = CgdStatus::line_search_stall;
      break;
    }
    a = c;
    e = ec;
    ++report.iterations;
    report.energy_trace.push_back(e);
    eg = pending ? *std::move(pending) : energy_gradient(f, PoleTuple(a));
    dir = ascent_direction(eg);
    g2 = grad_norm_sq(dir);
  }
  report.tuple = PoleTuple(std::move(a));
  report.final_gradient_norm_sq = g2;
  return report;
}

}  // namespace hardy
