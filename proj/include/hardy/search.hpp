#pragma once

// Cyclic coordinate search for a starting pole tuple.
//
// Both searches run the same loop: with a_1..a_{n-1} fixed, reduce f to f_n,
// find the grid node z maximizing |<f_n, e_z>|, take it as a_n when it beats
// the current value by more than eta, rotate the tuple right by one and
// repeat until a full cycle makes no replacement. They differ only in the
// node set and in how the node values are produced: the polar search reads
// them off one FFT table per step, the rectangular baseline evaluates every
// node directly.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/feval.hpp"
#include "hardy/reduction.hpp"
#include "hardy/signal.hpp"
#include "hardy/takenaka.hpp"

namespace hardy {

struct SearchConfig {
  std::size_t radial = 100;   // M, radial step 1/M
  std::size_t angular = 256;  // N, angular step 2 pi / N
  double eta_rel = 1e-12;     // improvement tolerance as a fraction of ||f||^2
  std::size_t max_sweeps = 100;
  std::uint64_t seed = 0;

  void validate() const {
    PolarGrid(radial, angular);
    if (!(eta_rel > 0.0)) throw ValidationError("search: eta must be > 0");
    if (max_sweeps < 1) throw ValidationError("search: max_sweeps must be >= 1");
  }
};

struct RectGridConfig {
  double gap = 0.01;
  double eta_rel = 1e-12;
  std::size_t max_sweeps = 100;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(gap > 0.0 && gap < 1.0)) throw ValidationError("rectangular grid gap must lie in (0, 1)");
    if (!(eta_rel > 0.0)) throw ValidationError("search: eta must be > 0");
    if (max_sweeps < 1) throw ValidationError("search: max_sweeps must be >= 1");
  }
};

/// An accepted replacement: the tracked value before and after.
struct Replacement {
  double before = 0.0;
  double after = 0.0;
};

struct SearchReport {
  PoleTuple tuple;
  std::size_t sweeps = 0;
  std::vector<Replacement> replacements;
};

/// The outer loop hit max_sweeps. Carries the tuple held at that point.
class SearchNonConvergence : public Error {
 public:
  SearchNonConvergence(const std::string& what, PoleTuple best) : Error(what), best_(std::move(best)) {}
  const PoleTuple& best() const noexcept { return best_; }

 private:
  PoleTuple best_;
};

/// Nodes (j g, k g) with 0 < |z| < 1 - g, ordered by j then k. At g = 0.01
/// this gives 30752 nodes.
inline std::vector<Complex> rect_grid_nodes(double gap) {
  if (!(gap > 0.0 && gap < 1.0)) throw ValidationError("rectangular grid gap must lie in (0, 1)");
  // Divide by 1/gap when it is integral so nodes hit the decimal literals exactly.
  const double inv = 1.0 / gap;
  const bool integral = std::abs(inv - std::round(inv)) < 1e-9;
  auto coord = [&](long j) { return integral ? static_cast<double>(j) / std::round(inv) : static_cast<double>(j) * gap; };
  const long lim = static_cast<long>(std::ceil(inv));
  const double bound = 1.0 - gap;
  std::vector<Complex> nodes;
  for (long j = -lim; j <= lim; ++j) {
    for (long k = -lim; k <= lim; ++k) {
      if (j == 0 && k == 0) continue;
      if (integral) {
        // Integer test avoids boundary round-off: j^2 + k^2 < (K - 1)^2.
        const long kk = std::lround(inv) - 1;
        if (j * j + k * k >= kk * kk) continue;
      } else if (std::hypot(j * gap, k * gap) >= bound) {
        continue;
      }
      nodes.emplace_back(coord(j), coord(k));
    }
  }
  return nodes;
}

/// n points uniform in the disk of the given radius.
inline std::vector<Complex> random_disk_points(std::size_t n, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    const double r = radius * std::sqrt(unit(rng));
    const double t = 2.0 * std::numbers::pi * unit(rng);
    const Complex z = std::polar(r, t);
    bool distinct = true;
    for (const auto& p : pts) distinct = distinct && p != z;
    if (distinct) pts.push_back(z);
  }
  return pts;
}

namespace detail {

struct NodeChoice {
  double value = -1.0;
  Complex node{0.0, 0.0};
};

inline bool collides(Complex z, std::span<const Complex> fixed) {
  for (const auto& a : fixed) {
    if (std::abs(z - a) <= 1e-12) return true;
  }
  return false;
}

// Remainder with the first n-1 poles stripped.
inline Signal leading_remainder(const Signal& f, std::span<const Complex> poles) {
  Signal current = f;
  for (std::size_t j = 0; j + 1 < poles.size(); ++j) current = reduce_step(current, poles[j]);
  return current;
}

// `best_node(spec, fixed)` returns the node maximizing |<f_n, e_z>| among
// nodes that do not coincide with any pole in `fixed`.
template <typename BestNode>
SearchReport cyclic_search(const Signal& f, std::vector<Complex> poles, double eta, std::size_t max_sweeps,
                           BestNode&& best_node) {
  const std::size_t n = poles.size();
  SearchReport report;
  auto fixed = [&] { return std::span<const Complex>(poles.data(), n - 1); };
  auto tracked = [&](const Spectrum& s) { return std::abs(kernel_inner_product(s, poles[n - 1])); };

  Spectrum spec = spectrum(detail::leading_remainder(f, poles));
  double v = tracked(spec);
  std::size_t accepted = 1;
  while (accepted != 0) {
    if (report.sweeps == max_sweeps) {
      throw SearchNonConvergence("search did not settle within " + std::to_string(max_sweeps) + " sweeps",
                                 PoleTuple(poles));
    }
    ++report.sweeps;
    accepted = 0;
    for (std::size_t step = 0; step < n; ++step) {
      const NodeChoice choice = best_node(spec, fixed());
      if (choice.value > v + eta) {
        report.replacements.push_back({v, choice.value});
        poles[n - 1] = choice.node;
        v = choice.value;
        ++accepted;
      }
      std::rotate(poles.rbegin(), poles.rbegin() + 1, poles.rend());
      spec = spectrum(detail::leading_remainder(f, poles));
      v = tracked(spec);
    }
  }
  report.tuple = PoleTuple(std::move(poles));
  return report;
}

}  // namespace detail

/// Best polar-grid node for the spectrum of f_n; ties go to the first node in
/// row-major order.
inline detail::NodeChoice best_polar_node(const Spectrum& spec, const PolarGrid& grid,
                                          std::span<const Complex> fixed) {
  const auto table = feval_table(spec, grid);
  detail::NodeChoice best;
  const auto values = table.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::abs(values[i]);
    if (v > best.value) {
      const Complex z = table.node_at(i);
      if (detail::collides(z, fixed)) continue;
      best = {v, z};
    }
  }
  return best;
}

inline SearchReport its_search_report(const Signal& f, std::size_t n, const SearchConfig& cfg) {
  if (n < 1) throw ValidationError("search: degree must be >= 1");
  cfg.validate();
  const PolarGrid grid(cfg.radial, cfg.angular);
  std::mt19937_64 rng(cfg.seed);
  auto start = random_disk_points(n, 1.0 - grid.radial_step(), rng);
  const double eta = cfg.eta_rel * norm_sq(f);
  return detail::cyclic_search(f, std::move(start), eta, cfg.max_sweeps,
                               [&](const Spectrum& s, std::span<const Complex> fixed) {
                                 return best_polar_node(s, grid, fixed);
                               });
}

/// Initial tuple selection on the polar grid.
inline PoleTuple its_search(const Signal& f, std::size_t n, const SearchConfig& cfg) {
  return its_search_report(f, n, cfg).tuple;
}

inline SearchReport rect_cafd_search_report(const Signal& f, std::size_t n, const RectGridConfig& cfg) {
  if (n < 1) throw ValidationError("search: degree must be >= 1");
  cfg.validate();
  const auto nodes = rect_grid_nodes(cfg.gap);
  std::mt19937_64 rng(cfg.seed);
  auto start = random_disk_points(n, 1.0 - cfg.gap, rng);
  const double eta = cfg.eta_rel * norm_sq(f);
  return detail::cyclic_search(f, std::move(start), eta, cfg.max_sweeps,
                               [&](const Spectrum& s, std::span<const Complex> fixed) {
                                 detail::NodeChoice best;
                                 for (const auto& z : nodes) {
                                   const double v = std::abs(kernel_inner_product(s, z));
                                   if (v > best.value && !detail::collides(z, fixed)) best = {v, z};
                                 }
                                 return best;
                               });
}

/// Cyclic AFD over the rectangular grid, each node evaluated on its own.
inline PoleTuple rect_cafd_search(const Signal& f, std::size_t n, const RectGridConfig& cfg) {
  return rect_cafd_search_report(f, n, cfg).tuple;
}

}  // namespace hardy
