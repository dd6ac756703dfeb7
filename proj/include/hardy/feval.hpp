#pragma once

// Polar grids and the FFT evaluation of <f, e_z> over every grid node.
//
// For z = r e^{it}, <f, e_z> = sqrt(1 - r^2) sum_k r^k f^(k) e^{ikt}, so one
// ring of the grid is a scaled spectrum pushed through a single inverse FFT.
// Series are truncated at the N available coefficients.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/fft.hpp"
#include "hardy/signal.hpp"

namespace hardy {

/// Nodes z = m eps exp(2 pi i n / N) with eps = 1/M, 1 <= m < M, 1 <= n <= N.
class PolarGrid {
 public:
  PolarGrid(std::size_t radial, std::size_t angular) : radial_(radial), angular_(angular) {
    if (radial_ <= 1 || angular_ <= 1) {
      throw ValidationError("polar grid needs M > 1 and N > 1, got M=" + std::to_string(radial_) +
                            " N=" + std::to_string(angular_));
    }
    if (!is_power_of_two(angular_)) {
      throw ValidationError("polar grid angular count must be a power of two, got " + std::to_string(angular_));
    }
  }

  std::size_t radial_divisions() const noexcept { return radial_; }
  std::size_t angular_divisions() const noexcept { return angular_; }
  double radial_step() const noexcept { return 1.0 / static_cast<double>(radial_); }
  std::size_t rings() const noexcept { return radial_ - 1; }
  std::size_t node_count() const noexcept { return rings() * angular_; }

  double radius(std::size_t m) const noexcept { return static_cast<double>(m) * radial_step(); }

  /// Node (m, n), both 1-based as in the grid definition.
  Complex node(std::size_t m, std::size_t n) const {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(angular_);
    return std::polar(radius(m), angle);
  }

  /// All nodes in row-major (radius-major, then angle) order.
  std::vector<Complex> nodes() const {
    std::vector<Complex> out;
    out.reserve(node_count());
    for (std::size_t m = 1; m < radial_; ++m) {
      for (std::size_t n = 1; n <= angular_; ++n) out.push_back(node(m, n));
    }
    return out;
  }

 private:
  std::size_t radial_;
  std::size_t angular_;
};

/// F(m, n) = <f, e_z> at every node of a PolarGrid, row-major.
class InnerProductTable {
 public:
  InnerProductTable(PolarGrid grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.node_count()) throw ValidationError("table size does not match its grid");
  }

  const PolarGrid& grid() const noexcept { return grid_; }
  std::size_t rows() const noexcept { return grid_.rings(); }
  std::size_t cols() const noexcept { return grid_.angular_divisions(); }
  std::span<const Complex> values() const noexcept { return values_; }

  /// Entry at node (m, n), 1-based.
  const Complex& at(std::size_t m, std::size_t n) const { return values_[(m - 1) * cols() + (n - 1)]; }

  /// Node of a flat row-major index.
  Complex node_at(std::size_t flat) const { return grid_.node(flat / cols() + 1, flat % cols() + 1); }

 private:
  PolarGrid grid_;
  std::vector<Complex> values_;
};

/// R_r: coeffs[k] -> r^k coeffs[k].
inline Spectrum scale_spectrum(const Spectrum& s, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("scale_spectrum: r must lie in [0, 1]");
  std::vector<Complex> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    out[k] = (k == 0 ? 1.0 : std::pow(r, static_cast<double>(k))) * s[k];
  }
  return Spectrum(std::move(out));
}

/// f(z) = sum_{k<N} f^(k) z^k for |z| < 1, by Horner's rule.
inline Complex eval_interior(const Spectrum& s, Complex z) {
  if (!(std::abs(z) < 1.0)) throw ValidationError("eval_interior: point must satisfy |z| < 1");
  Complex acc{0.0, 0.0};
  for (std::size_t k = s.size(); k-- > 0;) acc = acc * z + s[k];
  return acc;
}

inline Complex eval_interior(const Signal& f, Complex z) { return eval_interior(spectrum(f), z); }

/// <f, e_a> = sqrt(1 - |a|^2) f(a), with f(a) from the truncated series. This
/// is the same quantity every polar-grid table entry holds.
inline Complex kernel_inner_product(const Spectrum& s, Complex a) {
  return std::sqrt(1.0 - std::norm(a)) * eval_interior(s, a);
}

namespace detail {

// One ring: sqrt(1 - r^2) * IFFT of R_r(spec) folded (or zero padded) onto
// `angular` bins. Output index n-1 holds the node at angle 2 pi n / angular.
inline void feval_ring(const Spectrum& spec, double r, std::size_t angular, std::span<Complex> out) {
  std::vector<Complex> folded(angular, Complex{0.0, 0.0});
  double pw = 1.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (pw < 1e-300) break;
    folded[k % angular] += pw * spec[k];
    pw *= r;
  }
  const auto ring = fft_inverse(folded);
  const double weight = std::sqrt(1.0 - r * r);
  for (std::size_t n = 1; n <= angular; ++n) out[n - 1] = weight * ring[n % angular];
}

}  // namespace detail

/// Evaluates <f, e_z> on every node of the grid in O(M (N + A log A)) for
/// N samples and A angular divisions. When A equals N this is exactly one
/// scaled inverse FFT per ring; otherwise the scaled spectrum is folded onto
/// A bins (A < N) or zero padded (A > N), which leaves the truncated series
/// value at each node unchanged. Rings are independent of one another.
inline InnerProductTable feval_table(const Spectrum& spec, const PolarGrid& grid) {
  if (!is_power_of_two(spec.size()) || spec.size() < 2) {
    throw ValidationError("feval_table: spectrum length must be a power of two");
  }
  const std::size_t cols = grid.angular_divisions();
  std::vector<Complex> values(grid.node_count());
  for (std::size_t m = 1; m <= grid.rings(); ++m) {
    detail::feval_ring(spec, grid.radius(m), cols, std::span(values).subspan((m - 1) * cols, cols));
  }
  return InnerProductTable(grid, std::move(values));
}

inline InnerProductTable feval_table(const Signal& f, const PolarGrid& grid) {
  return feval_table(spectrum(f), grid);
}

}  // namespace hardy
