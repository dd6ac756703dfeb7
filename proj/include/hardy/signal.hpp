#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/fft.hpp"

namespace hardy {

/// N equidistant samples of a function on the unit circle, sample j taken at
/// t_j = 2 pi j / N. N is a power of two (at least 2) and every sample is finite.
class Signal {
 public:
  explicit Signal(std::vector<Complex> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2 || !is_power_of_two(samples_.size())) {
      throw ValidationError("signal length must be a power of two >= 2, got " +
                            std::to_string(samples_.size()));
    }
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      if (!std::isfinite(samples_[j].real()) || !std::isfinite(samples_[j].imag())) {
        throw ValidationError("signal sample " + std::to_string(j) + " is not finite");
      }
    }
  }

  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const Complex> samples() const noexcept { return samples_; }
  const Complex& operator[](std::size_t j) const { return samples_[j]; }

 private:
  std::vector<Complex> samples_;
};

/// Fourier coefficients of a Signal, index k holding the coefficient of z^k.
/// Normalized so that the constant signal 1 maps to (1, 0, ..., 0).
class Spectrum {
 public:
  explicit Spectrum(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](std::size_t k) const { return coeffs_[k]; }

 private:
  std::vector<Complex> coeffs_;
};

inline Signal make_signal(std::vector<Complex> values) { return Signal(std::move(values)); }

/// The N sample points exp(2 pi i j / N) on the unit circle. Cached per
/// thread and per N.
inline const std::vector<Complex>& circle_points(std::size_t n) {
  thread_local std::map<std::size_t, std::vector<Complex>> cache;
  auto [it, inserted] = cache.try_emplace(n);
  if (inserted) {
    auto& pts = it->second;
    pts.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      pts[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    }
  }
  return it->second;
}

/// 1 / z without the overflow guards of the library complex division.
inline Complex reciprocal(Complex z) { return std::conj(z) / std::norm(z); }

/// Samples fn at the N circle points.
template <typename Fn>
Signal sample_on_circle(Fn&& fn, std::size_t n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw ValidationError("sample count must be a power of two >= 2, got " + std::to_string(n));
  }
  const auto& pts = circle_points(n);
  std::vector<Complex> values(n);
  for (std::size_t j = 0; j < n; ++j) values[j] = fn(pts[j]);
  return Signal(std::move(values));
}

inline Spectrum spectrum(const Signal& f) {
  auto coeffs = fft_forward(f.samples());
  const double scale = 1.0 / static_cast<double>(f.size());
  for (auto& c : coeffs) c *= scale;
  return Spectrum(std::move(coeffs));
}

/// Circle samples of the truncated series sum_k coeffs[k] z^k.
inline Signal from_spectrum(const Spectrum& s) { return Signal(fft_inverse(s.coeffs())); }

/// Discrete H^2 inner product sum_k f^(k) conj(g^(k)). By Parseval this is the
/// sample mean of f * conj(g), which is how it is evaluated.
inline Complex inner_product(const Signal& f, const Signal& g) {
  if (f.size() != g.size()) {
    throw ValidationError("inner_product: length mismatch " + std::to_string(f.size()) + " vs " +
                          std::to_string(g.size()));
  }
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * std::conj(g[j]);
  return acc / static_cast<double>(f.size());
}

inline double norm_sq(const Signal& f) {
  double acc = 0.0;
  for (const auto& v : f.samples()) acc += std::norm(v);
  return acc / static_cast<double>(f.size());
}

inline double norm(const Signal& f) { return std::sqrt(norm_sq(f)); }

inline Signal operator-(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) throw ValidationError("signal length mismatch");
  std::vector<Complex> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return Signal(std::move(out));
}

}  // namespace hardy
