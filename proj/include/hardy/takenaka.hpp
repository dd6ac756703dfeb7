#pragma once

// Szego kernels, the Takenaka-Malmquist system, orthogonal projection onto
// the span of a TM system, and synthesis of Blaschke forms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/signal.hpp"

namespace hardy {

/// Ordered list of distinct points strictly inside the unit disk.
class PoleTuple {
 public:
  PoleTuple() = default;

  explicit PoleTuple(std::vector<Complex> poles) : poles_(std::move(poles)) {
    for (std::size_t k = 0; k < poles_.size(); ++k) {
      const auto& a = poles_[k];
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw ValidationError("pole " + std::to_string(k) + " is not finite");
      }
      if (std::abs(a) >= 1.0) {
        throw ValidationError("pole " + std::to_string(k) + " lies outside the open unit disk");
      }
    }
    for (std::size_t j = 0; j < poles_.size(); ++j) {
      for (std::size_t k = j + 1; k < poles_.size(); ++k) {
        if (poles_[j] == poles_[k]) {
          throw DegenerateTupleError("poles " + std::to_string(j) + " and " + std::to_string(k) +
                                     " coincide");
        }
      }
    }
  }

  std::size_t size() const noexcept { return poles_.size(); }
  bool empty() const noexcept { return poles_.empty(); }
  std::span<const Complex> poles() const noexcept { return poles_; }
  const Complex& operator[](std::size_t k) const { return poles_[k]; }

  /// Smallest pairwise distance; +inf for fewer than two poles.
  double min_separation() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < poles_.size(); ++j) {
      for (std::size_t k = j + 1; k < poles_.size(); ++k) {
        best = std::min(best, std::abs(poles_[j] - poles_[k]));
      }
    }
    return best;
  }

  /// The tuple rotated left by `shift`: entry j of the result is entry
  /// (j + shift) mod n of this tuple.
  PoleTuple rotated(std::size_t shift) const {
    std::vector<Complex> out(poles_.size());
    for (std::size_t j = 0; j < poles_.size(); ++j) out[j] = poles_[(j + shift) % poles_.size()];
    return PoleTuple(std::move(out));
  }

  friend bool operator==(const PoleTuple&, const PoleTuple&) = default;

 private:
  std::vector<Complex> poles_;
};

/// A pole tuple with its expansion coefficients and the squared H^2 error of
/// the projection that produced them.
struct BlaschkeModel {
  PoleTuple tuple;
  std::vector<Complex> coeffs;
  double residual_error = 0.0;

  BlaschkeModel() = default;
  BlaschkeModel(PoleTuple t, std::vector<Complex> c, double residual)
      : tuple(std::move(t)), coeffs(std::move(c)), residual_error(residual) {
    if (coeffs.size() != tuple.size()) {
      throw ValidationError("model has " + std::to_string(coeffs.size()) + " coefficients for " +
                            std::to_string(tuple.size()) + " poles");
    }
    if (!(residual_error >= 0.0)) throw ValidationError("model residual_error must be >= 0");
  }
};

namespace detail {

inline void require_in_disk(Complex a, const char* what) {
  if (!(std::abs(a) < 1.0)) throw ValidationError(std::string(what) + ": point must satisfy |a| < 1");
}

/// Mobius factor (z - a) / (1 - conj(a) z); unimodular on the circle.
inline Complex mobius(Complex a, Complex z) { return (z - a) / (1.0 - std::conj(a) * z); }

inline Complex szego(Complex a, Complex z) {
  return std::sqrt(1.0 - std::norm(a)) / (1.0 - std::conj(a) * z);
}

}  // namespace detail

/// Normalized Szego kernel e_a(z) = sqrt(1 - |a|^2) / (1 - conj(a) z).
inline std::vector<Complex> szego_kernel(Complex a, std::span<const Complex> points) {
  detail::require_in_disk(a, "szego_kernel");
  std::vector<Complex> out(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) out[j] = detail::szego(a, points[j]);
  return out;
}

inline Signal szego_signal(Complex a, std::size_t n) {
  return Signal(szego_kernel(a, circle_points(n)));
}

/// B_k(z) = e_{a_k}(z) prod_{j<k} (z - a_j) / (1 - conj(a_j) z), k is 1-based.
inline std::vector<Complex> tm_basis(const PoleTuple& tuple, std::size_t k,
                                     std::span<const Complex> points) {
  if (k < 1 || k > tuple.size()) {
    throw ValidationError("tm_basis: index " + std::to_string(k) + " outside 1.." +
                          std::to_string(tuple.size()));
  }
  std::vector<Complex> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Complex z = points[p];
    Complex v = detail::szego(tuple[k - 1], z);
    for (std::size_t j = 0; j + 1 < k; ++j) v *= detail::mobius(tuple[j], z);
    out[p] = v;
  }
  return out;
}

inline Signal tm_signal(const PoleTuple& tuple, std::size_t k, std::size_t n) {
  return Signal(tm_basis(tuple, k, circle_points(n)));
}

/// Values of sum_k coeffs[k] B_k(z) at arbitrary points of the closed disk.
inline std::vector<Complex> evaluate_blaschke_form(const PoleTuple& tuple, std::span<const Complex> coeffs,
                                                   std::span<const Complex> points) {
  if (coeffs.size() != tuple.size()) throw ValidationError("coefficient count differs from pole count");
  std::vector<Complex> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Complex z = points[p];
    Complex blaschke{1.0, 0.0};
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      acc += coeffs[k] * detail::szego(tuple[k], z) * blaschke;
      blaschke *= detail::mobius(tuple[k], z);
    }
    out[p] = acc;
  }
  return out;
}

/// Orthogonal projection of f onto span{B_1..B_n}. The residual is
/// ||f||^2 - sum |c_k|^2, clamped at zero against round-off.
inline BlaschkeModel project(const Signal& f, const PoleTuple& tuple) {
  const auto pts = circle_points(f.size());
  std::vector<Complex> coeffs(tuple.size());
  double captured = 0.0;
  for (std::size_t k = 1; k <= tuple.size(); ++k) {
    coeffs[k - 1] = inner_product(f, Signal(tm_basis(tuple, k, pts)));
    captured += std::norm(coeffs[k - 1]);
  }
  const double residual = std::max(0.0, norm_sq(f) - captured);
  return BlaschkeModel(tuple, std::move(coeffs), residual);
}

inline Signal synthesize(const BlaschkeModel& model, std::size_t n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw ValidationError("synthesize: sample count must be a power of two >= 2, got " + std::to_string(n));
  }
  return Signal(evaluate_blaschke_form(model.tuple, model.coeffs, circle_points(n)));
}

}  // namespace hardy
