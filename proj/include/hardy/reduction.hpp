#pragma once

// Reduced remainders, the energy E(a) and its complex gradient.
//
// Starting from f_1 = f, each step strips the e_a component and divides out
// the Mobius factor of a:
//
//   f_{j+1}(z) = (1 - conj(a) z) / (z - a) * (f_j(z) - <f_j, e_a> e_a(z)).
//
// Remainders live as circle samples; interior values come from the truncated
// Taylor series of the current remainder.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/feval.hpp"
#include "hardy/signal.hpp"
#include "hardy/takenaka.hpp"

namespace hardy {

/// Remainders f_{P(1)}..f_{P(n)} of one reduction pass, their derivatives
/// (empty when not requested) and the visiting order P (0-based pole indices).
struct ReductionTrail {
  std::vector<Signal> remainders;
  std::vector<Signal> remainder_derivs;
  std::vector<std::size_t> permutation;
  /// f_{P(j)}(a_{P(j)}) for every j.
  std::vector<Complex> values_at_poles;
};

/// Energy E(a) together with d(-E)/dz_l for every pole.
struct EnergyGradient {
  double value = 0.0;
  std::vector<Complex> gradient;
};

/// Samples of f' from the spectrum of f: the coefficient of z^k in f' is
/// (k + 1) f^(k + 1).
inline Signal spectral_derivative(const Signal& f) {
  const auto s = spectrum(f);
  std::vector<Complex> d(s.size(), Complex{0.0, 0.0});
  for (std::size_t k = 0; k + 1 < s.size(); ++k) d[k] = static_cast<double>(k + 1) * s[k + 1];
  return from_spectrum(Spectrum(std::move(d)));
}

namespace detail {

// Reduction with a precomputed f_j(a). Uses
//   (1 - conj(a) z)/(z - a) (f(z) - (1 - |a|^2) f(a)/(1 - conj(a) z))
//     = ((1 - conj(a) z) f(z) - (1 - |a|^2) f(a)) / (z - a).
inline Signal reduce_with_value(const Signal& fj, Complex a, Complex fj_at_a) {
  const auto& pts = circle_points(fj.size());
  const Complex scaled = (1.0 - std::norm(a)) * fj_at_a;
  const Complex ca = std::conj(a);
  std::vector<Complex> out(fj.size());
  for (std::size_t p = 0; p < fj.size(); ++p) {
    const Complex z = pts[p];
    out[p] = ((1.0 - ca * z) * fj[p] - scaled) * reciprocal(z - a);
  }
  return Signal(std::move(out));
}

inline Signal derivative_reduce_with_value(const Signal& fj, const Signal& fj_prime, Complex a, Complex fj_at_a) {
  if (fj.size() != fj_prime.size()) throw ValidationError("derivative_reduce_step: length mismatch");
  const auto& pts = circle_points(fj.size());
  const double w = std::norm(a) - 1.0;
  const Complex ca = std::conj(a);
  std::vector<Complex> out(fj.size());
  for (std::size_t p = 0; p < fj.size(); ++p) {
    const Complex z = pts[p];
    const Complex inv = reciprocal(z - a);
    out[p] = inv * (fj_prime[p] * (1.0 - ca * z) + (fj[p] - fj_at_a) * w * inv);
  }
  return Signal(std::move(out));
}

}  // namespace detail

inline Signal reduce_step(const Signal& fj, Complex a) {
  detail::require_in_disk(a, "reduce_step");
  return detail::reduce_with_value(fj, a, eval_interior(spectrum(fj), a));
}

/// f'_{j+1} = f'_j (1 - conj(a) z)/(z - a) + (f_j(z) - f_j(a)) (|a|^2 - 1)/(z - a)^2.
inline Signal derivative_reduce_step(const Signal& fj, const Signal& fj_prime, Complex a) {
  detail::require_in_disk(a, "derivative_reduce_step");
  return detail::derivative_reduce_with_value(fj, fj_prime, a, eval_interior(spectrum(fj), a));
}

/// Runs the reduction visiting poles in `order` (0-based indices into the
/// tuple). Every remainder f_{P(1)}..f_{P(n)} is recorded; the remainder after
/// the last pole is not formed.
inline ReductionTrail reduce_trail(const Signal& f, const PoleTuple& tuple, std::vector<std::size_t> order,
                                   bool with_derivatives) {
  if (order.size() != tuple.size()) throw ValidationError("reduce_trail: order length differs from tuple");
  ReductionTrail trail;
  trail.permutation = std::move(order);
  trail.remainders.reserve(tuple.size());
  trail.values_at_poles.reserve(tuple.size());
  if (tuple.empty()) return trail;

  Signal current = f;
  Signal current_deriv = with_derivatives ? spectral_derivative(f) : f;
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    const Complex a = tuple[trail.permutation[j]];
    const Complex value = eval_interior(spectrum(current), a);
    trail.remainders.push_back(current);
    trail.values_at_poles.push_back(value);
    if (with_derivatives) trail.remainder_derivs.push_back(current_deriv);
    if (j + 1 == tuple.size()) break;
    if (with_derivatives) current_deriv = detail::derivative_reduce_with_value(current, current_deriv, a, value);
    current = detail::reduce_with_value(current, a, value);
  }
  return trail;
}

/// Visiting order for P_l = P^l with P the 1-shift; the last visited pole is l.
inline std::vector<std::size_t> shift_order(std::size_t n, std::size_t last) {
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = (last + 1 + j) % n;
  return order;
}

inline std::vector<std::size_t> identity_order(std::size_t n) { return shift_order(n, n == 0 ? 0 : n - 1); }

/// Remainder f_{n+1} after reducing f by every pole of the tuple in order.
inline Signal full_remainder(const Signal& f, const PoleTuple& tuple) {
  Signal current = f;
  for (std::size_t j = 0; j < tuple.size(); ++j) current = reduce_step(current, tuple[j]);
  return current;
}

namespace detail {

inline double energy_from_trail(const PoleTuple& tuple, const ReductionTrail& trail) {
  double e = 0.0;
  for (std::size_t j = 0; j < trail.permutation.size(); ++j) {
    e += (1.0 - std::norm(tuple[trail.permutation[j]])) * std::norm(trail.values_at_poles[j]);
  }
  return e;
}

}  // namespace detail

/// E(a) = sum_j (1 - |a_j|^2) |f_j(a_j)|^2, i.e. ||f||^2 minus the squared
/// projection error.
inline double energy(const Signal& f, const PoleTuple& tuple) {
  return detail::energy_from_trail(tuple, reduce_trail(f, tuple, identity_order(tuple.size()), false));
}

/// Energy under the visiting order that ends at pole `last`. All orders give
/// the same value up to round-off.
inline double energy_representation(const Signal& f, const PoleTuple& tuple, std::size_t last) {
  return detail::energy_from_trail(tuple, reduce_trail(f, tuple, shift_order(tuple.size(), last), false));
}

/// E(a) and d(-E)/dz_l. For each l the reduction runs in the order ending at
/// a_l, so a_l only enters the final term, whose derivative is
///   conj(g(a)) (conj(a) g(a) - (1 - |a|^2) g'(a)),  g = f_{P_l(n)}.
/// The branches are independent of one another.
inline EnergyGradient energy_gradient(const Signal& f, const PoleTuple& tuple) {
  const std::size_t n = tuple.size();
  if (n >= 2 && !(tuple.min_separation() > 0.0)) throw DegenerateTupleError("energy_gradient: duplicate poles");
  EnergyGradient out;
  out.gradient.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    const auto trail = reduce_trail(f, tuple, shift_order(n, l), true);
    const Complex a = tuple[l];
    const Complex g = trail.values_at_poles.back();
    const Complex dg = eval_interior(spectrum(trail.remainder_derivs.back()), a);
    out.gradient[l] = std::conj(g) * (std::conj(a) * g - (1.0 - std::norm(a)) * dg);
    if (l + 1 == n) out.value = detail::energy_from_trail(tuple, trail);
  }
  return out;
}

}  // namespace hardy
