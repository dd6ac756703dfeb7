#pragma once

// Thin FFTW front end. Plans are created once per (size, direction) and then
// executed on caller-owned buffers, which FFTW allows from any thread.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"

namespace hardy {

using Complex = std::complex<double>;

namespace detail {

class FftPlanCache {
 public:
  static FftPlanCache& instance() {
    static FftPlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // FFTW_ESTIMATE leaves the buffers untouched and keeps plans deterministic.
    std::vector<Complex> in(n), out(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw Error("fftw: failed to create plan");
    plans_.emplace(key, plan);
    return plan;
  }

  FftPlanCache(const FftPlanCache&) = delete;
  FftPlanCache& operator=(const FftPlanCache&) = delete;

 private:
  FftPlanCache() = default;
  ~FftPlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline void execute(std::span<const Complex> in, std::span<Complex> out, int sign) {
  fftw_plan plan = FftPlanCache::instance().get(in.size(), sign);
  // fftw_execute_dft does not modify the input of an out-of-place c2c plan.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace detail

/// Unnormalized forward DFT: out[k] = sum_j in[j] exp(-2 pi i jk/N).
inline std::vector<Complex> fft_forward(std::span<const Complex> in) {
  std::vector<Complex> out(in.size());
  if (!in.empty()) detail::execute(in, out, FFTW_FORWARD);
  return out;
}

/// Unnormalized inverse DFT: out[j] = sum_k in[k] exp(+2 pi i jk/N).
inline std::vector<Complex> fft_inverse(std::span<const Complex> in) {
  std::vector<Complex> out(in.size());
  if (!in.empty()) detail::execute(in, out, FFTW_BACKWARD);
  return out;
}

inline constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace hardy
