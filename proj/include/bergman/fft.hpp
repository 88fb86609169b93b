#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "bergman/core.hpp"

namespace bergman {

namespace detail {

// FFTW planning is not thread-safe; execution of an existing plan on fresh
// arrays is. Plans are created once per (size, direction) and kept for the
// process lifetime. FFTW_ESTIMATE plans are deterministic. Plans are in-place
// and unaligned so they run directly on std::vector<Complex> storage.
class FftPlanCache {
 public:
  static FftPlanCache& instance() {
    static FftPlanCache cache;
    return cache;
  }

  fftw_plan plan(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, p);
    return p;
  }

 private:
  FftPlanCache() = default;
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

inline std::vector<Complex> run_fft(std::vector<Complex> data, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(FftPlanCache::instance().plan(static_cast<int>(data.size()), sign), buf, buf);
  return data;
}

}  // namespace detail

/// Values sum_k c_k e^{2 pi i k j / N} at the N equispaced angles (unnormalised).
inline std::vector<Complex> synthesize(std::vector<Complex> coeffs) {
  return detail::run_fft(std::move(coeffs), FFTW_BACKWARD);
}

/// Fourier coefficients (1/N) sum_j v_j e^{-2 pi i k j / N}.
inline std::vector<Complex> analyze(std::vector<Complex> values) {
  const std::size_t n = values.size();
  auto out = detail::run_fft(std::move(values), FFTW_FORWARD);
  const double inv = 1.0 / static_cast<double>(n);
  for (auto& c : out) c *= inv;
  return out;
}

}  // namespace bergman
