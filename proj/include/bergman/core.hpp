#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

enum class ErrorCode {
  InvalidArgument,
  InvalidCount,
  BadWeight,
  DivergenceSuspected,
  GradientVanishes,
  NotOnBoundary,
  UnsupportedDomain,
  TagMismatch,
  InvalidHypothesis,
  RangeViolation,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::BadWeight: return "BadWeight";
    case ErrorCode::DivergenceSuspected: return "DivergenceSuspected";
    case ErrorCode::GradientVanishes: return "GradientVanishes";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::InvalidHypothesis: return "InvalidHypothesis";
    case ErrorCode::RangeViolation: return "RangeViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw LabError(code, what);
}

/// SplitMix64 stream. Fixed arithmetic, so identical across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one draw per call, second discarded).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t state_;
};

/// Pairwise (tree) summation: fixed association order for a given length.
template <typename T>
T pairwise_sum(std::span<const T> values) {
  const std::size_t n = values.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

/// z^k for integer k >= 0 by repeated squaring (0^0 = 1).
inline Complex ipow(Complex z, int k) {
  Complex acc{1.0, 0.0};
  for (; k > 0; k >>= 1) {
    if (k & 1) acc *= z;
    z *= z;
  }
  return acc;
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// Worker cap for sweeps. Results never depend on it.
struct Execution {
  unsigned threads = 1;
};

/// Evaluates fn(i) for i in [0, n) on up to `threads` workers.
/// Each slot is written by exactly one task, so the output is independent of
/// the thread count and of completion order.
template <typename R, typename Fn>
std::vector<R> parallel_map(std::size_t n, const Fn& fn, Execution exec = {}) {
  std::vector<R> out(n);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, exec.threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Log-spaced values from `hi` down to `lo` (inclusive, strictly decreasing).
inline std::vector<double> log_space_down(double hi, double lo, std::size_t count) {
  require(count >= 2 && hi > lo && lo > 0.0, ErrorCode::InvalidArgument, "bad log range");
  std::vector<double> v(count);
  const double a = std::log(hi), b = std::log(lo);
  for (std::size_t i = 0; i < count; ++i)
    v[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  v.front() = hi;
  v.back() = lo;
  return v;
}

}  // namespace bergman
