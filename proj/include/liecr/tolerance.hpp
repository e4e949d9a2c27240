#ifndef LIECR_TOLERANCE_HPP
#define LIECR_TOLERANCE_HPP

#include <atomic>
#include <cstdlib>
#include <string>

#include "liecr/errors.hpp"

namespace liecr {

// Fixed thresholds used by individual verifiers.
inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr double kEigenResidualTolerance = 1e-9;
inline constexpr double kEigenClusterTolerance = 1e-8;
inline constexpr double kSphereTolerance = 1e-12;
inline constexpr double kPhaseResidualTolerance = 1e-8;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr const char* kToleranceEnvVar = "LIECR_TOLERANCE";

namespace detail {
inline std::atomic<double>& tolerance_slot() {
  static std::atomic<double> slot{kDefaultTolerance};
  return slot;
}
}  // namespace detail

/// Relative singular-value threshold for every rank and dimension decision.
inline double tolerance() { return detail::tolerance_slot().load(std::memory_order_relaxed); }

inline void set_tolerance(double tol) {
  if (!(tol > 0.0 && tol < 1e-2)) {
    throw ArgumentError("tolerance must lie in (0, 1e-2), got " + std::to_string(tol));
  }
  detail::tolerance_slot().store(tol, std::memory_order_relaxed);
}

/// Reads LIECR_TOLERANCE if set. Returns true when an override was applied.
inline bool apply_tolerance_from_env() {
  const char* raw = std::getenv(kToleranceEnvVar);
  if (raw == nullptr || *raw == '\0') return false;
  char* end = nullptr;
  double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0') {
    throw ArgumentError(std::string(kToleranceEnvVar) + " is not a number: " + raw);
  }
  set_tolerance(value);
  return true;
}

/// RAII override, restores the previous value on scope exit.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double tol) : previous_(tolerance()) { set_tolerance(tol); }
  ~ScopedTolerance() { detail::tolerance_slot().store(previous_); }
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double previous_;
};

}  // namespace liecr

#endif  // LIECR_TOLERANCE_HPP
