#pragma once

#include <stdexcept>
#include <string>

namespace dilatron {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix entry is negative. Indices are 0-based.
class NegativeEntryError : public Error {
 public:
  NegativeEntryError(int i, int j, double value)
      : Error("negative entry at row " + std::to_string(i + 1) + ", column " +
              std::to_string(j + 1) + ": " + std::to_string(value)),
        row(i),
        col(j),
        value(value) {}
  int row, col;
  double value;
};

/// A row of a stochastic matrix does not sum to 1 within tolerance.
class RowSumViolationError : public Error {
 public:
  RowSumViolationError(int i, double sum)
      : Error("row " + std::to_string(i + 1) + " sums to " +
              std::to_string(sum) + ", expected 1"),
        row(i),
        sum(sum) {}
  int row;
  double sum;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Requested time step exceeds the sequence horizon.
class HorizonExceededError : public Error {
 public:
  HorizonExceededError(int t, int horizon)
      : Error("time " + std::to_string(t) + " exceeds horizon " +
              std::to_string(horizon)),
        t(t),
        horizon(horizon) {}
  int t, horizon;
};

/// Requested time step exceeds the environment window length.
class HorizonExceedsWindowError : public Error {
 public:
  HorizonExceedsWindowError(int t, int window)
      : Error("time " + std::to_string(t) + " exceeds window length " +
              std::to_string(window)),
        t(t),
        window(window) {}
  int t, window;
};

/// A construction would exceed the configured size cap.
class SizeGuardExceededError : public Error {
 public:
  SizeGuardExceededError(long long size, long long cap)
      : Error("requested size " + std::to_string(size) +
              " exceeds the configured cap " + std::to_string(cap)),
        size(size),
        cap(cap) {}
  long long size, cap;
};

/// Internal iteration failed to converge; indicates a bug, not bad input.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

class WindowTooShortError : public Error {
 public:
  WindowTooShortError(int window, int horizon)
      : Error("window length " + std::to_string(window) +
              " is shorter than the horizon " + std::to_string(horizon)),
        window(window),
        horizon(horizon) {}
  int window, horizon;
};

/// Exact enumeration would visit more assignments than the configured cap.
class SupportExplosionError : public Error {
 public:
  SupportExplosionError(long long assignments, long long cap)
      : Error("enumeration of " + std::to_string(assignments) +
              " assignments exceeds the cap " + std::to_string(cap)),
        assignments(assignments),
        cap(cap) {}
  long long assignments, cap;
};

}  // namespace dilatron
