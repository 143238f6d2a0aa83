#pragma once

#include <memory>
#include <vector>

#include "dilatron/coupling.hpp"

namespace dilatron {

/// Joint state of the system and a cyclic environment window. Slot 1 is the
/// next symbol to interact; consumed symbols re-enter at the far end.
struct WindowedGlobalState {
  int x;
  std::vector<EnvSymbol> window;  // window[0] is slot 1

  friend bool operator==(const WindowedGlobalState& a,
                         const WindowedGlobalState& b) {
    return a.x == b.x && a.window == b.window;
  }
};

/// Starting data a trajectory is conditioned on: the initial system state and
/// the symbols consumed so far.
struct ObservedHistory {
  int x0;
  std::vector<EnvSymbol> inputs;
};

/// The one-step global evolution: couple the system with slot 1, then rotate
/// the window. A bijection on E x G^W, exactly invertible; system behaviour
/// over t <= W steps matches the two-sided construction.
class Dynamics {
 public:
  Dynamics(Coupling coupling, int window_length);

  int window_length() const { return window_; }
  const Coupling& coupling() const { return *coupling_; }

  WindowedGlobalState step(const WindowedGlobalState& s) const;
  WindowedGlobalState step_inverse(const WindowedGlobalState& s) const;

  /// Orbit s, step(s), ..., step^t(s); t may not exceed the window length.
  std::vector<WindowedGlobalState> trajectory(const WindowedGlobalState& s0,
                                              int t) const;

  /// Step-then-unrotate form: t inverse rotations applied after t steps.
  WindowedGlobalState cocycle_map(int t, const WindowedGlobalState& s) const;

  /// Slot-by-slot form: couple the system with slots 1..t in place, leaving
  /// the window unrotated. Agrees pointwise with cocycle_map for t <= W.
  WindowedGlobalState cocycle_map_direct(int t,
                                         const WindowedGlobalState& s) const;

  /// Number of window states, for exhaustive enumeration on small instances.
  long long state_count() const;
  long long encode_state(const WindowedGlobalState& s) const;
  WindowedGlobalState decode_state(long long index) const;

  bool same_as(const Dynamics& other) const {
    return window_ == other.window_ && coupling_->same_tables(*other.coupling_);
  }

 private:
  void check_state(const WindowedGlobalState& s) const;
  std::shared_ptr<const Coupling> coupling_;
  int window_;
};

}  // namespace dilatron
