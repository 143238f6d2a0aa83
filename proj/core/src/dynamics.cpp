#include "dilatron/dynamics.hpp"

#include <algorithm>

namespace dilatron {

Dynamics::Dynamics(Coupling coupling, int window_length)
    : coupling_(std::make_shared<const Coupling>(std::move(coupling))),
      window_(window_length) {
  if (window_ < 1) throw WindowTooShortError(window_, 1);
}

void Dynamics::check_state(const WindowedGlobalState& s) const {
  if (static_cast<int>(s.window.size()) != window_)
    throw DimensionMismatchError("window length mismatch");
  if (s.x < 0 || s.x >= coupling_->n())
    throw DimensionMismatchError("system state out of range");
}

WindowedGlobalState Dynamics::step(const WindowedGlobalState& s) const {
  check_state(s);
  const auto [x, g] = coupling_->forward(s.x, s.window.front());
  WindowedGlobalState out;
  out.x = x;
  out.window.reserve(window_);
  out.window.assign(s.window.begin() + 1, s.window.end());
  out.window.push_back(g);
  return out;
}

WindowedGlobalState Dynamics::step_inverse(const WindowedGlobalState& s) const {
  check_state(s);
  const auto [x, g] = coupling_->backward(s.x, s.window.back());
  WindowedGlobalState out;
  out.x = x;
  out.window.reserve(window_);
  out.window.push_back(g);
  out.window.insert(out.window.end(), s.window.begin(), s.window.end() - 1);
  return out;
}

std::vector<WindowedGlobalState> Dynamics::trajectory(
    const WindowedGlobalState& s0, int t) const {
  if (t < 0 || t > window_) throw HorizonExceedsWindowError(t, window_);
  std::vector<WindowedGlobalState> orbit;
  orbit.reserve(t + 1);
  orbit.push_back(s0);
  for (int s = 0; s < t; ++s) orbit.push_back(step(orbit.back()));
  return orbit;
}

WindowedGlobalState Dynamics::cocycle_map(int t,
                                          const WindowedGlobalState& s) const {
  if (t < 0 || t > window_) throw HorizonExceedsWindowError(t, window_);
  WindowedGlobalState cur = s;
  for (int k = 0; k < t; ++k) cur = step(cur);
  // t inverse rotations of the window; the system coordinate is untouched.
  const int shift = t % window_;
  if (shift != 0)
    std::rotate(cur.window.begin(), cur.window.end() - shift, cur.window.end());
  return cur;
}

WindowedGlobalState Dynamics::cocycle_map_direct(
    int t, const WindowedGlobalState& s) const {
  if (t < 0 || t > window_) throw HorizonExceedsWindowError(t, window_);
  check_state(s);
  WindowedGlobalState cur = s;
  for (int slot = 0; slot < t; ++slot) {
    const auto [x, g] = coupling_->forward(cur.x, cur.window[slot]);
    cur.x = x;
    cur.window[slot] = g;
  }
  return cur;
}

long long Dynamics::state_count() const {
  long long count = coupling_->n();
  for (int s = 0; s < window_; ++s) count *= coupling_->g_size();
  return count;
}

long long Dynamics::encode_state(const WindowedGlobalState& s) const {
  check_state(s);
  long long index = s.x;
  for (const EnvSymbol& g : s.window)
    index = index * coupling_->g_size() + coupling_->symbol_index(g);
  return index;
}

WindowedGlobalState Dynamics::decode_state(long long index) const {
  WindowedGlobalState s;
  s.window.resize(window_);
  for (int slot = window_ - 1; slot >= 0; --slot) {
    s.window[slot] = coupling_->symbol_at(index % coupling_->g_size());
    index /= coupling_->g_size();
  }
  s.x = static_cast<int>(index);
  return s;
}

}  // namespace dilatron
