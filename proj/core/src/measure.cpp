#include "dilatron/measure.hpp"

#include <algorithm>
#include <cmath>

#include "dilatron/rng.hpp"

namespace dilatron {

SymbolLaw::SymbolLaw(int n, int label_count, std::vector<double> probs)
    : n_(n), label_count_(label_count), probs_(std::move(probs)) {
  if (static_cast<int>(probs_.size()) != n_ * label_count_)
    throw DimensionMismatchError("symbol law length does not match G");
  double sum = 0.0;
  for (int idx = 0; idx < static_cast<int>(probs_.size()); ++idx) {
    const double p = probs_[idx];
    if (p < 0.0)
      throw NegativeEntryError(idx / label_count_, idx % label_count_, p);
    sum += p;
    if (p > 0.0)
      support_.emplace_back(EnvSymbol{idx / label_count_, idx % label_count_}, p);
  }
  if (std::abs(sum - 1.0) > tol::kRowSum) throw RowSumViolationError(0, sum);
}

SymbolLaw SymbolLaw::from_label_weights(int n, std::vector<double> q) {
  const int nl = static_cast<int>(q.size());
  std::vector<double> probs(static_cast<std::size_t>(n) * nl, 0.0);
  std::copy(q.begin(), q.end(), probs.begin());  // state-0 row
  return SymbolLaw(n, nl, std::move(probs));
}

SymbolLaw SymbolLaw::point_mass(int n, int label_count, EnvSymbol g) {
  std::vector<double> probs(static_cast<std::size_t>(n) * label_count, 0.0);
  probs[g.state * label_count + g.label] = 1.0;
  return SymbolLaw(n, label_count, std::move(probs));
}

SymbolLaw SymbolLaw::from_probs(int n, int label_count,
                                std::vector<double> probs) {
  return SymbolLaw(n, label_count, std::move(probs));
}

LabelSet active_labels(const MatrixSequence& seq, Decomposer dec,
                       long long label_cap) {
  if (dec == Decomposer::Canonical) return LabelSet::full(seq.n(), label_cap);
  std::vector<Decomposition> decs;
  const int distinct = seq.homogeneous_flag() ? 1 : seq.horizon();
  for (int t = 1; t <= distinct; ++t)
    decs.push_back(sparse_decomposition(seq.at(t)));
  return support_union(decs);
}

DilationSetup build_measure(const MatrixSequence& seq, Decomposer dec, int k,
                            int window, std::optional<SymbolLaw> q0,
                            CompletionRule rule, long long label_cap) {
  const int n = seq.n();
  if (k < 0 || k >= n)
    throw DimensionMismatchError("starting state out of range");
  if (window < seq.horizon()) throw WindowTooShortError(window, seq.horizon());

  LabelSet labels = active_labels(seq, dec, label_cap);

  // Per-time label weights over the active set.
  std::vector<std::vector<double>> weights;
  const int distinct = seq.homogeneous_flag() ? 1 : seq.horizon();
  for (int t = 1; t <= distinct; ++t) {
    const Decomposition d = dec == Decomposer::Canonical
                                ? canonical_decomposition(seq.at(t), label_cap)
                                : sparse_decomposition(seq.at(t));
    weights.push_back(weights_on(d, labels));
  }

  if (q0 && q0->g_size() != n * labels.size())
    throw DimensionMismatchError("past-slot law does not match G");
  if (!q0) {
    // Never-interacting slots default to a degenerate symbol: the identity
    // map when the label set has it, otherwise the first label.
    const int l0 = labels.identity_index().value_or(0);
    q0 = SymbolLaw::point_mass(n, labels.size(), EnvSymbol{0, l0});
  }

  EnvProductLaw env;
  env.slots.reserve(window);
  for (int t = 1; t <= window; ++t) {
    if (t <= seq.horizon()) {
      const auto& w = seq.homogeneous_flag() ? weights.front() : weights[t - 1];
      env.slots.push_back(SymbolLaw::from_label_weights(n, w));
    } else {
      env.slots.push_back(*q0);
    }
  }

  Dynamics dynamics(Coupling::build(labels, rule), window);
  DilationMeasure measure{k, seq, std::move(labels), std::move(env)};
  return DilationSetup{std::move(measure), std::move(dynamics)};
}

namespace {

// Window whose slots hold each law's first support symbol; assignment
// enumeration overwrites the leading slots.
std::vector<EnvSymbol> fill_window(const EnvProductLaw& env) {
  std::vector<EnvSymbol> w;
  w.reserve(env.window());
  for (const SymbolLaw& law : env.slots) w.push_back(law.support().front().first);
  return w;
}

long long assignment_count(const EnvProductLaw& env, int t, long long cap) {
  long long count = 1;
  for (int s = 1; s <= t; ++s) {
    count *= static_cast<long long>(env.slot(s).support().size());
    if (count > cap) throw SupportExplosionError(count, cap);
  }
  return count;
}

/// Visit every positive-probability assignment of slots 1..t; the callback
/// receives the joint probability and the populated window.
template <typename F>
void for_each_assignment(const EnvProductLaw& env, int t, long long cap,
                         F&& visit) {
  assignment_count(env, t, cap);
  std::vector<EnvSymbol> window = fill_window(env);
  std::vector<std::size_t> odo(t, 0);
  while (true) {
    double prob = 1.0;
    for (int s = 1; s <= t; ++s) {
      const auto& [sym, p] = env.slot(s).support()[odo[s - 1]];
      window[s - 1] = sym;
      prob *= p;
    }
    visit(prob, window);
    int pos = t - 1;
    while (pos >= 0 &&
           ++odo[pos] == env.slot(pos + 1).support().size()) {
      odo[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

}  // namespace

PathDistribution exact_state_distribution(const DilationMeasure& m,
                                          const Dynamics& d, int t,
                                          long long enum_cap) {
  const int n = m.sequence.n();
  if (t < 0 || t > d.window_length())
    throw HorizonExceedsWindowError(t, d.window_length());
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(n);
  if (t == 0) {
    probs(m.start_state) = 1.0;
    return PathDistribution{0, std::move(probs)};
  }
  for_each_assignment(m.env, t, enum_cap,
                      [&](double prob, const std::vector<EnvSymbol>& window) {
                        WindowedGlobalState s{m.start_state, window};
                        for (int step = 0; step < t; ++step) s = d.step(s);
                        probs(s.x) += prob;
                      });
  return PathDistribution{t, std::move(probs)};
}

namespace {

/// Walk all positive-probability histories of length 0..horizon-1 and hand
/// the callback the history probability together with the evolved state;
/// the evolved window's front slot is the not-yet-consumed next symbol.
template <typename F>
void for_each_history(const DilationMeasure& m, const Dynamics& d, int horizon,
                      long long enum_cap, F&& visit) {
  for (int t = 0; t + 1 <= horizon; ++t) {
    for_each_assignment(
        m.env, t, enum_cap,
        [&](double prob, const std::vector<EnvSymbol>& window) {
          WindowedGlobalState s{m.start_state, window};
          for (int step = 0; step < t; ++step) s = d.step(s);
          visit(t, prob, s);
        });
  }
}

}  // namespace

std::vector<double> markov_conditionals(const DilationMeasure& m,
                                        const Dynamics& d, int horizon,
                                        long long enum_cap) {
  const int n = m.sequence.n();
  if (horizon > d.window_length())
    throw HorizonExceedsWindowError(horizon, d.window_length());
  std::vector<double> out;
  for_each_history(
      m, d, horizon, enum_cap,
      [&](int t, double hist_prob, const WindowedGlobalState& after_t) {
        // Joint probabilities over the next symbol, as a ratio against the
        // history probability.
        Eigen::VectorXd joint = Eigen::VectorXd::Zero(n);
        for (const auto& [sym, p] : m.env.slot(t + 1).support()) {
          WindowedGlobalState s = after_t;
          s.window.front() = sym;
          joint(d.step(s).x) += hist_prob * p;
        }
        for (int j = 0; j < n; ++j) out.push_back(joint(j) / hist_prob);
      });
  return out;
}

DeviationReport verify_markov_property(const DilationMeasure& m,
                                       const Dynamics& d, int horizon,
                                       double threshold, long long enum_cap) {
  const int n = m.sequence.n();
  if (horizon > d.window_length())
    throw HorizonExceedsWindowError(horizon, d.window_length());
  DeviationReport report;
  report.name = "markov-property";
  report.threshold = threshold;
  for_each_history(
      m, d, horizon, enum_cap,
      [&](int t, double hist_prob, const WindowedGlobalState& after_t) {
        Eigen::VectorXd joint = Eigen::VectorXd::Zero(n);
        for (const auto& [sym, p] : m.env.slot(t + 1).support()) {
          WindowedGlobalState s = after_t;
          s.window.front() = sym;
          joint(d.step(s).x) += hist_prob * p;
        }
        const StochasticMatrix& p_next = m.sequence.at(t + 1);
        for (int j = 0; j < n; ++j) {
          const double conditional = joint(j) / hist_prob;
          const double dev = std::abs(conditional - p_next(after_t.x, j));
          report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
        }
        ++report.checked;
      });
  report.pass = report.max_abs_deviation < threshold;
  return report;
}

SimulationResult simulate(const DilationMeasure& m, const Dynamics& d, int t,
                          long long replicas, std::uint64_t seed,
                          bool collect_trajectories) {
  const int n = m.sequence.n();
  if (t < 0 || t > d.window_length())
    throw HorizonExceedsWindowError(t, d.window_length());

  SimulationResult result;
  result.counts.assign(n, 0);
  if (collect_trajectories)
    result.trajectories.reserve(static_cast<std::size_t>(replicas));

  const int window = d.window_length();
  for (long long r = 0; r < replicas; ++r) {
    SplitMix64 rng(replica_seed(seed, static_cast<std::uint64_t>(r)));
    WindowedGlobalState s;
    s.x = m.start_state;
    s.window.reserve(window);
    for (int slot = 1; slot <= window; ++slot) {
      const auto& support = m.env.slot(slot).support();
      const double u = rng.uniform();
      double cum = 0.0;
      EnvSymbol drawn = support.back().first;
      for (const auto& [sym, p] : support) {
        cum += p;
        if (u < cum) {
          drawn = sym;
          break;
        }
      }
      s.window.push_back(drawn);
    }
    std::vector<int> path;
    if (collect_trajectories) path.push_back(s.x);
    for (int step = 0; step < t; ++step) {
      s = d.step(s);
      if (collect_trajectories) path.push_back(s.x);
    }
    ++result.counts[s.x];
    if (collect_trajectories) result.trajectories.push_back(std::move(path));
  }

  Eigen::VectorXd probs(n);
  for (int j = 0; j < n; ++j)
    probs(j) = static_cast<double>(result.counts[j]) /
               static_cast<double>(replicas);
  result.empirical = PathDistribution{t, std::move(probs)};
  return result;
}

DeviationReport flow_equation_check(const DilationMeasure& m, const Dynamics& d,
                                    int t_max, long long enum_cap) {
  const int n = m.sequence.n();
  if (t_max > d.window_length())
    throw HorizonExceedsWindowError(t_max, d.window_length());
  DeviationReport report;
  report.name = "flow-equation";
  report.threshold = 1e-12;

  // Indicator of each state plus the constant observable.
  std::vector<Eigen::VectorXd> basis;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    f(j) = 1.0;
    basis.push_back(std::move(f));
  }
  basis.push_back(Eigen::VectorXd::Ones(n));

  const Coupling& c = d.coupling();
  for (int t = 1; t <= t_max; ++t) {
    for_each_assignment(
        m.env, t, enum_cap,
        [&](double, const std::vector<EnvSymbol>& window) {
          WindowedGlobalState s{m.start_state, window};
          const auto orbit = d.trajectory(s, t);
          const int x_prev = orbit[t - 1].x;
          const int x_now = orbit[t].x;
          const EnvSymbol y_t = window[t - 1];
          for (const auto& f : basis) {
            // One-step pulled-back observable i -> f(coupling(i, y_t)).
            Eigen::VectorXd pulled(n);
            for (int i = 0; i < n; ++i)
              pulled(i) = f(c.forward(i, y_t).first);
            const double dev = std::abs(f(x_now) - pulled(x_prev));
            report.max_abs_deviation =
                std::max(report.max_abs_deviation, dev);
          }
          ++report.checked;
        });
  }
  report.pass = report.max_abs_deviation < report.threshold;
  return report;
}

}  // namespace dilatron
