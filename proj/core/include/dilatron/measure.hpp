#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dilatron/dynamics.hpp"
#include "dilatron/markov.hpp"
#include "dilatron/report.hpp"

namespace dilatron {

// Cap on exactly enumerated joint symbol assignments.
inline constexpr long long kDefaultEnumCap = 10'000'000;

/// Distribution of one environment symbol over G = E x labels. Laws built
/// from label weights put all their mass on symbols with state 0.
class SymbolLaw {
 public:
  static SymbolLaw from_label_weights(int n, std::vector<double> q);
  static SymbolLaw point_mass(int n, int label_count, EnvSymbol g);
  static SymbolLaw from_probs(int n, int label_count, std::vector<double> probs);

  int n() const { return n_; }
  int label_count() const { return label_count_; }
  int g_size() const { return n_ * label_count_; }

  double prob(EnvSymbol g) const {
    return probs_[g.state * label_count_ + g.label];
  }
  /// Symbols with strictly positive probability, in index order.
  const std::vector<std::pair<EnvSymbol, double>>& support() const {
    return support_;
  }

 private:
  SymbolLaw(int n, int label_count, std::vector<double> probs);
  int n_, label_count_;
  std::vector<double> probs_;
  std::vector<std::pair<EnvSymbol, double>> support_;
};

/// Independent slot laws for the whole window: slot t carries the law of the
/// symbol consumed between times t-1 and t; slots past the horizon hold the
/// never-interacting law.
struct EnvProductLaw {
  std::vector<SymbolLaw> slots;  // slot t at index t-1

  int window() const { return static_cast<int>(slots.size()); }
  const SymbolLaw& slot(int t) const { return slots[t - 1]; }
};

/// delta_k on the system tensor the product law on the environment, together
/// with the transition matrices it is meant to realize.
struct DilationMeasure {
  int start_state;
  MatrixSequence sequence;
  LabelSet labels;
  EnvProductLaw env;
};

/// Measure plus the (universal) dynamics it drives.
struct DilationSetup {
  DilationMeasure measure;
  Dynamics dynamics;
};

enum class Decomposer { Sparse, Canonical };

/// The label set a measure for this sequence will use: the full set for the
/// canonical decomposer, the union of sparse supports otherwise.
LabelSet active_labels(const MatrixSequence& seq, Decomposer dec,
                       long long label_cap = kDefaultLabelCap);

/// Decompose every transition matrix, install the slot laws, and build the
/// dynamics. The coupling depends only on the state count and label set, so
/// distinct sequences over the same labels share identical dynamics and
/// differ only in the measure.
DilationSetup build_measure(const MatrixSequence& seq, Decomposer dec, int k,
                            int window,
                            std::optional<SymbolLaw> q0 = std::nullopt,
                            CompletionRule rule = CompletionRule::LexForward,
                            long long label_cap = kDefaultLabelCap);

/// Law of the system coordinate at one time.
struct PathDistribution {
  int t;
  Eigen::VectorXd probs;
};

/// Push every positive-probability joint assignment of slots 1..t through
/// the dynamics and accumulate the arrival probabilities.
PathDistribution exact_state_distribution(const DilationMeasure& m,
                                          const Dynamics& d, int t,
                                          long long enum_cap = kDefaultEnumCap);

/// For every positive-probability history and every target state, compare
/// the exactly enumerated conditional of the next system state against the
/// prescribed transition probability.
DeviationReport verify_markov_property(const DilationMeasure& m,
                                       const Dynamics& d, int horizon,
                                       double threshold = 1e-10,
                                       long long enum_cap = kDefaultEnumCap);

/// All conditional next-state probabilities in a fixed deterministic order,
/// for cross-checking different couplings or environment laws.
std::vector<double> markov_conditionals(const DilationMeasure& m,
                                        const Dynamics& d, int horizon,
                                        long long enum_cap = kDefaultEnumCap);

struct SimulationResult {
  PathDistribution empirical;
  std::vector<long long> counts;
  std::vector<std::vector<int>> trajectories;  // filled on request
};

/// Seeded Monte Carlo: draw the window independently per slot law, run the
/// dynamics, tally the arrival state. Bit-identical for a fixed seed.
SimulationResult simulate(const DilationMeasure& m, const Dynamics& d, int t,
                          long long replicas, std::uint64_t seed,
                          bool collect_trajectories = false);

/// Pointwise verification of the one-step flow recursion
/// j_t[f] = j_{t-1}[g -> f after the coupling] on the consumed symbol,
/// for indicator and constant observables over every history.
DeviationReport flow_equation_check(const DilationMeasure& m, const Dynamics& d,
                                    int t_max,
                                    long long enum_cap = kDefaultEnumCap);

}  // namespace dilatron
