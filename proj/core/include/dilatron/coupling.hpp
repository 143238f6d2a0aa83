#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dilatron/markov.hpp"

namespace dilatron {

/// One environment symbol g = (state, label): the state component records
/// which system state last interacted with the symbol, the label selects a
/// deterministic map. Fresh symbols carry state 0.
struct EnvSymbol {
  int state;  // 0-based
  int label;  // index into the coupling's label set

  friend bool operator==(const EnvSymbol& a, const EnvSymbol& b) {
    return a.state == b.state && a.label == b.label;
  }
};

/// How the free part of the coupling (domain points whose symbol state is
/// nonzero) is paired with the codomain points left over by the fixed block.
enum class CompletionRule {
  LexForward,   // pair in matching lexicographic order
  LexReversed,  // pair domain ascending with codomain descending
};

/// Invertible map on E x G, G = E x labels. On symbols with state 0 it acts
/// as (i, (0, l)) -> (beta_l(i), (i, l)); all remaining points are paired
/// bijectively by a completion rule that never affects the dilated chain.
class Coupling {
 public:
  static Coupling build(LabelSet labels,
                        CompletionRule rule = CompletionRule::LexForward);

  /// The worked two-state completion over the full label set: for symbol
  /// state 1 the applied map's label index is advanced cyclically mod 4
  /// (by 2 from system state 0, by 1 from system state 1) relative to the
  /// classical ordering D1..D4 of the four maps on two states.
  static Coupling two_state_reference();

  int n() const { return labels_->n(); }
  const LabelSet& labels() const { return *labels_; }
  int g_size() const { return n() * labels_->size(); }
  long long points() const { return static_cast<long long>(n()) * g_size(); }

  std::pair<int, EnvSymbol> forward(int i, EnvSymbol g) const;
  std::pair<int, EnvSymbol> backward(int i, EnvSymbol g) const;

  /// Linearized forms used by exhaustive checks and the operator builders.
  int forward_index(int point) const { return forward_[point]; }
  int backward_index(int point) const { return backward_[point]; }

  int point_index(int i, EnvSymbol g) const {
    return (i * n() + g.state) * labels_->size() + g.label;
  }
  std::pair<int, EnvSymbol> point_at(int index) const;

  int symbol_index(EnvSymbol g) const { return g.state * labels_->size() + g.label; }
  EnvSymbol symbol_at(int index) const {
    return EnvSymbol{index / labels_->size(), index % labels_->size()};
  }

  bool same_tables(const Coupling& other) const {
    return forward_ == other.forward_ && labels_->same_as(*other.labels_);
  }

 private:
  Coupling(std::shared_ptr<const LabelSet> labels, std::vector<int> fwd);
  std::shared_ptr<const LabelSet> labels_;
  std::vector<int> forward_;
  std::vector<int> backward_;
};

}  // namespace dilatron
