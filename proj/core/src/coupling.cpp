#include "dilatron/coupling.hpp"

#include <algorithm>

namespace dilatron {

Coupling::Coupling(std::shared_ptr<const LabelSet> labels, std::vector<int> fwd)
    : labels_(std::move(labels)), forward_(std::move(fwd)) {
  backward_.assign(forward_.size(), -1);
  for (int p = 0; p < static_cast<int>(forward_.size()); ++p) {
    if (forward_[p] < 0 || backward_[forward_[p]] != -1)
      throw NonConvergenceError("coupling table is not a bijection");
    backward_[forward_[p]] = p;
  }
}

std::pair<int, EnvSymbol> Coupling::point_at(int index) const {
  const int l = index % labels_->size();
  index /= labels_->size();
  const int j = index % n();
  const int i = index / n();
  return {i, EnvSymbol{j, l}};
}

std::pair<int, EnvSymbol> Coupling::forward(int i, EnvSymbol g) const {
  return point_at(forward_[point_index(i, g)]);
}

std::pair<int, EnvSymbol> Coupling::backward(int i, EnvSymbol g) const {
  return point_at(backward_[point_index(i, g)]);
}

Coupling Coupling::build(LabelSet labels, CompletionRule rule) {
  auto shared = std::make_shared<const LabelSet>(std::move(labels));
  const int n = shared->n();
  const int nl = shared->size();
  const long long total = static_cast<long long>(n) * n * nl;
  std::vector<int> fwd(total, -1);
  std::vector<char> covered(total, 0);

  // Fixed block: (i, (0, l)) -> (beta_l(i), (i, l)).
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < nl; ++l) {
      const int from = (i * n + 0) * nl + l;
      const int to = (shared->map(l)(i) * n + i) * nl + l;
      fwd[from] = to;
      covered[to] = 1;
    }
  }

  // The fixed block covers exactly the points (k, (i, l)) with
  // k = beta_l(i); both leftover sets have n*(n-1)*nl elements.
  std::vector<int> free_domain;
  std::vector<int> free_codomain;
  free_domain.reserve(static_cast<std::size_t>(n) * (n - 1) * nl);
  free_codomain.reserve(free_domain.capacity());
  for (int p = 0; p < total; ++p) {
    const int j = (p / nl) % n;
    if (j != 0) free_domain.push_back(p);
    if (!covered[p]) free_codomain.push_back(p);
  }
  if (rule == CompletionRule::LexReversed)
    std::reverse(free_codomain.begin(), free_codomain.end());
  for (std::size_t k = 0; k < free_domain.size(); ++k)
    fwd[free_domain[k]] = free_codomain[k];

  return Coupling(std::move(shared), std::move(fwd));
}

Coupling Coupling::two_state_reference() {
  auto labels = std::make_shared<const LabelSet>(LabelSet::full(2));
  const int nl = labels->size();  // 4

  // The classical presentation orders the four maps on {1,2} as
  // D1 = both->1, D2 = identity, D3 = swap, D4 = both->2; our encoding
  // enumerates them as codes 0,2,1,3 respectively.
  const std::vector<int> classic_to_code = {0, 2, 1, 3};
  std::vector<int> code_to_classic(nl);
  for (int c = 0; c < nl; ++c) code_to_classic[classic_to_code[c]] = c;

  std::vector<int> fwd(2 * 2 * nl, -1);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int l = 0; l < nl; ++l) {
        int applied = l;
        if (j == 1) {
          const int shift = (i == 0) ? 2 : 1;
          applied = classic_to_code[(code_to_classic[l] + shift) % 4];
        }
        const int from = (i * 2 + j) * nl + l;
        const int to = (labels->map(applied)(i) * 2 + i) * nl + l;
        fwd[from] = to;
      }
    }
  }
  return Coupling(std::move(labels), std::move(fwd));
}

}  // namespace dilatron
