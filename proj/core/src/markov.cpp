#include "dilatron/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dilatron {

DeterministicMap::DeterministicMap(std::vector<int> image)
    : image_(std::move(image)) {
  const int n = static_cast<int>(image_.size());
  if (n == 0) throw DimensionMismatchError("deterministic map on empty state space");
  for (int v : image_) {
    if (v < 0 || v >= n)
      throw DimensionMismatchError("deterministic map image out of range");
  }
}

bool DeterministicMap::is_identity() const {
  for (int i = 0; i < n(); ++i)
    if (image_[i] != i) return false;
  return true;
}

long long DeterministicMap::encode() const {
  long long code = 0;
  long long base = 1;
  for (int i = 0; i < n(); ++i) {
    code += image_[i] * base;
    base *= n();
  }
  return code;
}

DeterministicMap DeterministicMap::decode(int n, long long code) {
  std::vector<int> image(n);
  for (int i = 0; i < n; ++i) {
    image[i] = static_cast<int>(code % n);
    code /= n;
  }
  return DeterministicMap(std::move(image));
}

Eigen::MatrixXd DeterministicMap::matrix() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n(), n());
  for (int i = 0; i < n(); ++i) d(i, image_[i]) = 1.0;
  return d;
}

DeterministicMap DeterministicMap::after(const DeterministicMap& other) const {
  if (other.n() != n())
    throw DimensionMismatchError("composing maps on different state spaces");
  std::vector<int> image(n());
  for (int i = 0; i < n(); ++i) image[i] = image_[other(i)];
  return DeterministicMap(std::move(image));
}

StochasticMatrix StochasticMatrix::validated(Eigen::MatrixXd raw,
                                             double row_tol) {
  if (raw.rows() != raw.cols() || raw.rows() == 0)
    throw DimensionMismatchError("stochastic matrix must be square and nonempty");
  const int n = static_cast<int>(raw.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (raw(i, j) < 0.0) throw NegativeEntryError(i, j, raw(i, j));
    }
    const double sum = raw.row(i).sum();
    if (std::abs(sum - 1.0) > row_tol) throw RowSumViolationError(i, sum);
  }
  return StochasticMatrix(std::move(raw));
}

StochasticMatrix validate_stochastic(const Eigen::MatrixXd& raw,
                                     double row_tol) {
  return StochasticMatrix::validated(raw, row_tol);
}

LabelSet::LabelSet(int n, std::vector<DeterministicMap> maps)
    : n_(n), maps_(std::move(maps)) {
  by_code_.reserve(maps_.size());
  for (int idx = 0; idx < static_cast<int>(maps_.size()); ++idx) {
    const auto [it, inserted] = by_code_.emplace(maps_[idx].encode(), idx);
    if (!inserted) throw DimensionMismatchError("duplicate map in label set");
  }
}

LabelSet LabelSet::full(int n, long long cap) {
  long long count = 1;
  for (int i = 0; i < n; ++i) {
    count *= n;
    if (count > cap) throw SizeGuardExceededError(count, cap);
  }
  std::vector<DeterministicMap> maps;
  maps.reserve(static_cast<std::size_t>(count));
  for (long long code = 0; code < count; ++code)
    maps.push_back(DeterministicMap::decode(n, code));
  return LabelSet(n, std::move(maps));
}

LabelSet LabelSet::of(std::vector<DeterministicMap> maps) {
  if (maps.empty()) throw DimensionMismatchError("empty label set");
  const int n = maps.front().n();
  for (const auto& m : maps)
    if (m.n() != n) throw DimensionMismatchError("mixed state counts in label set");
  return LabelSet(n, std::move(maps));
}

std::optional<int> LabelSet::index_of(const DeterministicMap& m) const {
  const auto it = by_code_.find(m.encode());
  if (it == by_code_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LabelSet::identity_index() const {
  std::vector<int> id(n_);
  for (int i = 0; i < n_; ++i) id[i] = i;
  return index_of(DeterministicMap(std::move(id)));
}

bool LabelSet::same_as(const LabelSet& other) const {
  if (n_ != other.n_ || maps_.size() != other.maps_.size()) return false;
  for (std::size_t i = 0; i < maps_.size(); ++i)
    if (!(maps_[i] == other.maps_[i])) return false;
  return true;
}

Decomposition canonical_decomposition(const StochasticMatrix& P,
                                      long long cap) {
  LabelSet labels = LabelSet::full(P.n(), cap);
  std::vector<double> weights(labels.size());
  for (int idx = 0; idx < labels.size(); ++idx) {
    const DeterministicMap& beta = labels.map(idx);
    double q = 1.0;
    for (int i = 0; i < P.n(); ++i) q *= P(i, beta(i));
    weights[idx] = q;
  }
  return Decomposition{std::move(labels), std::move(weights)};
}

Decomposition sparse_decomposition(const StochasticMatrix& P) {
  const int n = P.n();
  Eigen::MatrixXd residual = P.entries();
  std::vector<DeterministicMap> maps;
  std::vector<double> weights;

  // Termination threshold below the recomposition tolerance so that the
  // leftover residual never shows up in recompose comparisons.
  const double stop = 1e-14;
  const int max_steps = n * n;
  for (int step = 0; step <= max_steps; ++step) {
    if (residual.maxCoeff() <= stop) {
      Decomposition d{LabelSet::of(std::move(maps)), std::move(weights)};
      return d;
    }
    if (step == max_steps) break;

    std::vector<int> image(n);
    double weight = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      int best = 0;
      for (int j = 1; j < n; ++j)
        if (residual(i, j) > residual(i, best)) best = j;  // ties keep smallest j
      image[i] = best;
      weight = std::min(weight, residual(i, best));
    }
    for (int i = 0; i < n; ++i) residual(i, image[i]) -= weight;
    maps.emplace_back(std::move(image));
    weights.push_back(weight);
  }
  throw NonConvergenceError("greedy decomposition failed to exhaust the residual");
}

StochasticMatrix recompose(const Decomposition& d) {
  const int n = d.n();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (int idx = 0; idx < d.terms(); ++idx) {
    const DeterministicMap& beta = d.labels.map(idx);
    for (int i = 0; i < n; ++i) sum(i, beta(i)) += d.weights[idx];
  }
  return StochasticMatrix::validated(std::move(sum));
}

LabelSet support_union(const std::vector<Decomposition>& decs) {
  if (decs.empty()) throw DimensionMismatchError("no decompositions given");
  std::vector<std::pair<long long, const DeterministicMap*>> seen;
  for (const auto& d : decs) {
    for (int idx = 0; idx < d.terms(); ++idx) {
      if (d.weights[idx] <= 0.0) continue;
      seen.emplace_back(d.labels.map(idx).encode(), &d.labels.map(idx));
    }
  }
  std::sort(seen.begin(), seen.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<DeterministicMap> maps;
  for (const auto& [code, m] : seen) {
    if (!maps.empty() && maps.back().encode() == code) continue;
    maps.push_back(*m);
  }
  return LabelSet::of(std::move(maps));
}

std::vector<double> weights_on(const Decomposition& d, const LabelSet& labels) {
  std::vector<double> out(labels.size(), 0.0);
  for (int idx = 0; idx < d.terms(); ++idx) {
    if (d.weights[idx] <= 0.0) continue;
    const auto pos = labels.index_of(d.labels.map(idx));
    if (!pos)
      throw DimensionMismatchError("decomposition uses a map outside the label set");
    out[*pos] += d.weights[idx];
  }
  return out;
}

MatrixSequence::MatrixSequence(std::vector<StochasticMatrix> m, int horizon,
                               bool hom)
    : matrices_(std::move(m)), horizon_(horizon), homogeneous_(hom) {}

MatrixSequence MatrixSequence::homogeneous(StochasticMatrix P, int horizon) {
  if (horizon < 0) throw HorizonExceededError(horizon, 0);
  std::vector<StochasticMatrix> m;
  m.push_back(std::move(P));
  return MatrixSequence(std::move(m), horizon, true);
}

MatrixSequence MatrixSequence::of(std::vector<StochasticMatrix> matrices) {
  if (matrices.empty())
    throw DimensionMismatchError("matrix sequence must be nonempty");
  const int n = matrices.front().n();
  for (const auto& p : matrices)
    if (p.n() != n) throw DimensionMismatchError("mixed sizes in matrix sequence");
  const int horizon = static_cast<int>(matrices.size());
  return MatrixSequence(std::move(matrices), horizon, false);
}

const StochasticMatrix& MatrixSequence::at(int t) const {
  if (t < 1 || t > horizon_) throw HorizonExceededError(t, horizon_);
  return homogeneous_ ? matrices_.front() : matrices_[t - 1];
}

namespace {
template <typename Vec>
Vec evolution_product_impl(const MatrixSequence& seq, int t, const Vec& f) {
  if (t < 0 || t > seq.horizon()) throw HorizonExceededError(t, seq.horizon());
  if (f.size() != seq.n())
    throw DimensionMismatchError("observable length does not match state count");
  Vec g = f;
  for (int s = t; s >= 1; --s) g = seq.at(s).apply(g);
  return g;
}
}  // namespace

Eigen::VectorXd evolution_product(const MatrixSequence& seq, int t,
                                  const Eigen::VectorXd& f) {
  return evolution_product_impl(seq, t, f);
}

Eigen::VectorXcd evolution_product(const MatrixSequence& seq, int t,
                                   const Eigen::VectorXcd& f) {
  return evolution_product_impl(seq, t, f);
}

}  // namespace dilatron
