#pragma once

#include <Eigen/Dense>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dilatron/errors.hpp"

namespace dilatron {

namespace tol {
// External validation slack (accepts human-entered decimals).
inline constexpr double kRowSum = 1e-9;
// Internal exactness for decomposition identities.
inline constexpr double kRecompose = 1e-12;
}  // namespace tol

// Largest admissible full label-set size N^N (N <= 6).
inline constexpr long long kDefaultLabelCap = 46656;

/// A map beta: {0..n-1} -> {0..n-1}, the matrix form of which is the
/// 0/1 row-stochastic matrix with d(i,j) = 1 iff beta(i) = j.
class DeterministicMap {
 public:
  explicit DeterministicMap(std::vector<int> image);

  int n() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_[i]; }
  const std::vector<int>& image() const { return image_; }

  bool is_identity() const;

  /// Mixed-radix code: digit k (base n, least significant first) holds
  /// image[k]. Bijective over all maps on n states.
  long long encode() const;
  static DeterministicMap decode(int n, long long code);

  Eigen::MatrixXd matrix() const;

  /// Composition (this after other): result(i) = this(other(i)).
  DeterministicMap after(const DeterministicMap& other) const;

  friend bool operator==(const DeterministicMap& a, const DeterministicMap& b) {
    return a.image_ == b.image_;
  }

 private:
  std::vector<int> image_;
};

/// Pull an observable back through a deterministic map: (Df)(i) = f(beta(i)).
template <typename Derived>
auto apply_to_observable(const DeterministicMap& beta,
                         const Eigen::MatrixBase<Derived>& f) {
  if (f.size() != beta.n())
    throw DimensionMismatchError("observable length does not match state count");
  typename Derived::PlainObject out(f.size());
  for (int i = 0; i < beta.n(); ++i) out(i) = f(beta(i));
  return out;
}

/// Row-stochastic n x n matrix; entries validated on construction.
class StochasticMatrix {
 public:
  /// Throws NegativeEntryError / RowSumViolationError on invalid input.
  static StochasticMatrix validated(Eigen::MatrixXd raw,
                                    double row_tol = tol::kRowSum);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  /// (Pf)(i) = sum_j p(i,j) f(j), for real or complex observables f.
  template <typename Derived>
  auto apply(const Eigen::MatrixBase<Derived>& f) const {
    if (f.size() != n())
      throw DimensionMismatchError("observable length does not match matrix size");
    return (entries_ * f.derived()).eval();
  }

 private:
  explicit StochasticMatrix(Eigen::MatrixXd entries)
      : entries_(std::move(entries)) {}
  Eigen::MatrixXd entries_;
};

/// An ordered, duplicate-free set of deterministic maps. Environment symbols
/// and decomposition weights refer to maps by position in this set.
class LabelSet {
 public:
  /// All n^n maps in encoding order. Guarded by cap.
  static LabelSet full(int n, long long cap = kDefaultLabelCap);

  /// The given maps in the given order (duplicates rejected).
  static LabelSet of(std::vector<DeterministicMap> maps);

  int n() const { return n_; }
  int size() const { return static_cast<int>(maps_.size()); }
  const DeterministicMap& map(int idx) const { return maps_[idx]; }
  const std::vector<DeterministicMap>& maps() const { return maps_; }

  std::optional<int> index_of(const DeterministicMap& m) const;
  std::optional<int> identity_index() const;

  bool same_as(const LabelSet& other) const;

 private:
  LabelSet(int n, std::vector<DeterministicMap> maps);
  int n_;
  std::vector<DeterministicMap> maps_;
  std::unordered_map<long long, int> by_code_;
};

/// Convex combination of deterministic matrices: one weight per label.
struct Decomposition {
  LabelSet labels;
  std::vector<double> weights;

  int n() const { return labels.n(); }
  int terms() const { return static_cast<int>(weights.size()); }
};

StochasticMatrix validate_stochastic(const Eigen::MatrixXd& raw,
                                     double row_tol = tol::kRowSum);

/// Full n^n-term decomposition with product weights
/// q(l) = prod_i p(i, beta_l(i)); zero-weight labels retained.
Decomposition canonical_decomposition(const StochasticMatrix& P,
                                      long long cap = kDefaultLabelCap);

/// Greedy residual peeling: at each step every row selects its largest
/// residual entry (ties to the smallest column), the resulting map is
/// subtracted with the largest feasible weight. At most n^2 - n + 1 terms,
/// and at most (nonzero entries) - n + 1; all weights positive;
/// deterministic for a given P.
Decomposition sparse_decomposition(const StochasticMatrix& P);

/// Weighted sum of the deterministic matrices of a decomposition.
StochasticMatrix recompose(const Decomposition& d);

/// Merge the supports (strictly positive weights) of several decompositions
/// into one label set, ordered by map encoding.
LabelSet support_union(const std::vector<Decomposition>& decs);

/// Re-express a decomposition's weights over a (super)set of labels.
std::vector<double> weights_on(const Decomposition& d, const LabelSet& labels);

/// Finite sequence P(1), ..., P(T); a homogeneous sequence stores one matrix.
class MatrixSequence {
 public:
  static MatrixSequence homogeneous(StochasticMatrix P, int horizon);
  static MatrixSequence of(std::vector<StochasticMatrix> matrices);

  int horizon() const { return horizon_; }
  int n() const { return matrices_.front().n(); }
  bool homogeneous_flag() const { return homogeneous_; }

  /// 1-based time index.
  const StochasticMatrix& at(int t) const;

 private:
  MatrixSequence(std::vector<StochasticMatrix> m, int horizon, bool hom);
  std::vector<StochasticMatrix> matrices_;
  int horizon_;
  bool homogeneous_;
};

/// f_t = P(1) ... P(t) f; t = 0 returns f unchanged.
Eigen::VectorXd evolution_product(const MatrixSequence& seq, int t,
                                  const Eigen::VectorXd& f);
Eigen::VectorXcd evolution_product(const MatrixSequence& seq, int t,
                                   const Eigen::VectorXcd& f);

}  // namespace dilatron
