#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "textclf/corpus.hpp"
#include "textclf/features.hpp"

namespace textclf {

struct KernelTrainOptions {
  double C = 1.0;
  double gamma = 0.0;  // must be set > 0 by the caller
  double tolerance = 1e-3;
  long long max_iterations = 10'000'000;  // per one-vs-rest subproblem
  std::size_t cache_mb = 64;              // kernel row cache budget
};

// One-vs-rest SVM with an RBF kernel K(x, z) = exp(-gamma |x - z|^2).
// Only training rows that end up with a nonzero coefficient in at least one
// subproblem are kept.  The decision value for class c is
//   sum_i dual_coef[c][i] * K(sv_i, x) + bias[c].
struct KernelModel {
  int n_classes = 0;
  std::size_t dim = 0;
  double gamma = 0.0;
  double C = 1.0;
  std::vector<SparseVector> support_vectors;
  std::vector<std::vector<double>> dual_coef;  // [class][support vector]
  std::vector<double> bias;                    // [class]
};

// Trains one soft-margin subproblem per class with sequential minimal
// optimization.  Deterministic without any seed: the working-set choice and
// update order depend only on the data.  Requires at least one sample of
// every class; kernel rows are cached and shared across the subproblems.
KernelModel train_rbf(std::span<const SparseVector> samples, std::span<const int> labels,
                      std::size_t dim, int n_classes, const KernelTrainOptions& opts);

KernelModel train_rbf(std::span<const SparseVector> samples,
                      std::span<const Label> labels, std::size_t dim,
                      const KernelTrainOptions& opts);

// Per-class decision values for `x`.  Throws if `x` addresses a feature the
// model does not have.
std::vector<double> kernel_decision_values(const KernelModel& model,
                                           const SparseVector& x);

// Argmax over decision values; exact ties resolve to the lowest class index.
int predict_rbf_index(const KernelModel& model, const SparseVector& x);
Label predict_rbf(const KernelModel& model, const SparseVector& x);

// K(a, b) under `gamma`; exposed for verification.
double rbf_kernel(const SparseVector& a, const SparseVector& b, double gamma);

}  // namespace textclf
