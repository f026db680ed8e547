#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "textclf/corpus.hpp"
#include "textclf/features.hpp"

namespace textclf {

struct LinearTrainOptions {
  double C = 1.0;
  double tolerance = 1e-4;
  int max_epochs = 1000;
  std::uint64_t seed = 42;
};

// One-vs-rest linear SVM.  The bias is learned as an implicit constant-1
// feature and stored separately, so `weights[c]` has exactly `dim` entries.
struct LinearModel {
  std::size_t dim = 0;
  int n_classes = 0;
  std::vector<std::vector<double>> weights;  // [class][feature]
  std::vector<double> bias;                  // [class]
  double C = 1.0;
};

// Trains one L1-loss SVM per class by dual coordinate descent.  Training is
// bitwise deterministic for fixed inputs and options.  Requires at least two
// samples covering at least two distinct labels; every feature index must be
// below `dim`.
LinearModel train_linear(std::span<const SparseVector> samples,
                         std::span<const int> labels, std::size_t dim, int n_classes,
                         const LinearTrainOptions& opts = {});

// Convenience overload for corpus labels.
LinearModel train_linear(std::span<const SparseVector> samples,
                         std::span<const Label> labels, std::size_t dim,
                         const LinearTrainOptions& opts = {});

// Per-class scores w_c·x + b_c.  Throws if `x` addresses a feature the model
// does not have.
std::vector<double> decision_values(const LinearModel& model, const SparseVector& x);

// How decision values are turned into a probability-like distribution.
enum class ProbMap {
  Softmax,  // exp-normalized scores
  MinMax,   // scores shifted to [0, 1] by min/max, then normalized
};

std::vector<double> softmax(std::span<const double> scores);
std::vector<double> class_probabilities(const LinearModel& model, const SparseVector& x,
                                        ProbMap map = ProbMap::Softmax);

// Argmax over decision values; exact ties resolve to the lowest class index.
int predict_index(const LinearModel& model, const SparseVector& x);
// Same, for three-class models trained on corpus labels.
Label predict(const LinearModel& model, const SparseVector& x);

// Primal objective of the one-vs-rest subproblem for `class_index`:
//   0.5 (|w|^2 + b^2) + C * sum_i max(0, 1 - y_i (w.x_i + b))
// with y_i = +1 for samples of that class and -1 otherwise.  The bias enters
// the regularizer because it is trained as an ordinary feature.
double primal_objective(const LinearModel& model, int class_index,
                        std::span<const SparseVector> samples,
                        std::span<const int> labels);

}  // namespace textclf
