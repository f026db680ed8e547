#include "textclf/linear_svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "textclf/util.hpp"

namespace textclf {

namespace {

void validate_training_input(std::span<const SparseVector> samples,
                             std::span<const int> labels, std::size_t dim,
                             int n_classes, const LinearTrainOptions& opts) {
  if (samples.size() != labels.size()) {
    throw std::invalid_argument("sample/label count mismatch");
  }
  if (samples.size() < 2) {
    throw std::invalid_argument("training needs at least two samples");
  }
  if (n_classes < 2) throw std::invalid_argument("training needs at least two classes");
  if (!(opts.C > 0.0)) throw std::invalid_argument("C must be positive");
  if (!(opts.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (opts.max_epochs < 1) throw std::invalid_argument("max_epochs must be positive");
  std::unordered_set<int> seen;
  for (const int label : labels) {
    if (label < 0 || label >= n_classes) {
      throw std::invalid_argument("label outside [0, n_classes)");
    }
    seen.insert(label);
  }
  if (seen.size() < 2) {
    throw std::invalid_argument("training needs at least two distinct labels");
  }
  for (const auto& sample : samples) {
    for (const auto& entry : sample) {
      if (entry.index >= dim) {
        throw std::invalid_argument("feature index exceeds dimensionality");
      }
    }
  }
}

// Dual coordinate descent for the L1-loss binary subproblem
//   min_a 0.5 a^T Q a - e^T a,  0 <= a_i <= C,  Q_ij = y_i y_j x_i.x_j,
// over samples augmented with a constant-1 bias feature.  Coordinates are
// visited in a freshly shuffled order each epoch; bound-stuck coordinates
// whose projected gradient lies outside the last epoch's range are shrunk
// from the active set and revisited in one final full pass before
// convergence is declared.  `w` comes back with dim + 1 entries, the bias
// last.
void solve_one_vs_rest(std::span<const SparseVector> samples,
                       std::span<const int> labels, int positive_class,
                       std::size_t dim, std::span<const double> qii,
                       const LinearTrainOptions& opts, std::uint64_t seed,
                       std::vector<double>& w) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t l = samples.size();
  const double C = opts.C;
  w.assign(dim + 1, 0.0);
  std::vector<double> alpha(l, 0.0);
  std::vector<double> y(l);
  for (std::size_t i = 0; i < l; ++i) {
    y[i] = labels[i] == positive_class ? 1.0 : -1.0;
  }
  std::vector<std::size_t> index(l);
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::size_t active = l;
  double pg_max_old = kInf;
  double pg_min_old = -kInf;
  Rng rng(seed);

  for (int epoch = 0; epoch < opts.max_epochs; ++epoch) {
    double pg_max = -kInf;
    double pg_min = kInf;
    for (std::size_t s = 0; s < active; ++s) {
      const std::size_t j = s + rng.bounded(active - s);
      std::swap(index[s], index[j]);
    }
    for (std::size_t s = 0; s < active; ++s) {
      const std::size_t i = index[s];
      const double yi = y[i];
      double g = w[dim];
      for (const auto& entry : samples[i]) g += w[entry.index] * entry.value;
      g = yi * g - 1.0;

      double pg = 0.0;
      if (alpha[i] == 0.0) {
        if (g > pg_max_old) {
          std::swap(index[s], index[--active]);
          --s;
          continue;
        }
        if (g < 0.0) pg = g;
      } else if (alpha[i] == C) {
        if (g < pg_min_old) {
          std::swap(index[s], index[--active]);
          --s;
          continue;
        }
        if (g > 0.0) pg = g;
      } else {
        pg = g;
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);

      if (std::fabs(pg) > 1e-12) {
        const double old_alpha = alpha[i];
        alpha[i] = std::min(std::max(old_alpha - g / qii[i], 0.0), C);
        const double delta = (alpha[i] - old_alpha) * yi;
        if (delta != 0.0) {
          w[dim] += delta;
          for (const auto& entry : samples[i]) w[entry.index] += delta * entry.value;
        }
      }
    }

    if (pg_max - pg_min <= opts.tolerance) {
      if (active == l) break;
      active = l;
      pg_max_old = kInf;
      pg_min_old = -kInf;
      continue;
    }
    pg_max_old = pg_max <= 0.0 ? kInf : pg_max;
    pg_min_old = pg_min >= 0.0 ? -kInf : pg_min;
  }
}

}  // namespace

LinearModel train_linear(std::span<const SparseVector> samples,
                         std::span<const int> labels, std::size_t dim, int n_classes,
                         const LinearTrainOptions& opts) {
  validate_training_input(samples, labels, dim, n_classes, opts);

  std::vector<double> qii(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double norm = 1.0;  // constant-1 bias feature
    for (const auto& entry : samples[i]) {
      norm += static_cast<double>(entry.value) * static_cast<double>(entry.value);
    }
    qii[i] = norm;
  }

  LinearModel model;
  model.dim = dim;
  model.n_classes = n_classes;
  model.C = opts.C;
  model.weights.resize(static_cast<std::size_t>(n_classes));
  model.bias.assign(static_cast<std::size_t>(n_classes), 0.0);

  std::vector<double> w;
  for (int c = 0; c < n_classes; ++c) {
    solve_one_vs_rest(samples, labels, c, dim, qii, opts,
                      mix_seed(opts.seed, static_cast<std::uint64_t>(c)), w);
    model.bias[static_cast<std::size_t>(c)] = w[dim];
    w.pop_back();
    model.weights[static_cast<std::size_t>(c)] = w;
    w.push_back(0.0);  // restore size for reuse
  }
  return model;
}

LinearModel train_linear(std::span<const SparseVector> samples,
                         std::span<const Label> labels, std::size_t dim,
                         const LinearTrainOptions& opts) {
  std::vector<int> indices(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) indices[i] = label_index(labels[i]);
  return train_linear(samples, indices, dim, kNumClasses, opts);
}

std::vector<double> decision_values(const LinearModel& model, const SparseVector& x) {
  for (const auto& entry : x) {
    if (entry.index >= model.dim) {
      throw std::out_of_range("feature index exceeds model dimensionality");
    }
  }
  std::vector<double> scores(static_cast<std::size_t>(model.n_classes));
  for (int c = 0; c < model.n_classes; ++c) {
    const auto& w = model.weights[static_cast<std::size_t>(c)];
    double score = model.bias[static_cast<std::size_t>(c)];
    for (const auto& entry : x) score += w[entry.index] * entry.value;
    scores[static_cast<std::size_t>(c)] = score;
  }
  return scores;
}

std::vector<double> softmax(std::span<const double> scores) {
  if (scores.empty()) throw std::invalid_argument("softmax of empty score vector");
  const double peak = *std::max_element(scores.begin(), scores.end());
  std::vector<double> probs(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    probs[i] = std::exp(scores[i] - peak);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

namespace {

std::vector<double> minmax_map(std::span<const double> scores) {
  const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> probs(scores.size());
  if (hi == lo) {
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(scores.size()));
    return probs;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    probs[i] = (scores[i] - lo) / (hi - lo);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

}  // namespace

std::vector<double> class_probabilities(const LinearModel& model, const SparseVector& x,
                                        ProbMap map) {
  const auto scores = decision_values(model, x);
  return map == ProbMap::Softmax ? softmax(scores) : minmax_map(scores);
}

int predict_index(const LinearModel& model, const SparseVector& x) {
  const auto scores = decision_values(model, x);
  int best = 0;
  for (int c = 1; c < model.n_classes; ++c) {
    if (scores[static_cast<std::size_t>(c)] > scores[static_cast<std::size_t>(best)]) {
      best = c;
    }
  }
  return best;
}

Label predict(const LinearModel& model, const SparseVector& x) {
  if (model.n_classes != kNumClasses) {
    throw std::logic_error("label prediction needs a three-class model");
  }
  return label_from_index(predict_index(model, x));
}

double primal_objective(const LinearModel& model, int class_index,
                        std::span<const SparseVector> samples,
                        std::span<const int> labels) {
  if (class_index < 0 || class_index >= model.n_classes) {
    throw std::invalid_argument("class index out of range");
  }
  if (samples.size() != labels.size()) {
    throw std::invalid_argument("sample/label count mismatch");
  }
  const auto& w = model.weights[static_cast<std::size_t>(class_index)];
  const double b = model.bias[static_cast<std::size_t>(class_index)];
  double reg = b * b;
  for (const double wi : w) reg += wi * wi;
  double loss = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double score = b;
    for (const auto& entry : samples[i]) score += w[entry.index] * entry.value;
    const double y = labels[i] == class_index ? 1.0 : -1.0;
    loss += std::max(0.0, 1.0 - y * score);
  }
  return 0.5 * reg + model.C * loss;
}

}  // namespace textclf
