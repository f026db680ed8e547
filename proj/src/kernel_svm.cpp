#include "textclf/kernel_svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace textclf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTau = 1e-12;

double sparse_dot(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index == b[j].index) {
      dot += static_cast<double>(a[i].value) * static_cast<double>(b[j].value);
      ++i;
      ++j;
    } else if (a[i].index < b[j].index) {
      ++i;
    } else {
      ++j;
    }
  }
  return dot;
}

// Caches full kernel rows K(i, .) with least-recently-used eviction.  The
// rows hold the plain kernel (no label signs), so the three one-vs-rest
// subproblems share them.
class KernelRowCache {
 public:
  KernelRowCache(std::span<const SparseVector> samples, double gamma,
                 std::size_t cache_mb)
      : samples_(samples), gamma_(gamma), norms_(samples.size()) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      norms_[i] = sparse_dot(samples[i], samples[i]);
    }
    const std::size_t row_bytes = std::max<std::size_t>(samples.size(), 1) * sizeof(double);
    capacity_ = std::max<std::size_t>(2, cache_mb * 1024 * 1024 / row_bytes);
  }

  std::span<const double> row(std::size_t i) {
    if (const auto it = position_.find(i); it != position_.end()) {
      rows_.splice(rows_.begin(), rows_, it->second);
      return rows_.front().second;
    }
    std::vector<double> values(samples_.size());
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      const double dist = norms_[i] + norms_[j] - 2.0 * sparse_dot(samples_[i], samples_[j]);
      values[j] = std::exp(-gamma_ * dist);
    }
    rows_.emplace_front(i, std::move(values));
    position_[i] = rows_.begin();
    if (rows_.size() > capacity_) {
      position_.erase(rows_.back().first);
      rows_.pop_back();
    }
    return rows_.front().second;
  }

 private:
  std::span<const SparseVector> samples_;
  double gamma_;
  std::vector<double> norms_;
  std::size_t capacity_;
  std::list<std::pair<std::size_t, std::vector<double>>> rows_;
  std::unordered_map<std::size_t, decltype(rows_)::iterator> position_;
};

struct BinarySolution {
  std::vector<double> alpha;
  double rho = 0.0;
};

// Sequential minimal optimization for one soft-margin subproblem
//   min_a  0.5 a^T Q a - e^T a,   0 <= a_i <= C,   y^T a = 0,
// with Q_ij = y_i y_j K_ij.  The working pair is chosen by maximal
// violation for i and the largest second-order objective decrease for j;
// iteration stops once the duality gap drops below `tolerance`.
BinarySolution smo_solve(KernelRowCache& kernel, std::span<const double> y, double C,
                         double tolerance, long long max_iterations) {
  const std::size_t l = y.size();
  BinarySolution sol;
  sol.alpha.assign(l, 0.0);
  std::vector<double>& alpha = sol.alpha;
  std::vector<double> grad(l, -1.0);

  for (long long iter = 0; iter < max_iterations; ++iter) {
    double g_max = -kInf;
    std::size_t i = l;
    for (std::size_t t = 0; t < l; ++t) {
      const bool in_up = y[t] > 0.0 ? alpha[t] < C : alpha[t] > 0.0;
      if (!in_up) continue;
      const double value = -y[t] * grad[t];
      if (value >= g_max) {
        g_max = value;
        i = t;
      }
    }
    if (i == l) break;

    const auto row_i = kernel.row(i);
    const double k_ii = row_i[i];
    double g_max2 = -kInf;
    double best_decrease = kInf;
    std::size_t j = l;
    for (std::size_t t = 0; t < l; ++t) {
      const bool in_low = y[t] > 0.0 ? alpha[t] > 0.0 : alpha[t] < C;
      if (!in_low) continue;
      const double value = y[t] * grad[t];
      g_max2 = std::max(g_max2, value);
      const double grad_diff = g_max + value;
      if (grad_diff <= 0.0) continue;
      // The RBF diagonal K(t, t) is exactly 1, so no row fetch is needed.
      double quad = k_ii + 1.0 - 2.0 * y[i] * y[t] * row_i[t];
      if (quad <= 0.0) quad = kTau;
      const double decrease = -(grad_diff * grad_diff) / quad;
      if (decrease <= best_decrease) {
        best_decrease = decrease;
        j = t;
      }
    }
    if (g_max + g_max2 < tolerance || j == l) break;

    const auto row_j = kernel.row(j);
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = row_i[i] + row_j[j] + 2.0 * row_i[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else {
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = -diff;
        }
      }
      if (diff > 0.0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = C + diff;
        }
      }
    } else {
      double quad = row_i[i] + row_j[j] - 2.0 * row_i[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = sum;
        }
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else {
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = sum;
        }
      }
    }

    const double delta_i = alpha[i] - old_i;
    const double delta_j = alpha[j] - old_j;
    for (std::size_t t = 0; t < l; ++t) {
      grad[t] += y[i] * y[t] * row_i[t] * delta_i + y[j] * y[t] * row_j[t] * delta_j;
    }
  }

  double upper = kInf;
  double lower = -kInf;
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < l; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= C) {
      if (y[t] < 0.0) {
        upper = std::min(upper, yg);
      } else {
        lower = std::max(lower, yg);
      }
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0.0) {
        upper = std::min(upper, yg);
      } else {
        lower = std::max(lower, yg);
      }
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  sol.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (upper + lower) / 2.0;
  return sol;
}

void validate_kernel_input(std::span<const SparseVector> samples,
                           std::span<const int> labels, std::size_t dim, int n_classes,
                           const KernelTrainOptions& opts) {
  if (samples.size() != labels.size()) {
    throw std::invalid_argument("sample/label count mismatch");
  }
  if (samples.size() < 2) {
    throw std::invalid_argument("training needs at least two samples");
  }
  if (n_classes < 2) throw std::invalid_argument("training needs at least two classes");
  if (!(opts.C > 0.0)) throw std::invalid_argument("C must be positive");
  if (!(opts.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(opts.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (opts.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be positive");
  }
  std::vector<std::size_t> per_class(static_cast<std::size_t>(n_classes), 0);
  for (const int label : labels) {
    if (label < 0 || label >= n_classes) {
      throw std::invalid_argument("label outside [0, n_classes)");
    }
    ++per_class[static_cast<std::size_t>(label)];
  }
  for (int c = 0; c < n_classes; ++c) {
    if (per_class[static_cast<std::size_t>(c)] == 0) {
      throw std::invalid_argument("every class needs at least one training sample");
    }
  }
  for (const auto& sample : samples) {
    for (const auto& entry : sample) {
      if (entry.index >= dim) {
        throw std::invalid_argument("feature index exceeds dimensionality");
      }
    }
  }
}

}  // namespace

KernelModel train_rbf(std::span<const SparseVector> samples, std::span<const int> labels,
                      std::size_t dim, int n_classes, const KernelTrainOptions& opts) {
  validate_kernel_input(samples, labels, dim, n_classes, opts);

  const std::size_t l = samples.size();
  KernelRowCache kernel(samples, opts.gamma, opts.cache_mb);

  std::vector<std::vector<double>> coef(static_cast<std::size_t>(n_classes));
  std::vector<double> bias(static_cast<std::size_t>(n_classes));
  std::vector<double> y(l);
  for (int c = 0; c < n_classes; ++c) {
    for (std::size_t i = 0; i < l; ++i) y[i] = labels[i] == c ? 1.0 : -1.0;
    auto sol = smo_solve(kernel, y, opts.C, opts.tolerance, opts.max_iterations);
    auto& out = coef[static_cast<std::size_t>(c)];
    out.resize(l);
    for (std::size_t i = 0; i < l; ++i) out[i] = y[i] * sol.alpha[i];
    bias[static_cast<std::size_t>(c)] = -sol.rho;
  }

  // Keep only rows referenced by at least one subproblem.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < l; ++i) {
    for (int c = 0; c < n_classes; ++c) {
      if (coef[static_cast<std::size_t>(c)][i] != 0.0) {
        kept.push_back(i);
        break;
      }
    }
  }

  KernelModel model;
  model.n_classes = n_classes;
  model.dim = dim;
  model.gamma = opts.gamma;
  model.C = opts.C;
  model.bias = std::move(bias);
  model.support_vectors.reserve(kept.size());
  for (const std::size_t i : kept) model.support_vectors.push_back(samples[i]);
  model.dual_coef.resize(static_cast<std::size_t>(n_classes));
  for (int c = 0; c < n_classes; ++c) {
    auto& out = model.dual_coef[static_cast<std::size_t>(c)];
    out.reserve(kept.size());
    for (const std::size_t i : kept) out.push_back(coef[static_cast<std::size_t>(c)][i]);
  }
  return model;
}

KernelModel train_rbf(std::span<const SparseVector> samples,
                      std::span<const Label> labels, std::size_t dim,
                      const KernelTrainOptions& opts) {
  std::vector<int> indices(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) indices[i] = label_index(labels[i]);
  return train_rbf(samples, indices, dim, kNumClasses, opts);
}

double rbf_kernel(const SparseVector& a, const SparseVector& b, double gamma) {
  const double dist = sparse_dot(a, a) + sparse_dot(b, b) - 2.0 * sparse_dot(a, b);
  return std::exp(-gamma * dist);
}

std::vector<double> kernel_decision_values(const KernelModel& model,
                                           const SparseVector& x) {
  for (const auto& entry : x) {
    if (entry.index >= model.dim) {
      throw std::out_of_range("feature index exceeds model dimensionality");
    }
  }
  std::vector<double> k(model.support_vectors.size());
  for (std::size_t i = 0; i < model.support_vectors.size(); ++i) {
    k[i] = rbf_kernel(model.support_vectors[i], x, model.gamma);
  }
  std::vector<double> scores(static_cast<std::size_t>(model.n_classes));
  for (int c = 0; c < model.n_classes; ++c) {
    const auto& coef = model.dual_coef[static_cast<std::size_t>(c)];
    double score = model.bias[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < k.size(); ++i) score += coef[i] * k[i];
    scores[static_cast<std::size_t>(c)] = score;
  }
  return scores;
}

int predict_rbf_index(const KernelModel& model, const SparseVector& x) {
  const auto scores = kernel_decision_values(model, x);
  int best = 0;
  for (int c = 1; c < model.n_classes; ++c) {
    if (scores[static_cast<std::size_t>(c)] > scores[static_cast<std::size_t>(best)]) {
      best = c;
    }
  }
  return best;
}

Label predict_rbf(const KernelModel& model, const SparseVector& x) {
  if (model.n_classes != kNumClasses) {
    throw std::logic_error("label prediction needs a three-class model");
  }
  return label_from_index(predict_rbf_index(model, x));
}

}  // namespace textclf
