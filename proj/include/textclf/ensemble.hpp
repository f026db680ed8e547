#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textclf/corpus.hpp"

namespace textclf {

// Per-document stack of base-classifier outputs: one row per classifier,
// one column per class, each row a probability distribution.
class DecisionProfile {
 public:
  DecisionProfile(std::size_t n_rows, std::size_t n_cols);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }

  double& at(std::size_t row, std::size_t col);
  double at(std::size_t row, std::size_t col) const;
  std::span<double> row(std::size_t index);
  std::span<const double> row(std::size_t index) const;

  // Throws unless every entry is nonnegative and every row sums to one
  // within 1e-9.
  void validate() const;

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<double> values_;
};

enum class FusionRule { Plurality, Mean, Median, Borda };

std::string fusion_rule_name(FusionRule rule);
std::optional<FusionRule> fusion_rule_from_name(std::string_view name);

// Every rule returns the winning class index; all ties, both inside a row
// and between class totals, resolve toward the lowest class index.

// Each row votes for its argmax class; most votes wins.
int plurality_vote(const DecisionProfile& profile);
// Direct form over already-cast votes.
int plurality_vote(std::span<const int> votes, std::size_t n_classes);

// Argmax of the column means.
int mean_probability(const DecisionProfile& profile);

// Argmax of the column medians (midpoint of the middle pair when the
// number of rows is even).
int median_probability(const DecisionProfile& profile);

// Each row ranks the classes by support; rank r of N earns N - r + 1
// points.  Argmax of the integer point totals.
int borda_count(const DecisionProfile& profile);

int fuse(const DecisionProfile& profile, FusionRule rule);

}  // namespace textclf
