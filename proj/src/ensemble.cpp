#include "textclf/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace textclf {

namespace {

// Shared argmax with the lowest-index tie rule.
template <typename T>
int lowest_argmax(std::span<const T> totals) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < totals.size(); ++c) {
    if (totals[c] > totals[best]) best = c;
  }
  return static_cast<int>(best);
}

}  // namespace

DecisionProfile::DecisionProfile(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), values_(n_rows * n_cols, 0.0) {
  if (n_rows == 0 || n_cols == 0) {
    throw std::invalid_argument("decision profile needs at least one row and column");
  }
}

double& DecisionProfile::at(std::size_t row, std::size_t col) {
  if (row >= n_rows_ || col >= n_cols_) {
    throw std::out_of_range("decision profile index out of range");
  }
  return values_[row * n_cols_ + col];
}

double DecisionProfile::at(std::size_t row, std::size_t col) const {
  if (row >= n_rows_ || col >= n_cols_) {
    throw std::out_of_range("decision profile index out of range");
  }
  return values_[row * n_cols_ + col];
}

std::span<double> DecisionProfile::row(std::size_t index) {
  if (index >= n_rows_) throw std::out_of_range("decision profile row out of range");
  return {values_.data() + index * n_cols_, n_cols_};
}

std::span<const double> DecisionProfile::row(std::size_t index) const {
  if (index >= n_rows_) throw std::out_of_range("decision profile row out of range");
  return {values_.data() + index * n_cols_, n_cols_};
}

void DecisionProfile::validate() const {
  for (std::size_t r = 0; r < n_rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < n_cols_; ++c) {
      const double value = at(r, c);
      if (value < 0.0 || !std::isfinite(value)) {
        throw std::invalid_argument("decision profile entry negative or non-finite");
      }
      sum += value;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("decision profile row does not sum to one");
    }
  }
}

std::string fusion_rule_name(FusionRule rule) {
  switch (rule) {
    case FusionRule::Plurality:
      return "vote";
    case FusionRule::Mean:
      return "mean";
    case FusionRule::Median:
      return "median";
    case FusionRule::Borda:
      return "borda";
  }
  return {};
}

std::optional<FusionRule> fusion_rule_from_name(std::string_view name) {
  if (name == "vote") return FusionRule::Plurality;
  if (name == "mean") return FusionRule::Mean;
  if (name == "median") return FusionRule::Median;
  if (name == "borda") return FusionRule::Borda;
  return std::nullopt;
}

int plurality_vote(const DecisionProfile& profile) {
  profile.validate();
  std::vector<int> votes(profile.rows());
  for (std::size_t r = 0; r < profile.rows(); ++r) {
    votes[r] = lowest_argmax(profile.row(r));
  }
  return plurality_vote(votes, profile.cols());
}

int plurality_vote(std::span<const int> votes, std::size_t n_classes) {
  if (votes.empty()) throw std::invalid_argument("no votes to fuse");
  std::vector<std::size_t> tally(n_classes, 0);
  for (const int vote : votes) {
    if (vote < 0 || static_cast<std::size_t>(vote) >= n_classes) {
      throw std::invalid_argument("vote outside class range");
    }
    ++tally[static_cast<std::size_t>(vote)];
  }
  return lowest_argmax(std::span<const std::size_t>(tally));
}

int mean_probability(const DecisionProfile& profile) {
  profile.validate();
  std::vector<double> totals(profile.cols(), 0.0);
  for (std::size_t r = 0; r < profile.rows(); ++r) {
    for (std::size_t c = 0; c < profile.cols(); ++c) totals[c] += profile.at(r, c);
  }
  return lowest_argmax(std::span<const double>(totals));
}

int median_probability(const DecisionProfile& profile) {
  profile.validate();
  std::vector<double> medians(profile.cols());
  std::vector<double> column(profile.rows());
  for (std::size_t c = 0; c < profile.cols(); ++c) {
    for (std::size_t r = 0; r < profile.rows(); ++r) column[r] = profile.at(r, c);
    std::sort(column.begin(), column.end());
    const std::size_t mid = column.size() / 2;
    medians[c] = column.size() % 2 == 1 ? column[mid]
                                        : 0.5 * (column[mid - 1] + column[mid]);
  }
  return lowest_argmax(std::span<const double>(medians));
}

int borda_count(const DecisionProfile& profile) {
  profile.validate();
  const std::size_t n = profile.cols();
  std::vector<std::uint64_t> points(n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t r = 0; r < profile.rows(); ++r) {
    const auto row = profile.row(r);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Higher support ranks first; equal supports keep index order, so the
    // lower class index takes the better rank.
    std::stable_sort(order.begin(), order.end(),
                     [&row](std::size_t a, std::size_t b) { return row[a] > row[b]; });
    for (std::size_t rank = 0; rank < n; ++rank) {
      points[order[rank]] += static_cast<std::uint64_t>(n - rank);
    }
  }
  return lowest_argmax(std::span<const std::uint64_t>(points));
}

int fuse(const DecisionProfile& profile, FusionRule rule) {
  switch (rule) {
    case FusionRule::Plurality:
      return plurality_vote(profile);
    case FusionRule::Mean:
      return mean_probability(profile);
    case FusionRule::Median:
      return median_probability(profile);
    case FusionRule::Borda:
      return borda_count(profile);
  }
  throw std::invalid_argument("unknown fusion rule");
}

}  // namespace textclf
