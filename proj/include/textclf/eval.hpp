#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "textclf/ensemble.hpp"
#include "textclf/pipeline.hpp"
#include "textclf/stacking.hpp"

namespace textclf {

struct PerClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // False where the defining denominator was zero (the value is then 0).
  bool precision_defined = true;
  bool recall_defined = true;
  bool f1_defined = true;
};

using ConfusionMatrix = std::array<std::array<std::uint64_t, kNumClasses>, kNumClasses>;

struct EvaluationReport {
  std::string method;
  int k = 0;
  std::uint64_t seed = 0;
  std::uint64_t total = 0;
  double accuracy = 0.0;
  ConfusionMatrix confusion{};  // rows = gold, columns = predicted
  std::array<PerClassMetrics, kNumClasses> per_class{};
  PerClassMetrics macro_avg{};
  PerClassMetrics weighted_avg{};  // support-weighted; its recall equals accuracy
  std::vector<double> fold_accuracies;
};

// Standard precision/recall/F1 from a gold-by-predicted count matrix.
// Zero-denominator cases yield 0 with the matching flag cleared.
std::array<PerClassMetrics, kNumClasses> per_class_metrics(const ConfusionMatrix& confusion);
PerClassMetrics macro_average(const std::array<PerClassMetrics, kNumClasses>& per_class);
PerClassMetrics weighted_average(const std::array<PerClassMetrics, kNumClasses>& per_class,
                                 const ConfusionMatrix& confusion);

// Fraction of instances where at least one prediction row is correct.
// Every row must have the same length as `gold`.
double oracle_accuracy(std::span<const std::vector<int>> member_predictions,
                       std::span<const int> gold);

// Lossless JSON serialization of a report.
std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const std::string& text);

// What a cross-validated run evaluates.
struct SingleSpace {
  FeatureSpaceSpec spec;
};
struct CombinedSpaces {};  // all sixteen base spaces as one feature space
struct FusionMethod {
  FusionRule rule;
};
struct StackedMethod {
  MetaKind kind;
  int inner_k = 5;
};
struct MajorityDummy {};  // always predicts the training slice's modal class

using Method =
    std::variant<SingleSpace, CombinedSpaces, FusionMethod, StackedMethod, MajorityDummy>;

// Row name used in reports and the results table: "char4", "combined",
// "fusion_mean", "stack_rbf", "majority_baseline".
std::string method_name(const Method& method);

// Stratified k-fold cross-validation of one method.  Per fold: build the
// vocabulary and models on the training slice only, predict the test
// slice; predictions are pooled into a single report.  `jobs` bounds the
// number of folds evaluated concurrently; results do not depend on it.
EvaluationReport cross_validate(const PipelineContext& ctx, const Method& method, int k,
                                std::uint64_t seed, int jobs = 1);

struct LearningCurvePoint {
  double fraction = 0.0;
  double mean_train_size = 0.0;
  double mean_accuracy = 0.0;
  double stddev = 0.0;  // population std dev over fold accuracies
};

// Accuracy as a function of training-set size: per fraction in (0, 1],
// each fold trains on a stratified seeded subsample of its training slice
// and predicts its full test slice.  A fraction of 1.0 reduces exactly to
// cross_validate.
std::vector<LearningCurvePoint> learning_curve(const PipelineContext& ctx,
                                               const Method& method,
                                               std::span<const double> fractions, int k,
                                               std::uint64_t seed, int jobs = 1);

// One cross-validated report per configured run, fixed order: the majority
// baseline, the sixteen base spaces, the combined space, the four fusion
// rules, both meta-classifiers, and the oracle over the trained
// classifiers (the sixteen bases plus, unless disabled, the combined one).
struct RunAllResult {
  std::vector<EvaluationReport> rows;
};

RunAllResult run_all(const PipelineContext& ctx, int k, std::uint64_t seed, int inner_k,
                     int jobs = 1, bool oracle_includes_combined = true);

// Consolidated delimited table over the run_all rows.
std::string results_table(const RunAllResult& result);

}  // namespace textclf
