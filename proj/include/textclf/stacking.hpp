#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "textclf/pipeline.hpp"
#include "textclf/util.hpp"

namespace textclf {

// Level-one training data: one dense row per document holding the class
// supports of every base classifier, blocks ordered classifier-then-class.
struct MetaDataset {
  DenseMatrix features;
  std::vector<int> labels;                // class index per row
  std::vector<std::string> column_names;  // "spec{i}_class{j}"

  // Throws unless the width is 3 * (number of blocks), every entry is a
  // valid support, and each 3-wide block sums to one within 1e-9.
  void validate() const;

  // Delimited dump: header with the column names plus "label", then one
  // row per instance.
  void dump(std::ostream& out) const;
};

// Construction record for auditing leakage freedom: row i was produced by
// the base models of inner fold `inner_fold[i]`, and `trained_on[f][i]`
// says whether slice position i was used to train inner fold f's models.
struct MetaProvenance {
  std::vector<int> inner_fold;
  std::vector<std::vector<bool>> trained_on;
};

// Builds the meta-dataset for `train_indices` by inner stratified
// cross-validation: the supports for each document come from base models
// trained on the other inner folds only.  Deterministic given `seed`.
MetaDataset generate_meta_features(const PipelineContext& ctx,
                                   std::span<const std::size_t> train_indices,
                                   std::span<const FeatureSpaceSpec> specs,
                                   int inner_k, std::uint64_t seed,
                                   MetaProvenance* provenance = nullptr);

// Test-side meta-features: `models` must be the base models retrained on
// the full training slice, in the same spec order as the training-side
// dataset so the columns line up.
MetaDataset meta_features_for_test(const PipelineContext& ctx,
                                   std::span<const SpaceModel> models,
                                   std::span<const std::size_t> test_indices);

enum class MetaKind { Linear, Rbf };

std::string meta_kind_name(MetaKind kind);
std::optional<MetaKind> meta_kind_from_name(std::string_view name);

struct MetaModel {
  MetaKind kind = MetaKind::Linear;
  LinearModel linear;  // populated when kind == Linear
  KernelModel kernel;  // populated when kind == Rbf
};

// Fits the requested meta-classifier on the meta-dataset.  A non-positive
// rbf gamma resolves to 1 / width.  `seed` feeds the linear trainer; the
// kernel trainer needs none.
MetaModel train_meta(const MetaDataset& meta, MetaKind kind,
                     const PipelineOptions& options, std::uint64_t seed);

int predict_meta(const MetaModel& model, std::span<const double> meta_row);

}  // namespace textclf
