#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "textclf/brown.hpp"
#include "textclf/corpus.hpp"
#include "textclf/features.hpp"
#include "textclf/kernel_svm.hpp"
#include "textclf/linear_svm.hpp"
#include "textclf/preprocess.hpp"

namespace textclf {

struct PipelineOptions {
  LinearTrainOptions svm;
  KernelTrainOptions rbf;  // gamma <= 0 resolves to 1 / dimensionality at train time
  ProbMap prob_map = ProbMap::Softmax;
  bool binary_features = false;
};

// Shared, read-only state for one evaluation run.  The lexicon may be null
// as long as no cluster feature space is requested.
struct PipelineContext {
  const Corpus* corpus = nullptr;
  const PreprocessedCorpus* pre = nullptr;
  const BrownLexicon* lexicon = nullptr;
  PipelineOptions options;
};

// A linear classifier bound to the vocabulary built from its training slice.
struct SpaceModel {
  std::vector<FeatureSpaceSpec> specs;
  Vocabulary vocabulary;
  LinearModel model;
};

std::vector<Label> labels_for(const Corpus& corpus,
                              std::span<const std::size_t> indices);

// Builds the vocabulary over `train_indices` only, then fits the linear
// SVM on those documents.  `seed` replaces options.svm.seed so callers can
// derive distinct deterministic streams per fold and space.
SpaceModel train_space_model(const PipelineContext& ctx,
                             std::span<const FeatureSpaceSpec> specs,
                             std::span<const std::size_t> train_indices,
                             std::uint64_t seed);

SparseVector space_vector(const PipelineContext& ctx, const SpaceModel& model,
                          std::size_t doc_index);
std::vector<double> space_supports(const PipelineContext& ctx, const SpaceModel& model,
                                   std::size_t doc_index);
int space_predict(const PipelineContext& ctx, const SpaceModel& model,
                  std::size_t doc_index);

}  // namespace textclf
