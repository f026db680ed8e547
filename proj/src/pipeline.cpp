#include "textclf/pipeline.hpp"

#include <stdexcept>

namespace textclf {

std::vector<Label> labels_for(const Corpus& corpus,
                              std::span<const std::size_t> indices) {
  std::vector<Label> labels;
  labels.reserve(indices.size());
  for (const std::size_t i : indices) labels.push_back(corpus.at(i).label);
  return labels;
}

SpaceModel train_space_model(const PipelineContext& ctx,
                             std::span<const FeatureSpaceSpec> specs,
                             std::span<const std::size_t> train_indices,
                             std::uint64_t seed) {
  if (ctx.corpus == nullptr || ctx.pre == nullptr) {
    throw std::invalid_argument("pipeline context is missing corpus data");
  }
  for (const auto& spec : specs) {
    if (spec.needs_lexicon() && ctx.lexicon == nullptr) {
      throw std::invalid_argument("feature space '" + spec.name() +
                                  "' requires a cluster lexicon");
    }
  }
  if (train_indices.empty()) {
    throw std::invalid_argument("cannot train on an empty document slice");
  }

  SpaceModel out;
  out.specs.assign(specs.begin(), specs.end());
  out.vocabulary = build_vocabulary(*ctx.pre, specs, train_indices, ctx.lexicon);

  std::vector<SparseVector> samples;
  samples.reserve(train_indices.size());
  for (const std::size_t doc : train_indices) {
    samples.push_back(vectorize_document(*ctx.pre, doc, specs, out.vocabulary,
                                         ctx.lexicon, ctx.options.binary_features));
  }
  const auto labels = labels_for(*ctx.corpus, train_indices);

  LinearTrainOptions opts = ctx.options.svm;
  opts.seed = seed;
  out.model = train_linear(samples, labels, out.vocabulary.size(), opts);
  return out;
}

SparseVector space_vector(const PipelineContext& ctx, const SpaceModel& model,
                          std::size_t doc_index) {
  return vectorize_document(*ctx.pre, doc_index, model.specs, model.vocabulary,
                            ctx.lexicon, ctx.options.binary_features);
}

std::vector<double> space_supports(const PipelineContext& ctx, const SpaceModel& model,
                                   std::size_t doc_index) {
  return class_probabilities(model.model, space_vector(ctx, model, doc_index),
                             ctx.options.prob_map);
}

int space_predict(const PipelineContext& ctx, const SpaceModel& model,
                  std::size_t doc_index) {
  return predict_index(model.model, space_vector(ctx, model, doc_index));
}

}  // namespace textclf
