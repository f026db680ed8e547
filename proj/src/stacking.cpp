#include "textclf/stacking.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace textclf {

namespace {

std::vector<std::string> meta_column_names(std::size_t n_specs) {
  std::vector<std::string> names;
  names.reserve(n_specs * static_cast<std::size_t>(kNumClasses));
  for (std::size_t s = 0; s < n_specs; ++s) {
    for (int c = 0; c < kNumClasses; ++c) {
      names.push_back("spec" + std::to_string(s) + "_class" + std::to_string(c));
    }
  }
  return names;
}

SparseVector dense_to_sparse(std::span<const double> row) {
  SparseVector vec;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != 0.0) {
      vec.push_back({static_cast<std::uint32_t>(i), static_cast<float>(row[i])});
    }
  }
  return vec;
}

}  // namespace

void MetaDataset::validate() const {
  const std::size_t width = features.cols;
  if (width == 0 || width % static_cast<std::size_t>(kNumClasses) != 0) {
    throw std::invalid_argument("meta-dataset width must be a positive multiple of 3");
  }
  if (features.rows != labels.size()) {
    throw std::invalid_argument("meta-dataset row/label count mismatch");
  }
  if (column_names.size() != width) {
    throw std::invalid_argument("meta-dataset column name count mismatch");
  }
  for (std::size_t r = 0; r < features.rows; ++r) {
    for (std::size_t block = 0; block < width; block += kNumClasses) {
      double sum = 0.0;
      for (int c = 0; c < kNumClasses; ++c) {
        const double value = features.at(r, block + static_cast<std::size_t>(c));
        if (value < 0.0 || !std::isfinite(value)) {
          throw std::invalid_argument("meta-dataset support negative or non-finite");
        }
        sum += value;
      }
      if (std::fabs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("meta-dataset block does not sum to one");
      }
    }
  }
}

void MetaDataset::dump(std::ostream& out) const {
  for (const auto& name : column_names) out << name << '\t';
  out << "label\n";
  for (std::size_t r = 0; r < features.rows; ++r) {
    for (std::size_t c = 0; c < features.cols; ++c) out << features.at(r, c) << '\t';
    out << labels[r] << '\n';
  }
}

MetaDataset generate_meta_features(const PipelineContext& ctx,
                                   std::span<const std::size_t> train_indices,
                                   std::span<const FeatureSpaceSpec> specs,
                                   int inner_k, std::uint64_t seed,
                                   MetaProvenance* provenance) {
  if (specs.empty()) throw std::invalid_argument("no base feature spaces given");
  if (inner_k < 2) throw std::invalid_argument("inner fold count must be >= 2");

  const std::size_t n = train_indices.size();
  const auto slice_labels = labels_for(*ctx.corpus, train_indices);
  const auto inner = stratified_folds(std::span<const Label>(slice_labels), inner_k, seed);

  MetaDataset meta;
  meta.features = DenseMatrix(n, specs.size() * static_cast<std::size_t>(kNumClasses));
  meta.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) meta.labels[i] = label_index(slice_labels[i]);
  meta.column_names = meta_column_names(specs.size());

  if (provenance != nullptr) {
    provenance->inner_fold.assign(inner.assignment.begin(), inner.assignment.end());
    provenance->trained_on.assign(static_cast<std::size_t>(inner_k),
                                  std::vector<bool>(n, false));
  }

  for (int fold = 0; fold < inner_k; ++fold) {
    // Positions are relative to the slice; translate to corpus indices.
    const auto train_pos = inner.train_indices(fold);
    const auto test_pos = inner.test_indices(fold);
    std::vector<std::size_t> fold_train;
    fold_train.reserve(train_pos.size());
    for (const std::size_t p : train_pos) fold_train.push_back(train_indices[p]);

    if (provenance != nullptr) {
      for (const std::size_t p : train_pos) {
        provenance->trained_on[static_cast<std::size_t>(fold)][p] = true;
      }
    }

    for (std::size_t s = 0; s < specs.size(); ++s) {
      const auto model = train_space_model(
          ctx, std::span<const FeatureSpaceSpec>(&specs[s], 1), fold_train,
          mix_seed(seed, static_cast<std::uint64_t>(fold), s));
      for (const std::size_t p : test_pos) {
        const auto supports = space_supports(ctx, model, train_indices[p]);
        for (int c = 0; c < kNumClasses; ++c) {
          meta.features.at(p, s * static_cast<std::size_t>(kNumClasses) +
                                  static_cast<std::size_t>(c)) = supports[c];
        }
      }
    }
  }
  return meta;
}

MetaDataset meta_features_for_test(const PipelineContext& ctx,
                                   std::span<const SpaceModel> models,
                                   std::span<const std::size_t> test_indices) {
  if (models.empty()) throw std::invalid_argument("no base models given");
  MetaDataset meta;
  meta.features = DenseMatrix(test_indices.size(),
                              models.size() * static_cast<std::size_t>(kNumClasses));
  meta.labels.resize(test_indices.size());
  meta.column_names = meta_column_names(models.size());
  for (std::size_t r = 0; r < test_indices.size(); ++r) {
    meta.labels[r] = label_index(ctx.corpus->at(test_indices[r]).label);
    for (std::size_t s = 0; s < models.size(); ++s) {
      const auto supports = space_supports(ctx, models[s], test_indices[r]);
      for (int c = 0; c < kNumClasses; ++c) {
        meta.features.at(r, s * static_cast<std::size_t>(kNumClasses) +
                                static_cast<std::size_t>(c)) = supports[c];
      }
    }
  }
  return meta;
}

std::string meta_kind_name(MetaKind kind) {
  return kind == MetaKind::Linear ? "linear" : "rbf";
}

std::optional<MetaKind> meta_kind_from_name(std::string_view name) {
  if (name == "linear") return MetaKind::Linear;
  if (name == "rbf") return MetaKind::Rbf;
  return std::nullopt;
}

MetaModel train_meta(const MetaDataset& meta, MetaKind kind,
                     const PipelineOptions& options, std::uint64_t seed) {
  meta.validate();
  std::vector<SparseVector> samples;
  samples.reserve(meta.features.rows);
  for (std::size_t r = 0; r < meta.features.rows; ++r) {
    samples.push_back(dense_to_sparse(meta.features.row_view(r)));
  }

  MetaModel model;
  model.kind = kind;
  if (kind == MetaKind::Linear) {
    LinearTrainOptions opts = options.svm;
    opts.seed = seed;
    model.linear = train_linear(samples, std::span<const int>(meta.labels),
                                meta.features.cols, kNumClasses, opts);
  } else {
    KernelTrainOptions opts = options.rbf;
    if (!(opts.gamma > 0.0)) {
      opts.gamma = 1.0 / static_cast<double>(meta.features.cols);
    }
    model.kernel = train_rbf(samples, std::span<const int>(meta.labels),
                             meta.features.cols, kNumClasses, opts);
  }
  return model;
}

int predict_meta(const MetaModel& model, std::span<const double> meta_row) {
  const auto x = dense_to_sparse(meta_row);
  return model.kind == MetaKind::Linear ? predict_index(model.linear, x)
                                        : predict_rbf_index(model.kernel, x);
}

}  // namespace textclf
