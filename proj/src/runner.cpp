#include "textclf/runner.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <variant>

#include "textclf/analysis.hpp"
#include "textclf/brown.hpp"
#include "textclf/eval.hpp"
#include "textclf/svg.hpp"

namespace textclf {

namespace {

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

// All artifacts must be byte-identical across reruns, so they are written in
// binary mode and never carry timestamps or environment details.
void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

std::string confusion_tsv(const ConfusionMatrix& confusion) {
  std::string out = "gold\\predicted";
  for (int p = 0; p < kNumClasses; ++p) {
    out += '\t';
    out += label_name(label_from_index(p));
  }
  out += '\n';
  for (int g = 0; g < kNumClasses; ++g) {
    out += label_name(label_from_index(g));
    for (int p = 0; p < kNumClasses; ++p) {
      out += fmt("\t%llu", static_cast<unsigned long long>(confusion[g][p]));
    }
    out += '\n';
  }
  return out;
}

struct LoadedData {
  Corpus corpus;
  PreprocessedCorpus pre;
  std::optional<BrownLexicon> lexicon;
};

// Fails on missing paths before any file is opened, then loads the corpus
// (and the cluster lexicon when the run needs one).
LoadedData load_data(const Config& config, bool need_lexicon, std::ostream& status) {
  if (config.data_path.empty()) {
    throw ConfigError("data.path is not set (put it in the config file or pass --data)");
  }
  if (need_lexicon && config.brown_path.empty()) {
    throw ConfigError(
        "this run uses cluster features but brown.path is not set "
        "(put it in the config file or pass --brown)");
  }
  LoadedData data;
  data.corpus = load_corpus(config.data_path, config.data);
  data.pre = preprocess_corpus(data.corpus);
  status << "loaded " << data.corpus.size() << " documents (hate "
         << data.corpus.class_count(Label::Hate) << ", offensive "
         << data.corpus.class_count(Label::Offensive) << ", ok "
         << data.corpus.class_count(Label::Ok) << ")\n";
  if (need_lexicon) {
    data.lexicon = load_clusters(config.brown_path);
    status << "loaded " << data.lexicon->cluster_count() << " clusters covering "
           << data.lexicon->word_count() << " words\n";
  }
  return data;
}

PipelineContext make_context(const LoadedData& data, const Config& config) {
  PipelineContext ctx;
  ctx.corpus = &data.corpus;
  ctx.pre = &data.pre;
  ctx.lexicon = data.lexicon ? &*data.lexicon : nullptr;
  ctx.options = pipeline_options(config);
  return ctx;
}

bool method_needs_lexicon(const Method& method) {
  if (const auto* single = std::get_if<SingleSpace>(&method)) {
    return single->spec.needs_lexicon();
  }
  // Combined, fusion, and stacked runs all train every base space,
  // including the cluster ones; the dummy trains nothing.
  return !std::holds_alternative<MajorityDummy>(method);
}

// "combined" or a single feature-space name like "char4".
std::vector<FeatureSpaceSpec> specs_for_name(const std::string& name) {
  if (name == "combined") return base_specs();
  auto spec = FeatureSpaceSpec::from_name(name);
  if (!spec) {
    throw ConfigError("unknown feature space '" + name +
                      "' (expected char2..char8, word1..word3, skip1..skip3, "
                      "brown1..brown3, or combined)");
  }
  return {*spec};
}

std::filesystem::path ensure_out_dir(const Config& config) {
  std::filesystem::path out(config.run.out);
  std::filesystem::create_directories(out);
  return out;
}

std::vector<std::size_t> all_indices(const Corpus& corpus) {
  std::vector<std::size_t> indices(corpus.size());
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  return indices;
}

void write_report_files(const std::filesystem::path& out_dir,
                        const EvaluationReport& report, bool plot,
                        std::ostream& status) {
  write_file(out_dir / "report.json", report_to_json(report));
  status << "wrote " << (out_dir / "report.json").string() << "\n";
  write_file(out_dir / "confusion.tsv", confusion_tsv(report.confusion));
  status << "wrote " << (out_dir / "confusion.tsv").string() << "\n";
  if (plot) {
    write_file(out_dir / "confusion_heatmap.svg", confusion_heatmap_svg(report.confusion));
    status << "wrote " << (out_dir / "confusion_heatmap.svg").string() << "\n";
  }
}

}  // namespace

void cmd_preprocess(const CommandOptions& options, std::ostream& status) {
  LoadedData data = load_data(options.config, /*need_lexicon=*/false, status);
  const auto out_dir = ensure_out_dir(options.config);

  std::string tsv = "id\tlabel\tnormalized\n";
  for (std::size_t i = 0; i < data.corpus.size(); ++i) {
    const Document& doc = data.corpus.at(i);
    tsv += doc.id;
    tsv += '\t';
    tsv += label_name(doc.label);
    tsv += '\t';
    tsv += data.pre.normalized[i];
    tsv += '\n';
  }
  write_file(out_dir / "preprocessed.tsv", tsv);
  status << "wrote " << (out_dir / "preprocessed.tsv").string() << "\n";

  const std::size_t shown = std::min(options.show, data.corpus.size());
  for (std::size_t i = 0; i < shown; ++i) {
    const Document& doc = data.corpus.at(i);
    status << doc.id << '\t' << label_name(doc.label) << '\t' << data.pre.normalized[i]
           << '\n';
  }
}

void cmd_run(const CommandOptions& options, std::ostream& status) {
  const Config& config = options.config;
  const Method method = method_from_config(config);
  LoadedData data = load_data(config, method_needs_lexicon(method), status);
  const PipelineContext ctx = make_context(data, config);

  EvaluationReport report =
      cross_validate(ctx, method, config.run.k, config.run.seed, config.run.jobs);
  status << report.method << ": accuracy " << fmt("%.6f", report.accuracy) << " over "
         << report.k << " folds\n";

  const auto out_dir = ensure_out_dir(config);
  write_report_files(out_dir, report, options.plot, status);
}

void cmd_run_all(const CommandOptions& options, std::ostream& status) {
  const Config& config = options.config;
  LoadedData data = load_data(config, /*need_lexicon=*/true, status);
  const PipelineContext ctx = make_context(data, config);

  RunAllResult result = run_all(ctx, config.run.k, config.run.seed, config.run.inner_k,
                                config.run.jobs, config.run.oracle_combined);
  const std::string table = results_table(result);
  status << table;

  const auto out_dir = ensure_out_dir(config);
  write_file(out_dir / "results_table.tsv", table);
  status << "wrote " << (out_dir / "results_table.tsv").string() << "\n";

  // The strongest configuration also gets the full single-run artifacts.
  const auto stacked = std::find_if(
      result.rows.begin(), result.rows.end(),
      [](const EvaluationReport& row) { return row.method == "stack_rbf"; });
  if (stacked != result.rows.end()) {
    write_report_files(out_dir, *stacked, options.plot, status);
  }
}

void cmd_learning_curve(const CommandOptions& options, std::ostream& status) {
  const Config& config = options.config;
  const Method method = method_from_config(config);
  LoadedData data = load_data(config, method_needs_lexicon(method), status);
  const PipelineContext ctx = make_context(data, config);

  std::vector<LearningCurvePoint> points = learning_curve(
      ctx, method, config.curve_sizes, config.run.k, config.run.seed, config.run.jobs);

  std::string tsv = "fraction\tmean_train_size\tmean_accuracy\tstddev\n";
  for (const LearningCurvePoint& p : points) {
    tsv += fmt("%.6f\t%.6f\t%.6f\t%.6f\n", p.fraction, p.mean_train_size,
               p.mean_accuracy, p.stddev);
  }
  status << tsv;

  const auto out_dir = ensure_out_dir(config);
  write_file(out_dir / "learning_curve.tsv", tsv);
  status << "wrote " << (out_dir / "learning_curve.tsv").string() << "\n";
  if (options.plot) {
    write_file(out_dir / "learning_curve.svg", learning_curve_svg(points));
    status << "wrote " << (out_dir / "learning_curve.svg").string() << "\n";
  }
}

void cmd_analyze(const CommandOptions& options, std::ostream& status) {
  const Config& config = options.config;
  const std::string space_name =
      options.vocab_space.empty() ? config.run.space : options.vocab_space;
  const std::vector<FeatureSpaceSpec> specs = specs_for_name(space_name);
  const bool need_lexicon = std::any_of(specs.begin(), specs.end(),
                                        [](const auto& s) { return s.needs_lexicon(); });
  const Label cls = label_from_name(options.analyze_class);

  LoadedData data = load_data(config, need_lexicon, status);
  const PipelineContext ctx = make_context(data, config);

  const SpaceModel trained =
      train_space_model(ctx, specs, all_indices(data.corpus), config.run.seed);
  const std::vector<RankedFeature> ranked =
      top_features(trained.model, trained.vocabulary, cls, options.top,
                   options.most_negative);

  status << "rank\tfeature\tweight\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    status << fmt("%zu\t%s\t%.6f\n", i + 1, ranked[i].feature.c_str(),
                  ranked[i].weight);
  }
}

void cmd_dump_vocab(const CommandOptions& options, std::ostream& status) {
  const Config& config = options.config;
  const std::string space_name =
      options.vocab_space.empty() ? config.run.space : options.vocab_space;
  const std::vector<FeatureSpaceSpec> specs = specs_for_name(space_name);
  const bool need_lexicon = std::any_of(specs.begin(), specs.end(),
                                        [](const auto& s) { return s.needs_lexicon(); });

  LoadedData data = load_data(config, need_lexicon, status);
  const std::vector<std::size_t> indices = all_indices(data.corpus);
  const Vocabulary vocab = build_vocabulary(
      data.pre, specs, indices, data.lexicon ? &*data.lexicon : nullptr);

  const auto out_dir = ensure_out_dir(config);
  const auto path = out_dir / ("vocab_" + space_name + ".tsv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  vocab.dump(out);
  out.flush();
  if (!out) throw std::runtime_error("failed while writing " + path.string());
  status << space_name << ": " << vocab.size() << " features\n";
  status << "wrote " << path.string() << "\n";
}

}  // namespace textclf
