#include "textclf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "textclf/util.hpp"

namespace textclf {

namespace {

// Seed-stream roles, mixed with (run seed, fold index).  The base spaces
// use their ordinal 0..15, so a model trained for a standalone run and the
// same model trained inside run_all see identical streams.
constexpr std::uint64_t kRoleCombined = 16;
constexpr std::uint64_t kRoleMetaFeatures = 17;
constexpr std::uint64_t kRoleMetaLinear = 18;
constexpr std::uint64_t kRoleSubsample = 19;

std::size_t base_spec_ordinal(const FeatureSpaceSpec& spec) {
  const auto specs = base_specs();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i] == spec) return i;
  }
  throw std::logic_error("feature space is not one of the base spaces");
}

void require_context(const PipelineContext& ctx) {
  if (ctx.corpus == nullptr || ctx.pre == nullptr) {
    throw std::invalid_argument("pipeline context is missing corpus data");
  }
  if (ctx.pre->normalized.size() != ctx.corpus->size()) {
    throw std::invalid_argument("preprocessed corpus does not match the corpus");
  }
}

int modal_class(const Corpus& corpus, std::span<const std::size_t> indices) {
  std::array<std::size_t, kNumClasses> counts{};
  for (const std::size_t i : indices) ++counts[label_index(corpus.at(i).label)];
  int best = 0;
  for (int c = 1; c < kNumClasses; ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return best;
}

// Scores -> (prediction, supports) for one document under one space model.
struct DocOutput {
  int prediction = 0;
  std::vector<double> supports;
};

DocOutput score_document(const PipelineContext& ctx, const SpaceModel& model,
                         std::size_t doc) {
  const auto x = space_vector(ctx, model, doc);
  const auto scores = decision_values(model.model, x);
  DocOutput out;
  out.prediction = 0;
  for (int c = 1; c < model.model.n_classes; ++c) {
    if (scores[static_cast<std::size_t>(c)] > scores[static_cast<std::size_t>(out.prediction)]) {
      out.prediction = c;
    }
  }
  out.supports = ctx.options.prob_map == ProbMap::Softmax
                     ? softmax(scores)
                     : class_probabilities(model.model, x, ProbMap::MinMax);
  return out;
}

std::vector<SpaceModel> train_base_models(const PipelineContext& ctx,
                                          std::span<const std::size_t> train,
                                          std::uint64_t seed, std::size_t fold) {
  const auto specs = base_specs();
  std::vector<SpaceModel> models;
  models.reserve(specs.size());
  for (std::size_t s = 0; s < specs.size(); ++s) {
    models.push_back(train_space_model(ctx,
                                       std::span<const FeatureSpaceSpec>(&specs[s], 1),
                                       train, mix_seed(seed, fold, s)));
  }
  return models;
}

std::vector<int> predict_fold(const PipelineContext& ctx, const Method& method,
                              const std::vector<std::size_t>& train,
                              const std::vector<std::size_t>& test, std::uint64_t seed,
                              std::size_t fold) {
  std::vector<int> preds(test.size());

  if (const auto* single = std::get_if<SingleSpace>(&method)) {
    const auto model = train_space_model(
        ctx, std::span<const FeatureSpaceSpec>(&single->spec, 1), train,
        mix_seed(seed, fold, base_spec_ordinal(single->spec)));
    for (std::size_t i = 0; i < test.size(); ++i) {
      preds[i] = space_predict(ctx, model, test[i]);
    }
    return preds;
  }

  if (std::holds_alternative<CombinedSpaces>(method)) {
    const auto specs = base_specs();
    const auto model =
        train_space_model(ctx, specs, train, mix_seed(seed, fold, kRoleCombined));
    for (std::size_t i = 0; i < test.size(); ++i) {
      preds[i] = space_predict(ctx, model, test[i]);
    }
    return preds;
  }

  if (const auto* fusion = std::get_if<FusionMethod>(&method)) {
    const auto models = train_base_models(ctx, train, seed, fold);
    for (std::size_t i = 0; i < test.size(); ++i) {
      DecisionProfile profile(models.size(), kNumClasses);
      for (std::size_t m = 0; m < models.size(); ++m) {
        const auto supports = space_supports(ctx, models[m], test[i]);
        for (int c = 0; c < kNumClasses; ++c) {
          profile.at(m, static_cast<std::size_t>(c)) = supports[static_cast<std::size_t>(c)];
        }
      }
      preds[i] = fuse(profile, fusion->rule);
    }
    return preds;
  }

  if (const auto* stacked = std::get_if<StackedMethod>(&method)) {
    const auto specs = base_specs();
    const auto meta =
        generate_meta_features(ctx, train, specs, stacked->inner_k,
                               mix_seed(seed, fold, kRoleMetaFeatures));
    const auto meta_model = train_meta(meta, stacked->kind, ctx.options,
                                       mix_seed(seed, fold, kRoleMetaLinear));
    const auto models = train_base_models(ctx, train, seed, fold);
    const auto test_meta = meta_features_for_test(ctx, models, test);
    for (std::size_t i = 0; i < test.size(); ++i) {
      preds[i] = predict_meta(meta_model, test_meta.features.row_view(i));
    }
    return preds;
  }

  const int modal = modal_class(*ctx.corpus, train);
  std::fill(preds.begin(), preds.end(), modal);
  return preds;
}

EvaluationReport assemble_report(std::string name, int k, std::uint64_t seed,
                                 const Corpus& corpus,
                                 std::span<const std::vector<std::size_t>> fold_tests,
                                 std::span<const std::vector<int>> fold_preds) {
  EvaluationReport r;
  r.method = std::move(name);
  r.k = k;
  r.seed = seed;
  for (std::size_t f = 0; f < fold_tests.size(); ++f) {
    const auto& test = fold_tests[f];
    const auto& preds = fold_preds[f];
    std::uint64_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const int gold = label_index(corpus.at(test[i]).label);
      ++r.confusion[static_cast<std::size_t>(gold)][static_cast<std::size_t>(preds[i])];
      if (preds[i] == gold) ++correct;
    }
    r.total += test.size();
    r.fold_accuracies.push_back(static_cast<double>(correct) /
                                static_cast<double>(test.size()));
  }
  std::uint64_t trace = 0;
  for (int c = 0; c < kNumClasses; ++c) trace += r.confusion[c][c];
  r.accuracy = static_cast<double>(trace) / static_cast<double>(r.total);
  r.per_class = per_class_metrics(r.confusion);
  r.macro_avg = macro_average(r.per_class);
  r.weighted_avg = weighted_average(r.per_class, r.confusion);
  return r;
}

double population_stddev(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double var = 0.0;
  for (const double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(values.size()));
}

}  // namespace

std::array<PerClassMetrics, kNumClasses> per_class_metrics(const ConfusionMatrix& confusion) {
  std::array<PerClassMetrics, kNumClasses> out{};
  for (int c = 0; c < kNumClasses; ++c) {
    std::uint64_t gold_total = 0;
    std::uint64_t predicted_total = 0;
    for (int o = 0; o < kNumClasses; ++o) {
      gold_total += confusion[c][o];
      predicted_total += confusion[o][c];
    }
    const auto tp = static_cast<double>(confusion[c][c]);
    PerClassMetrics& m = out[c];
    if (predicted_total > 0) {
      m.precision = tp / static_cast<double>(predicted_total);
    } else {
      m.precision_defined = false;
    }
    if (gold_total > 0) {
      m.recall = tp / static_cast<double>(gold_total);
    } else {
      m.recall_defined = false;
    }
    if (m.precision + m.recall > 0.0) {
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    } else {
      m.f1_defined = false;
    }
  }
  return out;
}

PerClassMetrics macro_average(const std::array<PerClassMetrics, kNumClasses>& per_class) {
  PerClassMetrics avg;
  for (const auto& m : per_class) {
    avg.precision += m.precision / kNumClasses;
    avg.recall += m.recall / kNumClasses;
    avg.f1 += m.f1 / kNumClasses;
    avg.precision_defined = avg.precision_defined && m.precision_defined;
    avg.recall_defined = avg.recall_defined && m.recall_defined;
    avg.f1_defined = avg.f1_defined && m.f1_defined;
  }
  return avg;
}

PerClassMetrics weighted_average(const std::array<PerClassMetrics, kNumClasses>& per_class,
                                 const ConfusionMatrix& confusion) {
  std::array<std::uint64_t, kNumClasses> support{};
  std::uint64_t total = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    for (int o = 0; o < kNumClasses; ++o) support[c] += confusion[c][o];
    total += support[c];
  }
  PerClassMetrics avg;
  if (total == 0) return avg;
  for (int c = 0; c < kNumClasses; ++c) {
    const double w = static_cast<double>(support[c]) / static_cast<double>(total);
    avg.precision += w * per_class[c].precision;
    avg.recall += w * per_class[c].recall;
    avg.f1 += w * per_class[c].f1;
    if (support[c] > 0) {
      avg.precision_defined = avg.precision_defined && per_class[c].precision_defined;
      avg.recall_defined = avg.recall_defined && per_class[c].recall_defined;
      avg.f1_defined = avg.f1_defined && per_class[c].f1_defined;
    }
  }
  return avg;
}

double oracle_accuracy(std::span<const std::vector<int>> member_predictions,
                       std::span<const int> gold) {
  if (member_predictions.empty()) {
    throw std::invalid_argument("oracle needs at least one prediction row");
  }
  for (const auto& row : member_predictions) {
    if (row.size() != gold.size()) {
      throw std::invalid_argument("prediction row length does not match gold labels");
    }
  }
  if (gold.empty()) throw std::invalid_argument("oracle needs at least one instance");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (const auto& row : member_predictions) {
      if (row[i] == gold[i]) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

namespace {

nlohmann::json metrics_to_json(const PerClassMetrics& m) {
  return {{"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"precision_defined", m.precision_defined},
          {"recall_defined", m.recall_defined},
          {"f1_defined", m.f1_defined}};
}

PerClassMetrics metrics_from_json(const nlohmann::json& j) {
  PerClassMetrics m;
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  m.precision_defined = j.at("precision_defined").get<bool>();
  m.recall_defined = j.at("recall_defined").get<bool>();
  m.f1_defined = j.at("f1_defined").get<bool>();
  return m;
}

}  // namespace

std::string report_to_json(const EvaluationReport& report) {
  nlohmann::json j;
  j["method"] = report.method;
  j["k"] = report.k;
  j["seed"] = report.seed;
  j["total"] = report.total;
  j["accuracy"] = report.accuracy;
  nlohmann::json confusion = nlohmann::json::array();
  for (int g = 0; g < kNumClasses; ++g) {
    nlohmann::json row = nlohmann::json::array();
    for (int p = 0; p < kNumClasses; ++p) row.push_back(report.confusion[g][p]);
    confusion.push_back(std::move(row));
  }
  j["confusion"] = std::move(confusion);
  nlohmann::json per_class;
  for (int c = 0; c < kNumClasses; ++c) {
    per_class[label_name(label_from_index(c))] = metrics_to_json(report.per_class[c]);
  }
  j["per_class"] = std::move(per_class);
  j["macro_avg"] = metrics_to_json(report.macro_avg);
  j["weighted_avg"] = metrics_to_json(report.weighted_avg);
  j["fold_accuracies"] = report.fold_accuracies;
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  EvaluationReport r;
  r.method = j.at("method").get<std::string>();
  r.k = j.at("k").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.total = j.at("total").get<std::uint64_t>();
  r.accuracy = j.at("accuracy").get<double>();
  const auto& confusion = j.at("confusion");
  for (int g = 0; g < kNumClasses; ++g) {
    for (int p = 0; p < kNumClasses; ++p) {
      r.confusion[g][p] = confusion.at(g).at(p).get<std::uint64_t>();
    }
  }
  for (int c = 0; c < kNumClasses; ++c) {
    r.per_class[c] = metrics_from_json(j.at("per_class").at(label_name(label_from_index(c))));
  }
  r.macro_avg = metrics_from_json(j.at("macro_avg"));
  r.weighted_avg = metrics_from_json(j.at("weighted_avg"));
  r.fold_accuracies = j.at("fold_accuracies").get<std::vector<double>>();
  return r;
}

std::string method_name(const Method& method) {
  if (const auto* single = std::get_if<SingleSpace>(&method)) return single->spec.name();
  if (std::holds_alternative<CombinedSpaces>(method)) return "combined";
  if (const auto* fusion = std::get_if<FusionMethod>(&method)) {
    return "fusion_" + fusion_rule_name(fusion->rule);
  }
  if (const auto* stacked = std::get_if<StackedMethod>(&method)) {
    return "stack_" + meta_kind_name(stacked->kind);
  }
  return "majority_baseline";
}

EvaluationReport cross_validate(const PipelineContext& ctx, const Method& method, int k,
                                std::uint64_t seed, int jobs) {
  require_context(ctx);
  const auto fa = stratified_folds(*ctx.corpus, k, seed);
  std::vector<std::vector<std::size_t>> tests(static_cast<std::size_t>(k));
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(k));
  parallel_for(static_cast<std::size_t>(k), jobs, [&](std::size_t f) {
    tests[f] = fa.test_indices(static_cast<int>(f));
    const auto train = fa.train_indices(static_cast<int>(f));
    preds[f] = predict_fold(ctx, method, train, tests[f], seed, f);
  });
  return assemble_report(method_name(method), k, seed, *ctx.corpus, tests, preds);
}

namespace {

std::vector<std::size_t> stratified_subsample(const Corpus& corpus,
                                              std::span<const std::size_t> pool,
                                              double fraction, std::uint64_t seed) {
  std::vector<std::size_t> out;
  for (int c = 0; c < kNumClasses; ++c) {
    std::vector<std::size_t> members;
    for (const std::size_t i : pool) {
      if (label_index(corpus.at(i).label) == c) members.push_back(i);
    }
    if (members.empty()) continue;
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(c)));
    shuffle_inplace(members, rng);
    const auto want = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(fraction * static_cast<double>(members.size()))));
    members.resize(std::min(want, members.size()));
    out.insert(out.end(), members.begin(), members.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<LearningCurvePoint> learning_curve(const PipelineContext& ctx,
                                               const Method& method,
                                               std::span<const double> fractions, int k,
                                               std::uint64_t seed, int jobs) {
  require_context(ctx);
  if (fractions.empty()) throw std::invalid_argument("no training sizes given");
  for (const double f : fractions) {
    if (!(f > 0.0) || f > 1.0) {
      throw std::invalid_argument("training sizes must be fractions in (0, 1]");
    }
  }
  const auto fa = stratified_folds(*ctx.corpus, k, seed);
  std::vector<std::vector<std::size_t>> trains(static_cast<std::size_t>(k));
  std::vector<std::vector<std::size_t>> tests(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) {
    trains[static_cast<std::size_t>(f)] = fa.train_indices(f);
    tests[static_cast<std::size_t>(f)] = fa.test_indices(f);
  }

  std::vector<LearningCurvePoint> points;
  points.reserve(fractions.size());
  for (const double fraction : fractions) {
    std::vector<double> accuracies(static_cast<std::size_t>(k));
    std::vector<double> sizes(static_cast<std::size_t>(k));
    parallel_for(static_cast<std::size_t>(k), jobs, [&](std::size_t f) {
      // The full-size case must reduce to cross_validate exactly, so the
      // training slice and all model seeds are left untouched.
      const auto& train =
          fraction == 1.0
              ? trains[f]
              : stratified_subsample(*ctx.corpus, trains[f], fraction,
                                     mix_seed(seed, f, kRoleSubsample));
      const auto preds = predict_fold(ctx, method, train, tests[f], seed, f);
      std::size_t correct = 0;
      for (std::size_t i = 0; i < tests[f].size(); ++i) {
        if (preds[i] == label_index(ctx.corpus->at(tests[f][i]).label)) ++correct;
      }
      accuracies[f] = static_cast<double>(correct) / static_cast<double>(tests[f].size());
      sizes[f] = static_cast<double>(train.size());
    });
    LearningCurvePoint point;
    point.fraction = fraction;
    point.mean_train_size =
        std::accumulate(sizes.begin(), sizes.end(), 0.0) / static_cast<double>(k);
    point.mean_accuracy =
        std::accumulate(accuracies.begin(), accuracies.end(), 0.0) / static_cast<double>(k);
    point.stddev = population_stddev(accuracies);
    points.push_back(point);
  }
  return points;
}

namespace {

// Row layout of the consolidated table.
constexpr std::size_t kRowBaseline = 0;
constexpr std::size_t kRowFirstSingle = 1;   // 16 rows
constexpr std::size_t kRowCombined = 17;
constexpr std::size_t kRowFirstFusion = 18;  // vote, mean, median, borda
constexpr std::size_t kRowStackLinear = 22;
constexpr std::size_t kRowStackRbf = 23;
constexpr std::size_t kRowOracle = 24;
constexpr std::size_t kRowCount = 25;

std::vector<std::string> run_all_row_names() {
  std::vector<std::string> names;
  names.reserve(kRowCount);
  names.push_back("majority_baseline");
  for (const auto& spec : base_specs()) names.push_back(spec.name());
  names.push_back("combined");
  for (const FusionRule rule :
       {FusionRule::Plurality, FusionRule::Mean, FusionRule::Median, FusionRule::Borda}) {
    names.push_back("fusion_" + fusion_rule_name(rule));
  }
  names.push_back("stack_linear");
  names.push_back("stack_rbf");
  names.push_back("oracle");
  return names;
}

}  // namespace

RunAllResult run_all(const PipelineContext& ctx, int k, std::uint64_t seed, int inner_k,
                     int jobs, bool oracle_includes_combined) {
  require_context(ctx);
  const auto fa = stratified_folds(*ctx.corpus, k, seed);
  const auto specs = base_specs();

  std::vector<std::vector<std::size_t>> tests(static_cast<std::size_t>(k));
  // [row][fold] -> predictions for that fold's test slice
  std::vector<std::vector<std::vector<int>>> preds(
      kRowCount, std::vector<std::vector<int>>(static_cast<std::size_t>(k)));

  parallel_for(static_cast<std::size_t>(k), jobs, [&](std::size_t f) {
    const auto train = fa.train_indices(static_cast<int>(f));
    const auto test = fa.test_indices(static_cast<int>(f));
    const std::size_t n = test.size();
    for (std::size_t row = 0; row < kRowCount; ++row) preds[row][f].resize(n);

    const int modal = modal_class(*ctx.corpus, train);
    std::fill(preds[kRowBaseline][f].begin(), preds[kRowBaseline][f].end(), modal);

    // Base models are trained once and reused by the single rows, the
    // fusion rules, the test side of stacking, and the oracle.
    const auto models = train_base_models(ctx, train, seed, f);
    const auto combined =
        train_space_model(ctx, specs, train, mix_seed(seed, f, kRoleCombined));

    std::vector<DecisionProfile> profiles(n, DecisionProfile(specs.size(), kNumClasses));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t m = 0; m < models.size(); ++m) {
        const auto out = score_document(ctx, models[m], test[i]);
        preds[kRowFirstSingle + m][f][i] = out.prediction;
        for (int c = 0; c < kNumClasses; ++c) {
          profiles[i].at(m, static_cast<std::size_t>(c)) =
              out.supports[static_cast<std::size_t>(c)];
        }
      }
      preds[kRowCombined][f][i] = space_predict(ctx, combined, test[i]);
    }

    const FusionRule rules[] = {FusionRule::Plurality, FusionRule::Mean,
                                FusionRule::Median, FusionRule::Borda};
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        preds[kRowFirstFusion + r][f][i] = fuse(profiles[i], rules[r]);
      }
    }

    const auto meta = generate_meta_features(ctx, train, specs, inner_k,
                                             mix_seed(seed, f, kRoleMetaFeatures));
    const auto test_meta = meta_features_for_test(ctx, models, test);
    for (const MetaKind kind : {MetaKind::Linear, MetaKind::Rbf}) {
      const auto meta_model =
          train_meta(meta, kind, ctx.options, mix_seed(seed, f, kRoleMetaLinear));
      const std::size_t row = kind == MetaKind::Linear ? kRowStackLinear : kRowStackRbf;
      for (std::size_t i = 0; i < n; ++i) {
        preds[row][f][i] = predict_meta(meta_model, test_meta.features.row_view(i));
      }
    }

    const std::size_t n_members =
        specs.size() + (oracle_includes_combined ? 1 : 0);
    std::vector<int> member_votes(n_members);
    for (std::size_t i = 0; i < n; ++i) {
      const int gold = label_index(ctx.corpus->at(test[i]).label);
      bool hit = false;
      for (std::size_t m = 0; m < specs.size(); ++m) {
        member_votes[m] = preds[kRowFirstSingle + m][f][i];
        hit = hit || member_votes[m] == gold;
      }
      if (oracle_includes_combined) {
        member_votes[specs.size()] = preds[kRowCombined][f][i];
        hit = hit || member_votes[specs.size()] == gold;
      }
      // The oracle is correct when any member is; a miss is attributed to
      // the members' plurality choice, which then cannot be the gold class.
      preds[kRowOracle][f][i] = hit ? gold : plurality_vote(member_votes, kNumClasses);
    }

    tests[f] = test;
  });

  const auto names = run_all_row_names();
  RunAllResult result;
  result.rows.reserve(kRowCount);
  for (std::size_t row = 0; row < kRowCount; ++row) {
    result.rows.push_back(
        assemble_report(names[row], k, seed, *ctx.corpus, tests, preds[row]));
  }
  return result;
}

std::string results_table(const RunAllResult& result) {
  std::string out = "method\taccuracy\tstddev\tk\tseed\n";
  char line[160];
  for (const auto& row : result.rows) {
    const double stddev = population_stddev(row.fold_accuracies);
    std::snprintf(line, sizeof(line), "%s\t%.6f\t%.6f\t%d\t%llu\n", row.method.c_str(),
                  row.accuracy, stddev, row.k,
                  static_cast<unsigned long long>(row.seed));
    out += line;
  }
  return out;
}

}  // namespace textclf
