#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "support/synth.hpp"
#include "textclf/analysis.hpp"

using namespace textclf;
using namespace textclf::testing;

namespace {

Vocabulary tiny_vocab() {
  std::vector<std::string> features = {"alpha", "beta", "delta", "gamma", "zeta"};
  std::vector<std::uint64_t> counts = {4, 3, 2, 9, 4};
  return Vocabulary(std::move(features), std::move(counts));
}

LinearModel tiny_model() {
  LinearModel model;
  model.dim = 5;
  model.n_classes = 3;
  model.weights = {
      {0.5, -0.2, 0.0, 0.9, 0.5},    // hate
      {-0.3, -0.1, -0.3, 0.2, 0.0},  // offensive
      {0.1, 0.2, 0.3, -0.4, 0.0},    // ok
  };
  model.bias = {0.0, 0.0, 0.0};
  return model;
}

}  // namespace

TEST_CASE("top features rank positive weights with lexicographic tie breaks") {
  const Vocabulary vocab = tiny_vocab();
  const LinearModel model = tiny_model();

  // Hate weights: alpha 0.5, gamma 0.9, zeta 0.5; beta negative, delta zero.
  const auto top = top_features(model, vocab, Label::Hate, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0].feature == "gamma");
  CHECK(top[0].weight == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(top[1].feature == "alpha");  // ties on 0.5 order alphabetically
  CHECK(top[2].feature == "zeta");

  SUBCASE("a smaller count truncates the same ranking") {
    const auto two = top_features(model, vocab, Label::Hate, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].feature == "gamma");
    CHECK(two[1].feature == "alpha");
  }

  SUBCASE("zero and negative weights never qualify") {
    const auto all = top_features(model, vocab, Label::Hate, 10);
    REQUIRE(all.size() == 3);  // not five
    for (const auto& f : all) CHECK(f.weight > 0.0);
  }

  SUBCASE("the negative direction ranks ascending, strongest first") {
    // Offensive: alpha -0.3, delta -0.3, beta -0.1; gamma positive, zeta zero.
    const auto neg = top_features(model, vocab, Label::Offensive, 3, true);
    REQUIRE(neg.size() == 3);
    CHECK(neg[0].feature == "alpha");  // -0.3 tie, lexicographic
    CHECK(neg[1].feature == "delta");
    CHECK(neg[2].feature == "beta");
    CHECK(neg[2].weight == doctest::Approx(-0.1).epsilon(1e-12));

    const auto one = top_features(model, vocab, Label::Hate, 5, true);
    REQUIRE(one.size() == 1);
    CHECK(one[0].feature == "beta");
  }
}

TEST_CASE("top features reject inconsistent inputs") {
  const Vocabulary vocab = tiny_vocab();
  const LinearModel model = tiny_model();

  CHECK_THROWS_AS(top_features(model, vocab, Label::Hate, 0), std::invalid_argument);
  CHECK_THROWS_AS(top_features(LinearModel{}, vocab, Label::Hate, 3),
                  std::invalid_argument);

  LinearModel narrow = model;
  narrow.dim = 4;
  narrow.weights = {{1.0, 2.0, 3.0, 4.0}};
  narrow.n_classes = 1;
  CHECK_THROWS_AS(top_features(narrow, vocab, Label::Hate, 3), std::invalid_argument);

  LinearModel two_class = model;
  two_class.n_classes = 2;
  two_class.weights.resize(2);
  CHECK_THROWS_AS(top_features(two_class, vocab, Label::Ok, 3), std::invalid_argument);
}

TEST_CASE("rankings on a trained model agree with a full sort of its weights") {
  const Corpus corpus = synth_corpus({.docs = 200, .seed = 97});
  const PreprocessedCorpus pre = preprocess_corpus(corpus);
  const std::vector<FeatureSpaceSpec> specs = {FeatureSpaceSpec::word_ngram(1)};

  std::vector<std::size_t> all(corpus.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const Vocabulary vocab = build_vocabulary(pre, specs, all, nullptr);

  std::vector<SparseVector> samples;
  std::vector<int> labels;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    samples.push_back(vectorize_document(pre, i, specs, vocab, nullptr));
    labels.push_back(label_index(corpus.at(i).label));
  }
  const LinearModel model =
      train_linear(samples, labels, vocab.size(), kNumClasses);

  const std::size_t count = 15;
  const auto ranked = top_features(model, vocab, Label::Ok, count);
  REQUIRE(!ranked.empty());
  REQUIRE(ranked.size() <= count);

  // Independent oracle: sort every positive weight the slow way.
  const auto& w = model.weights[label_index(Label::Ok)];
  std::vector<std::pair<double, std::string>> expected;
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) expected.emplace_back(w[i], vocab.feature(i));
  }
  std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  REQUIRE(ranked.size() == std::min(count, expected.size()));
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    CHECK(ranked[i].feature == expected[i].second);
    CHECK(ranked[i].weight == expected[i].first);
  }

  // The ok class should rate ok-pool vocabulary highly: at least one of the
  // strongest ten features is a known ok word.
  const auto& ok_words = pool(label_index(Label::Ok));
  bool found = false;
  for (std::size_t i = 0; i < std::min<std::size_t>(10, ranked.size()); ++i) {
    if (std::find(ok_words.begin(), ok_words.end(), ranked[i].feature) !=
        ok_words.end()) {
      found = true;
    }
  }
  CHECK(found);

  SUBCASE("the negative direction mirrors the oracle too") {
    const auto neg = top_features(model, vocab, Label::Ok, count, true);
    std::vector<std::pair<double, std::string>> neg_expected;
    for (std::uint32_t i = 0; i < w.size(); ++i) {
      if (w[i] < 0.0) neg_expected.emplace_back(w[i], vocab.feature(i));
    }
    std::sort(neg_expected.begin(), neg_expected.end(),
              [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return a.second < b.second;
              });
    REQUIRE(neg.size() == std::min(count, neg_expected.size()));
    for (std::size_t i = 0; i < neg.size(); ++i) {
      CHECK(neg[i].feature == neg_expected[i].second);
      CHECK(neg[i].weight == neg_expected[i].first);
    }
    for (const auto& f : neg) CHECK(f.weight < 0.0);
  }
}
