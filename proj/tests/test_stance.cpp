// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include <doctest.h>

#include <cstring>
#include <numeric>
#include <random>

#include "fakta/error.hpp"
#include "fakta/stance.hpp"
#include "support.hpp"

using namespace fakta;

namespace {

std::vector<StanceExample> toy_set() { return load_stance_examples(test::data_dir() / "stance_toy.jsonl"); }

double sum4(const std::array<double, 4>& a) { return a[0] + a[1] + a[2] + a[3]; }

class FixedScorer : public StanceScorer {
 public:
  StanceDistribution score(std::string_view, std::string_view text) const override {
    StanceDistribution d;
    d.p_related = text.find("yes") != std::string_view::npos ? 0.9 : 0.2;
    d.p_agree = 0.5;
    d.p_disagree = 0.3;
    d.p_discuss = 0.2;
    return d;
  }
};

}  // namespace

TEST_CASE("StanceDistribution: composition law and zero model") {
  StanceDistribution d{0.8, 0.5, 0.25, 0.25};
  const auto f = d.flattened();
  CHECK(f[0] == doctest::Approx(0.4));
  CHECK(f[1] == doctest::Approx(0.2));
  CHECK(f[2] == doctest::Approx(0.2));
  CHECK(f[3] == doctest::Approx(0.2));

  const auto zero = StanceModel::zeros(FeatureConfig{});
  const auto p = predict_stance(zero, "a claim", "a document");
  CHECK(p.p_related == 0.5);
  CHECK(p.p_agree == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.p_disagree == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("StanceDistribution: dominant ties go to the earlier label") {
  StanceDistribution d{0.5, 1.0, 0.0, 0.0};  // agree 0.5 == unrelated 0.5
  CHECK(d.dominant() == StanceLabel::Agree);
  StanceDistribution e{1.0, 0.5, 0.5, 0.0};
  CHECK(e.dominant() == StanceLabel::Agree);
  const auto back = StanceDistribution::from_flattened({0.4, 0.2, 0.2, 0.2});
  CHECK(back.p_related == doctest::Approx(0.8));
  CHECK(back.p_agree == doctest::Approx(0.5));
}

TEST_CASE("featurize: cosine examples, determinism, errors") {
  const FeatureConfig cfg;
  const auto same = featurize("the cat sat on the mat", "the cat sat on the mat", cfg);
  CHECK(dense_feature(same, cfg, DenseFeature::Cosine) == doctest::Approx(1.0));
  const auto disjoint = featurize("alpha beta", "gamma delta", cfg);
  CHECK(dense_feature(disjoint, cfg, DenseFeature::Cosine) == 0.0);
  CHECK(same.values.size() == cfg.dimension());
  const auto again = featurize("the cat sat on the mat", "the cat sat on the mat", cfg);
  CHECK(std::memcmp(same.values.data(), again.values.data(), same.values.size() * sizeof(double)) == 0);
  for (double v : same.values) CHECK(std::isfinite(v));
  CHECK_THROWS_AS(featurize("", "doc", cfg), EmptyText);
  CHECK_THROWS_AS(featurize("claim", "   ", cfg), EmptyText);
}

TEST_CASE("predict: model/featurizer mismatch") {
  FeatureConfig small;
  small.buckets = 16;
  const auto model = StanceModel::zeros(small);
  const auto fv = featurize("a b", "c d", FeatureConfig{});
  CHECK_THROWS_AS(predict(model, fv), ModelMismatch);
}

TEST_CASE("predict: flattened sums to one over random weights (property)") {
  FeatureConfig cfg;
  cfg.buckets = 64;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> w(0.0, 3.0);
  const std::vector<std::string> words = {"agree", "false", "moon", "paris", "tower", "debunked", "x", "y"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int round = 0; round < 300; ++round) {
    auto m = StanceModel::zeros(cfg);
    for (auto& v : m.level1_weights) v = w(rng);
    for (auto& v : m.level2_weights) v = w(rng);
    m.level1_bias = w(rng);
    for (auto& b : m.level2_bias) b = w(rng);
    std::string c, d;
    for (int i = 0; i < 4; ++i) c += words[pick(rng)] + " ";
    for (int i = 0; i < 9; ++i) d += words[pick(rng)] + " ";
    const auto p = predict_stance(m, c, d);
    const auto f = p.flattened();
    CHECK(std::abs(sum4(f) - 1.0) <= 1e-9);
    for (double v : f) CHECK(v >= 0.0);
    CHECK(std::abs(p.p_agree + p.p_disagree + p.p_discuss - 1.0) <= 1e-9);
  }
}

TEST_CASE("predict: positive feature scaling with inverse weights leaves outputs unchanged") {
  FeatureConfig cfg;
  cfg.buckets = 32;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> w(0.0, 1.0);
  auto m = StanceModel::zeros(cfg);
  for (auto& v : m.level1_weights) v = w(rng);
  for (auto& v : m.level2_weights) v = w(rng);
  auto fv = featurize("the tower is in paris", "records confirm the tower is in paris", cfg);
  const auto base = predict(m, fv);
  for (double c : {0.5, 2.0, 8.0}) {
    auto scaled_fv = fv;
    for (auto& x : scaled_fv.values) x *= c;
    auto scaled_m = m;
    for (auto& v : scaled_m.level1_weights) v /= c;
    for (auto& v : scaled_m.level2_weights) v /= c;
    const auto p = predict(scaled_m, scaled_fv);
    CHECK(p.p_related == doctest::Approx(base.p_related).epsilon(1e-12));
    CHECK(p.p_agree == doctest::Approx(base.p_agree).epsilon(1e-12));
    CHECK(p.dominant() == base.dominant());
  }
}

TEST_CASE("gradients match central finite differences") {
  FeatureConfig cfg;
  cfg.buckets = 8;
  std::mt19937_64 rng(12);
  std::normal_distribution<double> w(0.0, 0.5);
  const auto data = toy_set();
  std::vector<FeatureVector> xs;
  std::vector<int> y1, y2;
  for (std::size_t i = 0; i < 6; ++i) {
    xs.push_back(featurize(data[i].claim, data[i].document, cfg));
    y1.push_back(data[i].gold == StanceLabel::Unrelated ? 0 : 1);
    y2.push_back(static_cast<int>(i % 3));
  }
  const std::size_t d = cfg.dimension();
  for (int round = 0; round < 10; ++round) {
    std::vector<double> wt(d), g(d);
    for (auto& v : wt) v = w(rng);
    double b = w(rng), gb = 0;
    binary_loss_and_gradient(wt, b, xs, y1, 0.01, g, gb);
    std::vector<double> w3(3 * d), g3(3 * d);
    for (auto& v : w3) v = w(rng);
    std::vector<double> b3 = {w(rng), w(rng), w(rng)}, gb3(3);
    softmax_loss_and_gradient(w3, b3, xs, y2, 0.01, g3, gb3);
    const double h = 1e-6;
    for (std::size_t j = 0; j < d; j += 3) {
      auto wp = wt, wm = wt;
      wp[j] += h;
      wm[j] -= h;
      std::vector<double> scratch(d);
      double sb = 0;
      const double num = (binary_loss_and_gradient(wp, b, xs, y1, 0.01, scratch, sb) -
                          binary_loss_and_gradient(wm, b, xs, y1, 0.01, scratch, sb)) /
                         (2 * h);
      CHECK(test::close_rel(g[j], num, 1e-4, 1e-8));
    }
    for (std::size_t j = 0; j < 3 * d; j += 5) {
      auto wp = w3, wm = w3;
      wp[j] += h;
      wm[j] -= h;
      std::vector<double> s3(3 * d), sb3(3);
      const double num = (softmax_loss_and_gradient(wp, b3, xs, y2, 0.01, s3, sb3) -
                          softmax_loss_and_gradient(wm, b3, xs, y2, 0.01, s3, sb3)) /
                         (2 * h);
      CHECK(test::close_rel(g3[j], num, 1e-4, 1e-8));
    }
  }
}

TEST_CASE("train: toy set accuracy, zero epochs, reproducibility") {
  const auto data = toy_set();
  REQUIRE(data.size() >= 40);
  TrainOptions opts;
  const auto model = train(data, FeatureConfig{}, opts);
  std::size_t correct = 0;
  for (const auto& ex : data) correct += predict_stance(model, ex.claim, ex.document).dominant() == ex.gold;
  CHECK(static_cast<double>(correct) / static_cast<double>(data.size()) >= 0.95);

  TrainOptions none = opts;
  none.epochs = 0;
  const auto untouched = train(data, FeatureConfig{}, none);
  for (double v : untouched.level1_weights) REQUIRE(v == 0.0);
  const auto p = predict_stance(untouched, "x", "y");
  CHECK(p.p_related == 0.5);

  CHECK(model.serialize() == train(data, FeatureConfig{}, opts).serialize());

  TrainOptions mb = opts;
  mb.batch_size = 8;
  mb.epochs = 5;
  mb.seed = 3;
  CHECK(train(data, FeatureConfig{}, mb).serialize() == train(data, FeatureConfig{}, mb).serialize());
}

TEST_CASE("train: duplicated dataset gives the same weights in full-batch mode") {
  auto data = toy_set();
  FeatureConfig cfg;
  cfg.buckets = 128;
  TrainOptions opts;
  opts.epochs = 20;
  const auto a = train(data, cfg, opts);
  auto doubled = data;
  doubled.insert(doubled.end(), data.begin(), data.end());
  const auto b = train(doubled, cfg, opts);
  for (std::size_t i = 0; i < a.level1_weights.size(); ++i) {
    CHECK(test::close_rel(a.level1_weights[i], b.level1_weights[i], 1e-9, 1e-12));
  }
  for (std::size_t i = 0; i < a.level2_weights.size(); ++i) {
    CHECK(test::close_rel(a.level2_weights[i], b.level2_weights[i], 1e-9, 1e-12));
  }
}

TEST_CASE("train: loss is non-increasing at a small learning rate") {
  TrainOptions opts;
  opts.learning_rate = 0.01;
  opts.epochs = 50;
  TrainReport report;
  train(toy_set(), FeatureConfig{}, opts, &report);
  REQUIRE(report.level1_loss.size() == 51);
  for (std::size_t i = 1; i < report.level1_loss.size(); ++i) {
    CHECK(report.level1_loss[i] <= report.level1_loss[i - 1]);
    CHECK(report.level2_loss[i] <= report.level2_loss[i - 1]);
  }
}

TEST_CASE("train: no related examples leaves level 2 uniform with a warning") {
  std::vector<StanceExample> data = {{"a claim", "unrelated text", StanceLabel::Unrelated},
                                     {"another claim", "more text", StanceLabel::Unrelated}};
  TrainReport report;
  const auto m = train(data, FeatureConfig{}, TrainOptions{}, &report);
  CHECK(report.warnings.size() == 1);
  for (double v : m.level2_weights) REQUIRE(v == 0.0);
  CHECK_THROWS_AS(train(std::vector<StanceExample>{}, FeatureConfig{}, TrainOptions{}), ArgumentError);
}

TEST_CASE("shipped toy model: paraphrase is related and agrees or discusses") {
  const auto model = StanceModel::load(test::data_dir() / "toy_stance.bin");
  const auto p = predict_stance(model, "The Eiffel Tower is located in Paris.",
                                "Records confirm the Eiffel Tower is located in Paris, and it is accurate.");
  CHECK(p.flat(StanceLabel::Unrelated) < 0.5);
  const auto dom = p.dominant();
  CHECK((dom == StanceLabel::Agree || dom == StanceLabel::Discuss));
}

TEST_CASE("model file: round trip, corruption, featurizer hash") {
  FeatureConfig cfg;
  cfg.buckets = 16;
  auto m = StanceModel::zeros(cfg, 42);
  m.level1_weights[3] = 1.5;
  m.level2_bias = {0.1, -0.2, 0.3};
  const auto dir = test::scratch_dir("model");
  m.save(dir / "m.bin");
  const auto back = StanceModel::load(dir / "m.bin");
  CHECK(back.serialize() == m.serialize());
  CHECK(back.seed == 42);
  auto bytes = m.serialize();
  CHECK_THROWS(StanceModel::deserialize(bytes.substr(0, bytes.size() / 2)));
  bytes[0] = 'X';
  CHECK_THROWS(StanceModel::deserialize(bytes));
  auto tampered = m.serialize();
  tampered[12] ^= 1;  // first byte of the stored featurizer hash
  CHECK_THROWS_AS(StanceModel::deserialize(tampered), ModelMismatch);
}

TEST_CASE("score_sentences and sort_rationales") {
  FixedScorer scorer;
  const std::string doc = "First no. Then yes! Finally no.";
  const auto r = score_sentences(scorer, "claim", doc);
  REQUIRE(r.size() == 3);
  CHECK(r[0].dist.p_related == doctest::Approx(0.2));
  CHECK(r[1].dist.p_related == doctest::Approx(0.9));
  CHECK(r[0].dist.p_related == r[2].dist.p_related);
  CHECK(r[1].dominant == StanceLabel::Agree);

  const auto sorted = sort_rationales(r, StanceLabel::Agree);
  CHECK(sorted[0].sentence.span.start == r[1].sentence.span.start);
  CHECK(sorted[1].sentence.span.start == r[0].sentence.span.start);  // ties keep document order
  CHECK(sorted[2].sentence.span.start == r[2].sentence.span.start);
  CHECK(sort_rationales({}, StanceLabel::Agree).empty());

  const auto single = score_sentences(scorer, "claim", "Only yes here.");
  REQUIRE(single.size() == 1);
  CHECK(single[0].dist.p_related == scorer.score("claim", "Only yes here.").p_related);
}

TEST_CASE("stance examples: parse errors") {
  CHECK_THROWS_AS(parse_stance_examples(R"({"claim":"c","document":"d","stance":"maybe"})"), ParseError);
  CHECK_THROWS_AS(parse_stance_examples(R"({"claim":"","document":"d","stance":"agree"})"), ParseError);
  CHECK(parse_stance_examples("").empty());
}
