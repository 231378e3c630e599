// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakta/text.hpp"

namespace fakta {

enum class StanceLabel { Agree, Disagree, Discuss, Unrelated };

// Fixed label order; also the tie-break order for dominant labels.
inline constexpr std::array<StanceLabel, 4> kStanceLabels = {
    StanceLabel::Agree, StanceLabel::Disagree, StanceLabel::Discuss, StanceLabel::Unrelated};

std::string_view to_string(StanceLabel label);
std::optional<StanceLabel> parse_stance(std::string_view label);

// Two-level stance probabilities. Level 1 is p(related); level 2 holds the
// agree / disagree / discuss probabilities conditioned on related.
struct StanceDistribution {
  double p_related = 0.5;
  double p_agree = 1.0 / 3.0;
  double p_disagree = 1.0 / 3.0;
  double p_discuss = 1.0 / 3.0;

  // p(agree), p(disagree), p(discuss), p(unrelated), in kStanceLabels order.
  std::array<double, 4> flattened() const;
  double flat(StanceLabel label) const;
  // argmax of flattened(); ties go to the earlier label.
  StanceLabel dominant() const;

  // Inverse of flattened() for a distribution summing to one. With
  // p(unrelated) == 1 the conditionals are left uniform.
  static StanceDistribution from_flattened(const std::array<double, 4>& flat);
};

// Layout of the featurizer output. dimension() = 2 * buckets + 4.
struct FeatureConfig {
  std::size_t buckets = 4096;
  std::uint64_t hash_seed = 0x9e3779b97f4a7c15ULL;

  std::size_t dimension() const { return 2 * buckets + kDenseFeatures; }
  // Identifies the featurizer; stored in model files.
  std::uint64_t config_hash() const;

  static constexpr std::size_t kDenseFeatures = 4;
};

struct FeatureVector {
  std::uint64_t config_hash = 0;
  std::vector<double> values;
};

// Hashed log-tf bag of words of the claim and of the document (each block
// L2-normalised), then TF-IDF cosine, keyword overlap ratio, log(1 + claim
// words), log(1 + document words). Throws EmptyText.
FeatureVector featurize(std::string_view claim, std::string_view document,
                        const FeatureConfig& config = {});

// Indices of the dense features after the two hashed blocks.
enum class DenseFeature : std::size_t { Cosine = 0, KeywordOverlap = 1, ClaimLength = 2, DocLength = 3 };
double dense_feature(const FeatureVector& features, const FeatureConfig& config, DenseFeature which);

// Anything that can score a (claim, text) pair. Implementations must be
// immutable after construction so the pipeline can call them concurrently.
class StanceScorer {
 public:
  virtual ~StanceScorer() = default;
  virtual StanceDistribution score(std::string_view claim, std::string_view text) const = 0;
};

// Binary logistic level 1 and three-way softmax level 2 over the same
// features. level2_weights is row-major, one row per agree/disagree/discuss.
struct StanceModel {
  FeatureConfig features;
  std::uint64_t seed = 0;
  std::vector<double> level1_weights;
  double level1_bias = 0.0;
  std::vector<double> level2_weights;
  std::array<double, 3> level2_bias{};

  static StanceModel zeros(const FeatureConfig& features, std::uint64_t seed = 0);

  std::span<const double> level2_row(std::size_t k) const;
  std::span<double> level2_row(std::size_t k);

  void save(const std::filesystem::path& path) const;
  std::string serialize() const;
  static StanceModel load(const std::filesystem::path& path);
  static StanceModel deserialize(std::string_view bytes, std::string_view source = "<memory>");
};

// Throws ModelMismatch when the features come from another featurizer.
StanceDistribution predict(const StanceModel& model, const FeatureVector& features);
StanceDistribution predict_stance(const StanceModel& model, std::string_view claim,
                                  std::string_view document);

class LinearStanceScorer : public StanceScorer {
 public:
  explicit LinearStanceScorer(StanceModel model) : model_(std::move(model)) {}
  StanceDistribution score(std::string_view claim, std::string_view text) const override;
  const StanceModel& model() const { return model_; }

 private:
  StanceModel model_;
};

struct SentenceRationale {
  Sentence sentence;
  StanceDistribution dist;
  StanceLabel dominant = StanceLabel::Unrelated;
};

// One rationale per sentence of the document, in document order.
std::vector<SentenceRationale> score_sentences(const StanceScorer& scorer, std::string_view claim,
                                               std::string_view document);

// Stable sort by flattened p(label), descending.
std::vector<SentenceRationale> sort_rationales(std::vector<SentenceRationale> rationales,
                                               StanceLabel label);

// ---------------------------------------------------------------------------
// Training

struct StanceExample {
  std::string claim;
  std::string document;
  StanceLabel gold = StanceLabel::Unrelated;
};

// JSONL with fields claim, document, stance.
std::vector<StanceExample> load_stance_examples(const std::filesystem::path& path);
std::vector<StanceExample> parse_stance_examples(std::string_view jsonl,
                                                 std::string_view source = "<memory>");

struct TrainOptions {
  double learning_rate = 0.5;
  std::size_t epochs = 100;
  double l2 = 1e-4;
  std::size_t batch_size = 0;  // 0 = full batch
  std::uint64_t seed = 0;
};

struct TrainReport {
  std::vector<std::string> warnings;
  // Full-data loss before training, then after every epoch.
  std::vector<double> level1_loss;
  std::vector<double> level2_loss;
};

// Level 1 on related-vs-unrelated, level 2 on the related examples only;
// mini-batch gradient descent on L2-regularised cross-entropy. Identical
// inputs and seed give identical weights. Throws ArgumentError on an empty
// dataset. Without related examples level 2 stays at zero (uniform) and a
// warning is reported.
StanceModel train(std::span<const StanceExample> dataset, const FeatureConfig& features,
                  const TrainOptions& options, TrainReport* report = nullptr);

// Mean cross-entropy + (l2 / 2) * |w|^2 (bias unregularised) and its gradient.
// `labels` are 0/1 for the binary loss and 0..2 for the softmax loss.
double binary_loss_and_gradient(std::span<const double> weights, double bias,
                                std::span<const FeatureVector> xs, std::span<const int> labels,
                                double l2, std::span<double> grad_weights, double& grad_bias);

double softmax_loss_and_gradient(std::span<const double> weights, std::span<const double> bias,
                                 std::span<const FeatureVector> xs, std::span<const int> labels,
                                 double l2, std::span<double> grad_weights,
                                 std::span<double> grad_bias);

}  // namespace fakta
