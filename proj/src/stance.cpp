// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors

#include "fakta/stance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "binary_io.hpp"
#include "fakta/error.hpp"
#include "fakta/kernels.hpp"
#include "util.hpp"

namespace fakta {

namespace {

constexpr std::string_view kModelMagic = "FKSTANCE";
constexpr std::uint32_t kModelVersion = 1;

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

std::array<double, 3> softmax(const std::array<double, 3>& z) {
  const double m = std::max({z[0], z[1], z[2]});
  std::array<double, 3> p{std::exp(z[0] - m), std::exp(z[1] - m), std::exp(z[2] - m)};
  const double s = p[0] + p[1] + p[2];
  for (double& v : p) v /= s;
  return p;
}

std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) {
    if (t.is_word()) out.push_back(std::move(t.normalized));
  }
  return out;
}

std::map<std::string, int> counts_of(const std::vector<std::string>& words) {
  std::map<std::string, int> counts;
  for (const auto& w : words) ++counts[w];
  return counts;
}

void hashed_block(const std::map<std::string, int>& counts, const FeatureConfig& config,
                  std::span<double> block) {
  for (const auto& [term, tf] : counts) {
    const auto h = detail::fnv1a64(term, config.hash_seed) % config.buckets;
    block[h] += std::log1p(static_cast<double>(tf));
  }
  const double norm = std::sqrt(kernels::dot(block, block));
  if (norm > 0) kernels::scale(1.0 / norm, block);
}

double tfidf_cosine(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
  // Smooth idf over the two-text collection.
  auto idf = [](int df) { return std::log(3.0 / (1.0 + df)) + 1.0; };
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [term, tf] : a) {
    const bool shared = b.contains(term);
    const double w = tf * idf(shared ? 2 : 1);
    na += w * w;
    if (shared) dot += w * (b.at(term) * idf(2));
  }
  for (const auto& [term, tf] : b) {
    const double w = tf * idf(a.contains(term) ? 2 : 1);
    nb += w * w;
  }
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

void check_dimensions(const StanceModel& m) {
  const std::size_t d = m.features.dimension();
  if (m.level1_weights.size() != d || m.level2_weights.size() != 3 * d) {
    throw ModelMismatch("stance model weights do not match feature dimension " + std::to_string(d));
  }
}

template <typename Indices>
double binary_loss_impl(std::span<const double> w, double b, std::span<const FeatureVector> xs,
                        std::span<const int> y, const Indices& idx, double l2,
                        std::span<double> gw, double& gb) {
  std::fill(gw.begin(), gw.end(), 0.0);
  gb = 0.0;
  double loss = 0.0;
  for (std::size_t i : idx) {
    const auto& x = xs[i].values;
    const double z = kernels::dot(w, x) + b;
    loss += softplus(z) - y[i] * z;
    const double r = sigmoid(z) - y[i];
    kernels::axpy(r, x, gw);
    gb += r;
  }
  const double n = static_cast<double>(idx.size());
  kernels::scale(1.0 / n, gw);
  gb /= n;
  kernels::axpy(l2, w, gw);
  return loss / n + 0.5 * l2 * kernels::dot(w, w);
}

template <typename Indices>
double softmax_loss_impl(std::span<const double> w, std::span<const double> b,
                         std::span<const FeatureVector> xs, std::span<const int> y,
                         const Indices& idx, double l2, std::span<double> gw,
                         std::span<double> gb) {
  const std::size_t d = w.size() / 3;
  std::fill(gw.begin(), gw.end(), 0.0);
  std::fill(gb.begin(), gb.end(), 0.0);
  double loss = 0.0;
  for (std::size_t i : idx) {
    const auto& x = xs[i].values;
    std::array<double, 3> z{};
    for (std::size_t k = 0; k < 3; ++k) z[k] = kernels::dot(w.subspan(k * d, d), x) + b[k];
    const double m = std::max({z[0], z[1], z[2]});
    const double lse = m + std::log(std::exp(z[0] - m) + std::exp(z[1] - m) + std::exp(z[2] - m));
    loss += lse - z[static_cast<std::size_t>(y[i])];
    for (std::size_t k = 0; k < 3; ++k) {
      const double r = std::exp(z[k] - lse) - (static_cast<std::size_t>(y[i]) == k ? 1.0 : 0.0);
      kernels::axpy(r, x, gw.subspan(k * d, d));
      gb[k] += r;
    }
  }
  const double n = static_cast<double>(idx.size());
  kernels::scale(1.0 / n, gw);
  for (double& g : gb) g /= n;
  kernels::axpy(l2, w, gw);
  return loss / n + 0.5 * l2 * kernels::dot(w, w);
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

// Fisher-Yates over mt19937_64 output, fixed across standard libraries.
void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Labels and distributions

std::string_view to_string(StanceLabel label) {
  switch (label) {
    case StanceLabel::Agree: return "agree";
    case StanceLabel::Disagree: return "disagree";
    case StanceLabel::Discuss: return "discuss";
    case StanceLabel::Unrelated: return "unrelated";
  }
  return "unknown";
}

std::optional<StanceLabel> parse_stance(std::string_view label) {
  const std::string l = detail::to_lower_ascii(detail::trim(label));
  for (auto s : kStanceLabels) {
    if (to_string(s) == l) return s;
  }
  return std::nullopt;
}

std::array<double, 4> StanceDistribution::flattened() const {
  return {p_related * p_agree, p_related * p_disagree, p_related * p_discuss, 1.0 - p_related};
}

double StanceDistribution::flat(StanceLabel label) const {
  return flattened()[static_cast<std::size_t>(label)];
}

StanceLabel StanceDistribution::dominant() const {
  const auto f = flattened();
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i] > f[best]) best = i;
  }
  return kStanceLabels[best];
}

StanceDistribution StanceDistribution::from_flattened(const std::array<double, 4>& flat) {
  StanceDistribution d;
  d.p_related = std::clamp(1.0 - flat[3], 0.0, 1.0);
  const double related_mass = flat[0] + flat[1] + flat[2];
  if (related_mass > 0) {
    d.p_agree = flat[0] / related_mass;
    d.p_disagree = flat[1] / related_mass;
    d.p_discuss = flat[2] / related_mass;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Features

std::uint64_t FeatureConfig::config_hash() const {
  const std::string key = "fakta-stance-features-v1|" + std::to_string(buckets) + "|" +
                          std::to_string(hash_seed) + "|" + std::to_string(kDenseFeatures);
  return detail::fnv1a64(key);
}

FeatureVector featurize(std::string_view claim, std::string_view document,
                        const FeatureConfig& config) {
  if (detail::trim(claim).empty() || detail::trim(document).empty()) throw EmptyText();
  if (config.buckets == 0) throw ArgumentError("feature buckets must be >= 1");

  FeatureVector fv;
  fv.config_hash = config.config_hash();
  fv.values.assign(config.dimension(), 0.0);
  std::span<double> values(fv.values);

  const auto claim_words = words_of(claim);
  const auto doc_words = words_of(document);
  const auto claim_counts = counts_of(claim_words);
  const auto doc_counts = counts_of(doc_words);

  hashed_block(claim_counts, config, values.subspan(0, config.buckets));
  hashed_block(doc_counts, config, values.subspan(config.buckets, config.buckets));

  std::set<std::string> claim_keywords;
  for (const auto& t : analyze(claim)) {
    if (is_keyword_pos(t.pos)) claim_keywords.insert(t.normalized);
  }
  std::size_t overlap = 0;
  for (const auto& kw : claim_keywords) overlap += doc_counts.contains(kw) ? 1 : 0;

  auto dense = values.subspan(2 * config.buckets);
  dense[0] = tfidf_cosine(claim_counts, doc_counts);
  dense[1] = claim_keywords.empty() ? 0.0
                                    : static_cast<double>(overlap) /
                                          static_cast<double>(claim_keywords.size());
  dense[2] = std::log1p(static_cast<double>(claim_words.size()));
  dense[3] = std::log1p(static_cast<double>(doc_words.size()));
  return fv;
}

double dense_feature(const FeatureVector& features, const FeatureConfig& config,
                     DenseFeature which) {
  return features.values.at(2 * config.buckets + static_cast<std::size_t>(which));
}

// ---------------------------------------------------------------------------
// Model

StanceModel StanceModel::zeros(const FeatureConfig& features, std::uint64_t seed) {
  StanceModel m;
  m.features = features;
  m.seed = seed;
  m.level1_weights.assign(features.dimension(), 0.0);
  m.level2_weights.assign(3 * features.dimension(), 0.0);
  return m;
}

std::span<const double> StanceModel::level2_row(std::size_t k) const {
  const std::size_t d = features.dimension();
  return std::span<const double>(level2_weights).subspan(k * d, d);
}

std::span<double> StanceModel::level2_row(std::size_t k) {
  const std::size_t d = features.dimension();
  return std::span<double>(level2_weights).subspan(k * d, d);
}

std::string StanceModel::serialize() const {
  check_dimensions(*this);
  detail::BinaryWriter w;
  w.put_bytes(kModelMagic);
  w.put<std::uint32_t>(kModelVersion);
  w.put<std::uint64_t>(features.config_hash());
  w.put<std::uint64_t>(features.buckets);
  w.put<std::uint64_t>(features.hash_seed);
  w.put<std::uint64_t>(seed);
  w.put<std::uint64_t>(features.dimension());
  for (double v : level1_weights) w.put(v);
  w.put(level1_bias);
  for (double v : level2_weights) w.put(v);
  for (double v : level2_bias) w.put(v);
  return w.data();
}

void StanceModel::save(const std::filesystem::path& path) const {
  detail::write_file(path, serialize());
}

StanceModel StanceModel::deserialize(std::string_view bytes, std::string_view source) {
  detail::BinaryReader r(bytes, std::string(source));
  if (r.get_bytes(kModelMagic.size()) != kModelMagic) {
    throw IoError(std::string(source) + ": not a stance model file");
  }
  if (const auto version = r.get<std::uint32_t>(); version != kModelVersion) {
    throw IoError(std::string(source) + ": unsupported model version " + std::to_string(version));
  }
  const auto stored_hash = r.get<std::uint64_t>();
  StanceModel m;
  m.features.buckets = static_cast<std::size_t>(r.get<std::uint64_t>());
  m.features.hash_seed = r.get<std::uint64_t>();
  m.seed = r.get<std::uint64_t>();
  const auto dim = r.get<std::uint64_t>();
  if (m.features.config_hash() != stored_hash) {
    throw ModelMismatch(std::string(source) + ": feature config hash mismatch");
  }
  if (dim != m.features.dimension()) {
    throw ModelMismatch(std::string(source) + ": dimension does not match feature config");
  }
  m.level1_weights.resize(dim);
  for (auto& v : m.level1_weights) v = r.get<double>();
  m.level1_bias = r.get<double>();
  m.level2_weights.resize(3 * dim);
  for (auto& v : m.level2_weights) v = r.get<double>();
  for (auto& v : m.level2_bias) v = r.get<double>();
  if (!r.at_end()) throw IoError(std::string(source) + ": trailing bytes");
  return m;
}

StanceModel StanceModel::load(const std::filesystem::path& path) {
  return deserialize(detail::read_file(path), path.string());
}

StanceDistribution predict(const StanceModel& model, const FeatureVector& features) {
  if (features.config_hash != model.features.config_hash()) {
    throw ModelMismatch("features were produced by a different featurizer configuration");
  }
  check_dimensions(model);
  if (features.values.size() != model.features.dimension()) {
    throw ModelMismatch("feature vector has the wrong dimension");
  }
  StanceDistribution d;
  d.p_related = sigmoid(kernels::dot(model.level1_weights, features.values) + model.level1_bias);
  std::array<double, 3> z{};
  for (std::size_t k = 0; k < 3; ++k) {
    z[k] = kernels::dot(model.level2_row(k), features.values) + model.level2_bias[k];
  }
  const auto p = softmax(z);
  d.p_agree = p[0];
  d.p_disagree = p[1];
  d.p_discuss = p[2];
  return d;
}

StanceDistribution predict_stance(const StanceModel& model, std::string_view claim,
                                  std::string_view document) {
  return predict(model, featurize(claim, document, model.features));
}

StanceDistribution LinearStanceScorer::score(std::string_view claim, std::string_view text) const {
  return predict_stance(model_, claim, text);
}

// ---------------------------------------------------------------------------
// Rationales

std::vector<SentenceRationale> score_sentences(const StanceScorer& scorer, std::string_view claim,
                                               std::string_view document) {
  std::vector<SentenceRationale> out;
  for (auto& sentence : split_sentences(document)) {
    const auto text = document.substr(sentence.span.start, sentence.span.size());
    SentenceRationale r;
    r.dist = scorer.score(claim, text);
    r.dominant = r.dist.dominant();
    r.sentence = std::move(sentence);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SentenceRationale> sort_rationales(std::vector<SentenceRationale> rationales,
                                               StanceLabel label) {
  std::stable_sort(rationales.begin(), rationales.end(),
                   [label](const SentenceRationale& a, const SentenceRationale& b) {
                     return a.dist.flat(label) > b.dist.flat(label);
                   });
  return rationales;
}

// ---------------------------------------------------------------------------
// Training

std::vector<StanceExample> parse_stance_examples(std::string_view jsonl, std::string_view source) {
  std::vector<StanceExample> out;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(jsonl)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string(source), line_no, e.what());
    }
    StanceExample ex;
    ex.claim = obj.value("claim", std::string{});
    ex.document = obj.value("document", std::string{});
    const auto label = parse_stance(obj.value("stance", std::string{}));
    if (!label) throw ParseError(std::string(source), line_no, "unknown stance label");
    if (ex.claim.empty() || ex.document.empty()) {
      throw ParseError(std::string(source), line_no, "claim and document must be non-empty");
    }
    ex.gold = *label;
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<StanceExample> load_stance_examples(const std::filesystem::path& path) {
  return parse_stance_examples(detail::read_file(path), path.string());
}

double binary_loss_and_gradient(std::span<const double> weights, double bias,
                                std::span<const FeatureVector> xs, std::span<const int> labels,
                                double l2, std::span<double> grad_weights, double& grad_bias) {
  return binary_loss_impl(weights, bias, xs, labels, iota_indices(xs.size()), l2, grad_weights,
                          grad_bias);
}

double softmax_loss_and_gradient(std::span<const double> weights, std::span<const double> bias,
                                 std::span<const FeatureVector> xs, std::span<const int> labels,
                                 double l2, std::span<double> grad_weights,
                                 std::span<double> grad_bias) {
  return softmax_loss_impl(weights, bias, xs, labels, iota_indices(xs.size()), l2, grad_weights,
                           grad_bias);
}

StanceModel train(std::span<const StanceExample> dataset, const FeatureConfig& features,
                  const TrainOptions& options, TrainReport* report) {
  if (dataset.empty()) throw ArgumentError("training set is empty");
  StanceModel model = StanceModel::zeros(features, options.seed);
  const std::size_t d = features.dimension();

  std::vector<FeatureVector> xs;
  std::vector<int> related;
  std::vector<FeatureVector> xs2;
  std::vector<int> level2;
  xs.reserve(dataset.size());
  for (const auto& ex : dataset) {
    xs.push_back(featurize(ex.claim, ex.document, features));
    related.push_back(ex.gold == StanceLabel::Unrelated ? 0 : 1);
    if (ex.gold != StanceLabel::Unrelated) {
      xs2.push_back(xs.back());
      level2.push_back(static_cast<int>(ex.gold));
    }
  }
  if (xs2.empty() && report) {
    report->warnings.push_back("no related examples: level 2 left uniform");
  }

  std::mt19937_64 rng(options.seed);
  std::vector<double> g1(d);
  double gb1 = 0.0;
  std::vector<double> g2(3 * d);
  std::array<double, 3> gb2{};

  auto record = [&]() {
    if (!report) return;
    std::vector<double> tmp1(d), tmp2(3 * d);
    double tb = 0;
    std::array<double, 3> tb2{};
    report->level1_loss.push_back(binary_loss_and_gradient(
        model.level1_weights, model.level1_bias, xs, related, options.l2, tmp1, tb));
    if (!xs2.empty()) {
      report->level2_loss.push_back(softmax_loss_and_gradient(
          model.level2_weights, model.level2_bias, xs2, level2, options.l2, tmp2, tb2));
    }
  };
  record();

  auto run_epoch = [&](std::size_t n, auto&& step) {
    std::vector<std::size_t> order = iota_indices(n);
    const std::size_t batch = options.batch_size == 0 ? n : std::min(options.batch_size, n);
    if (batch < n) shuffle(order, rng);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      step(std::span<const std::size_t>(order).subspan(start, end - start));
    }
  };

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    run_epoch(xs.size(), [&](std::span<const std::size_t> idx) {
      binary_loss_impl(model.level1_weights, model.level1_bias, xs, related, idx, options.l2, g1, gb1);
      kernels::axpy(-options.learning_rate, g1, model.level1_weights);
      model.level1_bias -= options.learning_rate * gb1;
    });
    if (!xs2.empty()) {
      run_epoch(xs2.size(), [&](std::span<const std::size_t> idx) {
        softmax_loss_impl(model.level2_weights, model.level2_bias, xs2, level2, idx, options.l2, g2,
                          gb2);
        kernels::axpy(-options.learning_rate, g2, model.level2_weights);
        for (std::size_t k = 0; k < 3; ++k) model.level2_bias[k] -= options.learning_rate * gb2[k];
      });
    }
    record();
  }
  return model;
}

}  // namespace fakta
