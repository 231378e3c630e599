// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The Fakta Authors
//
// Operator command line: indexing, search, fact checks, stance training,
// evaluation and the HTTP service.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fakta/config.hpp"
#include "fakta/error.hpp"
#include "fakta/eval.hpp"
#include "fakta/serialize.hpp"
#include "fakta/service.hpp"

namespace {

using namespace fakta;

constexpr int kUsageError = 2;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

// Resolves --config, falling back to $FAKTA_CONFIG. Nullopt means usage error.
std::optional<std::filesystem::path> config_path(const std::string& flag) {
  if (!flag.empty()) return std::filesystem::path(flag);
  return config_path_from_env();
}

struct Overrides {
  std::optional<std::size_t> k;
  std::string model;
  std::string label_mode;
  std::string channels;
  std::optional<double> tau;
  std::optional<std::size_t> threads;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--k", k, "Documents per channel");
    cmd->add_option("--model", model, "Retrieval model (e.g. bm25, dfr_z, lm_jelinek_0.10)");
    cmd->add_option("--label-mode", label_mode, "2lbl or 3lbl");
    cmd->add_option("--channels", channels, "Comma-separated channels to keep enabled");
    cmd->add_option("--tau", tau, "NEI threshold");
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  void apply(PipelineConfig& c) const {
    if (k) c.k = *k;
    if (!model.empty()) c.model = RetrievalModel::parse(model);
    if (!label_mode.empty()) {
      auto m = parse_label_mode(label_mode);
      if (!m) throw ArgumentError("--label-mode must be 2lbl or 3lbl");
      c.label_mode = *m;
    }
    if (!channels.empty()) {
      std::array<bool, 4> keep{};
      for (const auto& name : split_list(channels)) {
        auto r = parse_reliability(name);
        if (!r) throw ArgumentError("unknown channel '" + name + "'");
        keep[static_cast<std::size_t>(*r)] = true;
      }
      for (auto r : kAllChannels) {
        if (!keep[static_cast<std::size_t>(r)]) c.source(r) = ChannelSource::Disabled;
      }
    }
    if (tau) c.nei_threshold = *tau;
    if (threads) c.threads = *threads;
    c.validate();
  }
};

int cmd_index_build(const std::string& corpus, const std::string& dir) {
  const auto index = Index::build(load_corpus(corpus));
  index.save(dir);
  std::cout << "indexed " << index.size() << " documents, " << index.stats().total_tokens
            << " tokens -> " << dir << "\n";
  return 0;
}

int cmd_search(const std::string& dir, const std::string& claim, const std::string& model_name,
               std::size_t k, bool use_rerank, bool raw) {
  const auto index = Index::load(dir);
  const auto model = RetrievalModel::parse(model_name);
  const auto tokens = analyze(claim);
  Query query;
  if (raw) {
    query = raw_query(tokens);
  } else {
    try {
      query = generate_query(tokens, extract_named_entities(tokens));
    } catch (const EmptyQuery&) {
      query = fallback_query(tokens);
    }
  }
  std::cerr << "query: " << query.text() << "\n";
  std::vector<ScoredDocument> hits;
  if (use_rerank) {
    hits = search(index, query, model, std::max<std::size_t>(k, 20));
    std::vector<std::string> warnings;
    hits = rerank(
        tokens, std::move(hits),
        [&index](const std::string& id) -> std::optional<std::string> {
          auto d = index.find(id);
          if (!d) return std::nullopt;
          return index.document(*d).title;
        },
        CountMode::Multiset, &warnings);
    if (hits.size() > k) hits.resize(k);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } else {
    hits = search(index, query, model, k);
  }
  for (const auto& h : hits) {
    const auto& doc = index.document(*index.find(h.doc_id));
    std::printf("%zu\t%s\t%.6f", h.rank, h.doc_id.c_str(), h.score_init);
    if (h.f_rank) std::printf("\t%.6f", *h.f_rank);
    std::printf("\t%s\n", doc.title.c_str());
  }
  return 0;
}

int cmd_check(const std::filesystem::path& cfg_path, const std::string& claim,
              const Overrides& overrides, bool timing) {
  auto cfg = load_config(cfg_path);
  overrides.apply(cfg.pipeline);
  const auto artifacts = load_artifacts(cfg);
  for (const auto& w : artifacts.warnings) std::cerr << "warning: " << w << "\n";
  const FactChecker checker(artifacts.resources(), cfg.pipeline);
  const auto result = checker.check(claim);
  SerializeOptions so;
  so.include_timing = timing;
  std::cout << dump(to_json(result, so));
  return 0;
}

int cmd_stance_train(const std::string& data, const std::string& out, std::uint64_t seed,
                     const TrainOptions& base, std::size_t buckets) {
  const auto examples = load_stance_examples(data);
  TrainOptions opts = base;
  opts.seed = seed;
  FeatureConfig features;
  features.buckets = buckets;
  TrainReport report;
  const auto model = train(examples, features, opts, &report);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  model.save(out);

  std::size_t correct = 0;
  for (const auto& ex : examples) {
    if (predict_stance(model, ex.claim, ex.document).dominant() == ex.gold) ++correct;
  }
  std::printf("trained on %zu examples: level-1 loss %.6f -> %.6f, train accuracy %.4f\n",
              examples.size(), report.level1_loss.front(), report.level1_loss.back(),
              static_cast<double>(correct) / static_cast<double>(examples.size()));
  return 0;
}

int cmd_eval_retrieval(const std::string& corpus, const std::string& index_dir,
                       const std::string& claims_path, const std::string& models_arg,
                       const std::string& variants_arg, const std::string& ks_arg,
                       const std::string& csv) {
  const auto index = index_dir.empty() ? Index::build(load_corpus(corpus)) : Index::load(index_dir);
  const auto claims = load_fever(claims_path);
  std::vector<RetrievalModel> models;
  if (models_arg == "all") {
    models = RetrievalModel::all_variants();
  } else {
    for (const auto& m : split_list(models_arg)) models.push_back(RetrievalModel::parse(m));
  }
  std::vector<QueryVariant> variants;
  for (const auto& v : split_list(variants_arg)) {
    auto qv = parse_query_variant(v);
    if (!qv) throw ArgumentError("unknown variant '" + v + "'");
    variants.push_back(*qv);
  }
  RetrievalEvalOptions opts;
  opts.ks.clear();
  for (const auto& k : split_list(ks_arg)) opts.ks.push_back(std::stoul(k));
  const auto table = run_retrieval_eval(index, claims, models, variants, opts);
  std::cout << "claims with evidence: " << table.claims << "\n" << table.to_text();
  if (!csv.empty()) write_text(csv, table.to_csv());
  return 0;
}

int cmd_eval_pipeline(const std::filesystem::path& cfg_path, const std::string& claims_path,
                      const std::string& dev_path, const std::string& grid_arg,
                      std::optional<std::uint64_t> rs_seed, const Overrides& overrides,
                      const std::string& csv) {
  auto cfg = load_config(cfg_path);
  overrides.apply(cfg.pipeline);
  const auto artifacts = load_artifacts(cfg);
  const FactChecker checker(artifacts.resources(), cfg.pipeline);
  PipelineConfig pc = cfg.pipeline;
  if (!dev_path.empty()) {
    std::vector<double> grid;
    for (const auto& g : split_list(grid_arg)) grid.push_back(std::stod(g));
    const auto dev = load_fever(dev_path);
    pc.nei_threshold = tune_threshold(dev, checker, grid, pc);
    std::cout << "tuned nei_threshold = " << pc.nei_threshold << "\n";
  }
  PipelineEvalOptions opts;
  opts.rs_seed = rs_seed;
  const auto report = run_pipeline_eval(checker, load_fever(claims_path), pc, opts);
  std::cout << report.to_text();
  if (!csv.empty()) write_text(csv, report.to_csv());
  return 0;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const std::optional<std::filesystem::path>& cfg_path, std::optional<int> port,
              const std::string& index_dir, const std::string& corpus, const std::string& model,
              const std::string& registry, const std::string& host) {
  AppConfig cfg = cfg_path ? load_config(*cfg_path) : AppConfig{};
  if (!index_dir.empty()) cfg.index_dir = index_dir;
  if (!corpus.empty()) cfg.corpus = corpus;
  if (!model.empty()) cfg.model = model;
  if (!registry.empty()) cfg.registry = registry;
  if (port) cfg.service.port = *port;
  if (!host.empty()) cfg.service.host = host;

  const auto artifacts = load_artifacts(cfg);
  for (const auto& w : artifacts.warnings) std::cerr << "warning: " << w << "\n";
  const FactChecker checker(artifacts.resources(), cfg.pipeline);
  ServiceOptions so;
  so.cors_origin = cfg.service.cors_origin;
  so.static_dir = cfg.service.static_dir;
  const Service service(&checker, so);
  HttpServer server(service);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on http://" << cfg.service.host << ":" << cfg.service.port << "\n";
  server.run(cfg.service.host, cfg.service.port);
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fakta: claim retrieval, stance detection and verdicts"};
  app.require_subcommand(1);

  // index build
  auto* index_cmd = app.add_subcommand("index", "Index management");
  index_cmd->require_subcommand(1);
  auto* build_cmd = index_cmd->add_subcommand("build", "Build an index from a JSONL corpus");
  std::string corpus_path, index_dir;
  build_cmd->add_option("corpus", corpus_path, "Corpus JSONL")->required();
  build_cmd->add_option("dir", index_dir, "Output directory")->required();

  // search
  auto* search_cmd = app.add_subcommand("search", "Search an index with a claim");
  std::string search_dir, search_claim, search_model = "dfr_z";
  std::size_t search_k = 10;
  bool search_rerank = false, search_raw = false;
  search_cmd->add_option("dir", search_dir, "Index directory")->required();
  search_cmd->add_option("claim", search_claim, "Claim text")->required();
  search_cmd->add_option("--model", search_model, "Retrieval model");
  search_cmd->add_option("--k", search_k, "Number of results")->check(CLI::PositiveNumber);
  search_cmd->add_flag("--rerank", search_rerank, "Re-rank by title keyword overlap");
  search_cmd->add_flag("--raw", search_raw, "Use every claim word as the query");

  // check
  auto* check_cmd = app.add_subcommand("check", "Fact-check a claim");
  std::string check_claim, check_config;
  bool no_timing = false;
  Overrides check_overrides;
  check_cmd->add_option("claim", check_claim, "Claim text")->required();
  check_cmd->add_option("--config", check_config, "Config file (default $FAKTA_CONFIG)");
  check_cmd->add_flag("--no-timing", no_timing, "Omit timing fields from the output");
  check_overrides.add_to(check_cmd);

  // stance train
  auto* stance_cmd = app.add_subcommand("stance", "Stance model tools");
  stance_cmd->require_subcommand(1);
  auto* train_cmd = stance_cmd->add_subcommand("train", "Train a stance model");
  std::string train_data, train_out;
  std::uint64_t train_seed = 0;
  std::size_t buckets = FeatureConfig{}.buckets;
  TrainOptions train_opts;
  train_cmd->add_option("data", train_data, "Training JSONL (claim, document, stance)")->required();
  train_cmd->add_option("--out", train_out, "Model output path")->required();
  train_cmd->add_option("--seed", train_seed, "Shuffling seed");
  train_cmd->add_option("--epochs", train_opts.epochs, "Epochs");
  train_cmd->add_option("--lr", train_opts.learning_rate, "Learning rate");
  train_cmd->add_option("--l2", train_opts.l2, "L2 penalty");
  train_cmd->add_option("--batch", train_opts.batch_size, "Mini-batch size (0 = full batch)");
  train_cmd->add_option("--buckets", buckets, "Hash buckets per text")->check(CLI::PositiveNumber);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluation harness");
  eval_cmd->require_subcommand(1);
  auto* eval_ret = eval_cmd->add_subcommand("retrieval", "Recall@K table over models and query variants");
  std::string er_corpus, er_index, er_claims, er_models = "all", er_variants = "raw,query-gen,reranked",
                                              er_ks = "1,5,10,20", er_csv;
  auto* corpus_opt = eval_ret->add_option("--corpus", er_corpus, "Corpus JSONL (indexed in memory)");
  auto* index_opt = eval_ret->add_option("--index", er_index, "Index directory");
  corpus_opt->excludes(index_opt);
  eval_ret->add_option("--claims", er_claims, "FEVER-style claims JSONL")->required();
  eval_ret->add_option("--models", er_models, "Comma-separated models or 'all'");
  eval_ret->add_option("--variants", er_variants, "Comma-separated raw,query-gen,reranked");
  eval_ret->add_option("--ks", er_ks, "Comma-separated recall cut-offs");
  eval_ret->add_option("--csv", er_csv, "Also write the table as CSV");

  auto* eval_pipe = eval_cmd->add_subcommand("pipeline", "Verdict metrics for the full pipeline");
  std::string ep_config, ep_claims, ep_dev, ep_grid = "0,0.5,1,1.5,2,2.5,3,4,5", ep_csv;
  std::optional<std::uint64_t> ep_rs;
  Overrides ep_overrides;
  eval_pipe->add_option("--config", ep_config, "Config file (default $FAKTA_CONFIG)");
  eval_pipe->add_option("--claims", ep_claims, "FEVER-style claims JSONL")->required();
  eval_pipe->add_option("--tune", ep_dev, "Development claims for NEI threshold tuning");
  eval_pipe->add_option("--grid", ep_grid, "Comma-separated threshold grid");
  eval_pipe->add_option("--rs-seed", ep_rs, "Judge NEI claims on randomly sampled documents");
  eval_pipe->add_option("--csv", ep_csv, "Also write the report as CSV");
  ep_overrides.add_to(eval_pipe);

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  std::string sv_config, sv_index, sv_corpus, sv_model, sv_registry, sv_host;
  std::optional<int> sv_port;
  serve_cmd->add_option("--config", sv_config, "Config file (default $FAKTA_CONFIG)");
  serve_cmd->add_option("--port", sv_port, "Port (default 8080)");
  serve_cmd->add_option("--host", sv_host, "Bind address");
  serve_cmd->add_option("--index-dir", sv_index, "Index directory");
  serve_cmd->add_option("--corpus", sv_corpus, "Corpus JSONL to index at startup");
  serve_cmd->add_option("--model", sv_model, "Stance model file");
  serve_cmd->add_option("--registry", sv_registry, "Source registry CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*build_cmd) return cmd_index_build(corpus_path, index_dir);
    if (*search_cmd) {
      return cmd_search(search_dir, search_claim, search_model, search_k, search_rerank, search_raw);
    }
    if (*check_cmd) {
      const auto path = config_path(check_config);
      if (!path || !std::filesystem::exists(*path)) {
        std::cerr << "error: check needs an existing --config file (or $FAKTA_CONFIG)\n\n"
                  << check_cmd->help();
        return kUsageError;
      }
      return cmd_check(*path, check_claim, check_overrides, !no_timing);
    }
    if (*train_cmd) return cmd_stance_train(train_data, train_out, train_seed, train_opts, buckets);
    if (*eval_ret) {
      if (er_corpus.empty() && er_index.empty()) {
        std::cerr << "error: eval retrieval needs --corpus or --index\n\n" << eval_ret->help();
        return kUsageError;
      }
      return cmd_eval_retrieval(er_corpus, er_index, er_claims, er_models, er_variants, er_ks, er_csv);
    }
    if (*eval_pipe) {
      const auto path = config_path(ep_config);
      if (!path || !std::filesystem::exists(*path)) {
        std::cerr << "error: eval pipeline needs an existing --config file (or $FAKTA_CONFIG)\n\n"
                  << eval_pipe->help();
        return kUsageError;
      }
      return cmd_eval_pipeline(*path, ep_claims, ep_dev, ep_grid, ep_rs, ep_overrides, ep_csv);
    }
    if (*serve_cmd) {
      std::optional<std::filesystem::path> path;
      if (!sv_config.empty()) {
        path = sv_config;
      } else {
        path = config_path_from_env();
      }
      return cmd_serve(path, sv_port, sv_index, sv_corpus, sv_model, sv_registry, sv_host);
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
