// Copyright 2026 The edupsy Authors
// SPDX-License-Identifier: Apache-2.0

// Command line entry point: serve, ingest, train, bench, synth.

#include <CLI11.hpp>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include "edupsy/benchmark/harness.hpp"
#include "edupsy/benchmark/suite.hpp"
#include "edupsy/benchmark/table.hpp"
#include "edupsy/classifiers/linear_classifier.hpp"
#include "edupsy/classifiers/model_io.hpp"
#include "edupsy/classifiers/synthetic.hpp"
#include "edupsy/core/config.hpp"
#include "edupsy/core/errors.hpp"
#include "edupsy/orchestrator/http_server.hpp"
#include "edupsy/orchestrator/service.hpp"
#include "edupsy/retrieval/retriever.hpp"

namespace {

using namespace edupsy;

ServiceConfig config_from(const std::string& path) {
  ServiceConfig config = path.empty() ? ServiceConfig{} : load_config(path);
  apply_env_overrides(config);
  return config;
}

orchestrator::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const std::string& config_path, const std::string& host, int port) {
  ServiceConfig config = config_from(config_path);
  if (!host.empty()) config.host = host;
  if (port >= 0) config.port = port;
  orchestrator::Service service(config);
  std::cerr << service.health().dump(2) << "\n";
  orchestrator::HttpServer server(service);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on " << config.host << ":" << config.port << "\n";
  server.listen(config.host, config.port);
  g_server = nullptr;
  return 0;
}

int cmd_ingest(const std::string& config_path, const std::string& corpus, const std::string& out) {
  const ServiceConfig config = config_from(config_path);
  const auto docs = retrieval::load_corpus_jsonl(corpus);
  retrieval::HashingEmbedder embedder(config.embed_dim);
  const auto embedded = retrieval::embed_documents(embedder, docs);
  const auto index = retrieval::HnswIndexf::build(config.embed_dim, embedded, config.hnsw);
  const auto audit = index.audit();
  if (!audit.ok()) {
    for (const auto& v : audit.violations) std::cerr << "audit: " << v << "\n";
    return 1;
  }
  retrieval::save_index(index, out);
  std::cout << "indexed " << index.size() << " documents into " << out << "\n";
  return 0;
}

int cmd_train(const std::string& head, const std::string& data, const std::string& out,
              const std::string& loss, double gamma, double alpha, std::size_t epochs, double lr,
              std::uint64_t seed, std::size_t dim) {
  const auto examples = classifiers::load_training_jsonl(data);
  classifiers::TrainOptions options;
  options.loss = loss == "ce" ? classifiers::FocalLossParams::cross_entropy()
                              : classifiers::FocalLossParams{gamma, alpha};
  options.epochs = epochs;
  options.lr = lr;
  options.seed = seed;
  options.dim = dim;
  const auto result = classifiers::train(examples, options);
  classifiers::save_model({head, result.model, options.loss}, out);
  std::cout << "trained " << head << " head on " << examples.size() << " examples; final loss "
            << result.epoch_loss.back() << "\n";
  return 0;
}

int cmd_synth(const std::string& head, const std::string& out, std::size_t n, std::uint64_t seed) {
  const auto examples = head == "safety" ? classifiers::synthetic::safety_dataset(n, seed)
                                         : classifiers::synthetic::intent_dataset(n, n, seed);
  classifiers::save_training_jsonl(examples, out);
  std::cout << "wrote " << examples.size() << " examples to " << out << "\n";
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& suite_path,
              const std::string& backend_name, const std::string& corpus, char letter,
              double floor, const std::string& csv_out, std::size_t parallel) {
  ServiceConfig config = config_from(config_path);
  if (!corpus.empty()) config.corpus = corpus;
  const auto items = benchmark::load_suite(suite_path);

  std::shared_ptr<agents::GenerationBackend> backend;
  if (backend_name == "oracle") {
    backend = std::make_shared<benchmark::OracleBackend>(items);
  } else if (backend_name == "constant") {
    backend = std::make_shared<benchmark::ConstantBackend>(letter);
  } else if (backend_name == "retrieval") {
    backend = std::make_shared<benchmark::RetrievalDependentBackend>(items);
  } else if (backend_name == "mock") {
    backend = std::make_shared<agents::ScriptedMockBackend>();
  } else if (backend_name == "remote") {
    backend = std::make_shared<agents::RemoteBackend>(
        config.generation_endpoint, std::chrono::milliseconds(config.request_timeout_ms));
  } else {
    throw Error(ErrorKind::validation, "unknown backend '" + backend_name + "'");
  }

  auto retriever = std::make_shared<retrieval::Retriever>(
      std::make_shared<retrieval::HashingEmbedder>(config.embed_dim),
      std::make_shared<retrieval::OverlapReranker>(), config.hnsw);
  if (!config.corpus.empty()) retriever->reindex(retrieval::load_corpus_jsonl(config.corpus));

  agents::PromptTemplates templates = config.templates.empty()
                                          ? agents::PromptTemplates::defaults()
                                          : agents::PromptTemplates::load(config.templates);
  agents::EducationAgent agent(retriever, backend,
                               agents::PromptBuilder(templates, {config.excerpt_budget, config.prompt_budget}),
                               {config.retrieve_k, config.rerank_m});
  const auto run = benchmark::run_suite(items, agent, {parallel});

  std::string csv;
  for (auto level : {benchmark::Level::primary, benchmark::Level::middle, benchmark::Level::high}) {
    const auto row = benchmark::row_from_reports(backend->name(), run.reports, level);
    if (row.tenths.empty()) continue;
    const auto table = benchmark::format_table({row}, level);
    std::cout << to_string(level) << "\n" << table.text << "\n";
    csv += "# " + std::string(to_string(level)) + "\n" + table.csv;
  }
  for (const auto& item : run.items) {
    if (!item.error.empty()) std::cerr << "item " << item.id << ": " << item.error << "\n";
  }
  if (!csv_out.empty()) {
    std::ofstream out(csv_out, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + csv_out);
    out << csv;
  }
  const auto low = benchmark::below_floor(run.reports, static_cast<std::int64_t>(floor * 10.0 + 0.5));
  for (const auto& r : low) {
    std::cerr << "below floor: " << to_string(r.level) << " " << r.subject << " "
              << benchmark::format_tenths(r.tenths) << "\n";
  }
  return low.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Education and counseling dialogue service"};
  app.require_subcommand(1);

  std::string config_path;

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  std::string host;
  int port = -1;
  serve->add_option("--config", config_path, "Config file")->check(CLI::ExistingFile);
  serve->add_option("--host", host, "Override server.host");
  serve->add_option("--port", port, "Override server.port");

  auto* ingest = app.add_subcommand("ingest", "Build an index snapshot from a corpus");
  std::string corpus, out;
  ingest->add_option("--config", config_path, "Config file for embedding and HNSW settings")
      ->check(CLI::ExistingFile);
  ingest->add_option("--corpus", corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", out, "Index snapshot path")->required();

  auto* train = app.add_subcommand("train", "Train a safety or intent head");
  std::string head, data, loss = "focal";
  double gamma = 2.0, alpha = 0.25, lr = 0.5;
  std::size_t epochs = 20, dim = 4096;
  std::uint64_t seed = 0;
  train->add_option("--head", head, "safety | intent")->required()->check(CLI::IsMember({"safety", "intent"}));
  train->add_option("--data", data, "Training JSONL {\"text\", \"label\"}")->required()->check(CLI::ExistingFile);
  train->add_option("--out", out, "Model JSON path")->required();
  train->add_option("--loss", loss, "focal | ce")->check(CLI::IsMember({"focal", "ce"}));
  train->add_option("--gamma", gamma, "Focal gamma");
  train->add_option("--alpha", alpha, "Positive-class weight");
  train->add_option("--epochs", epochs, "Epochs");
  train->add_option("--lr", lr, "Learning rate");
  train->add_option("--seed", seed, "Shuffle seed");
  train->add_option("--dim", dim, "Hashed feature dimension");

  auto* synth = app.add_subcommand("synth", "Write a synthetic training set");
  std::size_t n = 500;
  synth->add_option("--head", head, "safety | intent")->required()->check(CLI::IsMember({"safety", "intent"}));
  synth->add_option("--out", out, "Output JSONL")->required();
  synth->add_option("--n", n, "Examples per class");
  synth->add_option("--seed", seed, "Generator seed");

  auto* bench = app.add_subcommand("bench", "Run a multiple-choice suite");
  std::string suite, backend = "mock", csv_out;
  std::string letter = "A";
  double floor = 0.0;
  std::size_t parallel = 1;
  bench->add_option("--config", config_path, "Config file")->check(CLI::ExistingFile);
  bench->add_option("--suite", suite, "Suite JSONL")->required()->check(CLI::ExistingFile);
  bench->add_option("--backend", backend, "oracle | constant | retrieval | mock | remote");
  bench->add_option("--corpus", corpus, "Corpus JSONL (overrides data.corpus)");
  bench->add_option("--letter", letter, "Letter for the constant backend");
  bench->add_option("--floor", floor, "Minimum per-subject accuracy; lower exits 2");
  bench->add_option("--csv", csv_out, "Write the CSV tables here");
  bench->add_option("--parallel", parallel, "Concurrent items");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return cmd_serve(config_path, host, port);
    if (*ingest) return cmd_ingest(config_path, corpus, out);
    if (*train) return cmd_train(head, data, out, loss, gamma, alpha, epochs, lr, seed, dim);
    if (*synth) return cmd_synth(head, out, n, seed);
    if (*bench) {
      if (letter.size() != 1) throw Error(ErrorKind::validation, "--letter takes one letter");
      return cmd_bench(config_path, suite, backend, corpus, letter[0], floor, csv_out, parallel);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
