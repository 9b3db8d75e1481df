#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pubtrend/config.hpp"
#include "pubtrend/corpus.hpp"
#include "pubtrend/errors.hpp"
#include "pubtrend/pipeline.hpp"
#include "pubtrend/synth.hpp"

namespace {

using namespace pubtrend;

void log_line(std::string_view line) { std::cerr << line << '\n'; }

struct RunOptions {
  std::string config;
  std::string output;
  int threads = 0;
};

PipelineConfig configure(const RunOptions& o) {
  PipelineConfig cfg = load_config(o.config);
  if (!o.output.empty()) cfg.output_dir = o.output;
  if (o.threads > 0) cfg.threads = o.threads;
  return cfg;
}

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("-c,--config", o.config, "pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", o.output, "override output_dir from the config");
  cmd->add_option("-t,--threads", o.threads, "override threads from the config")->check(CLI::PositiveNumber);
}

int fail(std::string_view stage, std::string_view what) {
  std::cerr << fmt::format("pubtrend: {} failed: {}\n", stage, what);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Publication corpus topic and trend analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunOptions run;
  std::vector<std::pair<CLI::App*, std::vector<Stage>>> stage_commands;
  const std::vector<std::pair<Stage, std::string>> descriptions = {
      {Stage::ingest, "load and validate the corpus; write summary statistics"},
      {Stage::preprocess, "clean, lemmatize, merge phrases and build the vocabulary"},
      {Stage::embed, "compute document vectors (tfidf, pubg or pubw)"},
      {Stage::cluster, "k-means over document vectors, optional elbow scan"},
      {Stage::topics, "per-cluster LDA and top words"},
      {Stage::evaluate, "UMass coherence of the fitted topics"},
      {Stage::tsne, "2-D t-SNE coordinates for plotting"},
      {Stage::trends, "per-year cluster counts and fractions"}};
  for (const auto& [stage, text] : descriptions) {
    auto* cmd = app.add_subcommand(std::string(to_string(stage)), text);
    add_run_options(cmd, run);
    stage_commands.push_back({cmd, {stage}});
  }
  auto* all = app.add_subcommand("all", "run every stage in order");
  add_run_options(all, run);
  stage_commands.push_back({all, {kAllStages.begin(), kAllStages.end()}});

  auto* compare = app.add_subcommand("compare-embeddings", "full runs for tfidf, pubg and pubw with comparison tables");
  add_run_options(compare, run);
  bool skip_tsne = false;
  compare->add_flag("--skip-tsne", skip_tsne, "leave out the t-SNE stage");

  auto* synth = app.add_subcommand("synth-corpus", "write a seeded planted-topic corpus as CSV");
  SynthOptions so;
  std::string synth_out, truth_out;
  synth->add_option("-o,--output", synth_out, "CSV file to write")->required();
  synth->add_option("--truth", truth_out, "also write dominant planted topic per document");
  synth->add_option("--docs", so.docs, "number of documents")->check(CLI::PositiveNumber);
  synth->add_option("--topics", so.topics, "planted topics")->check(CLI::PositiveNumber);
  synth->add_option("--topic-vocabulary", so.topic_vocabulary, "size of the shared topic vocabulary");
  synth->add_option("--topic-concentration", so.topic_concentration, "Dirichlet parameter of topic-word draws");
  synth->add_option("--doc-concentration", so.doc_concentration, "Dirichlet parameter of per-abstract mixtures");
  synth->add_option("--tail-vocabulary", so.tail_vocabulary, "number of rare topic-neutral words");
  synth->add_option("--tail-rate", so.tail_rate, "share of words drawn from the rare tail");
  synth->add_flag("--disjoint-topics", so.disjoint_topics, "give each topic its own block of the vocabulary");
  synth->add_option("--min-words", so.min_words, "fewest content words per abstract");
  synth->add_option("--max-words", so.max_words, "most content words per abstract");
  synth->add_option("--year-min", so.year_min, "first publication year");
  synth->add_option("--year-max", so.year_max, "last publication year");
  synth->add_option("--venue", so.venue, "venue label");
  synth->add_option("--seed", so.seed, "generator seed")->required();

  CLI11_PARSE(app, argc, argv);

  std::string stage_name = "config";
  try {
    for (const auto& [cmd, stages] : stage_commands) {
      if (!cmd->parsed()) continue;
      const PipelineConfig cfg = configure(run);
      stage_name = cmd->get_name();
      const RunManifest m = run_pipeline(cfg, stages, log_line);
      log_line(fmt::format("{} artifacts recorded in {}", m.artifact_count(), (cfg.output_dir / kManifestFile).string()));
      return 0;
    }
    if (compare->parsed()) {
      const PipelineConfig cfg = configure(run);
      stage_name = "compare-embeddings";
      const auto result = compare_embeddings(cfg, !skip_tsne, log_line);
      for (const auto& [m, report] : result.coherence) {
        std::cout << fmt::format("{}\tcoherence {}\n", to_string(m), report.overall);
      }
      for (const auto& p : result.agreement) {
        std::cout << fmt::format("{}-{}\tmi {}\tnmi {}\tami {}\n", to_string(p.a), to_string(p.b), p.report.mi,
                                 p.report.nmi, p.report.ami);
      }
      return 0;
    }
    if (synth->parsed()) {
      stage_name = "synth-corpus";
      const SynthCorpus sc = generate_corpus(so);
      std::ofstream(synth_out, std::ios::binary) << write_corpus(sc.corpus);
      if (!truth_out.empty()) std::ofstream(truth_out, std::ios::binary) << sc.truth_table();
      log_line(fmt::format("wrote {} records to {}", sc.corpus.size(), synth_out));
      return 0;
    }
  } catch (const StageError& e) {
    return fail(e.stage(), e.what());
  } catch (const DependencyError& e) {
    return fail(e.stage(), e.what());
  } catch (const std::exception& e) {
    return fail(stage_name, e.what());
  }
  return 0;
}
