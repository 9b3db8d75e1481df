#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pubtrend/coherence.hpp"
#include "pubtrend/config.hpp"
#include "pubtrend/mutual_info.hpp"

namespace pubtrend {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kManifestFile = "manifest.json";

enum class Stage { ingest, preprocess, embed, cluster, topics, evaluate, tsne, trends };

inline constexpr std::array<Stage, 8> kAllStages{Stage::ingest, Stage::preprocess, Stage::embed,
                                                 Stage::cluster, Stage::topics, Stage::evaluate,
                                                 Stage::tsne, Stage::trends};

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

struct ArtifactEntry {
  std::string path;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

struct StageRecord {
  std::string stage;
  double wall_seconds = 0.0;
  std::vector<ArtifactEntry> artifacts;
  std::vector<std::string> warnings;
};

struct RunManifest {
  std::string version{kVersion};
  std::string config_json;
  std::vector<StageRecord> stages;  // canonical stage order
  bool complete = true;
  std::string error;  // set when a stage failed

  const StageRecord* find(std::string_view stage) const;
  std::size_t artifact_count() const;

  std::string to_json() const;
  static RunManifest from_json(std::string_view text);
};

using LogFn = std::function<void(std::string_view)>;

// Runs the requested stages in dependency order, reading upstream artifacts
// from config.output_dir. Stages already recorded in an existing manifest are
// kept. Throws DependencyError before running anything when an upstream
// artifact is missing and its stage is not requested; any other failure is
// rethrown as StageError after the partial manifest has been written.
RunManifest run_pipeline(const PipelineConfig& config, std::span<const Stage> stages, const LogFn& log = {});

// Problems found (missing files, hash mismatches); empty when consistent.
std::vector<std::string> verify_manifest(const RunManifest& manifest, const std::filesystem::path& dir);

RunManifest read_manifest(const std::filesystem::path& dir);

std::string sha256_hex(std::string_view bytes);

// UMass coherence recomputed from a run directory's topic artifacts.
CoherenceReport evaluate_run(const std::filesystem::path& dir);

struct EmbeddingComparison {
  std::vector<std::pair<EmbeddingMethod, CoherenceReport>> coherence;
  struct Pair {
    EmbeddingMethod a;
    EmbeddingMethod b;
    MIReport report;
  };
  std::vector<Pair> agreement;
};

// Full runs for tfidf, pubg and pubw in subdirectories of config.output_dir,
// plus coherence_comparison.tsv and mi_comparison.tsv at the top level.
EmbeddingComparison compare_embeddings(const PipelineConfig& config, bool include_tsne = true,
                                       const LogFn& log = {});

}  // namespace pubtrend
