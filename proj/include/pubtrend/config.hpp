#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pubtrend/cbow.hpp"
#include "pubtrend/cooccurrence.hpp"
#include "pubtrend/corpus.hpp"
#include "pubtrend/glove.hpp"
#include "pubtrend/kmeans.hpp"
#include "pubtrend/lda.hpp"
#include "pubtrend/tsne.hpp"

namespace pubtrend {

enum class EmbeddingMethod { tfidf, pubg, pubw };

std::string_view to_string(EmbeddingMethod m);
std::optional<EmbeddingMethod> parse_embedding_method(std::string_view name);

struct CorpusConfig {
  std::filesystem::path path;
  ColumnSchema columns;
  LoadMode mode = LoadMode::strict;
  std::string venue;  // label; derived from the records when empty
};

struct PreprocessConfig {
  std::optional<std::filesystem::path> stopwords;  // bundled list when unset
  std::optional<std::filesystem::path> lexicon;    // bundled lexicon when unset
  bool remove_stopwords = true;
  bool pos_filter = false;
  int phrase_min_count = 5;
  double phrase_threshold = 10.0;
  int phrase_passes = 2;
  int min_doc_freq = 2;
};

struct PubgConfig {
  int window = 10;
  WindowWeighting weighting = WindowWeighting::inverse_distance;
  int epochs = 25;
  double learning_rate = 0.05;
  double x_max = 100.0;
  double alpha = 0.75;
};

struct PubwConfig {
  int window = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  int negatives = 5;
  CbowObjective objective = CbowObjective::negative_sampling;
};

struct EmbeddingConfig {
  EmbeddingMethod method = EmbeddingMethod::pubg;
  int dim = 100;
  PubgConfig pubg;
  PubwConfig pubw;
};

struct ClusterConfig {
  int k = 10;
  int restarts = 10;
  int max_iter = 300;
  double tol = 1e-6;
  std::vector<int> elbow_k;  // elbow scan runs when non-empty
};

struct TopicsConfig {
  int per_cluster = 10;
  std::optional<double> alpha;  // 50 / per_cluster when unset
  double eta = 0.01;
  int iterations = 1000;
  int burn_in = 500;
  int top_n = 10;
};

struct PipelineConfig {
  CorpusConfig corpus;
  PreprocessConfig preprocess;
  EmbeddingConfig embedding;
  ClusterConfig cluster;
  TopicsConfig topics;
  TsneConfig tsne;  // seed is derived from the master seed
  std::filesystem::path output_dir = "output";
  std::uint64_t seed = 0;
  int threads = 1;

  std::string to_json() const;  // resolved snapshot, paths as given after resolution
};

// Required keys: corpus.path and seed. Relative paths resolve against
// base_dir. Throws ConfigError naming the offending key for unknown keys,
// missing required keys, wrong types, bad enum values and missing files.
PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

// Range checks and path existence; parse_config already calls this.
void validate_config(const PipelineConfig& config);

}  // namespace pubtrend
