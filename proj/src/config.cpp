#include "pubtrend/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "pubtrend/errors.hpp"

namespace pubtrend {

using json = nlohmann::ordered_json;

std::string_view to_string(EmbeddingMethod m) {
  switch (m) {
    case EmbeddingMethod::tfidf: return "tfidf";
    case EmbeddingMethod::pubg: return "pubg";
    case EmbeddingMethod::pubw: return "pubw";
  }
  return "?";
}

std::optional<EmbeddingMethod> parse_embedding_method(std::string_view name) {
  if (name == "tfidf") return EmbeddingMethod::tfidf;
  if (name == "pubg") return EmbeddingMethod::pubg;
  if (name == "pubw") return EmbeddingMethod::pubw;
  return std::nullopt;
}

namespace {

// Walks one JSON object, consuming known keys and rejecting the rest.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(fmt::format("'{}' must be an object", display()));
  }

  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : node_.items()) {
      if (!seen_.count(key)) throw ConfigError(fmt::format("unknown key '{}'", qualify(key)));
    }
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    const auto it = node_.find(key);
    if (it == node_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& require(const std::string& key) {
    const json* v = get(key);
    if (!v) throw ConfigError(fmt::format("missing required key '{}'", qualify(key)));
    return *v;
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    if (const json* v = get(key)) out = convert<T>(*v, key);
  }

  template <typename T>
  void read(const std::string& key, std::optional<T>& out) {
    if (const json* v = get(key)) out = convert<T>(*v, key);
  }

  template <typename T>
  T convert(const json& v, const std::string& key) const {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw type_error(key, "a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw type_error(key, "an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0) {
          throw type_error(key, "a non-negative integer");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw type_error(key, "a number");
    } else if constexpr (std::is_same_v<T, std::string> || std::is_same_v<T, std::filesystem::path>) {
      if (!v.is_string()) throw type_error(key, "a string");
      return T(v.get<std::string>());
    } else if constexpr (std::is_same_v<T, std::vector<int>>) {
      if (!v.is_array()) throw type_error(key, "an array of integers");
      T out;
      for (const auto& e : v) {
        if (!e.is_number_integer()) throw type_error(key, "an array of integers");
        out.push_back(e.get<int>());
      }
      return out;
    }
    return v.get<T>();
  }

  std::string qualify(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string display() const { return path_.empty() ? "<root>" : path_; }
  ConfigError type_error(const std::string& key, std::string_view what) const {
    return ConfigError(fmt::format("key '{}' must be {}", qualify(key), what));
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.is_absolute() || base.empty()) return p;
  return base / p;
}

template <typename E>
E parse_enum(Section& s, const std::string& key, E current,
             const std::vector<std::pair<std::string_view, E>>& names) {
  const json* v = s.get(key);
  if (!v) return current;
  if (!v->is_string()) throw ConfigError(fmt::format("key '{}' must be a string", s.qualify(key)));
  const auto name = v->get<std::string>();
  for (const auto& [n, e] : names) {
    if (n == name) return e;
  }
  std::string allowed;
  for (const auto& [n, _] : names) allowed += (allowed.empty() ? "" : ", ") + std::string(n);
  throw ConfigError(fmt::format("key '{}' has invalid value '{}' (expected one of {})", s.qualify(key), name,
                                allowed));
}

void read_columns(Section& s, ColumnSchema& c) {
  s.read("venue", c.venue);
  s.read("year", c.year);
  s.read("title", c.title);
  s.read("abstract", c.abstract_text);
  // Optional columns may be disabled with an empty string.
  auto optional_column = [&](const std::string& key, std::optional<std::string>& out) {
    if (const json* v = s.get(key)) {
      const auto name = s.convert<std::string>(*v, key);
      out = name.empty() ? std::nullopt : std::optional<std::string>(name);
    }
  };
  optional_column("id", c.id);
  optional_column("authors", c.authors);
  optional_column("keywords", c.keywords);
  optional_column("doi", c.doi);
  std::string sep;
  s.read("list_separator", sep);
  if (!sep.empty()) {
    if (sep.size() != 1) throw ConfigError(fmt::format("key '{}' must be one character", s.qualify("list_separator")));
    c.list_separator = sep[0];
  }
}

}  // namespace

PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }

  PipelineConfig cfg;
  {
    Section top(root, "");
    {
      Section s(top.require("corpus"), "corpus");
      cfg.corpus.path = resolve(s.convert<std::filesystem::path>(s.require("path"), "path"), base_dir);
      if (const json* cols = s.get("columns")) {
        Section c(*cols, "corpus.columns");
        read_columns(c, cfg.corpus.columns);
      }
      cfg.corpus.mode = parse_enum(s, "mode", cfg.corpus.mode,
                                   {{"strict", LoadMode::strict}, {"permissive", LoadMode::permissive}});
      s.read("venue", cfg.corpus.venue);
    }
    if (const json* node = top.get("preprocess")) {
      Section s(*node, "preprocess");
      auto& p = cfg.preprocess;
      std::optional<std::filesystem::path> path;
      s.read("stopwords", path);
      if (path) p.stopwords = resolve(*path, base_dir);
      path.reset();
      s.read("lexicon", path);
      if (path) p.lexicon = resolve(*path, base_dir);
      s.read("remove_stopwords", p.remove_stopwords);
      s.read("pos_filter", p.pos_filter);
      s.read("phrase_min_count", p.phrase_min_count);
      s.read("phrase_threshold", p.phrase_threshold);
      s.read("phrase_passes", p.phrase_passes);
      s.read("min_doc_freq", p.min_doc_freq);
    }
    if (const json* node = top.get("embedding")) {
      Section s(*node, "embedding");
      auto& e = cfg.embedding;
      e.method = parse_enum(s, "method", e.method,
                            {{"tfidf", EmbeddingMethod::tfidf},
                             {"pubg", EmbeddingMethod::pubg},
                             {"pubw", EmbeddingMethod::pubw}});
      s.read("dim", e.dim);
      if (const json* g = s.get("pubg")) {
        Section gs(*g, "embedding.pubg");
        gs.read("window", e.pubg.window);
        e.pubg.weighting = parse_enum(gs, "weighting", e.pubg.weighting,
                                      {{"inverse_distance", WindowWeighting::inverse_distance},
                                       {"uniform", WindowWeighting::uniform}});
        gs.read("epochs", e.pubg.epochs);
        gs.read("learning_rate", e.pubg.learning_rate);
        gs.read("x_max", e.pubg.x_max);
        gs.read("alpha", e.pubg.alpha);
      }
      if (const json* w = s.get("pubw")) {
        Section ws(*w, "embedding.pubw");
        ws.read("window", e.pubw.window);
        ws.read("epochs", e.pubw.epochs);
        ws.read("learning_rate", e.pubw.learning_rate);
        ws.read("negatives", e.pubw.negatives);
        e.pubw.objective = parse_enum(ws, "objective", e.pubw.objective,
                                      {{"negative_sampling", CbowObjective::negative_sampling},
                                       {"full_softmax", CbowObjective::full_softmax}});
      }
    }
    if (const json* node = top.get("cluster")) {
      Section s(*node, "cluster");
      s.read("k", cfg.cluster.k);
      s.read("restarts", cfg.cluster.restarts);
      s.read("max_iter", cfg.cluster.max_iter);
      s.read("tol", cfg.cluster.tol);
      s.read("elbow_k", cfg.cluster.elbow_k);
    }
    if (const json* node = top.get("topics")) {
      Section s(*node, "topics");
      s.read("per_cluster", cfg.topics.per_cluster);
      s.read("alpha", cfg.topics.alpha);
      s.read("eta", cfg.topics.eta);
      s.read("iterations", cfg.topics.iterations);
      s.read("burn_in", cfg.topics.burn_in);
      s.read("top_n", cfg.topics.top_n);
    }
    if (const json* node = top.get("tsne")) {
      Section s(*node, "tsne");
      auto& t = cfg.tsne;
      s.read("perplexity", t.perplexity);
      s.read("early_exaggeration", t.early_exaggeration);
      s.read("exaggeration_iterations", t.exaggeration_iterations);
      s.read("iterations", t.iterations);
      s.read("learning_rate", t.learning_rate);
      s.read("initial_momentum", t.initial_momentum);
      s.read("final_momentum", t.final_momentum);
      s.read("momentum_switch", t.momentum_switch);
    }
    std::optional<std::filesystem::path> out;
    top.read("output_dir", out);
    cfg.output_dir = resolve(out.value_or("output"), base_dir);
    cfg.seed = top.convert<std::uint64_t>(top.require("seed"), "seed");
    top.read("threads", cfg.threads);
  }
  cfg.tsne.seed = derive_seed(cfg.seed, "tsne");
  validate_config(cfg);
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

void validate_config(const PipelineConfig& c) {
  auto check = [](bool ok, std::string_view key, std::string_view rule) {
    if (!ok) throw ConfigError(fmt::format("key '{}' must be {}", key, rule));
  };
  auto exists = [](const std::filesystem::path& p, std::string_view key) {
    if (!std::filesystem::exists(p)) throw ConfigError(fmt::format("key '{}': file {} does not exist", key, p.string()));
  };
  exists(c.corpus.path, "corpus.path");
  if (c.preprocess.stopwords) exists(*c.preprocess.stopwords, "preprocess.stopwords");
  if (c.preprocess.lexicon) exists(*c.preprocess.lexicon, "preprocess.lexicon");
  check(c.preprocess.phrase_min_count >= 1, "preprocess.phrase_min_count", ">= 1");
  check(c.preprocess.phrase_passes >= 0, "preprocess.phrase_passes", ">= 0");
  check(c.preprocess.min_doc_freq >= 1, "preprocess.min_doc_freq", ">= 1");
  check(c.embedding.dim >= 1, "embedding.dim", ">= 1");
  check(c.embedding.pubg.window >= 1, "embedding.pubg.window", ">= 1");
  check(c.embedding.pubg.epochs >= 1, "embedding.pubg.epochs", ">= 1");
  check(c.embedding.pubg.learning_rate > 0, "embedding.pubg.learning_rate", "> 0");
  check(c.embedding.pubg.x_max > 0, "embedding.pubg.x_max", "> 0");
  check(c.embedding.pubw.window >= 1, "embedding.pubw.window", ">= 1");
  check(c.embedding.pubw.epochs >= 1, "embedding.pubw.epochs", ">= 1");
  check(c.embedding.pubw.learning_rate > 0, "embedding.pubw.learning_rate", "> 0");
  check(c.embedding.pubw.negatives >= 1, "embedding.pubw.negatives", ">= 1");
  check(c.cluster.k >= 1, "cluster.k", ">= 1");
  check(c.cluster.restarts >= 1, "cluster.restarts", ">= 1");
  check(c.cluster.max_iter >= 1, "cluster.max_iter", ">= 1");
  check(c.cluster.tol >= 0, "cluster.tol", ">= 0");
  for (int k : c.cluster.elbow_k) check(k >= 1, "cluster.elbow_k", "a list of values >= 1");
  check(c.cluster.elbow_k.empty() || c.cluster.elbow_k.size() >= 3, "cluster.elbow_k", "empty or at least 3 values");
  check(c.topics.per_cluster >= 1, "topics.per_cluster", ">= 1");
  check(!c.topics.alpha || *c.topics.alpha > 0, "topics.alpha", "> 0");
  check(c.topics.eta > 0, "topics.eta", "> 0");
  check(c.topics.iterations >= 1, "topics.iterations", ">= 1");
  check(c.topics.burn_in >= 0 && c.topics.burn_in < c.topics.iterations, "topics.burn_in", "in [0, iterations)");
  check(c.topics.top_n >= 2, "topics.top_n", ">= 2");
  check(c.tsne.perplexity > 0, "tsne.perplexity", "> 0");
  check(c.tsne.early_exaggeration >= 1, "tsne.early_exaggeration", ">= 1");
  check(c.tsne.iterations >= 1, "tsne.iterations", ">= 1");
  check(c.tsne.learning_rate > 0, "tsne.learning_rate", "> 0");
  check(c.threads >= 1, "threads", ">= 1");
}

std::string PipelineConfig::to_json() const {
  auto opt_path = [](const std::optional<std::filesystem::path>& p) {
    return p ? json(p->generic_string()) : json(nullptr);
  };
  auto opt_str = [](const std::optional<std::string>& s) { return s ? json(*s) : json(""); };
  json j;
  j["corpus"] = {{"path", corpus.path.generic_string()},
                 {"columns",
                  {{"venue", corpus.columns.venue},
                   {"year", corpus.columns.year},
                   {"title", corpus.columns.title},
                   {"abstract", corpus.columns.abstract_text},
                   {"id", opt_str(corpus.columns.id)},
                   {"authors", opt_str(corpus.columns.authors)},
                   {"keywords", opt_str(corpus.columns.keywords)},
                   {"doi", opt_str(corpus.columns.doi)},
                   {"list_separator", std::string(1, corpus.columns.list_separator)}}},
                 {"mode", corpus.mode == LoadMode::strict ? "strict" : "permissive"},
                 {"venue", corpus.venue}};
  j["preprocess"] = {{"stopwords", opt_path(preprocess.stopwords)},
                     {"lexicon", opt_path(preprocess.lexicon)},
                     {"remove_stopwords", preprocess.remove_stopwords},
                     {"pos_filter", preprocess.pos_filter},
                     {"phrase_min_count", preprocess.phrase_min_count},
                     {"phrase_threshold", preprocess.phrase_threshold},
                     {"phrase_passes", preprocess.phrase_passes},
                     {"min_doc_freq", preprocess.min_doc_freq}};
  j["embedding"] = {
      {"method", std::string(to_string(embedding.method))},
      {"dim", embedding.dim},
      {"pubg",
       {{"window", embedding.pubg.window},
        {"weighting", embedding.pubg.weighting == WindowWeighting::uniform ? "uniform" : "inverse_distance"},
        {"epochs", embedding.pubg.epochs},
        {"learning_rate", embedding.pubg.learning_rate},
        {"x_max", embedding.pubg.x_max},
        {"alpha", embedding.pubg.alpha}}},
      {"pubw",
       {{"window", embedding.pubw.window},
        {"epochs", embedding.pubw.epochs},
        {"learning_rate", embedding.pubw.learning_rate},
        {"negatives", embedding.pubw.negatives},
        {"objective",
         embedding.pubw.objective == CbowObjective::full_softmax ? "full_softmax" : "negative_sampling"}}}};
  j["cluster"] = {{"k", cluster.k},
                  {"restarts", cluster.restarts},
                  {"max_iter", cluster.max_iter},
                  {"tol", cluster.tol},
                  {"elbow_k", cluster.elbow_k}};
  j["topics"] = {{"per_cluster", topics.per_cluster},
                 {"alpha", topics.alpha ? json(*topics.alpha) : json(nullptr)},
                 {"eta", topics.eta},
                 {"iterations", topics.iterations},
                 {"burn_in", topics.burn_in},
                 {"top_n", topics.top_n}};
  j["tsne"] = {{"perplexity", tsne.perplexity},
               {"early_exaggeration", tsne.early_exaggeration},
               {"exaggeration_iterations", tsne.exaggeration_iterations},
               {"iterations", tsne.iterations},
               {"learning_rate", tsne.learning_rate},
               {"initial_momentum", tsne.initial_momentum},
               {"final_momentum", tsne.final_momentum},
               {"momentum_switch", tsne.momentum_switch}};
  j["output_dir"] = output_dir.generic_string();
  j["seed"] = seed;
  j["threads"] = threads;
  return j.dump(2);
}

}  // namespace pubtrend
