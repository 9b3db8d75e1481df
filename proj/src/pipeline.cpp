#include "pubtrend/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "pubtrend/errors.hpp"
#include "pubtrend/lexicon.hpp"
#include "pubtrend/phrases.hpp"
#include "pubtrend/text.hpp"
#include "pubtrend/tfidf.hpp"
#include "pubtrend/trends.hpp"
#include "pubtrend/word_vectors.hpp"

namespace pubtrend {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::ingest: return "ingest";
    case Stage::preprocess: return "preprocess";
    case Stage::embed: return "embed";
    case Stage::cluster: return "cluster";
    case Stage::topics: return "topics";
    case Stage::evaluate: return "evaluate";
    case Stage::tsne: return "tsne";
    case Stage::trends: return "trends";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

// ---------------------------------------------------------------- manifest

const StageRecord* RunManifest::find(std::string_view stage) const {
  for (const auto& s : stages) {
    if (s.stage == stage) return &s;
  }
  return nullptr;
}

std::size_t RunManifest::artifact_count() const {
  std::size_t n = 0;
  for (const auto& s : stages) n += s.artifacts.size();
  return n;
}

std::string RunManifest::to_json() const {
  json j;
  j["version"] = version;
  j["complete"] = complete;
  if (!error.empty()) j["error"] = error;
  j["config"] = config_json.empty() ? json::object() : json::parse(config_json);
  j["stages"] = json::array();
  for (const auto& s : stages) {
    json st;
    st["stage"] = s.stage;
    st["wall_seconds"] = s.wall_seconds;
    st["artifacts"] = json::array();
    for (const auto& a : s.artifacts) st["artifacts"].push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
    st["warnings"] = s.warnings;
    j["stages"].push_back(std::move(st));
  }
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  RunManifest m;
  try {
    const json j = json::parse(text);
    m.version = j.at("version").get<std::string>();
    m.complete = j.at("complete").get<bool>();
    if (j.contains("error")) m.error = j["error"].get<std::string>();
    m.config_json = j.at("config").dump(2);
    for (const auto& st : j.at("stages")) {
      StageRecord s;
      s.stage = st.at("stage").get<std::string>();
      s.wall_seconds = st.at("wall_seconds").get<double>();
      for (const auto& a : st.at("artifacts")) {
        s.artifacts.push_back({a.at("path").get<std::string>(), a.at("sha256").get<std::string>(),
                               a.at("bytes").get<std::size_t>()});
      }
      s.warnings = st.at("warnings").get<std::vector<std::string>>();
      m.stages.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw InputError(fmt::format("malformed manifest: {}", e.what()));
  }
  return m;
}

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace

RunManifest read_manifest(const fs::path& dir) {
  return RunManifest::from_json(read_text(dir / kManifestFile));
}

std::vector<std::string> verify_manifest(const RunManifest& manifest, const fs::path& dir) {
  std::vector<std::string> problems;
  for (const auto& s : manifest.stages) {
    for (const auto& a : s.artifacts) {
      const fs::path p = dir / a.path;
      if (!fs::exists(p)) {
        problems.push_back(fmt::format("{}: missing {}", s.stage, a.path));
      } else if (sha256_hex(read_text(p)) != a.sha256) {
        problems.push_back(fmt::format("{}: hash mismatch for {}", s.stage, a.path));
      }
    }
  }
  return problems;
}

// ---------------------------------------------------------------- stages

namespace {

constexpr std::string_view kCorpusFile = "corpus.csv";
constexpr std::string_view kSummaryJson = "summary.json";
constexpr std::string_view kVocabFile = "vocabulary.tsv";
constexpr std::string_view kTokenDocsFile = "token_docs.tsv";
constexpr std::string_view kDocVectorsFile = "doc_vectors.txt";
constexpr std::string_view kKMeansFile = "kmeans.txt";
constexpr std::string_view kTopicsFile = "topics.tsv";

struct Requirement {
  std::string_view file;
  Stage producer;
};

std::vector<Requirement> requirements(Stage s) {
  switch (s) {
    case Stage::ingest: return {};
    case Stage::preprocess: return {{kCorpusFile, Stage::ingest}};
    case Stage::embed: return {{kVocabFile, Stage::preprocess}, {kTokenDocsFile, Stage::preprocess}};
    case Stage::cluster: return {{kTokenDocsFile, Stage::preprocess}, {kDocVectorsFile, Stage::embed}};
    case Stage::topics:
      return {{kVocabFile, Stage::preprocess}, {kTokenDocsFile, Stage::preprocess}, {kKMeansFile, Stage::cluster}};
    case Stage::evaluate:
      return {{kSummaryJson, Stage::ingest}, {kVocabFile, Stage::preprocess}, {kTokenDocsFile, Stage::preprocess},
              {kTopicsFile, Stage::topics}};
    case Stage::tsne:
      return {{kCorpusFile, Stage::ingest}, {kDocVectorsFile, Stage::embed}, {kKMeansFile, Stage::cluster}};
    case Stage::trends: return {{kCorpusFile, Stage::ingest}, {kSummaryJson, Stage::ingest}, {kKMeansFile, Stage::cluster}};
  }
  return {};
}

std::vector<TokenDoc> nonempty(const std::vector<TokenDoc>& docs) {
  std::vector<TokenDoc> out;
  for (const auto& d : docs) {
    if (!d.tokens.empty()) out.push_back(d);
  }
  return out;
}

std::vector<std::string> ids_of(std::span<const TokenDoc> docs) {
  std::vector<std::string> ids;
  ids.reserve(docs.size());
  for (const auto& d : docs) ids.push_back(d.doc_id);
  return ids;
}

std::string loss_table(const std::vector<double>& loss) {
  std::string out = "epoch\tloss\n";
  for (std::size_t e = 0; e < loss.size(); ++e) out += fmt::format("{}\t{}\n", e + 1, loss[e]);
  return out;
}

class Runner {
 public:
  Runner(const PipelineConfig& cfg, const LogFn& log) : cfg_(cfg), dir_(cfg.output_dir), log_(log) {}

  void run(Stage s, StageRecord& record) {
    record_ = &record;
    switch (s) {
      case Stage::ingest: ingest(); break;
      case Stage::preprocess: preprocess(); break;
      case Stage::embed: embed(); break;
      case Stage::cluster: cluster(); break;
      case Stage::topics: topics(); break;
      case Stage::evaluate: evaluate(); break;
      case Stage::tsne: tsne(); break;
      case Stage::trends: trends(); break;
    }
    record_ = nullptr;
  }

 private:
  void say(const std::string& msg) const {
    if (log_) log_(msg);
  }

  void emit(std::string_view name, const std::string& content) {
    write_text(dir_ / name, content);
    record_->artifacts.push_back({std::string(name), sha256_hex(content), content.size()});
  }

  void warn(std::string msg) {
    say("warning: " + msg);
    record_->warnings.push_back(std::move(msg));
  }

  std::string input(std::string_view name) const { return read_text(dir_ / name); }

  Corpus stored_corpus() const {
    const auto summary = DatasetSummary::from_json(input(kSummaryJson));
    return parse_corpus(input(kCorpusFile), ColumnSchema{}, LoadMode::strict, summary.venue_label);
  }

  Vocabulary stored_vocab() const { return Vocabulary::deserialize(input(kVocabFile)); }
  std::vector<TokenDoc> stored_docs() const { return deserialize_token_docs(input(kTokenDocsFile)); }

  void ingest() {
    Corpus corpus = load_corpus(cfg_.corpus.path, cfg_.corpus.columns, cfg_.corpus.mode, cfg_.corpus.venue);
    for (const auto& issue : corpus.issues) warn(fmt::format("skipped line {}: {}", issue.line, issue.message));
    const DatasetSummary summary = summarize(corpus);
    say(fmt::format("ingest: {} records, {} with abstracts", summary.publication_count, summary.with_abstract));
    emit(kCorpusFile, write_corpus(corpus));
    emit(kSummaryJson, summary.to_json());
    emit("summary.txt", summary.to_table());
  }

  void preprocess() {
    const Corpus corpus = stored_corpus();
    const auto& p = cfg_.preprocess;
    const Lexicon lexicon = p.lexicon ? Lexicon::load(*p.lexicon) : Lexicon::bundled();
    const StopwordSet stopwords =
        !p.remove_stopwords ? StopwordSet{} : p.stopwords ? load_stopwords(*p.stopwords) : bundled_stopwords();

    std::vector<std::string> ids;
    std::vector<TokenSeq> docs;
    for (const auto& rec : corpus.records) {
      if (!rec.has_abstract()) continue;
      ids.push_back(rec.id);
      docs.push_back(tag_and_lemmatize(tokenize(clean_text(rec.abstract_text)), lexicon, p.pos_filter));
    }
    if (docs.empty()) throw PipelineError("no records with abstracts");
    const PhraseModel phrases = fit_phrases(docs, p.phrase_min_count, p.phrase_threshold, p.phrase_passes, stopwords);
    for (auto& d : docs) d = apply_phrases(phrases, d);
    const VocabularyBuild built = build_vocabulary(ids, docs, stopwords, p.min_doc_freq);
    say(fmt::format("preprocess: {} documents, {} phrases, vocabulary {}", docs.size(), phrases.pair_count(),
                    built.vocab.size()));
    emit("phrases.txt", phrases.serialize());
    emit(kVocabFile, built.vocab.serialize());
    emit(kTokenDocsFile, serialize_token_docs(built.docs));
  }

  void embed() {
    const Vocabulary vocab = stored_vocab();
    const std::vector<TokenDoc> docs = stored_docs();
    const std::vector<TokenDoc> used = nonempty(docs);
    if (used.size() < docs.size()) {
      warn(fmt::format("{} documents have no in-vocabulary tokens and are left unclustered", docs.size() - used.size()));
    }
    if (used.empty()) throw PipelineError("no documents with in-vocabulary tokens");
    const auto& e = cfg_.embedding;
    switch (e.method) {
      case EmbeddingMethod::tfidf: {
        const TfidfModel model = fit_tfidf(vocab, docs);
        std::vector<SparseDocVector> vectors;
        vectors.reserve(used.size());
        for (const auto& d : used) vectors.push_back(tfidf_vector(model, d));
        emit("tfidf_model.tsv", serialize_tfidf(model, vocab));
        emit(kDocVectorsFile, serialize_sparse_vectors(used, vectors, model.dims()));
        break;
      }
      case EmbeddingMethod::pubg: {
        const auto x = build_cooccurrence(docs, vocab.size(), e.pubg.window, e.pubg.weighting);
        GloveOptions o;
        o.dim = e.dim;
        o.epochs = e.pubg.epochs;
        o.learning_rate = e.pubg.learning_rate;
        o.x_max = e.pubg.x_max;
        o.alpha = e.pubg.alpha;
        o.seed = derive_seed(cfg_.seed, "pubg");
        const GloveModel model = train_pubg(x, o);
        const WordVectors wv{vocab.tokens(), model.word_vectors()};
        emit("cooccurrence.txt", x.serialize());
        emit("word_vectors.txt", wv.serialize());
        emit("training_loss.tsv", loss_table(model.epoch_loss));
        emit(kDocVectorsFile, serialize_dense_vectors(used, embed_documents(wv, used)));
        break;
      }
      case EmbeddingMethod::pubw: {
        CbowOptions o;
        o.dim = e.dim;
        o.window = e.pubw.window;
        o.epochs = e.pubw.epochs;
        o.learning_rate = e.pubw.learning_rate;
        o.negatives = e.pubw.negatives;
        o.objective = e.pubw.objective;
        o.seed = derive_seed(cfg_.seed, "pubw");
        const CbowModel model = train_pubw(docs, vocab.size(), o);
        const WordVectors wv{vocab.tokens(), model.input};
        emit("word_vectors.txt", wv.serialize());
        emit("training_loss.tsv", loss_table(model.epoch_loss));
        emit(kDocVectorsFile, serialize_dense_vectors(used, embed_documents(wv, used)));
        break;
      }
    }
    say(fmt::format("embed: {} vectors ({})", used.size(), to_string(e.method)));
  }

  void cluster() {
    const std::vector<std::string> ids = ids_of(nonempty(stored_docs()));
    const RowMatrixXd x = read_document_vectors(input(kDocVectorsFile), ids);
    KMeansOptions o;
    o.restarts = cfg_.cluster.restarts;
    o.max_iter = cfg_.cluster.max_iter;
    o.tol = cfg_.cluster.tol;
    o.seed = derive_seed(cfg_.seed, "kmeans");
    const auto model = fit_kmeans(x, cfg_.cluster.k, o);
    say(fmt::format("cluster: K={} inertia {} after {} iterations", model.k(), model.inertia, model.iterations_run));
    emit(kKMeansFile, serialize_kmeans(model, ids));
    if (!cfg_.cluster.elbow_k.empty()) {
      const auto report = elbow_scan(x, cfg_.cluster.elbow_k, o);
      if (report.degenerate) warn("elbow curve is flat; knee is not meaningful");
      say(fmt::format("cluster: elbow knee at K={}", report.knee));
      emit("elbow.tsv", serialize_elbow(report));
    }
  }

  void topics() {
    const Vocabulary vocab = stored_vocab();
    const std::vector<TokenDoc> docs = stored_docs();
    const StoredKMeans km = deserialize_kmeans(input(kKMeansFile));
    std::unordered_map<std::string, const TokenDoc*> by_id;
    for (const auto& d : docs) by_id.emplace(d.doc_id, &d);

    const int k = km.model.k();
    std::vector<std::vector<TokenDoc>> members(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < km.doc_ids.size(); ++i) {
      const auto it = by_id.find(km.doc_ids[i]);
      if (it == by_id.end()) throw ConsistencyError(fmt::format("clustered doc '{}' has no token list", km.doc_ids[i]));
      members[static_cast<std::size_t>(km.model.assignments[i])].push_back(*it->second);
    }

    const auto& t = cfg_.topics;
    const std::size_t n_top = std::min(static_cast<std::size_t>(t.top_n), vocab.size());
    std::vector<std::optional<LdaModel>> models(static_cast<std::size_t>(k));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(k));
    std::atomic<int> next{0};
    // Clusters are independent chains with their own seeds, so the result
    // does not depend on the thread count.
    auto worker = [&] {
      for (int c = next++; c < k; c = next++) {
        const auto ci = static_cast<std::size_t>(c);
        if (members[ci].empty()) continue;
        try {
          LdaOptions o;
          o.topics = t.per_cluster;
          o.alpha = t.alpha;
          o.eta = t.eta;
          o.iterations = t.iterations;
          o.burn_in = t.burn_in;
          o.seed = derive_seed(derive_seed(cfg_.seed, "lda"), static_cast<std::uint64_t>(c));
          models[ci] = fit_lda(members[ci], vocab.size(), o);
        } catch (...) {
          failures[ci] = std::current_exception();
        }
      }
    };
    const int n_threads = std::max(1, std::min(cfg_.threads, k));
    if (n_threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }

    std::vector<TopicSummary> summaries;
    for (int c = 0; c < k; ++c) {
      const auto& m = models[static_cast<std::size_t>(c)];
      if (!m) {
        warn(fmt::format("cluster {} is empty; no topics fitted", c));
        continue;
      }
      for (int topic = 0; topic < m->topics; ++topic) summaries.push_back(top_words(*m, vocab, topic, n_top, c));
      emit(fmt::format("lda/cluster_{:02d}_phi.tsv", c), serialize_phi(*m));
      emit(fmt::format("lda/cluster_{:02d}_theta.tsv", c), serialize_theta(*m));
    }
    say(fmt::format("topics: {} topics over {} clusters", summaries.size(), k));
    emit(kTopicsFile, serialize_topic_summaries(summaries));
  }

  void evaluate() {
    const auto report = evaluate_run(dir_);
    const auto summary = DatasetSummary::from_json(input(kSummaryJson));
    say(fmt::format("evaluate: overall UMass coherence {}", report.overall));
    emit("coherence.tsv", report.to_rows(summary.venue_label, std::string(to_string(cfg_.embedding.method))));
  }

  void tsne() {
    const Corpus corpus = stored_corpus();
    const StoredKMeans km = deserialize_kmeans(input(kKMeansFile));
    const RowMatrixXd x = read_document_vectors(input(kDocVectorsFile), km.doc_ids);
    TsneResult result = fit_tsne(x, cfg_.tsne);
    for (auto& w : result.warnings) warn(std::move(w));
    std::vector<int> years;
    years.reserve(km.doc_ids.size());
    for (const auto& id : km.doc_ids) {
      const auto* rec = corpus.find(id);
      if (!rec) throw ConsistencyError(fmt::format("clustered doc '{}' is not in the corpus", id));
      years.push_back(rec->year);
    }
    say(fmt::format("tsne: {} points, final KL {}", x.rows(),
                    result.kl_trace.empty() ? 0.0 : result.kl_trace.back()));
    emit("tsne.tsv", serialize_tsne(km.doc_ids, result.coords, km.model.assignments, years));
    emit("tsne_kl.tsv", loss_table(result.kl_trace));
  }

  void trends() {
    const Corpus corpus = stored_corpus();
    const StoredKMeans km = deserialize_kmeans(input(kKMeansFile));
    const TrendSeries series = build_trend_series(corpus, km.doc_ids, km.model.assignments, km.model.k());
    say(fmt::format("trends: {} years x {} series", series.years.size(), series.counts.size()));
    emit("trends.tsv", series.serialize());
  }

  const PipelineConfig& cfg_;
  fs::path dir_;
  const LogFn& log_;
  StageRecord* record_ = nullptr;
};

}  // namespace

CoherenceReport evaluate_run(const fs::path& dir) {
  const Vocabulary vocab = Vocabulary::deserialize(read_text(dir / kVocabFile));
  const std::vector<TokenDoc> docs = deserialize_token_docs(read_text(dir / kTokenDocsFile));
  const auto summaries = deserialize_topic_summaries(read_text(dir / kTopicsFile), vocab);
  const DocumentFrequencyIndex index(docs, vocab.size());
  return umass_coherence(summaries, index);
}

RunManifest run_pipeline(const PipelineConfig& config, std::span<const Stage> stages, const LogFn& log) {
  std::set<Stage> requested(stages.begin(), stages.end());
  const fs::path& dir = config.output_dir;

  for (Stage s : kAllStages) {
    if (!requested.count(s)) continue;
    for (const auto& req : requirements(s)) {
      if (requested.count(req.producer) || fs::exists(dir / req.file)) continue;
      throw DependencyError(std::string(to_string(s)),
                            fmt::format("missing {} from upstream stage '{}'", req.file, to_string(req.producer)));
    }
  }

  RunManifest manifest;
  if (fs::exists(dir / kManifestFile)) {
    try {
      manifest = read_manifest(dir);
    } catch (const InputError&) {
      manifest = RunManifest{};
    }
  }
  manifest.version = std::string(kVersion);
  manifest.config_json = config.to_json();
  manifest.complete = true;
  manifest.error.clear();
  fs::create_directories(dir);

  auto store = [&](StageRecord rec) {
    std::erase_if(manifest.stages, [&](const StageRecord& r) { return r.stage == rec.stage; });
    manifest.stages.push_back(std::move(rec));
    std::stable_sort(manifest.stages.begin(), manifest.stages.end(), [](const auto& a, const auto& b) {
      const auto ia = parse_stage(a.stage), ib = parse_stage(b.stage);
      return (ia ? static_cast<int>(*ia) : 99) < (ib ? static_cast<int>(*ib) : 99);
    });
    write_text(dir / kManifestFile, manifest.to_json());
  };

  Runner runner(config, log);
  for (Stage s : kAllStages) {
    if (!requested.count(s)) continue;
    StageRecord rec;
    rec.stage = std::string(to_string(s));
    const auto start = std::chrono::steady_clock::now();
    try {
      runner.run(s, rec);
    } catch (const std::exception& e) {
      rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      manifest.complete = false;
      manifest.error = fmt::format("stage '{}': {}", rec.stage, e.what());
      store(std::move(rec));
      throw StageError(std::string(to_string(s)), e.what());
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    store(std::move(rec));
  }
  return manifest;
}

EmbeddingComparison compare_embeddings(const PipelineConfig& config, bool include_tsne, const LogFn& log) {
  constexpr std::array<EmbeddingMethod, 3> methods{EmbeddingMethod::tfidf, EmbeddingMethod::pubg,
                                                   EmbeddingMethod::pubw};
  std::vector<Stage> stages;
  for (Stage s : kAllStages) {
    if (s != Stage::tsne || include_tsne) stages.push_back(s);
  }

  EmbeddingComparison out;
  std::vector<StoredKMeans> clusterings;
  std::string label;
  for (EmbeddingMethod m : methods) {
    PipelineConfig cfg = config;
    cfg.embedding.method = m;
    cfg.output_dir = config.output_dir / std::string(to_string(m));
    if (log) log(fmt::format("compare: running {}", to_string(m)));
    run_pipeline(cfg, stages, log);
    out.coherence.emplace_back(m, evaluate_run(cfg.output_dir));
    clusterings.push_back(deserialize_kmeans(read_text(cfg.output_dir / kKMeansFile)));
    label = DatasetSummary::from_json(read_text(cfg.output_dir / kSummaryJson)).venue_label;
  }

  std::string coherence = "corpus\tembedding\tcoherence\n";
  for (const auto& [m, report] : out.coherence) coherence += fmt::format("{}\t{}\t{}\n", label, to_string(m), report.overall);

  std::string mi = "corpus\tpair\tmi\tnmi\tami\n";
  for (std::size_t a = 0; a < methods.size(); ++a) {
    for (std::size_t b = a + 1; b < methods.size(); ++b) {
      std::unordered_map<std::string, int> other;
      for (std::size_t i = 0; i < clusterings[b].doc_ids.size(); ++i) {
        other.emplace(clusterings[b].doc_ids[i], clusterings[b].model.assignments[i]);
      }
      std::vector<int> u, v;
      for (std::size_t i = 0; i < clusterings[a].doc_ids.size(); ++i) {
        const auto it = other.find(clusterings[a].doc_ids[i]);
        if (it == other.end()) continue;
        u.push_back(clusterings[a].model.assignments[i]);
        v.push_back(it->second);
      }
      const MIReport r = compare_labelings(u, v);
      out.agreement.push_back({methods[a], methods[b], r});
      mi += fmt::format("{}\t{}-{}\t{}\t{}\t{}\n", label, to_string(methods[a]), to_string(methods[b]), r.mi, r.nmi,
                        r.ami);
    }
  }
  write_text(config.output_dir / "coherence_comparison.tsv", coherence);
  write_text(config.output_dir / "mi_comparison.tsv", mi);
  return out;
}

}  // namespace pubtrend
