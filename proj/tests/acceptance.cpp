// Acceptance checks, one line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "pubtrend/cbow.hpp"
#include "pubtrend/coherence.hpp"
#include "pubtrend/glove.hpp"
#include "pubtrend/kmeans.hpp"
#include "pubtrend/lda.hpp"
#include "pubtrend/mutual_info.hpp"
#include "pubtrend/pipeline.hpp"
#include "pubtrend/tfidf.hpp"
#include "pubtrend/tsne.hpp"

using namespace pubtrend;
using namespace pubtrend::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Runs already recorded by criteria 8 and 9, re-checked by criterion 10.
std::vector<fs::path> g_run_dirs;

Outcome tfidf_oracle() {
  const auto words = tfidf_fixture();
  const auto built = plain_vocabulary(words);
  const auto model = fit_tfidf(built.vocab, built.docs);
  const auto oracle = brute_force_tfidf(words);
  double worst = 0.0;
  std::size_t entries = 0;
  bool same_support = true;
  for (std::size_t d = 0; d < words.size(); ++d) {
    const auto v = tfidf_vector(model, built.docs[d]);
    std::size_t n = 0;
    for (SparseDocVector::InnerIterator it(v); it; ++it, ++n) {
      const auto found = oracle[d].find(built.vocab.token(static_cast<TokenId>(it.index())));
      if (found == oracle[d].end()) {
        same_support = false;
        continue;
      }
      worst = std::max(worst, std::abs(it.value() - found->second));
    }
    same_support = same_support && n == oracle[d].size();
    entries += n;
  }
  return {same_support && worst <= 1e-12, fmt::format("max |error| {:.3g} over {} entries", worst, entries)};
}

Outcome gradient_checks() {
  double worst_glove = 0.0, worst_cbow = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    const auto v = static_cast<std::size_t>(4 + uniform_index(rng, 7));  // 4..10
    const int d = 2 + static_cast<int>(uniform_index(rng, 4));          // 2..5

    GloveModel g = init_glove(v, d, seed);
    for (auto* block : {&g.main, &g.context}) {
      for (Eigen::Index i = 0; i < block->size(); ++i) block->data()[i] = 0.5 * standard_normal(rng);
    }
    for (Eigen::Index i = 0; i < g.main_bias.size(); ++i) {
      g.main_bias(i) = 0.3 * standard_normal(rng);
      g.context_bias(i) = 0.3 * standard_normal(rng);
    }
    std::vector<CooccurrenceEntry> cells;
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t j = 0; j < v; ++j) {
        if (uniform01(rng) < 0.6) cells.push_back({static_cast<TokenId>(i), static_cast<TokenId>(j), 0.5 + 30 * uniform01(rng)});
      }
    }
    const auto grad = glove_gradient(g, cells, 10.0, 0.75);
    const auto gloss = [&] { return glove_loss(g, cells, 10.0, 0.75); };
    auto check = [&](double* params, const double* analytic, Eigen::Index n, double& worst, const std::function<double()>& f) {
      for (Eigen::Index i = 0; i < n; ++i) {
        worst = std::max(worst, relative_error(analytic[i], central_difference(f, params + i, 1e-5)));
      }
    };
    check(g.main.data(), grad.main.data(), g.main.size(), worst_glove, gloss);
    check(g.context.data(), grad.context.data(), g.context.size(), worst_glove, gloss);
    check(g.main_bias.data(), grad.main_bias.data(), g.main_bias.size(), worst_glove, gloss);
    check(g.context_bias.data(), grad.context_bias.data(), g.context_bias.size(), worst_glove, gloss);

    CbowModel c;
    c.input = RowMatrixXd(static_cast<Eigen::Index>(v), d);
    c.output = RowMatrixXd(static_cast<Eigen::Index>(v), d);
    for (auto* block : {&c.input, &c.output}) {
      for (Eigen::Index i = 0; i < block->size(); ++i) block->data()[i] = 0.5 * standard_normal(rng);
    }
    std::vector<TokenDoc> docs(3);
    for (auto& doc : docs) {
      const std::size_t len = 4 + uniform_index(rng, 8);
      for (std::size_t i = 0; i < len; ++i) doc.tokens.push_back(static_cast<TokenId>(uniform_index(rng, v)));
    }
    const auto examples = cbow_examples(docs, 2);
    const auto cg = cbow_softmax_gradient(c, examples);
    const auto closs = [&] { return cbow_softmax_loss(c, examples); };
    check(c.input.data(), cg.input.data(), c.input.size(), worst_cbow, closs);
    check(c.output.data(), cg.output.data(), c.output.size(), worst_cbow, closs);
  }
  return {worst_glove < 1e-4 && worst_cbow < 1e-4,
          fmt::format("max relative error GloVe {:.3g}, CBOW {:.3g} over 5 toy instances each", worst_glove, worst_cbow)};
}

Outcome kmeans_optimality() {
  constexpr int kRestarts = 50;
  int optimal = 0, cases = 0, runs = 0, increases = 0;
  Rng rng(2024);
  for (int fixture = 0; fixture < 20; ++fixture) {
    const auto n = static_cast<Eigen::Index>(4 + uniform_index(rng, 5));  // 4..8
    RowMatrixXd x(n, 2);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = 10.0 * uniform01(rng);
    for (int k = 1; k <= 3; ++k) {
      KMeansOptions opt;
      opt.restarts = kRestarts;
      opt.seed = static_cast<std::uint64_t>(fixture);
      const auto best = fit_kmeans(x, k, opt);
      const double oracle = brute_force_inertia(x, k);
      ++cases;
      if (std::abs(best.inertia - oracle) <= 1e-9 * oracle) ++optimal;
      // Replay every restart to inspect its full inertia trace.
      for (int r = 0; r < kRestarts; ++r) {
        const auto run = detail::lloyd<double>(x, k, opt.max_iter, opt.tol,
                                               derive_seed(opt.seed, static_cast<std::uint64_t>(r)), opt.refine);
        ++runs;
        for (std::size_t i = 1; i < run.inertia_trace.size(); ++i) {
          if (run.inertia_trace[i] > run.inertia_trace[i - 1]) ++increases;
        }
      }
    }
  }
  return {optimal == cases && increases == 0,
          fmt::format("{}/{} fixture-K cases optimal, {} inertia increases across {} runs", optimal, cases, increases, runs)};
}

Outcome lda_integrity() {
  long sweeps = 0, violations = 0;
  double worst_row = 0.0;
  int pure_seeds = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto sc = generate_corpus(two_topic_options(200, seed));
    const auto built = synth_token_docs(sc);

    GibbsSampler sampler(built.docs, built.vocab.size(), 2, 25.0, 0.01, derive_seed(seed, "gibbs"));
    for (int s = 0; s < 300; ++s) {
      sampler.sweep();
      ++sweeps;
      if (!tables_match_assignments(sampler, built.docs)) ++violations;
      worst_row = std::max(worst_row, (sampler.phi().rowwise().sum().array() - 1.0).abs().maxCoeff());
      worst_row = std::max(worst_row, (sampler.theta().rowwise().sum().array() - 1.0).abs().maxCoeff());
    }

    LdaOptions opt;
    opt.topics = 2;
    opt.seed = seed;
    const auto m = fit_lda(built.docs, built.vocab.size(), opt);
    worst_row = std::max(worst_row, (m.phi.rowwise().sum().array() - 1.0).abs().maxCoeff());
    worst_row = std::max(worst_row, (m.theta.rowwise().sum().array() - 1.0).abs().maxCoeff());
    std::set<int> planted;
    bool pure = true;
    for (int t = 0; t < 2; ++t) {
      std::map<int, int> owners;
      for (const auto& w : top_words(m, built.vocab, t, 10).top_words) ++owners[sc.owning_topic(w.token)];
      int best = -1, best_count = 0;
      for (const auto& [owner, count] : owners) {
        if (owner >= 0 && count > best_count) {
          best = owner;
          best_count = count;
        }
      }
      pure = pure && best_count >= 9;
      planted.insert(best);
    }
    if (pure && planted.size() == 2) ++pure_seeds;
  }
  return {violations == 0 && worst_row <= 1e-9 && pure_seeds >= 4,
          fmt::format("{} count violations in {} sweeps, max row-sum error {:.3g}, {}/5 seeds >= 90% pure", violations,
                      sweeps, worst_row, pure_seeds)};
}

Outcome coherence_correctness() {
  const auto docs = coherence_docs();
  const DocumentFrequencyIndex index(docs, 7);
  // Hand table over the 10-document fixture.
  const std::vector<std::pair<TopicSummary, double>> table = {
      {topic(0, 0, {0, 1, 2, 3}), std::log(1.0 / 50.0)},
      {topic(0, 1, {3, 1}), std::log(2.0 / 5.0)},
      {topic(1, 0, {4, 1}), std::log(1.0 / 5.0)},
      {topic(1, 1, {6, 5}), 0.0},
      {topic(1, 2, {3, 2}), std::log(0.5)},
      {topic(1, 3, {0, 2}), std::log(3.0 / 6.0)},
  };
  double worst = 0.0;
  std::vector<TopicSummary> topics;
  for (const auto& [t, expected] : table) {
    worst = std::max(worst, std::abs(umass_topic_score(t.top_words, index) - expected));
    topics.push_back(t);
  }
  const auto r = umass_coherence(topics, index);
  const auto& p = r.per_topic;
  const double c0 = (p.at({0, 0}) + p.at({0, 1})) / 2;
  const double c1 = (p.at({1, 0}) + p.at({1, 1}) + p.at({1, 2}) + p.at({1, 3})) / 4;
  const bool identities = r.per_cluster.at(0) == c0 && r.per_cluster.at(1) == c1 && r.overall == (c0 + c1) / 2;
  return {worst <= 1e-12 && identities,
          fmt::format("max |error| {:.3g} over {} hand-scored topics, averaging identities {}", worst, table.size(),
                      identities ? "exact" : "violated")};
}

Outcome mi_identities() {
  Rng rng(6);
  double worst_identity = 0.0, worst_single = 0.0, worst_ami = 0.0, worst_sym = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + uniform_index(rng, 200);
    std::vector<int> u(n);
    for (auto& l : u) l = static_cast<int>(uniform_index(rng, 1 + uniform_index(rng, 8)));
    const auto same = compare_labelings(u, u);
    if (same.h_u > 0) {
      worst_identity = std::max({worst_identity, std::abs(same.nmi - 1.0), std::abs(same.ami - 1.0)});
    }
    const std::vector<int> single(n, 3);
    worst_single = std::max(worst_single, std::abs(mutual_information(u, single)));
    std::vector<int> v(n);
    for (auto& l : v) l = static_cast<int>(uniform_index(rng, 5));
    worst_sym = std::max(worst_sym, std::abs(mutual_information(u, v) - mutual_information(v, u)));
  }
  std::vector<int> a(1000), b(1000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = static_cast<int>(i % 10);
    b[i] = static_cast<int>((i / 10) % 10);
  }
  for (int s = 0; s < 20; ++s) {
    shuffle(a.begin(), a.end(), rng);
    shuffle(b.begin(), b.end(), rng);
    worst_ami = std::max(worst_ami, std::abs(adjusted_mi(a, b)));
  }
  const bool pass = worst_identity <= 1e-9 && worst_single == 0.0 && worst_ami < 0.02 && worst_sym <= 1e-12;
  return {pass, fmt::format("identity error {:.3g}, single-cluster MI {:.3g}, max |AMI| {:.4f} over 20 shuffles, "
                            "asymmetry {:.3g}",
                            worst_identity, worst_single, worst_ami, worst_sym)};
}

Outcome tsne_contracts() {
  // n = 200: four 50-point blobs in 20 dimensions.
  RowMatrixXd centers = RowMatrixXd::Zero(4, 20);
  for (Eigen::Index b = 0; b < 4; ++b) centers(b, b) = 8.0;
  const RowMatrixXd big = gaussian_blobs(centers, 50, 1.0, 5);
  const auto start = std::chrono::steady_clock::now();
  TsneConfig cfg;
  cfg.seed = 1;
  const auto fit = fit_tsne(big, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto jp = joint_probabilities(big, fit.perplexity, cfg.perplexity_tol);
  double worst_perplexity = 0.0;
  for (const double p : jp.row_perplexity) worst_perplexity = std::max(worst_perplexity, std::abs(p - fit.perplexity));
  const double asym = (jp.p - jp.p.transpose()).cwiseAbs().maxCoeff();
  const double sum_error = std::abs(jp.p.sum() - 1.0);
  const bool kl_big = fit.kl_trace.size() == 1000 && fit.kl_trace[999] < fit.kl_trace[299];

  int separated = 0, kl_drops = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RowMatrixXd c2 = RowMatrixXd::Zero(2, 50);
    c2(1, 0) = 20.0;
    const RowMatrixXd x = gaussian_blobs(c2, 10, 1.0, seed);
    TsneConfig small;
    small.seed = seed;
    const auto r = fit_tsne(x, small);
    double within = 0, between = 0;
    int nw = 0, nb = 0;
    for (Eigen::Index i = 0; i < 20; ++i) {
      for (Eigen::Index j = i + 1; j < 20; ++j) {
        const double dist = (r.coords.row(i) - r.coords.row(j)).norm();
        if (i / 10 == j / 10) {
          within += dist;
          ++nw;
        } else {
          between += dist;
          ++nb;
        }
      }
    }
    if (within / nw < between / nb) ++separated;
    if (r.kl_trace.size() == 1000 && r.kl_trace[999] < r.kl_trace[299]) ++kl_drops;
  }
  const bool pass = worst_perplexity <= 1e-3 && asym == 0.0 && sum_error <= 1e-9 && separated == 5 && kl_drops == 5 &&
                    kl_big && seconds < 60.0;
  return {pass, fmt::format("perplexity error {:.3g}, P asymmetry {:.3g}, sum error {:.3g}, blobs separated {}/5, "
                            "KL(1000) < KL(300) {}/5 (n=200: {}), n=200 fit {:.1f} s",
                            worst_perplexity, asym, sum_error, separated, kl_drops, kl_big ? "yes" : "no", seconds)};
}

Outcome directional_reproduction(const fs::path& scratch) {
  const fs::path corpus = fs::path(PUBTREND_DATA_DIR) / "synthetic_1000.csv";
  int pubg_wins = 0, pubw_wins = 0;
  std::string scores;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto cfg = parse_config(fmt::format(R"({{"corpus": {{"path": "{}"}}, "cluster": {{"k": 10}},
                                           "topics": {{"per_cluster": 10}}, "seed": {}}})",
                                        corpus.string(), seed));
    cfg.output_dir = scratch / fmt::format("compare-{}", seed);
    validate_config(cfg);
    const auto cmp = compare_embeddings(cfg, false);
    double tfidf = 0, pubg = 0, pubw = 0;
    for (const auto& [method, report] : cmp.coherence) {
      (method == EmbeddingMethod::tfidf ? tfidf : method == EmbeddingMethod::pubg ? pubg : pubw) = report.overall;
    }
    pubg_wins += pubg > tfidf;
    pubw_wins += pubw > tfidf;
    scores += fmt::format(" [{:.2f} {:.2f} {:.2f}]", tfidf, pubg, pubw);
    for (const char* m : {"tfidf", "pubg", "pubw"}) g_run_dirs.push_back(cfg.output_dir / m);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {pubg_wins >= 4 && pubw_wins >= 4 && seconds < 600.0,
          fmt::format("PUB-G beats TF-IDF {}/5, PUB-W {}/5; tfidf/pubg/pubw UMass{}; {:.0f} s", pubg_wins, pubw_wins,
                      scores, seconds)};
}

Outcome determinism(const fs::path& scratch) {
  std::vector<std::map<std::string, std::string>> hashes;
  std::vector<fs::path> dirs;
  for (int run = 0; run < 2; ++run) {
    auto cfg = load_config(fs::path(PUBTREND_DATA_DIR) / "example_config.json");
    cfg.output_dir = scratch / fmt::format("determinism-{}", run);
    cfg.threads = 1;
    const auto m = run_pipeline(cfg, kAllStages);
    std::map<std::string, std::string> h;
    for (const auto& s : m.stages) {
      for (const auto& a : s.artifacts) h[a.path] = a.sha256;
    }
    hashes.push_back(std::move(h));
    dirs.push_back(cfg.output_dir);
    g_run_dirs.push_back(cfg.output_dir);
  }
  std::size_t identical_bytes = 0;
  for (const auto& [path, hash] : hashes[0]) {
    if (read_file(dirs[0] / path) == read_file(dirs[1] / path)) ++identical_bytes;
  }
  const bool pass = hashes[0] == hashes[1] && identical_bytes == hashes[0].size() && !hashes[0].empty();
  return {pass, fmt::format("{} artifacts, hashes {}, {} byte-identical", hashes[0].size(),
                            hashes[0] == hashes[1] ? "identical" : "differ", identical_bytes)};
}

Outcome trend_conservation() {
  std::size_t ok = 0;
  for (const auto& dir : g_run_dirs) ok += trends_conserve_counts(dir);
  return {ok == g_run_dirs.size() && !g_run_dirs.empty(),
          fmt::format("{}/{} runs conserve per-year counts", ok, g_run_dirs.size())};
}

}  // namespace

int main() {
  TempDir scratch("acceptance");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"tf-idf oracle equivalence", tfidf_oracle},
      {"gradient checks", gradient_checks},
      {"k-means optimality at micro scale", kmeans_optimality},
      {"LDA integrity", lda_integrity},
      {"coherence correctness", coherence_correctness},
      {"MI-family identities", mi_identities},
      {"t-SNE contracts", tsne_contracts},
      {"embeddings beat TF-IDF on coherence", [&] { return directional_reproduction(scratch.path()); }},
      {"determinism", [&] { return determinism(scratch.path()); }},
      {"trend conservation", trend_conservation},
  };
  const std::vector<double> limits = {1, 10, 30, 120, 0, 0, 0, 600, 0, 0};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[i] > 0 && seconds >= limits[i]) {
      o.pass = false;
      o.detail += fmt::format("; exceeded {:.0f} s limit", limits[i]);
    }
    failures += !o.pass;
    fmt::print("{} {:>2}. {}: {} ({:.2f} s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail, seconds);
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
