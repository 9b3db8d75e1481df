#include "pubtrend/trends.hpp"

#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {

TrendSeries build_trend_series(const Corpus& corpus, std::span<const std::string> doc_ids,
                               std::span<const int> clusters, int k) {
  if (doc_ids.size() != clusters.size()) throw InputError("doc ids and cluster labels differ in length");
  if (k < 1) throw ParameterError("cluster count must be >= 1");

  std::unordered_set<std::string_view> known;
  known.reserve(corpus.size());
  for (const auto& rec : corpus.records) known.insert(rec.id);
  std::unordered_map<std::string_view, int> assigned;
  assigned.reserve(doc_ids.size());
  for (std::size_t i = 0; i < doc_ids.size(); ++i) {
    if (clusters[i] < 0 || clusters[i] >= k) {
      throw InputError(fmt::format("cluster {} of '{}' outside [0, {})", clusters[i], doc_ids[i], k));
    }
    if (!known.contains(doc_ids[i])) {
      throw ConsistencyError(fmt::format("assignment references unknown doc_id '{}'", doc_ids[i]));
    }
    if (!assigned.emplace(doc_ids[i], clusters[i]).second) {
      throw ConsistencyError(fmt::format("doc_id '{}' assigned more than once", doc_ids[i]));
    }
  }

  TrendSeries series;
  if (corpus.empty()) return series;
  for (int y = corpus.year_min; y <= corpus.year_max; ++y) series.years.push_back(y);
  const std::size_t n_years = series.years.size();
  series.year_totals.assign(n_years, 0);
  for (int c = 0; c < k; ++c) series.counts[c].assign(n_years, 0);

  for (const auto& rec : corpus.records) {
    const auto y = static_cast<std::size_t>(rec.year - corpus.year_min);
    const auto it = assigned.find(rec.id);
    const int c = it == assigned.end() ? kUnassigned : it->second;
    auto& row = series.counts[c];
    if (row.empty()) row.assign(n_years, 0);
    ++row[y];
    ++series.year_totals[y];
  }

  for (const auto& [c, row] : series.counts) {
    auto& frac = series.fractions[c];
    frac.assign(n_years, 0.0);
    for (std::size_t y = 0; y < n_years; ++y) {
      if (series.year_totals[y] > 0) {
        frac[y] = static_cast<double>(row[y]) / static_cast<double>(series.year_totals[y]);
      }
    }
  }
  return series;
}

std::string TrendSeries::serialize() const {
  std::string out = "year\tcluster\tcount\tfraction\n";
  for (std::size_t y = 0; y < years.size(); ++y) {
    for (const auto& [c, row] : counts) {
      out += fmt::format("{}\t{}\t{}\t{}\n", years[y], c, row[y], fractions.at(c)[y]);
    }
  }
  return out;
}

}  // namespace pubtrend
