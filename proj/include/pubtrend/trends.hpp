#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pubtrend/corpus.hpp"

namespace pubtrend {

// Cluster id used for records that carry no assignment (no abstract, or no
// tokens left after preprocessing). Keeps per-year totals equal to the corpus.
inline constexpr int kUnassigned = -1;

struct TrendSeries {
  std::vector<int> years;                          // every year of the corpus range
  std::vector<long> year_totals;                   // publications per year
  std::map<int, std::vector<long>> counts;         // cluster -> counts aligned with years
  std::map<int, std::vector<double>> fractions;    // counts / year total, 0 for empty years

  std::string serialize() const;  // "year\tcluster\tcount\tfraction" rows
};

// Clusters 0..k-1 always appear; kUnassigned appears only when some record
// lacks an assignment. Throws ConsistencyError for an unknown or repeated
// doc_id and InputError for a cluster outside [0, k).
TrendSeries build_trend_series(const Corpus& corpus, std::span<const std::string> doc_ids,
                               std::span<const int> clusters, int k);

}  // namespace pubtrend
