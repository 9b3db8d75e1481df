#include "pubtrend/cooccurrence.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {

CooccurrenceMatrix::CooccurrenceMatrix(std::size_t vocab_size, std::vector<CooccurrenceEntry> upper)
    : vocab_size_(vocab_size), upper_(std::move(upper)), row_sums_(vocab_size, 0.0) {
  for (auto& e : upper_) {
    if (e.row > e.col) std::swap(e.row, e.col);
    if (e.row < 0 || static_cast<std::size_t>(e.col) >= vocab_size_) {
      throw InputError("co-occurrence index out of range");
    }
    if (!(e.value >= 0.0)) throw InputError("co-occurrence values must be non-negative");
  }
  std::sort(upper_.begin(), upper_.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < upper_.size(); ++k) {
    if (upper_[k].row == upper_[k - 1].row && upper_[k].col == upper_[k - 1].col) {
      throw InputError("duplicate co-occurrence cell");
    }
  }
  for (const auto& e : upper_) {
    row_sums_[static_cast<std::size_t>(e.row)] += e.value;
    if (e.row != e.col) row_sums_[static_cast<std::size_t>(e.col)] += e.value;
  }
}

double CooccurrenceMatrix::at(TokenId i, TokenId j) const {
  if (i > j) std::swap(i, j);
  const auto it = std::lower_bound(upper_.begin(), upper_.end(), std::pair{i, j},
                                   [](const CooccurrenceEntry& e, const std::pair<TokenId, TokenId>& key) {
                                     return e.row != key.first ? e.row < key.first : e.col < key.second;
                                   });
  if (it != upper_.end() && it->row == i && it->col == j) return it->value;
  return 0.0;
}

std::vector<CooccurrenceEntry> CooccurrenceMatrix::full_entries() const {
  std::vector<CooccurrenceEntry> out;
  out.reserve(upper_.size() * 2);
  for (const auto& e : upper_) {
    if (e.value <= 0.0) continue;
    out.push_back(e);
    if (e.row != e.col) out.push_back({e.col, e.row, e.value});
  }
  return out;
}

std::string CooccurrenceMatrix::serialize() const {
  std::string out = fmt::format("V\t{}\n", vocab_size_);
  for (const auto& e : upper_) out += fmt::format("{}\t{}\t{}\n", e.row, e.col, e.value);
  return out;
}

CooccurrenceMatrix CooccurrenceMatrix::deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string key;
  std::size_t v = 0;
  if (!(in >> key >> v) || key != "V") throw InputError("malformed co-occurrence header");
  std::vector<CooccurrenceEntry> entries;
  CooccurrenceEntry e{};
  while (in >> e.row >> e.col >> e.value) entries.push_back(e);
  if (!in.eof()) throw InputError("malformed co-occurrence entry");
  return CooccurrenceMatrix(v, std::move(entries));
}

CooccurrenceMatrix build_cooccurrence(std::span<const TokenDoc> docs, std::size_t vocab_size,
                                      int window, WindowWeighting weighting) {
  if (window < 1) throw ParameterError("co-occurrence window must be >= 1");
  std::map<std::pair<TokenId, TokenId>, double> cells;
  for (const auto& doc : docs) {
    const auto& t = doc.tokens;
    for (std::size_t p = 0; p < t.size(); ++p) {
      for (std::size_t q = p + 1; q < t.size() && q - p <= static_cast<std::size_t>(window); ++q) {
        const double w = weighting == WindowWeighting::uniform ? 1.0 : 1.0 / static_cast<double>(q - p);
        cells[{std::min(t[p], t[q]), std::max(t[p], t[q])}] += w;
      }
    }
  }
  std::vector<CooccurrenceEntry> upper;
  upper.reserve(cells.size());
  for (const auto& [key, value] : cells) upper.push_back({key.first, key.second, value});
  return CooccurrenceMatrix(vocab_size, std::move(upper));
}

double conditional_prob(const CooccurrenceMatrix& x, TokenId i, TokenId j) {
  const double xi = x.row_sum(i);
  if (xi <= 0.0) throw UndefinedError(fmt::format("P(.|{}) undefined: row {} has no co-occurrences", i, i));
  return x.at(i, j) / xi;
}

}  // namespace pubtrend
