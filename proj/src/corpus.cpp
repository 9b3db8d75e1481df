#include "pubtrend/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "pubtrend/csv.hpp"
#include "pubtrend/errors.hpp"

namespace pubtrend {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view cell, char sep) {
  std::vector<std::string> out;
  if (trim(cell).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = cell.find(sep, start);
    const auto piece = trim(cell.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(sep);
    out += items[i];
  }
  return out;
}

std::optional<int> parse_year(std::string_view cell) {
  cell = trim(cell);
  int year = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), year);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  return year;
}

std::string derive_label(const std::vector<PublicationRecord>& records) {
  std::set<std::string> venues;
  for (const auto& r : records) venues.insert(r.venue);
  std::string label;
  for (const auto& v : venues) {
    if (!label.empty()) label.push_back('+');
    label += v;
  }
  return label;
}

}  // namespace

bool PublicationRecord::has_abstract() const { return !trim(abstract_text).empty(); }

const PublicationRecord* Corpus::find(std::string_view id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

void refresh_metadata(Corpus& corpus, std::string venue_label) {
  corpus.venue_label = venue_label.empty() ? derive_label(corpus.records) : std::move(venue_label);
  if (corpus.records.empty()) {
    corpus.year_min = corpus.year_max = 0;
    return;
  }
  const auto [lo, hi] = std::minmax_element(
      corpus.records.begin(), corpus.records.end(),
      [](const auto& a, const auto& b) { return a.year < b.year; });
  corpus.year_min = lo->year;
  corpus.year_max = hi->year;
}

Corpus parse_corpus(std::string_view text, const ColumnSchema& schema, LoadMode mode,
                    std::string venue_label) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw EmptyCorpusError("corpus file is empty");

  std::unordered_map<std::string, std::size_t> header;
  for (std::size_t i = 0; i < rows[0].fields.size(); ++i) {
    header.emplace(std::string(trim(rows[0].fields[i])), i);
  }
  auto required = [&](const std::string& name) {
    const auto it = header.find(name);
    if (it == header.end()) throw SchemaError(name);
    return it->second;
  };
  auto optional = [&](const std::optional<std::string>& name) -> std::optional<std::size_t> {
    if (!name) return std::nullopt;
    const auto it = header.find(*name);
    if (it == header.end()) return std::nullopt;
    return it->second;
  };
  const std::size_t venue_col = required(schema.venue);
  const std::size_t year_col = required(schema.year);
  const std::size_t title_col = required(schema.title);
  const std::size_t abstract_col = required(schema.abstract_text);
  const auto id_col = optional(schema.id);
  const auto authors_col = optional(schema.authors);
  const auto keywords_col = optional(schema.keywords);
  const auto doi_col = optional(schema.doi);

  Corpus corpus;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto cell = [&](std::size_t col) -> std::string_view {
      return col < row.fields.size() ? std::string_view(row.fields[col]) : std::string_view();
    };
    try {
      if (row.fields.size() > rows[0].fields.size()) {
        throw RowError(row.line, fmt::format("expected at most {} fields, found {}",
                                             rows[0].fields.size(), row.fields.size()));
      }
      PublicationRecord rec;
      rec.id = id_col ? std::string(trim(cell(*id_col))) : fmt::format("row-{}", row.line);
      if (rec.id.empty()) throw RowError(row.line, "empty id");
      rec.venue = std::string(trim(cell(venue_col)));
      if (rec.venue.empty()) throw RowError(row.line, "empty venue");
      const auto year = parse_year(cell(year_col));
      if (!year) throw RowError(row.line, fmt::format("unparseable year '{}'", cell(year_col)));
      if (*year < kMinYear || *year > kMaxYear) {
        throw RowError(row.line, fmt::format("year {} outside [{}, {}]", *year, kMinYear, kMaxYear));
      }
      rec.year = *year;
      rec.title = std::string(cell(title_col));
      rec.abstract_text = std::string(cell(abstract_col));
      if (authors_col) rec.authors = split_list(cell(*authors_col), schema.list_separator);
      if (keywords_col) rec.keywords = split_list(cell(*keywords_col), schema.list_separator);
      if (doi_col) {
        const auto doi = trim(cell(*doi_col));
        if (!doi.empty()) rec.doi = std::string(doi);
      }
      if (!seen_ids.insert(rec.id).second) {
        throw RowError(row.line, fmt::format("duplicate id '{}'", rec.id));
      }
      corpus.records.push_back(std::move(rec));
    } catch (const RowError& e) {
      if (mode == LoadMode::strict) throw;
      corpus.issues.push_back({e.line(), e.what()});
    }
  }
  if (corpus.records.empty()) throw EmptyCorpusError("corpus has no valid records");
  refresh_metadata(corpus, std::move(venue_label));
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const ColumnSchema& schema, LoadMode mode,
                   std::string venue_label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), schema, mode, std::move(venue_label));
}

std::string write_corpus(const Corpus& corpus, const ColumnSchema& schema) {
  std::vector<std::string> header{schema.id.value_or("id"), schema.venue, schema.year,
                                  schema.title, schema.abstract_text};
  if (schema.authors) header.push_back(*schema.authors);
  if (schema.keywords) header.push_back(*schema.keywords);
  if (schema.doi) header.push_back(*schema.doi);
  std::string out = csv::format_row(header);
  for (const auto& r : corpus.records) {
    std::vector<std::string> fields{r.id, r.venue, std::to_string(r.year), r.title, r.abstract_text};
    if (schema.authors) fields.push_back(join_list(r.authors, schema.list_separator));
    if (schema.keywords) fields.push_back(join_list(r.keywords, schema.list_separator));
    if (schema.doi) fields.push_back(r.doi.value_or(""));
    out += csv::format_row(fields);
  }
  return out;
}

DatasetSummary summarize(const Corpus& corpus) {
  DatasetSummary s;
  s.venue_label = corpus.venue_label;
  s.publication_count = corpus.records.size();
  for (const auto& r : corpus.records) {
    ++s.per_year_counts[r.year];
    if (r.has_abstract()) ++s.with_abstract;
  }
  if (!s.per_year_counts.empty()) {
    s.year_min = s.per_year_counts.begin()->first;
    s.year_max = s.per_year_counts.rbegin()->first;
  }
  return s;
}

std::string DatasetSummary::to_table() const {
  std::string out;
  const std::string range =
      year_min ? fmt::format("{}--{}", *year_min, *year_max) : std::string("-");
  out += fmt::format("{:<16} {:<12} {:>12}\n", "Venue", "Year", "Publications");
  out += fmt::format("{:<16} {:<12} {:>12}\n", venue_label, range, publication_count);
  out += "\n";
  out += fmt::format("{:<6} {:>8}\n", "year", "count");
  for (const auto& [year, count] : per_year_counts) out += fmt::format("{:<6} {:>8}\n", year, count);
  return out;
}

std::string DatasetSummary::to_json() const {
  nlohmann::ordered_json j;
  j["venue_label"] = venue_label;
  j["year_min"] = year_min ? nlohmann::ordered_json(*year_min) : nlohmann::ordered_json();
  j["year_max"] = year_max ? nlohmann::ordered_json(*year_max) : nlohmann::ordered_json();
  j["publication_count"] = publication_count;
  j["with_abstract"] = with_abstract;
  auto& years = j["per_year_counts"] = nlohmann::ordered_json::object();
  for (const auto& [year, count] : per_year_counts) years[std::to_string(year)] = count;
  return j.dump(2) + "\n";
}

DatasetSummary DatasetSummary::from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  DatasetSummary s;
  s.venue_label = j.at("venue_label").get<std::string>();
  if (!j.at("year_min").is_null()) s.year_min = j.at("year_min").get<int>();
  if (!j.at("year_max").is_null()) s.year_max = j.at("year_max").get<int>();
  s.publication_count = j.at("publication_count").get<std::size_t>();
  s.with_abstract = j.at("with_abstract").get<std::size_t>();
  for (const auto& [year, count] : j.at("per_year_counts").items()) {
    s.per_year_counts[std::stoi(year)] = count.get<std::size_t>();
  }
  return s;
}

}  // namespace pubtrend
