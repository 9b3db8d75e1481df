#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pubtrend {

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

struct PublicationRecord {
  std::string id;
  std::string venue;
  int year = 0;
  std::string title;
  std::string abstract_text;
  std::vector<std::string> authors;
  std::vector<std::string> keywords;
  std::optional<std::string> doi;

  // Records without an abstract are kept and counted, but skipped by every
  // text-analysis stage.
  bool has_abstract() const;

  bool operator==(const PublicationRecord&) const = default;
};

// Header names for each record field. Empty optional names mean "not present";
// id falls back to "row-<line>" and list/doi fields to empty.
struct ColumnSchema {
  std::string venue = "venue";
  std::string year = "year";
  std::string title = "title";
  std::string abstract_text = "abstract";
  std::optional<std::string> id = "id";
  std::optional<std::string> authors = "authors";
  std::optional<std::string> keywords = "keywords";
  std::optional<std::string> doi = "doi";
  // Separator inside author/keyword cells.
  char list_separator = ';';
};

enum class LoadMode { strict, permissive };

struct RowIssue {
  std::size_t line = 0;
  std::string message;
};

struct Corpus {
  std::vector<PublicationRecord> records;
  std::string venue_label;
  int year_min = 0;
  int year_max = 0;
  // Rows skipped in permissive mode.
  std::vector<RowIssue> issues;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
  const PublicationRecord* find(std::string_view id) const;
};

struct DatasetSummary {
  std::string venue_label;
  std::optional<int> year_min;
  std::optional<int> year_max;
  std::size_t publication_count = 0;
  std::size_t with_abstract = 0;
  std::map<int, std::size_t> per_year_counts;

  std::string to_table() const;
  std::string to_json() const;
  static DatasetSummary from_json(std::string_view text);
};

// Parses comma-delimited text with a header row. Optional schema columns that
// are absent from the header are ignored; required ones raise SchemaError.
// An empty venue_label is derived from the distinct venues ("A+B").
Corpus parse_corpus(std::string_view text, const ColumnSchema& schema = {},
                    LoadMode mode = LoadMode::strict, std::string venue_label = {});

Corpus load_corpus(const std::filesystem::path& path, const ColumnSchema& schema = {},
                   LoadMode mode = LoadMode::strict, std::string venue_label = {});

// Serializes with a header built from the schema's column names, so that
// parse_corpus(write_corpus(c, s), s) reproduces the records.
std::string write_corpus(const Corpus& corpus, const ColumnSchema& schema = {});

// Recomputes label and year range after records were edited in place.
void refresh_metadata(Corpus& corpus, std::string venue_label = {});

DatasetSummary summarize(const Corpus& corpus);

}  // namespace pubtrend
