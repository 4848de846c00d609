#pragma once

// Publication corpus: record format, validation, loading, and the resolved
// citation graph.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ranges>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

namespace axrank {

enum class VenueKind { journal, conference, unknown };

inline std::string_view to_string(VenueKind kind) {
  switch (kind) {
    case VenueKind::journal: return "journal";
    case VenueKind::conference: return "conference";
    case VenueKind::unknown: break;
  }
  return "unknown";
}

inline std::optional<VenueKind> venue_kind_from_string(std::string_view s) {
  if (s == "journal") return VenueKind::journal;
  if (s == "conference") return VenueKind::conference;
  if (s == "unknown") return VenueKind::unknown;
  return std::nullopt;
}

struct Venue {
  VenueKind kind = VenueKind::unknown;
  std::optional<std::string> venue_id;

  friend bool operator==(const Venue&, const Venue&) = default;
};

/// One author's slot on one paper. `position` is 1-based and equals the
/// slot's index in PaperRecord::authors plus one.
struct AuthorSlot {
  std::string author_id;
  int position = 1;
  std::optional<std::string> institution_id;
  bool has_email = false;

  friend bool operator==(const AuthorSlot&, const AuthorSlot&) = default;
};

struct PaperRecord {
  std::string paper_id;
  std::string title;
  int year = 0;
  Venue venue;
  std::vector<AuthorSlot> authors;
  std::vector<std::string> references;

  std::size_t team_size() const { return authors.size(); }

  const AuthorSlot* find_author(std::string_view author_id) const {
    for (const auto& slot : authors)
      if (slot.author_id == author_id) return &slot;
    return nullptr;
  }

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

inline constexpr int kMinYear = 1000;
inline constexpr int kMaxYear = 3000;

/// A record-level failure. `line_number` is 0 when the record was parsed
/// without stream context.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& reason, std::size_t line_number = 0)
      : std::runtime_error(line_number == 0
                               ? reason
                               : "line " + std::to_string(line_number) + ": " + reason),
        reason_(reason),
        line_number_(line_number) {}

  const std::string& reason() const noexcept { return reason_; }
  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::string reason_;
  std::size_t line_number_;
};

struct ParseOptions {
  // Unknown fields are an error when strict, a warning otherwise.
  bool strict = false;
};

namespace detail {

using json = nlohmann::json;

inline void check_fields(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view where, const ParseOptions& opts,
                         std::vector<std::string>* warnings) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
    std::string msg = "unknown field '" + key + "' in " + std::string(where);
    if (opts.strict) throw ParseError(msg);
    if (warnings) warnings->push_back(std::move(msg));
  }
}

inline const json& require(const json& obj, const char* field, std::string_view where) {
  auto it = obj.find(field);
  if (it == obj.end())
    throw ParseError("missing required field '" + std::string(field) + "' in " +
                     std::string(where));
  return *it;
}

inline std::string require_string(const json& obj, const char* field, std::string_view where) {
  const json& v = require(obj, field, where);
  if (!v.is_string())
    throw ParseError("field '" + std::string(field) + "' must be a string");
  return v.get<std::string>();
}

inline std::optional<std::string> optional_string(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError("field '" + std::string(field) + "' must be a string");
  return it->get<std::string>();
}

}  // namespace detail

/// Checks the record-level invariants shared by parsing and the generator.
inline void validate_paper_record(const PaperRecord& p) {
  if (p.paper_id.empty()) throw ParseError("empty paper id");
  if (p.year < kMinYear || p.year > kMaxYear)
    throw ParseError("year " + std::to_string(p.year) + " out of range [1000, 3000]");
  if (p.authors.empty()) throw ParseError("empty author list");
  std::unordered_set<std::string_view> seen_authors;
  for (std::size_t i = 0; i < p.authors.size(); ++i) {
    const auto& slot = p.authors[i];
    if (slot.author_id.empty()) throw ParseError("empty author id");
    if (slot.position != static_cast<int>(i) + 1)
      throw ParseError("author positions must be 1..n without gaps");
    if (!seen_authors.insert(slot.author_id).second)
      throw ParseError("duplicate author '" + slot.author_id + "'");
  }
  std::unordered_set<std::string_view> seen_refs;
  for (const auto& ref : p.references) {
    if (ref.empty()) throw ParseError("empty reference id");
    if (ref == p.paper_id) throw ParseError("self reference");
    if (!seen_refs.insert(ref).second) throw ParseError("duplicate reference '" + ref + "'");
  }
}

/// Parses one corpus line (a JSON object) into a validated PaperRecord.
/// Throws ParseError on malformed syntax, a missing or mistyped field, or an
/// invariant violation.
inline PaperRecord parse_paper_record(std::string_view line, const ParseOptions& opts = {},
                                      std::vector<std::string>* warnings = nullptr) {
  using detail::json;
  json obj;
  try {
    obj = json::parse(line.begin(), line.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed syntax: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError("malformed syntax: record is not an object");

  detail::check_fields(obj, {"id", "title", "year", "venue", "authors", "references"}, "record",
                       opts, warnings);

  PaperRecord p;
  p.paper_id = detail::require_string(obj, "id", "record");
  p.title = detail::require_string(obj, "title", "record");

  const json& year = detail::require(obj, "year", "record");
  if (!year.is_number_integer()) throw ParseError("field 'year' must be an integer");
  const auto y = year.get<long long>();
  if (y < kMinYear || y > kMaxYear)
    throw ParseError("year " + std::to_string(y) + " out of range [1000, 3000]");
  p.year = static_cast<int>(y);

  const json& venue = detail::require(obj, "venue", "record");
  if (!venue.is_object()) throw ParseError("field 'venue' must be an object");
  detail::check_fields(venue, {"kind", "venue_id"}, "venue", opts, warnings);
  const auto kind_text = detail::require_string(venue, "kind", "venue");
  const auto kind = venue_kind_from_string(kind_text);
  if (!kind) throw ParseError("unknown venue kind '" + kind_text + "'");
  p.venue.kind = *kind;
  p.venue.venue_id = detail::optional_string(venue, "venue_id");

  const json& authors = detail::require(obj, "authors", "record");
  if (!authors.is_array()) throw ParseError("field 'authors' must be an array");
  if (authors.empty()) throw ParseError("empty author list");
  int position = 1;
  for (const auto& a : authors) {
    if (!a.is_object()) throw ParseError("author entry must be an object");
    detail::check_fields(a, {"author_id", "institution_id", "has_email"}, "author", opts,
                         warnings);
    AuthorSlot slot;
    slot.author_id = detail::require_string(a, "author_id", "author");
    slot.position = position++;
    slot.institution_id = detail::optional_string(a, "institution_id");
    const json& email = detail::require(a, "has_email", "author");
    if (!email.is_boolean()) throw ParseError("field 'has_email' must be a boolean");
    slot.has_email = email.get<bool>();
    p.authors.push_back(std::move(slot));
  }

  const json& refs = detail::require(obj, "references", "record");
  if (!refs.is_array()) throw ParseError("field 'references' must be an array");
  for (const auto& r : refs) {
    if (!r.is_string()) throw ParseError("reference ids must be strings");
    p.references.push_back(r.get<std::string>());
  }

  validate_paper_record(p);
  return p;
}

/// Single-line JSON with a fixed key order; parse_paper_record accepts it.
inline std::string serialize_paper_record(const PaperRecord& p) {
  using detail::json;
  // ordered_json keeps insertion order so generated corpora are stable.
  nlohmann::ordered_json obj;
  obj["id"] = p.paper_id;
  obj["title"] = p.title;
  obj["year"] = p.year;
  nlohmann::ordered_json venue;
  venue["kind"] = std::string(to_string(p.venue.kind));
  venue["venue_id"] = p.venue.venue_id ? nlohmann::ordered_json(*p.venue.venue_id) : nullptr;
  obj["venue"] = std::move(venue);
  auto authors = nlohmann::ordered_json::array();
  for (const auto& slot : p.authors) {
    nlohmann::ordered_json a;
    a["author_id"] = slot.author_id;
    a["institution_id"] =
        slot.institution_id ? nlohmann::ordered_json(*slot.institution_id) : nullptr;
    a["has_email"] = slot.has_email;
    authors.push_back(std::move(a));
  }
  obj["authors"] = std::move(authors);
  obj["references"] = p.references;
  return obj.dump();
}

/// Journal impact factors keyed by (venue_id, year).
class ImpactFactorTable {
 public:
  void set(std::string venue_id, int year, double impact_factor) {
    if (!std::isfinite(impact_factor) || impact_factor < 0.0)
      throw std::invalid_argument("impact factor must be finite and non-negative");
    entries_[{std::move(venue_id), year}] = impact_factor;
  }

  std::optional<double> lookup(std::string_view venue_id, int year) const {
    auto it = entries_.find({std::string(venue_id), year});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const auto& entries() const { return entries_; }

 private:
  std::map<std::pair<std::string, int>, double> entries_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split_csv_row(std::string_view row) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = row.find(',', start);
    cells.push_back(trim(row.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

template <class T>
T parse_number(std::string_view cell, std::size_t line, const char* what) {
  std::string text(cell);
  std::size_t used = 0;
  try {
    T value;
    if constexpr (std::is_floating_point_v<T>)
      value = static_cast<T>(std::stod(text, &used));
    else
      value = static_cast<T>(std::stoll(text, &used));
    if (used == text.size() && !text.empty()) return value;
  } catch (const std::exception&) {
  }
  throw ParseError(std::string("invalid ") + what + " '" + text + "'", line);
}

}  // namespace detail

/// Reads `venue_id,year,impact_factor` rows after a header row.
inline ImpactFactorTable read_impact_factor_csv(std::istream& in) {
  ImpactFactorTable table;
  std::string line;
  std::size_t line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto row = detail::trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      const auto cells = detail::split_csv_row(row);
      if (cells.size() != 3 || cells[0] != "venue_id" || cells[1] != "year" ||
          cells[2] != "impact_factor")
        throw ParseError("expected header 'venue_id,year,impact_factor'", line_number);
      continue;
    }
    const auto cells = detail::split_csv_row(row);
    if (cells.size() != 3 || cells[0].empty())
      throw ParseError("expected 3 columns", line_number);
    const int year = detail::parse_number<int>(cells[1], line_number, "year");
    const double jif = detail::parse_number<double>(cells[2], line_number, "impact factor");
    if (!std::isfinite(jif) || jif < 0.0)
      throw ParseError("impact factor must be finite and non-negative", line_number);
    if (table.lookup(cells[0], year))
      throw ParseError("duplicate entry for (" + std::string(cells[0]) + ", " +
                           std::to_string(year) + ")",
                       line_number);
    table.set(std::string(cells[0]), year, jif);
  }
  if (!header_seen) throw ParseError("empty impact factor file");
  return table;
}

struct DroppedRecord {
  std::size_t line_number = 0;
  std::string reason;
};

struct IngestReport {
  std::size_t accepted = 0;
  std::vector<DroppedRecord> dropped;
  std::size_t dangling_references = 0;
  std::vector<std::string> warnings;

  std::size_t total_read() const { return accepted + dropped.size(); }
};

class Corpus;

template <std::ranges::input_range Lines>
std::pair<Corpus, IngestReport> load_corpus(const Lines& lines,
                                            std::optional<ImpactFactorTable> jif = std::nullopt,
                                            const ParseOptions& opts = {});

/// Immutable snapshot of accepted papers and their resolved citation graph.
/// Papers keep stream order; `citing(i)` lists citing papers in stream order.
class Corpus {
 public:
  using PaperIndex = std::size_t;

  Corpus() = default;

  const std::vector<PaperRecord>& papers() const { return papers_; }
  std::size_t size() const { return papers_.size(); }
  const PaperRecord& paper(PaperIndex i) const { return papers_.at(i); }

  std::optional<PaperIndex> index_of(std::string_view paper_id) const {
    auto it = index_.find(std::string(paper_id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const PaperRecord* find(std::string_view paper_id) const {
    auto i = index_of(paper_id);
    return i ? &papers_[*i] : nullptr;
  }

  /// Indices of in-corpus papers that cite paper `i`.
  const std::vector<PaperIndex>& citing(PaperIndex i) const { return citations_.at(i); }

  std::vector<std::string> citing_ids(std::string_view paper_id) const {
    std::vector<std::string> out;
    if (auto i = index_of(paper_id))
      for (auto c : citations_[*i]) out.push_back(papers_[c].paper_id);
    return out;
  }

  /// institution_id -> authors holding at least one slot there.
  const std::map<std::string, std::set<std::string>>& institutions() const {
    return institutions_;
  }

  const ImpactFactorTable& impact_factors() const { return impact_factors_; }

  std::size_t citation_edge_count() const {
    std::size_t n = 0;
    for (const auto& c : citations_) n += c.size();
    return n;
  }

 private:
  template <std::ranges::input_range Lines>
  friend std::pair<Corpus, IngestReport> load_corpus(const Lines&, std::optional<ImpactFactorTable>,
                                                     const ParseOptions&);

  std::vector<PaperRecord> papers_;
  std::unordered_map<std::string, PaperIndex> index_;
  std::vector<std::vector<PaperIndex>> citations_;
  std::map<std::string, std::set<std::string>> institutions_;
  ImpactFactorTable impact_factors_;
};

/// Builds a corpus from a range of record lines. Invalid records are dropped
/// whole and logged; references to ids outside the accepted set are counted
/// as dangling and left out of the citation graph.
template <std::ranges::input_range Lines>
std::pair<Corpus, IngestReport> load_corpus(const Lines& lines,
                                            std::optional<ImpactFactorTable> jif,
                                            const ParseOptions& opts) {
  Corpus corpus;
  IngestReport report;
  std::size_t line_number = 0;
  for (const auto& raw : lines) {
    ++line_number;
    const std::string_view line(raw);
    if (detail::trim(line).empty()) {
      report.dropped.push_back({line_number, "empty record"});
      continue;
    }
    std::vector<std::string> warnings;
    try {
      PaperRecord p = parse_paper_record(line, opts, &warnings);
      if (corpus.index_.contains(p.paper_id)) {
        report.dropped.push_back({line_number, "duplicate id"});
        continue;
      }
      corpus.index_.emplace(p.paper_id, corpus.papers_.size());
      corpus.papers_.push_back(std::move(p));
      ++report.accepted;
      for (auto& w : warnings)
        report.warnings.push_back("line " + std::to_string(line_number) + ": " + std::move(w));
    } catch (const ParseError& e) {
      report.dropped.push_back({line_number, e.reason()});
    }
  }

  corpus.citations_.resize(corpus.papers_.size());
  for (Corpus::PaperIndex q = 0; q < corpus.papers_.size(); ++q) {
    const auto& citing = corpus.papers_[q];
    for (const auto& ref : citing.references) {
      auto it = corpus.index_.find(ref);
      if (it == corpus.index_.end()) {
        ++report.dangling_references;
        continue;
      }
      corpus.citations_[it->second].push_back(q);
    }
    for (const auto& slot : citing.authors)
      if (slot.institution_id) corpus.institutions_[*slot.institution_id].insert(slot.author_id);
  }
  if (jif) corpus.impact_factors_ = std::move(*jif);
  return {std::move(corpus), std::move(report)};
}

/// Reads every line of `in` and loads it.
inline std::pair<Corpus, IngestReport> load_corpus(std::istream& in,
                                                   std::optional<ImpactFactorTable> jif = std::nullopt,
                                                   const ParseOptions& opts = {}) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  return load_corpus(lines, std::move(jif), opts);
}

/// Distinct authors with at least one slot affiliated to `inst`.
inline std::set<std::string> institution_authors(const Corpus& corpus, std::string_view inst) {
  auto it = corpus.institutions().find(std::string(inst));
  if (it == corpus.institutions().end()) return {};
  return it->second;
}

}  // namespace axrank
