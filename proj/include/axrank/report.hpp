#pragma once

// CSV/JSON report writers and the external ranking reader used by the CLI.
// Every writer is deterministic: same input, same bytes.

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "axrank/corpus.hpp"
#include "axrank/indices.hpp"
#include "axrank/ranking.hpp"

namespace axrank {

enum class OutputFormat { csv, json };

inline std::string_view extension(OutputFormat f) { return f == OutputFormat::csv ? ".csv" : ".json"; }

// Decimal places used in reports.
inline constexpr int kAcDecimals = 1;
inline constexpr int kAacDecimals = 1;
inline constexpr int kAhRealDecimals = 4;
inline constexpr int kAjDecimals = 2;
inline constexpr int kCorrelationDecimals = 4;

/// Fixed-point text; never prints "-0.0".
inline std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

/// The value format_fixed prints, as a number for JSON output.
inline double round_fixed(double x, int decimals) {
  return std::stod(format_fixed(x, decimals));
}

/// Display precision for each index name; ranking files use it.
inline int index_decimals(std::string_view index_name) {
  if (index_name == "ac") return kAcDecimals;
  if (index_name == "aac") return kAacDecimals;
  if (index_name == "ah") return kAhRealDecimals;
  if (index_name == "aj") return kAjDecimals;
  return 4;
}

inline void write_ingest_report_json(std::ostream& out, const IngestReport& r) {
  nlohmann::ordered_json j;
  j["accepted"] = r.accepted;
  j["dropped_count"] = r.dropped.size();
  j["dangling_references"] = r.dangling_references;
  auto dropped = nlohmann::ordered_json::array();
  for (const auto& d : r.dropped) dropped.push_back({{"line", d.line_number}, {"reason", d.reason}});
  j["dropped"] = std::move(dropped);
  j["warnings"] = r.warnings;
  out << j.dump(2) << '\n';
}

inline void write_indices(std::ostream& out, const std::map<std::string, InstitutionIndices>& all,
                          OutputFormat fmt) {
  if (fmt == OutputFormat::csv) {
    out << "institution_id,ac,aac,ah_int,ah_real,aj,n_authors,n_papers\n";
    for (const auto& [id, r] : all) {
      out << id << ',' << format_fixed(r.ac, kAcDecimals) << ','
          << format_fixed(r.aac, kAacDecimals) << ',' << r.ah.h_int << ','
          << format_fixed(r.ah.h_real, kAhRealDecimals) << ',' << format_fixed(r.aj, kAjDecimals)
          << ',' << r.n_authors << ',' << r.n_papers << '\n';
    }
    return;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [id, r] : all) {
    nlohmann::ordered_json row;
    row["institution_id"] = id;
    row["ac"] = round_fixed(r.ac, kAcDecimals);
    row["aac"] = round_fixed(r.aac, kAacDecimals);
    row["ah_int"] = r.ah.h_int;
    row["ah_real"] = round_fixed(r.ah.h_real, kAhRealDecimals);
    row["aj"] = round_fixed(r.aj, kAjDecimals);
    row["n_authors"] = r.n_authors;
    row["n_papers"] = r.n_papers;
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json doc;
  doc["institutions"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

inline void write_ranking(std::ostream& out, const RankingTable& table, OutputFormat fmt) {
  const int decimals = index_decimals(table.index_name);
  if (fmt == OutputFormat::csv) {
    out << "rank,institution_id,value,avg_rank\n";
    for (const auto& e : table.entries)
      out << e.rank << ',' << e.institution_id << ',' << format_fixed(e.value, decimals) << ','
          << format_fixed(e.avg_rank, 1) << '\n';
    return;
  }
  nlohmann::ordered_json doc;
  doc["index"] = table.index_name;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& e : table.entries)
    rows.push_back({{"rank", e.rank},
                    {"institution_id", e.institution_id},
                    {"value", round_fixed(e.value, decimals)},
                    {"avg_rank", e.avg_rank}});
  doc["entries"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

namespace detail {

template <class T, class Fmt>
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels,
                      const std::vector<std::vector<T>>& m, Fmt fmt) {
  out << "label";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels[i];
    for (std::size_t j = 0; j <= i; ++j) out << ',' << fmt(m[i][j]);
    for (std::size_t j = i + 1; j < labels.size(); ++j) out << ',';
    out << '\n';
  }
}

}  // namespace detail

/// Lower-triangular matrix (diagonal included) with a label header row and
/// label first column; cells above the diagonal are left empty.
inline void write_correlation_matrix_csv(std::ostream& out, const CorrelationReport& rep,
                                         const std::vector<std::vector<double>>& m) {
  detail::write_matrix_csv(out, rep.labels, m,
                           [](double x) { return format_fixed(x, kCorrelationDecimals); });
}

inline void write_n_common_csv(std::ostream& out, const CorrelationReport& rep) {
  detail::write_matrix_csv(out, rep.labels, rep.n_common,
                           [](std::size_t x) { return std::to_string(x); });
}

inline void write_correlation_json(std::ostream& out, const CorrelationReport& rep) {
  auto rounded = [](const std::vector<std::vector<double>>& m) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& row : m) {
      auto r = nlohmann::ordered_json::array();
      for (double x : row) r.push_back(round_fixed(x, kCorrelationDecimals));
      j.push_back(std::move(r));
    }
    return j;
  };
  nlohmann::ordered_json doc;
  doc["labels"] = rep.labels;
  doc["spearman"] = rounded(rep.spearman);
  doc["kendall"] = rounded(rep.kendall);
  doc["n_common"] = rep.n_common;
  out << doc.dump(2) << '\n';
}

/// Reads a comma-separated ranking with a header naming `institution_id` and
/// `rank` columns; other columns are ignored, so ranking files written by
/// write_ranking also load. Unranked institutions are simply not listed.
inline ExternalRanking read_external_ranking(std::istream& in, std::string source_name) {
  ExternalRanking out;
  out.source_name = std::move(source_name);
  std::string line;
  std::size_t line_number = 0;
  std::optional<std::size_t> id_col, rank_col;
  std::size_t n_cols = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto row = detail::trim(line);
    if (row.empty()) continue;
    const auto cells = detail::split_csv_row(row);
    if (!id_col) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "institution_id") id_col = i;
        if (cells[i] == "rank") rank_col = i;
      }
      if (!id_col || !rank_col)
        throw ParseError("header must name 'institution_id' and 'rank' columns", line_number);
      n_cols = cells.size();
      continue;
    }
    if (cells.size() != n_cols) throw ParseError("wrong number of columns", line_number);
    const std::string id(cells[*id_col]);
    if (id.empty()) throw ParseError("empty institution_id", line_number);
    const long long rank = detail::parse_number<long long>(cells[*rank_col], line_number, "rank");
    if (rank < 1) throw ParseError("rank must be >= 1", line_number);
    if (!out.ranks.emplace(id, static_cast<int>(rank)).second)
      throw ParseError("duplicate institution '" + id + "'", line_number);
  }
  if (!id_col) throw ParseError("empty ranking file");
  return out;
}

}  // namespace axrank
