// axrank: command-line front end.
//
//   axrank validate --corpus papers.jsonl [--strict] [--report ingest.json]
//   axrank compute  --corpus papers.jsonl [--jif jif.csv] --out DIR [--format csv|json]
//   axrank compute  --corpus papers.jsonl --explain PAPER_ID
//   axrank rank     --corpus papers.jsonl --index ac
//   axrank compare  --corpus papers.jsonl --external USNWR=usnwr.csv [--out DIR]
//   axrank synth    --seed 7 --out papers.jsonl [--jif-out jif.csv]
//
// Exit status: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "axrank/axrank.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Failure attributable to input data or I/O rather than to the command line.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string corpus_path;
  std::string jif_path;
  std::vector<std::string> externals;  // LABEL=PATH
  std::string output_dir;
  std::string format = "csv";
  bool strict = false;
  std::optional<std::uint64_t> seed;
  int year_min_aj = 1975;
  std::string report_path;
  std::string explain;
  std::vector<std::string> indices;
};

axrank::OutputFormat output_format(const RunConfig& cfg) {
  return cfg.format == "json" ? axrank::OutputFormat::json : axrank::OutputFormat::csv;
}

void log_ingest(const axrank::IngestReport& r) {
  std::cerr << "ingest accepted=" << r.accepted << " dropped=" << r.dropped.size()
            << " dangling_references=" << r.dangling_references << '\n';
  for (const auto& d : r.dropped)
    std::cerr << "ingest drop line=" << d.line_number << " reason=\"" << d.reason << "\"\n";
  for (const auto& w : r.warnings) std::cerr << "ingest warning \"" << w << "\"\n";
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");
  return in;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::pair<axrank::Corpus, axrank::IngestReport> load(const RunConfig& cfg) {
  std::optional<axrank::ImpactFactorTable> jif;
  if (!cfg.jif_path.empty()) {
    auto in = open_input(cfg.jif_path);
    try {
      jif = axrank::read_impact_factor_csv(in);
    } catch (const axrank::ParseError& e) {
      throw DataError(cfg.jif_path + ": " + e.what());
    }
  }
  auto in = open_input(cfg.corpus_path);
  auto result = axrank::load_corpus(in, std::move(jif), {cfg.strict});
  log_ingest(result.second);
  if (!cfg.report_path.empty()) {
    std::ostringstream os;
    axrank::write_ingest_report_json(os, result.second);
    write_file(cfg.report_path, os.str());
  }
  return result;
}

// Loads the corpus; in strict mode any dropped record aborts the command.
axrank::Corpus load_for_analysis(const RunConfig& cfg) {
  auto [corpus, report] = load(cfg);
  if (cfg.strict && !report.dropped.empty())
    throw DataError(std::to_string(report.dropped.size()) + " invalid record(s) in strict mode");
  return std::move(corpus);
}

std::map<std::string, axrank::InstitutionIndices> indices_of(const axrank::Corpus& corpus,
                                                              const RunConfig& cfg) {
  std::size_t missing = 0;
  auto all = axrank::compute_all(corpus, {cfg.year_min_aj}, &missing);
  if (missing > 0)
    std::cerr << "indices warning missing_jif=" << missing
              << " (journal papers without an impact factor contribute 0 to aj)\n";
  return all;
}

axrank::RankingTable table_for(const std::map<std::string, axrank::InstitutionIndices>& all,
                               const std::string& index) {
  std::map<std::string, double> values;
  for (const auto& [id, r] : all) {
    double v = 0.0;
    if (index == "ac")
      v = r.ac;
    else if (index == "aac")
      v = r.aac;
    else if (index == "ah")
      v = r.ah.h_real;
    else if (index == "aj")
      v = r.aj;
    else
      throw UsageError("unknown index '" + index + "'");
    values.emplace(id, v);
  }
  return axrank::rank_by(values, index);
}

const std::vector<std::string> kAllIndices = {"ac", "aac", "ah", "aj"};

int cmd_validate(const RunConfig& cfg) {
  const auto [corpus, report] = load(cfg);
  std::cout << "accepted " << report.accepted << "\ndropped " << report.dropped.size()
            << "\ndangling_references " << report.dangling_references << '\n';
  if (!report.dropped.empty()) {
    if (cfg.strict) return kExitData;
    std::cerr << "validate warning: " << report.dropped.size()
              << " record(s) dropped; rerun with --strict to fail on drops\n";
  }
  return kExitOk;
}

int cmd_explain(const RunConfig& cfg) {
  const auto corpus = load_for_analysis(cfg);
  const auto* paper = corpus.find(cfg.explain);
  if (!paper) throw DataError("paper '" + cfg.explain + "' not in corpus");
  const auto cv = axrank::credit_vector(*paper);
  std::cout << "paper " << paper->paper_id << " authors=" << paper->authors.size()
            << " mode=" << axrank::to_string(cv.mode)
            << " citations=" << corpus.citing(*corpus.index_of(paper->paper_id)).size() << '\n';
  std::cout << "position,author_id,institution_id,credit\n";
  for (std::size_t k = 0; k < cv.size(); ++k) {
    const auto& slot = paper->authors[k];
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", cv[k]);
    std::cout << slot.position << ',' << slot.author_id << ','
              << slot.institution_id.value_or("") << ',' << buf << '\n';
  }
  return kExitOk;
}

int cmd_compute(const RunConfig& cfg) {
  if (!cfg.explain.empty()) return cmd_explain(cfg);
  if (cfg.output_dir.empty()) throw UsageError("compute needs --out DIR");
  const auto corpus = load_for_analysis(cfg);
  const auto all = indices_of(corpus, cfg);
  const auto fmt = output_format(cfg);
  const fs::path dir(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create '" + dir.string() + "': " + ec.message());

  std::ostringstream os;
  axrank::write_indices(os, all, fmt);
  write_file(dir / ("indices" + std::string(axrank::extension(fmt))), os.str());
  for (const auto& index : kAllIndices) {
    std::ostringstream ts;
    axrank::write_ranking(ts, table_for(all, index), fmt);
    write_file(dir / ("ranking_" + index + std::string(axrank::extension(fmt))), ts.str());
  }
  std::cout << "wrote indices for " << all.size() << " institution(s) to " << dir.string()
            << '\n';
  return kExitOk;
}

int cmd_rank(const RunConfig& cfg) {
  const std::string index = cfg.indices.empty() ? "ac" : cfg.indices.front();
  if (cfg.indices.size() > 1) throw UsageError("rank takes a single --index");
  const auto corpus = load_for_analysis(cfg);
  const auto table = table_for(indices_of(corpus, cfg), index);
  std::ostringstream os;
  axrank::write_ranking(os, table, output_format(cfg));
  if (cfg.output_dir.empty()) {
    std::cout << os.str();
  } else {
    fs::create_directories(cfg.output_dir);
    write_file(fs::path(cfg.output_dir) /
                   ("ranking_" + index + std::string(axrank::extension(output_format(cfg)))),
               os.str());
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::map<std::string, double>>> tables;
  if (!cfg.corpus_path.empty()) {
    const auto corpus = load_for_analysis(cfg);
    const auto all = indices_of(corpus, cfg);
    for (const auto& index : cfg.indices.empty() ? kAllIndices : cfg.indices)
      tables.emplace_back(index, table_for(all, index).rank_map());
  } else if (!cfg.indices.empty()) {
    throw UsageError("--index needs --corpus");
  }
  for (const auto& spec : cfg.externals) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
      throw UsageError("--external expects LABEL=PATH, got '" + spec + "'");
    const std::string label = spec.substr(0, eq);
    const std::string path = spec.substr(eq + 1);
    auto in = open_input(path);
    try {
      tables.emplace_back(label, axrank::read_external_ranking(in, label).rank_map());
    } catch (const axrank::ParseError& e) {
      throw DataError(path + ": " + e.what());
    }
  }
  if (tables.size() < 2) throw UsageError("compare needs at least 2 ranking sources");

  axrank::CorrelationReport rep;
  try {
    rep = axrank::correlation_report(tables);
  } catch (const axrank::RankingError& e) {
    throw DataError(e.what());
  }

  std::ostringstream sp, kd, nc;
  axrank::write_correlation_matrix_csv(sp, rep, rep.spearman);
  axrank::write_correlation_matrix_csv(kd, rep, rep.kendall);
  axrank::write_n_common_csv(nc, rep);
  std::cout << "Spearman correlation\n" << sp.str() << "\nKendall correlation\n" << kd.str()
            << "\nCommon institutions\n" << nc.str();

  if (!cfg.output_dir.empty()) {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    if (output_format(cfg) == axrank::OutputFormat::csv) {
      write_file(dir / "spearman.csv", sp.str());
      write_file(dir / "kendall.csv", kd.str());
      write_file(dir / "n_common.csv", nc.str());
    } else {
      std::ostringstream js;
      axrank::write_correlation_json(js, rep);
      write_file(dir / "correlation.json", js.str());
    }
  }
  return kExitOk;
}

int cmd_synth(const RunConfig& cfg, const axrank::SynthParams& params,
              const std::string& jif_out) {
  if (!cfg.seed) throw UsageError("synth needs --seed");
  if (cfg.output_dir.empty()) throw UsageError("synth needs --out FILE");
  std::vector<std::string> lines;
  try {
    lines = axrank::gen_synthetic_corpus(params, *cfg.seed);
  } catch (const axrank::SynthError& e) {
    throw UsageError(e.what());
  }
  std::string text;
  for (const auto& l : lines) text += l + '\n';
  write_file(cfg.output_dir, text);
  if (!jif_out.empty()) {
    const auto table = axrank::gen_synthetic_impact_factors(params, *cfg.seed);
    std::string csv = "venue_id,year,impact_factor\n";
    for (const auto& [key, v] : table.entries())
      csv += key.first + ',' + std::to_string(key.second) + ',' + axrank::format_fixed(v, 3) +
             '\n';
    write_file(jif_out, csv);
  }
  std::cout << "wrote " << lines.size() << " paper(s) to " << cfg.output_dir << '\n';
  return kExitOk;
}

void add_corpus_options(CLI::App* cmd, RunConfig& cfg, bool corpus_required) {
  auto* opt = cmd->add_option("--corpus", cfg.corpus_path, "Corpus file, one JSON record per line")
                  ->check(CLI::ExistingFile);
  if (corpus_required) opt->required();
  cmd->add_flag("--strict", cfg.strict, "Reject unknown fields and fail on dropped records");
  cmd->add_option("--report", cfg.report_path, "Write the ingest report as JSON");
}

void add_analysis_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--jif", cfg.jif_path, "Impact factor CSV: venue_id,year,impact_factor")
      ->check(CLI::ExistingFile);
  cmd->add_option("--year-min-aj", cfg.year_min_aj, "Earliest year counted by aj")
      ->check(CLI::Range(1000, 3000));
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axiomatic citation indices and institutional ranking"};
  app.require_subcommand(1);
  RunConfig cfg;
  axrank::SynthParams synth;
  std::string jif_out;

  auto* validate = app.add_subcommand("validate", "Check a corpus and report dropped records");
  add_corpus_options(validate, cfg, true);

  auto* compute = app.add_subcommand("compute", "Compute ac, aac, ah and aj per institution");
  add_corpus_options(compute, cfg, true);
  add_analysis_options(compute, cfg);
  compute->add_option("--out", cfg.output_dir, "Output directory");
  compute->add_option("--explain", cfg.explain, "Print one paper's credit vector instead");

  auto* rank = app.add_subcommand("rank", "Print the ranking table for one index");
  add_corpus_options(rank, cfg, true);
  add_analysis_options(rank, cfg);
  rank->add_option("--index", cfg.indices, "Index to rank by")
      ->check(CLI::IsMember({"ac", "aac", "ah", "aj"}));
  rank->add_option("--out", cfg.output_dir, "Output directory (default: stdout)");

  auto* compare = app.add_subcommand("compare", "Spearman and Kendall correlation between rankings");
  add_corpus_options(compare, cfg, false);
  add_analysis_options(compare, cfg);
  compare->add_option("--index", cfg.indices, "Internal index to compare (repeatable)")
      ->check(CLI::IsMember({"ac", "aac", "ah", "aj"}));
  compare->add_option("--external", cfg.externals, "External ranking LABEL=PATH (repeatable)");
  compare->add_option("--out", cfg.output_dir, "Output directory");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  synth_cmd->add_option("--seed", cfg.seed, "Generator seed")->required();
  synth_cmd->add_option("--out", cfg.output_dir, "Corpus file to write")->required();
  synth_cmd->add_option("--papers", synth.n_papers, "Number of papers");
  synth_cmd->add_option("--authors", synth.n_authors, "Number of authors");
  synth_cmd->add_option("--institutions", synth.n_institutions, "Number of institutions");
  synth_cmd->add_option("--team-size", synth.mean_team_size, "Mean team size");
  synth_cmd->add_option("--self-cite-rate", synth.self_cite_rate, "Self-citation rate in [0,1]");
  synth_cmd->add_option("--refs-min", synth.reference_count_range.first, "Minimum references");
  synth_cmd->add_option("--refs-max", synth.reference_count_range.second, "Maximum references");
  synth_cmd->add_option("--jif-out", jif_out, "Also write a matching impact factor CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*compute) return cmd_compute(cfg);
    if (*rank) return cmd_rank(cfg);
    if (*compare) return cmd_compare(cfg);
    if (*synth_cmd) return cmd_synth(cfg, synth, jif_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
