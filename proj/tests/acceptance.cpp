// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axrank/axrank.hpp"
#include "oracles.hpp"

using namespace axrank;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct DepartmentRow {
  const char* name;
  double ac;
  std::size_t authors;
  double aac;
};

// Published (ac, # of authors, aac) for the 52 U.S. computer science departments.
constexpr DepartmentRow kDepartments[] = {
    {"Massachusetts Institute of Technology", 274440.5, 5711, 48.1},
    {"Stanford University", 267123.6, 5266, 50.7},
    {"Carnegie Mellon University", 234860.7, 4137, 56.8},
    {"University of California Berkeley", 234236.7, 4397, 53.3},
    {"University of Illinois Urbana Champaign", 130772.0, 3765, 34.7},
    {"Georgia Institute of Technology", 102320.4, 3719, 27.5},
    {"University of Maryland", 90477.97, 2740, 33.0},
    {"University of California Los Angeles", 81258.45, 2786, 29.2},
    {"University of Michigan", 77306.04, 3343, 23.1},
    {"University of Southern California", 76389.19, 2759, 27.7},
    {"University of Washington", 75294.52, 3016, 25.0},
    {"University of Texas Austin", 73734.15, 3224, 22.9},
    {"Cornell University", 72117.64, 1994, 36.2},
    {"University of Wisconsin Madison", 65272.32, 2281, 28.6},
    {"University of California San Diego", 64355.73, 2934, 21.9},
    {"University of Minnesota", 59021.07, 2604, 22.7},
    {"Columbia University", 57890.46, 1873, 30.9},
    {"Princeton University", 57189.62, 1276, 44.8},
    {"Purdue University", 56405.08, 2814, 20.0},
    {"University of Massachusetts Amherst", 54316.84, 1889, 28.8},
    {"University of California Irvine", 51333.04, 1790, 28.7},
    {"University of Pennsylvania", 50660.41, 1616, 31.3},
    {"Rutgers University", 49438.86, 1595, 31.0},
    {"California Institute of Technology", 45189.05, 1352, 33.4},
    {"Harvard University", 42441.6, 2571, 16.5},
    {"Pennsylvania State University", 38848.23, 2564, 15.2},
    {"University of California Santa Barbara", 36009.39, 1425, 25.3},
    {"University of North Carolina Chapel Hill", 35917.43, 1144, 31.4},
    {"Ohio State University", 34019.76, 2110, 16.1},
    {"University of Colorado Boulder", 33237.4, 1485, 22.4},
    {"Yale University", 28887.68, 1056, 27.4},
    {"Texas A&M University", 28474.24, 2141, 13.3},
    {"Rice University", 26423.15, 811, 32.6},
    {"New York University", 26142.26, 1045, 25.0},
    {"University of Virginia", 26021.63, 1252, 20.8},
    {"University of California Davis", 25739.79, 1647, 15.6},
    {"Brown University", 25208.12, 771, 32.7},
    {"Northwestern University", 25198.38, 1353, 18.6},
    {"Duke University", 24907.47, 1389, 17.9},
    {"Johns Hopkins University", 24738.61, 1582, 15.6},
    {"Boston University", 24193.62, 1097, 22.1},
    {"Washington University in St. Louis", 22161.58, 1057, 21.0},
    {"Rensselaer Polytechnic Institute", 21734.5, 1280, 17.0},
    {"Virginia Tech", 20701.25, 2180, 9.5},
    {"University of Arizona", 20694.63, 1632, 12.7},
    {"Stony Brook University", 20471.27, 770, 26.6},
    {"University of Florida", 20040.97, 1960, 10.2},
    {"University of Rochester", 19451.28, 756, 25.7},
    {"University of Utah", 17729.43, 1205, 14.7},
    {"Dartmouth College", 14487.19, 543, 26.7},
    {"University of Chicago", 13922.64, 758, 18.4},
    {"University of North Carolina Charlotte", 9049.804, 525, 17.2},
};

Outcome department_aac() {
  Outcome o;
  std::size_t rows = 0, exact = 0;
  double worst = 0.0;
  for (const auto& row : kDepartments) {
    ++rows;
    const double printed = round_fixed(aac_index(row.ac, row.authors), kAacDecimals);
    const double diff = std::fabs(printed - row.aac);
    worst = std::max(worst, diff);
    if (diff < 1e-9) ++exact;
    if (diff > 0.1 + 1e-9) {
      o.pass = false;
      o.detail += std::string(" mismatch: ") + row.name;
    }
  }
  if (rows != 52) o.pass = false;
  o.detail = std::to_string(rows) + " rows, " + std::to_string(exact) + " exact after rounding, max diff " +
             format_fixed(worst, 2) + o.detail;
  return o;
}

Outcome credit_normalization() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 500; ++n) {
    for (auto mode : {AuthorshipMode::plain, AuthorshipMode::last_is_corresponding}) {
      // a sole author is always credited in plain mode
      if (n == 1 && mode == AuthorshipMode::last_is_corresponding) continue;
      const auto cv = credit_vector(n, mode);
      long double sum = 0;
      for (double c : cv.shares) sum += c;
      worst = std::max(worst, static_cast<double>(std::fabs(sum - 1.0L)));
      if (mode == AuthorshipMode::plain) {
        for (int k = 0; k + 1 < n; ++k)
          if (!(cv.shares[k] > cv.shares[k + 1])) o.pass = false;
      } else if (n >= 2 && cv.shares.front() != cv.shares.back()) {
        o.pass = false;
      }
    }
  }
  if (worst > 1e-12) o.pass = false;
  o.detail = "n=1..500 plain, n=2..500 corresponding, max |sum-1| = " + sci(worst);
  return o;
}

Outcome self_citation_exclusion() {
  Outcome o;
  std::mt19937_64 rng(20120101);
  std::uniform_int_distribution<int> team(1, 12);
  std::bernoulli_distribution overlap(0.5), email(0.3);
  double worst_brute = 0.0, worst_closed = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    oracle::Paper cited, citing;
    cited.id = "A";
    citing.id = "B";
    citing.refs = {"A"};
    const int n = team(rng), m = team(rng);
    for (int i = 0; i < n; ++i)
      cited.authors.push_back({"x" + std::to_string(i), "I", email(rng)});
    std::vector<std::string> pool;
    for (const auto& a : cited.authors) pool.push_back(a.id);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int j = 0; j < m; ++j) {
      std::string id = "y" + std::to_string(j);
      if (overlap(rng) && !pool.empty()) {
        id = pool.back();
        pool.pop_back();
      }
      citing.authors.push_back({id, "J", email(rng)});
    }
    const auto [corpus, report] = load_corpus(oracle::to_lines({cited, citing}));
    const auto& a = cited.authors[std::uniform_int_distribution<int>(0, n - 1)(rng)].id;
    const double w = citation_weight(corpus, "A", "B", a);
    const double closed = oracle::credit(cited, a) * (1.0 - oracle::credit(citing, a));
    worst_brute = std::max(worst_brute, std::fabs(w - oracle::pairwise_weight(cited, citing, a)));
    worst_closed = std::max(worst_closed, std::fabs(w - closed));
  }
  if (worst_brute > 1e-12 || worst_closed > 1e-12) o.pass = false;
  o.detail = "1000 pairs, max err brute " + sci(worst_brute) + ", closed form " +
             sci(worst_closed);
  return o;
}

Outcome ah_equivalence() {
  Outcome o;
  std::mt19937_64 rng(97);
  std::size_t mismatches = 0, floor_breaks = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t len = std::uniform_int_distribution<std::size_t>(0, 50)(rng);
    std::vector<double> v(len);
    for (auto& x : v) {
      switch (rng() % 4) {
        case 0:  // integers, so ties land on h boundaries
          x = static_cast<double>(rng() % 101);
          break;
        case 1:
          x = static_cast<double>(rng() % 20);
          break;
        case 2:
          x = std::nextafter(static_cast<double>(1 + rng() % 30), 0.0);
          break;
        default:
          x = std::uniform_real_distribution<double>(0.0, 100.0)(rng);
      }
    }
    const auto got = ah_from_values(v);
    const auto [h, best] = oracle::ah_scan(v);
    if (got.h_int != h || got.h_real != best) ++mismatches;
    if (static_cast<double>(got.h_int) != std::floor(got.h_real)) ++floor_breaks;
  }
  o.pass = mismatches == 0 && floor_breaks == 0;
  o.detail = "1000 vectors, " + std::to_string(mismatches) + " mismatches, " +
             std::to_string(floor_breaks) + " floor violations";
  return o;
}

Outcome correlation_oracles() {
  Outcome o;
  std::mt19937_64 rng(55);
  double worst = 0.0;
  int checked = 0;
  while (checked < 500) {
    const std::size_t n = 2 + rng() % 99;
    const int levels = 2 + static_cast<int>(rng() % 40);
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = static_cast<double>(rng() % levels);
    for (auto& x : b) x = static_cast<double>(rng() % levels);
    const auto varies = [](const std::vector<double>& v) {
      return std::any_of(v.begin(), v.end(), [&](double x) { return x != v.front(); });
    };
    if (!varies(a) || !varies(b)) continue;
    ++checked;
    worst = std::max(worst, std::fabs(spearman(a, b) - oracle::spearman(a, b)));
    worst = std::max(worst, std::fabs(kendall_tau_b(a, b) - oracle::kendall_tau_b(a, b)));
  }
  std::vector<double> up(100), down(100);
  for (int i = 0; i < 100; ++i) {
    up[i] = i;
    down[i] = 100 - i;
  }
  const bool exact = spearman(up, up) == 1.0 && kendall_tau_b(up, up) == 1.0 &&
                     spearman(up, down) == -1.0 && kendall_tau_b(up, down) == -1.0;
  o.pass = worst <= 1e-12 && exact;
  o.detail = "500 tied inputs, max err " + sci(worst) + (exact ? ", exact +/-1" : ", +/-1 not exact");
  return o;
}

SynthParams pipeline_params() {
  SynthParams p;
  p.n_papers = 10000;
  p.n_authors = 2000;
  p.n_institutions = 50;
  p.self_cite_rate = 0.0;
  return p;
}

std::string render(const std::map<std::string, InstitutionIndices>& all) {
  std::ostringstream os;
  write_indices(os, all, OutputFormat::csv);
  std::map<std::string, double> ac, ah;
  for (const auto& [id, r] : all) {
    ac[id] = r.ac;
    ah[id] = r.ah.h_real;
  }
  write_ranking(os, rank_by(ac, "ac"), OutputFormat::csv);
  write_ranking(os, rank_by(ah, "ah"), OutputFormat::csv);
  return os.str();
}

Outcome pipeline_conservation() {
  Outcome o;
  const auto params = pipeline_params();
  const auto lines = gen_synthetic_corpus(params, 2012);
  const auto jif = gen_synthetic_impact_factors(params, 2012);

  std::string first, second;
  double elapsed = 0.0, total = 0.0;
  std::size_t edges = 0;
  for (std::string* out : {&first, &second}) {
    const auto t0 = Clock::now();
    const auto [corpus, report] = load_corpus(lines, jif);
    const auto all = compute_all(corpus);
    *out = render(all);
    elapsed = std::max(elapsed, seconds_since(t0));
    total = 0.0;
    for (const auto& [_, r] : all) total += r.ac;
    edges = corpus.citation_edge_count();
    if (!report.dropped.empty()) o.pass = false;
  }
  const double rel = edges ? std::fabs(total - static_cast<double>(edges)) / edges : 1.0;
  if (rel > 1e-9 || elapsed >= 10.0 || first != second || edges == 0) o.pass = false;
  o.detail = std::to_string(edges) + " edges, sum ac " + format_fixed(total, 6) + ", rel err " +
             sci(rel) + ", slowest run " + format_fixed(elapsed, 2) + " s, " +
             (first == second ? "identical output" : "OUTPUT DIFFERS");
  return o;
}

Outcome synthetic_spearman() {
  Outcome o;
  const auto params = pipeline_params();
  const auto [corpus, report] = load_corpus(gen_synthetic_corpus(params, 2012));
  std::map<std::string, double> ac, ah;
  for (const auto& [id, r] : compute_all(corpus)) {
    ac[id] = r.ac;
    ah[id] = r.ah.h_real;
  }
  const auto rep = correlation_report({{"ac", rank_by(ac, "ac").rank_map()},
                                       {"ah", rank_by(ah, "ah").rank_map()}});
  const double rho = rep.spearman[1][0];
  o.pass = rho >= 0.0 && rho <= 1.0;
  o.detail = "synthetic Spearman(ac, ah) = " + format_fixed(rho, kCorrelationDecimals) +
             ", Kendall = " + format_fixed(rep.kendall[1][0], kCorrelationDecimals) +
             "; published absolute values and correlations come from a private 2012 "
             "bibliographic snapshot and are not reproducible here";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"department aac consistency", department_aac},
      {"credit normalization", credit_normalization},
      {"self-citation exclusion oracle", self_citation_exclusion},
      {"ah brute-force equivalence", ah_equivalence},
      {"rank correlation oracles", correlation_oracles},
      {"pipeline conservation and determinism", pipeline_conservation},
      {"synthetic end-to-end correlation", synthetic_spearman},
  };
  int failures = 0;
  int number = 0;
  for (const auto& [name, check] : criteria) {
    ++number;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %d. %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", number, name,
                seconds_since(t0), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", number - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
