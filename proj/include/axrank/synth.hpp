#pragma once

// Seeded synthetic corpus generator. Output depends only on (params, seed):
// it draws from std::mt19937_64, whose sequence is fixed by the standard, and
// does its own range reduction instead of using the library distributions.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "axrank/corpus.hpp"

namespace axrank {

struct SynthParams {
  std::size_t n_papers = 200;
  std::size_t n_authors = 100;
  std::size_t n_institutions = 10;
  double mean_team_size = 3.0;
  // Probability that a reference is chosen among earlier papers sharing an
  // author. Every other reference goes to a paper with no shared author.
  double self_cite_rate = 0.1;
  std::pair<std::size_t, std::size_t> reference_count_range{0, 8};
  int first_year = 1970;
  int last_year = 2012;
  std::size_t n_journals = 20;
  std::size_t n_conferences = 20;
};

class SynthError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

class SeededDraws {
 public:
  explicit SeededDraws(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform on [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // Knuth's multiplication method; fine for the small means used here.
  std::size_t poisson(double mean) {
    const double limit = std::exp(-mean);
    std::size_t k = 0;
    double prod = unit();
    while (prod > limit) {
      ++k;
      prod *= unit();
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

inline std::string padded_id(const char* prefix, std::size_t value, int width) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, value);
  return buf;
}

inline bool share_author(const PaperRecord& a, const PaperRecord& b) {
  for (const auto& slot : a.authors)
    if (b.find_author(slot.author_id)) return true;
  return false;
}

}  // namespace detail

inline void check_synth_params(const SynthParams& p) {
  if (p.n_authors < 1 || p.n_institutions < 1)
    throw SynthError("author and institution counts must be >= 1");
  if (!(p.mean_team_size >= 1.0))
    throw SynthError("mean_team_size must be >= 1");
  if (p.mean_team_size > static_cast<double>(p.n_authors))
    throw SynthError("mean_team_size exceeds n_authors");
  if (!(p.self_cite_rate >= 0.0 && p.self_cite_rate <= 1.0))
    throw SynthError("self_cite_rate must lie in [0, 1]");
  if (p.reference_count_range.first > p.reference_count_range.second)
    throw SynthError("reference_count_range is inverted");
  if (p.first_year < kMinYear || p.last_year > kMaxYear || p.first_year > p.last_year)
    throw SynthError("year range must lie within [1000, 3000]");
  if (p.n_journals < 1 || p.n_conferences < 1)
    throw SynthError("venue counts must be >= 1");
}

/// Generates a corpus as serialized record lines. References only point to
/// earlier papers, so the citation graph is acyclic.
inline std::vector<std::string> gen_synthetic_corpus(const SynthParams& params,
                                                     std::uint64_t seed) {
  check_synth_params(params);
  detail::SeededDraws draws(seed);

  const int id_width = 6;
  std::vector<std::string> author_ids(params.n_authors);
  std::vector<std::size_t> home(params.n_authors);
  for (std::size_t a = 0; a < params.n_authors; ++a) {
    author_ids[a] = detail::padded_id("au", a, id_width);
    home[a] = draws.below(params.n_institutions);
  }

  std::vector<PaperRecord> papers;
  papers.reserve(params.n_papers);
  // author index -> papers listing that author, in generation order
  std::vector<std::vector<std::size_t>> by_author(params.n_authors);
  std::vector<std::string> lines;
  lines.reserve(params.n_papers);

  const auto year_span = static_cast<std::uint64_t>(params.last_year - params.first_year + 1);
  const auto [ref_lo, ref_hi] = params.reference_count_range;

  for (std::size_t i = 0; i < params.n_papers; ++i) {
    PaperRecord p;
    p.paper_id = detail::padded_id("p", i, id_width);
    p.title = "Synthetic paper " + std::to_string(i);
    // Years grow with the index so earlier papers tend to be older.
    const auto base = params.n_papers > 1 ? (i * year_span) / params.n_papers : 0;
    p.year = params.first_year + static_cast<int>(std::min<std::uint64_t>(
                                     year_span - 1, base + draws.below(2)));

    const double r = draws.unit();
    if (r < 0.45) {
      p.venue = {VenueKind::journal, detail::padded_id("J", draws.below(params.n_journals), 3)};
    } else if (r < 0.85) {
      p.venue = {VenueKind::conference,
                 detail::padded_id("C", draws.below(params.n_conferences), 3)};
    } else {
      p.venue = {VenueKind::unknown, std::nullopt};
    }

    const std::size_t team = std::min<std::size_t>(
        params.n_authors, 1 + draws.poisson(params.mean_team_size - 1.0));
    std::vector<std::size_t> members;
    std::set<std::size_t> taken;
    while (members.size() < team) {
      const auto a = draws.below(params.n_authors);
      if (taken.insert(a).second) members.push_back(a);
    }
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto a = members[k];
      AuthorSlot slot;
      slot.author_id = author_ids[a];
      slot.position = static_cast<int>(k) + 1;
      // Occasional visiting slot at a different institution.
      const auto inst = draws.chance(0.05) ? draws.below(params.n_institutions) : home[a];
      slot.institution_id = detail::padded_id("inst", inst, 3);
      const bool last = k + 1 == members.size();
      slot.has_email = draws.chance(last ? 0.5 : 0.1);
      p.authors.push_back(std::move(slot));
    }

    const std::size_t wanted = std::min<std::size_t>(
        i, ref_lo + static_cast<std::size_t>(draws.below(ref_hi - ref_lo + 1)));
    std::set<std::size_t> chosen;
    for (std::size_t r_i = 0; r_i < wanted; ++r_i) {
      std::optional<std::size_t> target;
      if (draws.chance(params.self_cite_rate)) {
        // Earlier paper of a randomly chosen co-author.
        const auto& own = by_author[members[draws.below(members.size())]];
        for (int attempt = 0; attempt < 8 && !own.empty() && !target; ++attempt) {
          const auto q = own[draws.below(own.size())];
          if (!chosen.contains(q)) target = q;
        }
      } else {
        for (int attempt = 0; attempt < 16 && !target; ++attempt) {
          const auto q = draws.below(i);
          if (!chosen.contains(q) && !detail::share_author(p, papers[q])) target = q;
        }
      }
      if (target) chosen.insert(*target);
    }
    for (auto q : chosen) p.references.push_back(papers[q].paper_id);

    validate_paper_record(p);
    lines.push_back(serialize_paper_record(p));
    for (auto a : members) by_author[a].push_back(i);
    papers.push_back(std::move(p));
  }
  return lines;
}

/// Impact factors for every synthetic journal and year, for use with
/// corpora from gen_synthetic_corpus with the same params.
inline ImpactFactorTable gen_synthetic_impact_factors(const SynthParams& params,
                                                      std::uint64_t seed) {
  check_synth_params(params);
  detail::SeededDraws draws(seed ^ 0x9e3779b97f4a7c15ULL);
  ImpactFactorTable table;
  for (std::size_t j = 0; j < params.n_journals; ++j) {
    const double base = 0.5 + 4.5 * draws.unit();
    for (int y = params.first_year; y <= params.last_year; ++y) {
      const double jif = std::round((base + 0.5 * draws.unit()) * 1000.0) / 1000.0;
      table.set(detail::padded_id("J", j, 3), y, jif);
    }
  }
  return table;
}

}  // namespace axrank
