#pragma once

// Institutional indices over a corpus:
//   ac  - a-index-weighted citations with self-citations excluded
//   aac - ac per distinct institution author
//   ah  - h-style statistic over per-paper ac contributions
//   aj  - a-index credit weighted by journal impact factor
//
// A citation from paper Q to paper P contributes, for author a of P,
//   sum over b in authors(Q), b != a, of credit(a, P) * credit(b, Q)
// which equals credit(a, P) * (1 - credit(a, Q)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "axrank/corpus.hpp"
#include "axrank/credit.hpp"

namespace axrank {

/// Per-paper weighted citation totals; only strictly positive entries kept.
struct WeightedCitationList {
  std::map<std::string, double> per_paper;

  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(per_paper.size());
    for (const auto& [_, v] : per_paper) out.push_back(v);
    return out;
  }
};

struct AhResult {
  long long h_int = 0;
  double h_real = 0.0;

  friend bool operator==(const AhResult&, const AhResult&) = default;
};

struct InstitutionIndices {
  std::string institution_id;
  double ac = 0.0;
  double aac = 0.0;
  AhResult ah;
  double aj = 0.0;
  std::size_t n_authors = 0;
  std::size_t n_papers = 0;
};

struct IndexOptions {
  // Earliest publication year counted by aj.
  int year_min_aj = 1975;
};

namespace detail {

inline Corpus::PaperIndex require_paper(const Corpus& corpus, std::string_view id) {
  auto i = corpus.index_of(id);
  if (!i) throw std::invalid_argument("paper '" + std::string(id) + "' not in corpus");
  return *i;
}

inline bool slot_at(const AuthorSlot& slot, std::string_view inst) {
  return slot.institution_id && *slot.institution_id == inst;
}

// Weight one citing paper passes to the author in `slot` of the cited paper.
inline double edge_weight(const AuthorSlot& slot, double cited_share, const PaperRecord& citing,
                          const CreditVector& citing_cv) {
  double w = 0.0;
  for (std::size_t b = 0; b < citing.authors.size(); ++b) {
    if (citing.authors[b].author_id == slot.author_id) continue;
    w += cited_share * citing_cv[b];
  }
  return w;
}

// Sum of citation weight over the cited paper's slots selected by `take`.
template <class SlotFilter>
double paper_citations(const Corpus& corpus, Corpus::PaperIndex cited, SlotFilter take) {
  const PaperRecord& paper = corpus.paper(cited);
  const CreditVector cv = credit_vector(paper);
  double total = 0.0;
  for (std::size_t k = 0; k < paper.authors.size(); ++k) {
    const AuthorSlot& slot = paper.authors[k];
    if (!take(slot)) continue;
    for (auto q : corpus.citing(cited)) {
      const PaperRecord& citing = corpus.paper(q);
      total += edge_weight(slot, cv[k], citing, credit_vector(citing));
    }
  }
  return total;
}

}  // namespace detail

/// Weight of the citation `citing -> cited` credited to `author` of `cited`.
/// Throws std::invalid_argument if either paper is missing, `citing` does
/// not cite `cited`, or `author` is not on `cited`.
inline double citation_weight(const Corpus& corpus, std::string_view cited,
                              std::string_view citing, std::string_view author) {
  const auto p = detail::require_paper(corpus, cited);
  const auto q = detail::require_paper(corpus, citing);
  const auto& citers = corpus.citing(p);
  if (std::find(citers.begin(), citers.end(), q) == citers.end())
    throw std::invalid_argument("paper '" + std::string(citing) + "' does not cite '" +
                                std::string(cited) + "'");
  const PaperRecord& cited_paper = corpus.paper(p);
  const AuthorSlot* slot = cited_paper.find_author(author);
  if (!slot)
    throw std::invalid_argument("author '" + std::string(author) + "' not on paper '" +
                                std::string(cited) + "'");
  const CreditVector cv = credit_vector(cited_paper);
  const PaperRecord& citing_paper = corpus.paper(q);
  return detail::edge_weight(*slot, cv[static_cast<std::size_t>(slot->position - 1)],
                             citing_paper, credit_vector(citing_paper));
}

/// Self-citation-excluded citations credited to `author` for `paper`.
inline double author_paper_citations(const Corpus& corpus, std::string_view author,
                                     std::string_view paper) {
  const auto p = detail::require_paper(corpus, paper);
  if (!corpus.paper(p).find_author(author))
    throw std::invalid_argument("author '" + std::string(author) + "' not on paper '" +
                                std::string(paper) + "'");
  return detail::paper_citations(corpus, p,
                                 [&](const AuthorSlot& s) { return s.author_id == author; });
}

namespace detail {

inline double institution_paper_citations(const Corpus& corpus, std::string_view inst,
                                          Corpus::PaperIndex p) {
  return paper_citations(corpus, p, [&](const AuthorSlot& s) { return slot_at(s, inst); });
}

inline bool has_slot_at(const PaperRecord& paper, std::string_view inst) {
  return std::any_of(paper.authors.begin(), paper.authors.end(),
                     [&](const AuthorSlot& s) { return slot_at(s, inst); });
}

inline double journal_credit(const Corpus& corpus, const PaperRecord& paper,
                             std::string_view inst, const IndexOptions& opts,
                             std::size_t* missing_jif) {
  if (paper.venue.kind != VenueKind::journal || paper.year < opts.year_min_aj) return 0.0;
  if (!has_slot_at(paper, inst)) return 0.0;
  std::optional<double> jif;
  if (paper.venue.venue_id) jif = corpus.impact_factors().lookup(*paper.venue.venue_id, paper.year);
  if (!jif) {
    if (missing_jif) ++*missing_jif;
    return 0.0;
  }
  const CreditVector cv = credit_vector(paper);
  double credit = 0.0;
  for (std::size_t k = 0; k < paper.authors.size(); ++k)
    if (slot_at(paper.authors[k], inst)) credit += cv[k];
  return credit * *jif;
}

}  // namespace detail

/// Citations of `paper` credited to the slots affiliated with `inst`.
inline double institution_paper_citations(const Corpus& corpus, std::string_view inst,
                                          std::string_view paper) {
  return detail::institution_paper_citations(corpus, inst, detail::require_paper(corpus, paper));
}

/// Returns the ac-index of `inst` and the positive per-paper contributions
/// that feed the ah-index.
inline std::pair<double, WeightedCitationList> ac_index(const Corpus& corpus,
                                                        std::string_view inst) {
  double ac = 0.0;
  WeightedCitationList list;
  for (Corpus::PaperIndex p = 0; p < corpus.size(); ++p) {
    if (!detail::has_slot_at(corpus.paper(p), inst)) continue;
    const double c = detail::institution_paper_citations(corpus, inst, p);
    ac += c;
    if (c > 0.0) list.per_paper.emplace(corpus.paper(p).paper_id, c);
  }
  return {ac, std::move(list)};
}

inline double aac_index(double ac, std::size_t n_authors) {
  return n_authors == 0 ? 0.0 : ac / static_cast<double>(n_authors);
}

/// Largest x such that at least floor(x) values are >= x, where a positive x
/// below 1 still needs one value >= x.
///
/// With v sorted descending and h the largest integer with v[h] >= h, the
/// answer is v[h] when v[h] < h + 1. Otherwise the feasible set is [h, h + 1)
/// and the result is the largest double below h + 1, which keeps
/// h_int == floor(h_real).
inline AhResult ah_from_values(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  for (double x : v)
    if (!std::isfinite(x) || x < 0.0)
      throw std::invalid_argument("ah values must be finite and non-negative");
  if (v.empty()) return {};
  std::sort(v.begin(), v.end(), std::greater<>());

  long long h = 0;
  while (static_cast<std::size_t>(h) < v.size() &&
         v[static_cast<std::size_t>(h)] >= static_cast<double>(h + 1))
    ++h;

  if (h == 0) return {0, v.front()};
  const double top = v[static_cast<std::size_t>(h - 1)];
  const double next = static_cast<double>(h + 1);
  return {h, top < next ? top : std::nextafter(next, 0.0)};
}

inline AhResult ah_index(const Corpus& corpus, std::string_view inst) {
  const auto values = ac_index(corpus, inst).second.values();
  return ah_from_values(values);
}

/// Impact-factor-weighted credit of `inst` over journal papers from
/// `opts.year_min_aj` on. Papers without a table entry add nothing and are
/// counted in `*missing_jif` when given.
inline double aj_index(const Corpus& corpus, std::string_view inst, const IndexOptions& opts = {},
                       std::size_t* missing_jif = nullptr) {
  double aj = 0.0;
  for (const auto& paper : corpus.papers())
    aj += detail::journal_credit(corpus, paper, inst, opts, missing_jif);
  return aj;
}

/// Indices for every institution with at least one author. Per-institution
/// values are bit-identical to the single-institution functions above.
/// `*missing_jif` counts journal papers lacking an impact factor, once each.
inline std::map<std::string, InstitutionIndices> compute_all(const Corpus& corpus,
                                                             const IndexOptions& opts = {},
                                                             std::size_t* missing_jif = nullptr) {
  struct Accum {
    double ac = 0.0;
    double aj = 0.0;
    std::vector<double> positive;
    std::size_t n_papers = 0;
  };
  std::map<std::string, Accum> acc;
  for (const auto& [inst, _] : corpus.institutions()) acc.emplace(inst, Accum{});

  std::set<std::string_view> insts;
  for (Corpus::PaperIndex p = 0; p < corpus.size(); ++p) {
    const PaperRecord& paper = corpus.paper(p);
    insts.clear();
    for (const auto& slot : paper.authors)
      if (slot.institution_id) insts.insert(*slot.institution_id);
    std::size_t paper_missing = 0;
    for (auto inst : insts) {
      Accum& a = acc.at(std::string(inst));
      const double c = detail::institution_paper_citations(corpus, inst, p);
      a.ac += c;
      if (c > 0.0) a.positive.push_back(c);
      a.aj += detail::journal_credit(corpus, paper, inst, opts, &paper_missing);
      ++a.n_papers;
    }
    if (missing_jif && paper_missing > 0) ++*missing_jif;
  }

  std::map<std::string, InstitutionIndices> out;
  for (auto& [inst, a] : acc) {
    InstitutionIndices r;
    r.institution_id = inst;
    r.ac = a.ac;
    r.n_authors = corpus.institutions().at(inst).size();
    r.aac = aac_index(a.ac, r.n_authors);
    r.ah = ah_from_values(a.positive);
    r.aj = a.aj;
    r.n_papers = a.n_papers;
    out.emplace(inst, std::move(r));
  }
  return out;
}

}  // namespace axrank
