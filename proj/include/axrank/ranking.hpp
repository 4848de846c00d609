#pragma once

// Ranking tables and rank correlation between ranking systems.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace axrank {

struct RankEntry {
  std::string institution_id;
  double value = 0.0;
  int rank = 1;           // competition rank: 1, 2, 2, 4
  double avg_rank = 1.0;  // tie-averaged rank: 1, 2.5, 2.5, 4
};

struct RankingTable {
  std::string index_name;
  std::vector<RankEntry> entries;  // descending value, ties by institution_id

  /// institution_id -> competition rank, the form consumed by align().
  std::map<std::string, double> rank_map() const {
    std::map<std::string, double> out;
    for (const auto& e : entries) out.emplace(e.institution_id, e.rank);
    return out;
  }
};

/// A published ranking; institutions it does not rank are simply absent.
struct ExternalRanking {
  std::string source_name;
  std::map<std::string, int> ranks;

  std::map<std::string, double> rank_map() const {
    return {ranks.begin(), ranks.end()};
  }
};

class RankingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tie-averaged ranks of `v`, rank 1 going to the smallest value.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    // positions i+1 .. j share their mean
    const double mean = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = mean;
    i = j;
  }
  return ranks;
}

/// Ranks institutions by descending value. Accepts any map-like range of
/// (institution_id, value) pairs; the result does not depend on its order.
template <class Values>
RankingTable rank_by(const Values& values, std::string index_name = {}) {
  RankingTable table;
  table.index_name = std::move(index_name);
  for (const auto& [id, value] : values) {
    if (!std::isfinite(static_cast<double>(value)))
      throw RankingError("non-finite value for '" + std::string(id) + "'");
    table.entries.push_back({std::string(id), static_cast<double>(value), 0, 0.0});
  }
  auto& e = table.entries;
  std::sort(e.begin(), e.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.institution_id < b.institution_id;
  });
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i].institution_id == e[i - 1].institution_id)
      throw RankingError("duplicate institution '" + e[i].institution_id + "'");
  for (std::size_t i = 0; i < e.size();) {
    std::size_t j = i + 1;
    while (j < e.size() && e[j].value == e[i].value) ++j;
    const double mean = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      e[t].rank = static_cast<int>(i) + 1;
      e[t].avg_rank = mean;
    }
    i = j;
  }
  return table;
}

struct AlignedRanks {
  std::vector<std::string> institutions;
  std::vector<double> a;
  std::vector<double> b;
};

/// Restricts two rank maps (lower is better) to their common institutions
/// and re-ranks each side 1..n within that set, averaging ties.
inline AlignedRanks align(const std::map<std::string, double>& ranks_a,
                          const std::map<std::string, double>& ranks_b) {
  AlignedRanks out;
  std::vector<double> raw_a;
  std::vector<double> raw_b;
  for (const auto& [id, r] : ranks_a) {
    auto it = ranks_b.find(id);
    if (it == ranks_b.end()) continue;
    out.institutions.push_back(id);
    raw_a.push_back(r);
    raw_b.push_back(it->second);
  }
  if (out.institutions.size() < 2)
    throw RankingError("rankings share " + std::to_string(out.institutions.size()) +
                       " institutions; need at least 2");
  out.a = average_ranks(raw_a);
  out.b = average_ranks(raw_b);
  return out;
}

namespace detail {

inline void check_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw RankingError("rank vectors differ in length");
  if (a.size() < 2) throw RankingError("need at least 2 observations");
}

// Number of tied pairs within runs of equal values in a sorted sequence.
template <class It, class Eq>
std::int64_t tied_pairs(It first, It last, Eq eq) {
  std::int64_t total = 0;
  while (first != last) {
    auto run_end = std::next(first);
    while (run_end != last && eq(*run_end, *first)) ++run_end;
    const auto len = static_cast<std::int64_t>(std::distance(first, run_end));
    total += len * (len - 1) / 2;
    first = run_end;
  }
  return total;
}

// Stable merge sort of `v` counting inversions (pairs i < j with v[i] > v[j]).
inline std::int64_t sort_counting_swaps(std::vector<double>& v) {
  std::vector<double> buf(v.size());
  std::int64_t swaps = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<std::int64_t>(mid - i);
          buf[k++] = v[j++];
        } else {
          buf[k++] = v[i++];
        }
      }
      while (i < mid) buf[k++] = v[i++];
      while (j < hi) buf[k++] = v[j++];
    }
    v.swap(buf);
  }
  return swaps;
}

}  // namespace detail

/// Spearman's rho: Pearson correlation of the tie-averaged ranks of `a` and
/// `b`. Inputs that already are tie-averaged ranks are used unchanged.
inline double spearman(std::span<const double> a, std::span<const double> b) {
  detail::check_pair(a, b);
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(ra.size());
  // Tie-averaged ranks over n items always have mean (n + 1) / 2.
  const double mean = 0.5 * (n + 1.0);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw RankingError("zero rank variance");
  const double rho = sab / std::sqrt(saa * sbb);
  return std::clamp(rho, -1.0, 1.0);
}

/// Kendall's tau-b via Knight's O(n log n) pair counting.
inline double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  detail::check_pair(a, b);
  const std::size_t n = a.size();
  std::vector<std::pair<double, double>> pairs(n);
  for (std::size_t i = 0; i < n; ++i) pairs[i] = {a[i], b[i]};
  std::sort(pairs.begin(), pairs.end());

  const std::int64_t n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t ties_a = detail::tied_pairs(
      pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.first == y.first; });
  const std::int64_t ties_ab = detail::tied_pairs(pairs.begin(), pairs.end(),
                                                  [](const auto& x, const auto& y) { return x == y; });

  std::vector<double> bs(n);
  for (std::size_t i = 0; i < n; ++i) bs[i] = pairs[i].second;
  const std::int64_t swaps = detail::sort_counting_swaps(bs);
  const std::int64_t ties_b =
      detail::tied_pairs(bs.begin(), bs.end(), [](double x, double y) { return x == y; });

  const std::int64_t denom_a = n0 - ties_a;
  const std::int64_t denom_b = n0 - ties_b;
  if (denom_a == 0 || denom_b == 0) throw RankingError("all values tied");
  // concordant - discordant
  const std::int64_t s = n0 - ties_a - ties_b + ties_ab - 2 * swaps;
  const double tau =
      static_cast<double>(s) /
      std::sqrt(static_cast<double>(denom_a) * static_cast<double>(denom_b));
  return std::clamp(tau, -1.0, 1.0);
}

struct CorrelationReport {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> spearman;
  std::vector<std::vector<double>> kendall;
  std::vector<std::vector<std::size_t>> n_common;
};

/// Pairwise Spearman and Kendall tau-b over the common institutions of each
/// pair of rankings. Throws RankingError naming the pair when two rankings
/// share fewer than two institutions.
inline CorrelationReport correlation_report(
    const std::vector<std::pair<std::string, std::map<std::string, double>>>& tables) {
  if (tables.size() < 2) throw RankingError("need at least 2 rankings to compare");
  const std::size_t m = tables.size();
  CorrelationReport rep;
  rep.spearman.assign(m, std::vector<double>(m, 1.0));
  rep.kendall.assign(m, std::vector<double>(m, 1.0));
  rep.n_common.assign(m, std::vector<std::size_t>(m, 0));
  for (const auto& [label, ranks] : tables) rep.labels.push_back(label);
  for (std::size_t i = 0; i < m; ++i) {
    rep.n_common[i][i] = tables[i].second.size();
    for (std::size_t j = i + 1; j < m; ++j) {
      AlignedRanks al;
      try {
        al = align(tables[i].second, tables[j].second);
      } catch (const RankingError& e) {
        throw RankingError("'" + tables[i].first + "' vs '" + tables[j].first + "': " + e.what());
      }
      double rho = 0.0, tau = 0.0;
      try {
        rho = spearman(al.a, al.b);
        tau = kendall_tau_b(al.a, al.b);
      } catch (const RankingError& e) {
        throw RankingError("'" + tables[i].first + "' vs '" + tables[j].first + "': " + e.what());
      }
      rep.spearman[i][j] = rep.spearman[j][i] = rho;
      rep.kendall[i][j] = rep.kendall[j][i] = tau;
      rep.n_common[i][j] = rep.n_common[j][i] = al.institutions.size();
    }
  }
  return rep;
}

}  // namespace axrank
