#pragma once

// Axiomatic co-author credit shares (the a-index).
//
// Plain ordering, k-th of n authors:
//   c_k = (1/n) * sum_{j=k..n} 1/j
// Last author is the corresponding author (n >= 2):
//   c_1 = c_n = (1/(n-1)) * sum_{j=1..n-1} 1/(j+1)
//   c_k       = (1/(n-1)) * sum_{j=k..n-1} 1/(j+1),  1 < k < n
//
// Both forms are tail sums of the harmonic series. They are accumulated from
// the smallest term upward in long double with Neumaier compensation, which
// keeps every share within a couple of ulps of its exact value.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "axrank/corpus.hpp"

namespace axrank {

enum class AuthorshipMode { plain, last_is_corresponding };

inline std::string_view to_string(AuthorshipMode mode) {
  return mode == AuthorshipMode::plain ? "plain" : "last_is_corresponding";
}

struct CreditVector {
  AuthorshipMode mode = AuthorshipMode::plain;
  std::vector<double> shares;  // shares[k - 1] is the k-th author's credit

  std::size_t size() const { return shares.size(); }
  double operator[](std::size_t i) const { return shares[i]; }
};

namespace detail {

class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (x >= 0 ? x : -x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

// tail[m] = sum_{j=m..n} 1/j for m = 1..n+1 (tail[n+1] = 0).
inline std::vector<long double> harmonic_tails(int n) {
  std::vector<long double> tail(static_cast<std::size_t>(n) + 2, 0.0L);
  CompensatedSum acc;
  for (int j = n; j >= 1; --j) {
    acc.add(1.0L / static_cast<long double>(j));
    tail[static_cast<std::size_t>(j)] = acc.value();
  }
  return tail;
}

inline void check_position(int k, int n) {
  if (n < 1) throw std::out_of_range("author count must be >= 1, got " + std::to_string(n));
  if (k < 1 || k > n)
    throw std::out_of_range("author position " + std::to_string(k) + " outside 1.." +
                            std::to_string(n));
}

}  // namespace detail

inline double credit_share_plain(int k, int n) {
  detail::check_position(k, n);
  detail::CompensatedSum acc;
  for (int j = n; j >= k; --j) acc.add(1.0L / static_cast<long double>(j));
  return static_cast<double>(acc.value() / static_cast<long double>(n));
}

inline double credit_share_corresponding(int k, int n) {
  if (n < 2)
    throw std::out_of_range("corresponding-author credit needs n >= 2, got " +
                            std::to_string(n));
  detail::check_position(k, n);
  // The last author takes the first author's share.
  const int from = k == n ? 1 : k;
  detail::CompensatedSum acc;
  for (int j = n - 1; j >= from; --j) acc.add(1.0L / static_cast<long double>(j + 1));
  return static_cast<double>(acc.value() / static_cast<long double>(n - 1));
}

/// Corresponding-author treatment applies only to a last author with an
/// email on a paper with at least two authors. Other email flags are ignored.
inline AuthorshipMode detect_mode(const PaperRecord& paper) {
  if (paper.authors.size() >= 2 && paper.authors.back().has_email)
    return AuthorshipMode::last_is_corresponding;
  return AuthorshipMode::plain;
}

inline CreditVector credit_vector(int n, AuthorshipMode mode) {
  if (n < 1) throw std::out_of_range("author count must be >= 1, got " + std::to_string(n));
  CreditVector cv;
  cv.mode = mode;
  cv.shares.resize(static_cast<std::size_t>(n));
  const auto tail = detail::harmonic_tails(n);
  if (mode == AuthorshipMode::plain) {
    for (int k = 1; k <= n; ++k)
      cv.shares[k - 1] = static_cast<double>(tail[k] / static_cast<long double>(n));
    return cv;
  }
  if (n < 2)
    throw std::out_of_range("corresponding-author credit needs n >= 2, got " +
                            std::to_string(n));
  // sum_{j=k..n-1} 1/(j+1) = tail[k + 1]
  for (int k = 1; k < n; ++k)
    cv.shares[k - 1] = static_cast<double>(tail[k + 1] / static_cast<long double>(n - 1));
  cv.shares[n - 1] = cv.shares[0];
  return cv;
}

inline CreditVector credit_vector(const PaperRecord& paper) {
  return credit_vector(static_cast<int>(paper.authors.size()), detect_mode(paper));
}

/// Credit of `author_id` on `paper` under `cv`; 0 when the author is absent.
inline double credit_of(const PaperRecord& paper, const CreditVector& cv,
                        std::string_view author_id) {
  const AuthorSlot* slot = paper.find_author(author_id);
  return slot ? cv.shares[static_cast<std::size_t>(slot->position - 1)] : 0.0;
}

}  // namespace axrank
