#pragma once

// Pfaffian sequences J = dbar^n |u_h, ..., u_1| and decorated sequences
// E = |(u_h, k_h), ..., (u_1, k_1)| with their orders.
//
// Lists are stored in display order (leftmost entry first) and positions are
// counted from the right: position 1 is the last stored element. Use row(i)
// and at(i) for position access.

#include <optional>
#include <string>
#include <vector>

namespace pfarc {

/// A derived Pfaffian dbar^n |u_h, ..., u_1| with u_1 < ... < u_h.
class JSeq {
 public:
  JSeq() = default;
  /// `display_rows` must be strictly decreasing with even length.
  JSeq(std::vector<int> display_rows, int weight);
  /// Sorts arbitrary distinct rows into display order.
  static JSeq from_rows(std::vector<int> rows, int weight);

  const std::vector<int>& rows() const { return rows_; }
  int size() const { return static_cast<int>(rows_.size()); }
  int weight() const { return weight_; }
  /// Row at position i, 1 <= i <= size(); row(1) is the smallest.
  int row(int i) const { return rows_[rows_.size() - static_cast<std::size_t>(i)]; }

  friend bool operator==(const JSeq&, const JSeq&) = default;

 private:
  std::vector<int> rows_;
  int weight_ = 0;
};

struct EPair {
  int u = 0;
  int k = 0;
  friend bool operator==(const EPair&, const EPair&) = default;
};

/// Pair order: weight first, then row.
bool pair_le(const EPair& a, const EPair& b);
bool pair_less(const EPair& a, const EPair& b);

class ESeq {
 public:
  ESeq() = default;
  /// Rows must be pairwise distinct, weights >= 0, length even.
  explicit ESeq(std::vector<EPair> display_pairs);

  const std::vector<EPair>& pairs() const { return pairs_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  int weight() const;
  const EPair& at(int i) const { return pairs_[pairs_.size() - static_cast<std::size_t>(i)]; }
  /// E(s): the last s pairs (positions 1..s).
  ESeq truncated(int s) const;

  friend bool operator==(const ESeq&, const ESeq&) = default;

 private:
  std::vector<EPair> pairs_;
};

JSeq norm(const ESeq& e);

/// Strict total order on J: larger size first, then smaller weight, then the
/// row word compared lexicographically.
bool j_prec(const JSeq& a, const JSeq& b);

/// Partial order: sz(b) <= sz(a) and a.at(i) <= b.at(i) for i <= sz(b).
bool e_partial_le(const ESeq& a, const ESeq& b);

/// Strict total order on E: larger size first, smaller weight, then pair word.
bool e_total_prec(const ESeq& a, const ESeq& b);

/// All E with norm(E) == j: row permutations (lexicographic in position order)
/// times weight compositions (lexicographic in position order).
std::vector<ESeq> enumerate_E(const JSeq& j);

/// Smallest shift i0 >= 0 with j.row(i) >= v_{i-i0} for i0 < i <= sz(j), where
/// v is the ascending sort of the rows of e(sz(j)). Throws if sz(j) > sz(e).
int shift_invariant(const ESeq& e, const JSeq& j);

/// True iff some E' with norm(E') == j satisfies e <= E'. Decided by the
/// criterion wt(j) - wt(e(sz j)) >= shift_invariant(e, j).
bool is_greater(const JSeq& j, const ESeq& e);

/// Maximum under e_total_prec of {E' : norm(E') == j, e <= E'}, built greedily
/// position by position from the left; empty when no such E' exists.
std::optional<ESeq> largest_dominating(const ESeq& e, const JSeq& j);

/// The e_total_prec-maximum of enumerate_E(j): |(u_h, n), (u_{h-1}, 0), ...|.
std::optional<ESeq> max_lift(const JSeq& j);

std::string to_string(const JSeq& j);
std::string to_string(const ESeq& e);

}  // namespace pfarc
