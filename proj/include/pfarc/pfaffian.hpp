#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pfarc/ring.hpp"

namespace pfarc {

/// Row set of a diagonal minor, strictly increasing, even length (possibly 0).
class MinorSpec {
 public:
  MinorSpec() = default;
  /// Throws std::invalid_argument on odd length or non-increasing rows.
  explicit MinorSpec(std::vector<int> ascending_rows);

  const std::vector<int>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<int> rows_;
};

struct Matching {
  int sign = 1;
  std::vector<std::pair<int, int>> pairs;  // first < second, row values
};

/// Perfect matchings of the ascending row list, smallest unmatched row paired
/// first. The sign is that of the permutation (1..h) -> concatenated pairs.
std::vector<Matching> perfect_matchings(std::span<const int> ascending_rows);

/// Pfaffian of the generic skew minor on the given rows (1 for the empty minor).
Poly pfaffian(int p, const MinorSpec& m);

/// n-th normalized derivative of the Pfaffian, expanded directly as a sum over
/// matchings and weight compositions of n over the matched pairs.
Poly pfaffian_derivative(int p, const MinorSpec& m, int n);

/// Value of dbar^n |u_h, ..., u_1| for rows listed in display order (largest
/// first when canonical). Zero on repeated rows; otherwise the sign of the
/// sorting permutation times the canonical Pfaffian derivative.
Poly jseq_value(int p, std::span<const int> display_rows, int n);

}  // namespace pfarc
