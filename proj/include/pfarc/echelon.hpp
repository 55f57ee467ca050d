#pragma once

// Integer row echelon form of a lattice in Z^n, maintained incrementally with
// unimodular row operations (gcd steps when a pivot does not divide). Rows
// may carry a tag vector that undergoes the same operations, which turns the
// echelon into a solver: reducing a vector accumulates the tag combination
// of the rows used.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pfarc/bigint.hpp"

namespace pfarc {

/// Sparse integer vector: strictly increasing column indices, no zero entries.
using SparseVec = std::vector<std::pair<std::uint32_t, BigInt>>;

/// a*x + b*y
SparseVec combine(const BigInt& a, const SparseVec& x, const BigInt& b, const SparseVec& y);

class IntegerEchelon {
 public:
  explicit IntegerEchelon(std::size_t columns) : pivots_(columns) {}

  struct InsertResult {
    bool new_pivot = false;
    /// Tag left over when the vector reduced to zero; nonzero means the tagged
    /// rows satisfy a relation.
    SparseVec residual_tag;
  };

  InsertResult insert(SparseVec vec, SparseVec tag = {});

  struct Reduction {
    bool in_lattice = false;
    SparseVec residual;  // nonzero part that could not be cleared
    SparseVec tag;       // sum of quotient * row tag over the rows subtracted
  };

  /// Integer reduction: in_lattice iff vec is a Z-combination of the rows,
  /// in which case tag holds the combination of the row tags.
  Reduction reduce(SparseVec vec) const;

  /// True iff vec lies in the Q-span of the rows (fraction-free reduction).
  bool in_rational_span(SparseVec vec) const;

  std::size_t columns() const { return pivots_.size(); }
  std::size_t rank() const { return rank_; }
  /// |product of pivots|: the index of the lattice in its saturation when
  /// the pivots are on every column.
  BigInt pivot_product() const;
  /// rank == columns and every pivot is 1: the rows generate all of Z^n.
  bool spans_full_lattice() const;
  std::optional<std::uint32_t> first_missing_pivot() const;

 private:
  struct Row {
    SparseVec vec;
    SparseVec tag;
  };
  std::vector<std::optional<Row>> pivots_;
  std::size_t rank_ = 0;
};

}  // namespace pfarc
