#include "pfarc/echelon.hpp"

#include <stdexcept>

namespace pfarc {

SparseVec combine(const BigInt& a, const SparseVec& x, const BigInt& b, const SparseVec& y) {
  SparseVec out;
  out.reserve(x.size() + y.size());
  auto ix = x.begin();
  auto iy = y.begin();
  while (ix != x.end() || iy != y.end()) {
    if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
      if (a != 0) out.emplace_back(ix->first, a * ix->second);
      ++ix;
    } else if (ix == x.end() || iy->first < ix->first) {
      if (b != 0) out.emplace_back(iy->first, b * iy->second);
      ++iy;
    } else {
      BigInt v = a * ix->second + b * iy->second;
      if (v != 0) out.emplace_back(ix->first, std::move(v));
      ++ix;
      ++iy;
    }
  }
  return out;
}

IntegerEchelon::InsertResult IntegerEchelon::insert(SparseVec vec, SparseVec tag) {
  while (!vec.empty()) {
    const std::uint32_t col = vec.front().first;
    if (col >= pivots_.size()) throw std::out_of_range("vector column outside the echelon");
    auto& slot = pivots_[col];
    if (!slot) {
      if (vec.front().second < 0) {
        vec = combine(-1, vec, 0, {});
        tag = combine(-1, tag, 0, {});
      }
      slot = Row{std::move(vec), std::move(tag)};
      ++rank_;
      return {true, {}};
    }
    const BigInt a = slot->vec.front().second;
    const BigInt b = vec.front().second;
    if (b % a == 0) {
      const BigInt q = b / a;
      vec = combine(1, vec, -q, slot->vec);
      if (!tag.empty() || !slot->tag.empty()) tag = combine(1, tag, -q, slot->tag);
      continue;
    }
    // Replace the pivot by the gcd combination; the determinant of
    // [[s, t], [b/g, -a/g]] is -1, so the lattice is unchanged.
    BigInt s, t;
    const BigInt g = ext_gcd(a, b, s, t);
    Row fresh{combine(s, slot->vec, t, vec), combine(s, slot->tag, t, tag)};
    SparseVec rest = combine(b / g, slot->vec, -(a / g), vec);
    SparseVec rest_tag = combine(b / g, slot->tag, -(a / g), tag);
    slot = std::move(fresh);
    vec = std::move(rest);
    tag = std::move(rest_tag);
  }
  return {false, std::move(tag)};
}

IntegerEchelon::Reduction IntegerEchelon::reduce(SparseVec vec) const {
  Reduction r;
  while (!vec.empty()) {
    const std::uint32_t col = vec.front().first;
    if (col >= pivots_.size() || !pivots_[col]) {
      r.residual = std::move(vec);
      return r;
    }
    const Row& row = *pivots_[col];
    const BigInt& a = row.vec.front().second;
    const BigInt& b = vec.front().second;
    if (b % a != 0) {
      r.residual = std::move(vec);
      return r;
    }
    const BigInt q = b / a;
    vec = combine(1, vec, -q, row.vec);
    if (!row.tag.empty()) r.tag = combine(1, r.tag, q, row.tag);
  }
  r.in_lattice = true;
  return r;
}

bool IntegerEchelon::in_rational_span(SparseVec vec) const {
  while (!vec.empty()) {
    const std::uint32_t col = vec.front().first;
    if (col >= pivots_.size() || !pivots_[col]) return false;
    const Row& row = *pivots_[col];
    const BigInt& a = row.vec.front().second;
    const BigInt& b = vec.front().second;
    const BigInt g = boost::multiprecision::gcd(a, b);
    vec = combine(a / g, vec, -(b / g), row.vec);
    if (vec.empty()) break;
    BigInt content = 0;
    for (const auto& e : vec) {
      content = boost::multiprecision::gcd(content, e.second);
      if (content == 1) break;
    }
    if (content > 1) {
      for (auto& e : vec) e.second /= content;
    }
  }
  return true;
}

BigInt IntegerEchelon::pivot_product() const {
  BigInt prod = 1;
  for (const auto& slot : pivots_) {
    if (slot) prod *= slot->vec.front().second;
  }
  return prod;
}

bool IntegerEchelon::spans_full_lattice() const {
  if (rank_ != pivots_.size()) return false;
  for (const auto& slot : pivots_) {
    if (slot->vec.front().second != 1) return false;
  }
  return true;
}

std::optional<std::uint32_t> IntegerEchelon::first_missing_pivot() const {
  for (std::size_t c = 0; c < pivots_.size(); ++c) {
    if (!pivots_[c] || pivots_[c]->vec.front().second != 1) return static_cast<std::uint32_t>(c);
  }
  return std::nullopt;
}

}  // namespace pfarc
