#include "pfarc/pfaffian.hpp"

#include <stdexcept>
#include <string>

namespace pfarc {

MinorSpec::MinorSpec(std::vector<int> ascending_rows) : rows_(std::move(ascending_rows)) {
  if (rows_.size() % 2 != 0) throw std::invalid_argument("minor must have an even number of rows");
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i - 1] >= rows_[i]) throw std::invalid_argument("minor rows must be strictly increasing");
  }
}

namespace {

void collect_matchings(std::vector<int>& remaining, Matching& current, std::vector<Matching>& out) {
  if (remaining.empty()) {
    out.push_back(current);
    return;
  }
  const int first = remaining.front();
  for (std::size_t j = 1; j < remaining.size(); ++j) {
    // Pairing the first remaining row with the j-th one moves that row over
    // j - 1 others: sign (-1)^(j-1).
    const int partner = remaining[j];
    std::vector<int> rest;
    rest.reserve(remaining.size() - 2);
    for (std::size_t t = 1; t < remaining.size(); ++t) {
      if (t != j) rest.push_back(remaining[t]);
    }
    const int saved = current.sign;
    if ((j - 1) % 2 == 1) current.sign = -current.sign;
    current.pairs.emplace_back(first, partner);
    collect_matchings(rest, current, out);
    current.pairs.pop_back();
    current.sign = saved;
  }
}

}  // namespace

std::vector<Matching> perfect_matchings(std::span<const int> ascending_rows) {
  std::vector<int> rows(ascending_rows.begin(), ascending_rows.end());
  std::vector<Matching> out;
  Matching current;
  collect_matchings(rows, current, out);
  return out;
}

Poly pfaffian(int p, const MinorSpec& m) { return pfaffian_derivative(p, m, 0); }

Poly pfaffian_derivative(int p, const MinorSpec& m, int n) {
  if (n < 0) throw std::invalid_argument("negative derivative order");
  const Alphabet alphabet = Alphabet::x_ring(p);
  for (int r : m.rows()) {
    if (r < 1 || r > p) throw std::out_of_range("minor row " + std::to_string(r) + " outside 1.." + std::to_string(p));
  }
  if (m.size() == 0) return n == 0 ? Poly::constant(alphabet, 1) : Poly(alphabet);

  const std::size_t half = m.size() / 2;
  std::vector<Poly::Term> terms;
  std::vector<int> parts(half, 0);
  for (const Matching& match : perfect_matchings(m.rows())) {
    // all compositions of n into `half` parts, odometer style
    std::fill(parts.begin(), parts.end(), 0);
    parts.back() = n;
    while (true) {
      std::vector<Factor> factors;
      factors.reserve(half);
      for (std::size_t t = 0; t < half; ++t) {
        factors.push_back({key_of(XGen{match.pairs[t].first, match.pairs[t].second, parts[t]}), 1});
      }
      terms.emplace_back(Monomial::from_factors(std::move(factors)), BigInt(match.sign));
      // next composition: find the rightmost position before the last with mass to its right
      std::size_t pos = half - 1;
      while (pos > 0 && parts[pos] == 0) --pos;
      if (pos == 0) break;
      const int tail = parts[pos];
      parts[pos] = 0;
      ++parts[pos - 1];
      parts.back() = tail - 1;
    }
  }
  return Poly(alphabet, std::move(terms));
}

Poly jseq_value(int p, std::span<const int> display_rows, int n) {
  if (display_rows.size() % 2 != 0) throw std::invalid_argument("Pfaffian sequence must have even length");
  std::vector<int> rows(display_rows.begin(), display_rows.end());
  // Sort into display order (strictly decreasing), counting transpositions.
  int sign = 1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t j = i; j > 0 && rows[j - 1] < rows[j]; --j) {
      std::swap(rows[j - 1], rows[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i - 1] == rows[i]) return Poly(Alphabet::x_ring(p));
  }
  std::reverse(rows.begin(), rows.end());
  Poly value = pfaffian_derivative(p, MinorSpec(std::move(rows)), n);
  return sign > 0 ? value : -value;
}

}  // namespace pfarc
