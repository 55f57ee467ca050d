#include "pfarc/order.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pfarc {

JSeq::JSeq(std::vector<int> display_rows, int weight) : rows_(std::move(display_rows)), weight_(weight) {
  if (rows_.size() % 2 != 0) throw std::invalid_argument("Pfaffian sequence must have even size");
  if (weight_ < 0) throw std::invalid_argument("Pfaffian sequence weight must be non-negative");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 1) throw std::invalid_argument("rows are 1-based");
    if (i > 0 && rows_[i - 1] <= rows_[i]) throw std::invalid_argument("rows must be strictly decreasing in display order");
  }
}

JSeq JSeq::from_rows(std::vector<int> rows, int weight) {
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return JSeq(std::move(rows), weight);
}

bool pair_le(const EPair& a, const EPair& b) { return a.k < b.k || (a.k == b.k && a.u <= b.u); }
bool pair_less(const EPair& a, const EPair& b) { return a.k < b.k || (a.k == b.k && a.u < b.u); }

ESeq::ESeq(std::vector<EPair> display_pairs) : pairs_(std::move(display_pairs)) {
  if (pairs_.size() % 2 != 0) throw std::invalid_argument("decorated sequence must have even length");
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].u < 1 || pairs_[i].k < 0) throw std::invalid_argument("decorated sequence entry out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (pairs_[j].u == pairs_[i].u) throw std::invalid_argument("decorated sequence rows must be distinct");
    }
  }
}

int ESeq::weight() const {
  int w = 0;
  for (const auto& pr : pairs_) w += pr.k;
  return w;
}

ESeq ESeq::truncated(int s) const {
  if (s < 0 || s > size()) throw std::out_of_range("truncation length out of range");
  ESeq r;
  r.pairs_.assign(pairs_.end() - s, pairs_.end());
  return r;
}

JSeq norm(const ESeq& e) {
  std::vector<int> rows;
  rows.reserve(e.pairs().size());
  for (const auto& pr : e.pairs()) rows.push_back(pr.u);
  return JSeq::from_rows(std::move(rows), e.weight());
}

bool j_prec(const JSeq& a, const JSeq& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  return std::lexicographical_compare(a.rows().begin(), a.rows().end(), b.rows().begin(), b.rows().end());
}

bool e_partial_le(const ESeq& a, const ESeq& b) {
  if (b.size() > a.size()) return false;
  for (int i = 1; i <= b.size(); ++i) {
    if (!pair_le(a.at(i), b.at(i))) return false;
  }
  return true;
}

bool e_total_prec(const ESeq& a, const ESeq& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  return std::lexicographical_compare(a.pairs().begin(), a.pairs().end(), b.pairs().begin(), b.pairs().end(),
                                      pair_less);
}

std::vector<ESeq> enumerate_E(const JSeq& j) {
  const std::size_t h = j.rows().size();
  if (h == 0) {
    if (j.weight() == 0) return {ESeq{}};
    return {};
  }
  std::vector<int> perm(j.rows().rbegin(), j.rows().rend());  // position order, ascending

  std::vector<std::vector<int>> compositions;
  std::vector<int> parts(h, 0);
  auto build = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == h) {
      parts[pos] = left;
      compositions.push_back(parts);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  build(build, 0, j.weight());

  std::vector<ESeq> out;
  do {
    for (const auto& comp : compositions) {
      std::vector<EPair> display(h);
      for (std::size_t pos = 0; pos < h; ++pos) display[h - 1 - pos] = EPair{perm[pos], comp[pos]};
      out.emplace_back(std::move(display));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

int shift_invariant(const ESeq& e, const JSeq& j) {
  const int hp = j.size();
  if (hp > e.size()) throw std::invalid_argument("shift invariant needs sz(J) <= sz(E)");
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(hp));
  for (int i = 1; i <= hp; ++i) v.push_back(e.at(i).u);
  std::sort(v.begin(), v.end());
  for (int shift = 0; shift < hp; ++shift) {
    bool ok = true;
    for (int i = shift + 1; i <= hp && ok; ++i) ok = j.row(i) >= v[static_cast<std::size_t>(i - shift - 1)];
    if (ok) return shift;
  }
  return hp;
}

bool is_greater(const JSeq& j, const ESeq& e) {
  if (j.size() > e.size()) throw std::invalid_argument("is_greater needs sz(J) <= sz(E)");
  if (j.size() == 0) return j.weight() == 0;
  return j.weight() - e.truncated(j.size()).weight() >= shift_invariant(e, j);
}

namespace {

// Least total weight an assignment of `rows` to the floor pairs can have while
// dominating every floor: each floor costs its weight, plus one when the row
// placed on it is smaller than the floor row. The number of floors that can
// take a row at least as large as their own is a sorted greedy matching.
int min_dominating_weight(std::vector<int> rows, const std::vector<EPair>& floors) {
  std::vector<int> floor_rows;
  int base = 0;
  for (const auto& f : floors) {
    floor_rows.push_back(f.u);
    base += f.k;
  }
  std::sort(rows.begin(), rows.end());
  std::sort(floor_rows.begin(), floor_rows.end());
  std::size_t matched = 0;
  for (int r : rows) {
    if (matched < floor_rows.size() && r >= floor_rows[matched]) ++matched;
  }
  return base + static_cast<int>(floors.size() - matched);
}

}  // namespace

std::optional<ESeq> largest_dominating(const ESeq& e, const JSeq& j) {
  if (j.size() > e.size()) throw std::invalid_argument("largest_dominating needs sz(J) <= sz(E)");
  if (!is_greater(j, e)) return std::nullopt;

  std::vector<int> remaining = j.rows();  // decreasing
  int weight_left = j.weight();
  std::vector<EPair> chosen;
  chosen.reserve(remaining.size());

  for (int pos = j.size(); pos >= 1; --pos) {
    const EPair& floor = e.at(pos);
    std::vector<EPair> rest_floors;
    for (int i = 1; i < pos; ++i) rest_floors.push_back(e.at(i));
    bool placed = false;
    for (int k = weight_left; k >= floor.k && !placed; --k) {
      for (std::size_t idx = 0; idx < remaining.size() && !placed; ++idx) {
        const int u = remaining[idx];
        if (k == floor.k && u < floor.u) continue;
        std::vector<int> rest_rows;
        rest_rows.reserve(remaining.size() - 1);
        for (std::size_t t = 0; t < remaining.size(); ++t) {
          if (t != idx) rest_rows.push_back(remaining[t]);
        }
        if (min_dominating_weight(rest_rows, rest_floors) > weight_left - k) continue;
        chosen.push_back({u, k});
        remaining = std::move(rest_rows);
        weight_left -= k;
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  return ESeq(std::move(chosen));
}

std::optional<ESeq> max_lift(const JSeq& j) {
  if (j.size() == 0) {
    if (j.weight() == 0) return ESeq{};
    return std::nullopt;
  }
  std::vector<EPair> pairs;
  pairs.reserve(j.rows().size());
  for (std::size_t i = 0; i < j.rows().size(); ++i) pairs.push_back({j.rows()[i], i == 0 ? j.weight() : 0});
  return ESeq(std::move(pairs));
}

std::string to_string(const JSeq& j) {
  std::ostringstream os;
  os << "d^" << j.weight() << '|';
  for (std::size_t i = 0; i < j.rows().size(); ++i) os << (i ? "," : "") << j.rows()[i];
  os << '|';
  return os.str();
}

std::string to_string(const ESeq& e) {
  std::ostringstream os;
  os << '|';
  for (std::size_t i = 0; i < e.pairs().size(); ++i) {
    os << (i ? "," : "") << '(' << e.pairs()[i].u << ',' << e.pairs()[i].k << ')';
  }
  os << '|';
  return os.str();
}

}  // namespace pfarc
