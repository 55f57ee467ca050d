#include "pfarc/standard.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "pfarc/pfaffian.hpp"

namespace pfarc {

int StandardProduct::degree() const {
  int d = 0;
  for (const auto& j : js) d += j.size() / 2;
  return d;
}

int StandardProduct::weight() const {
  int w = 0;
  for (const auto& j : js) w += j.weight();
  return w;
}

std::optional<std::vector<ESeq>> canonical_lift(const std::vector<JSeq>& js) {
  std::vector<ESeq> es;
  es.reserve(js.size());
  for (const JSeq& j : js) {
    std::optional<ESeq> next;
    if (es.empty()) {
      next = max_lift(j);
    } else if (j.size() <= es.back().size()) {
      next = largest_dominating(es.back(), j);
    }
    if (!next) return std::nullopt;
    es.push_back(std::move(*next));
  }
  return es;
}

bool is_standard(const std::vector<JSeq>& js) { return canonical_lift(js).has_value(); }

std::vector<JSeq> candidate_factors(int p, int h_max, int max_weight) {
  std::vector<JSeq> out;
  for (int size = 2; size <= std::min(h_max, p); size += 2) {
    // subsets of {1..p} of the given size via a selection mask
    std::vector<bool> mask(static_cast<std::size_t>(p), false);
    std::fill(mask.begin(), mask.begin() + size, true);
    do {
      std::vector<int> rows;
      for (int r = p; r >= 1; --r) {
        if (mask[static_cast<std::size_t>(r - 1)]) rows.push_back(r);
      }
      for (int n = 0; n <= max_weight; ++n) out.emplace_back(rows, n);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  std::sort(out.begin(), out.end(), j_prec);
  return out;
}

namespace {

struct Enumerator {
  const std::vector<JSeq>& cands;
  std::vector<StandardProduct>* out = nullptr;
  StandardProduct current;

  std::optional<ESeq> extend(const std::optional<ESeq>& last, const JSeq& j) const {
    if (!last) return max_lift(j);
    if (j.size() > last->size()) return std::nullopt;
    return largest_dominating(*last, j);
  }

  void walk(std::size_t start, const std::optional<ESeq>& last, int rem_d, int rem_w) {
    if (rem_d == 0) {
      if (rem_w == 0) out->push_back(current);
      return;
    }
    for (std::size_t idx = start; idx < cands.size(); ++idx) {
      const JSeq& j = cands[idx];
      if (j.size() / 2 > rem_d || j.weight() > rem_w) continue;
      std::optional<ESeq> e = extend(last, j);
      if (!e) continue;
      current.js.push_back(j);
      current.es.push_back(*e);
      walk(idx, e, rem_d - j.size() / 2, rem_w - j.weight());
      current.js.pop_back();
      current.es.pop_back();
    }
  }
};

using CountKey = std::tuple<std::vector<std::pair<int, int>>, std::size_t, int, int>;

std::uint64_t count_walk(const std::vector<JSeq>& cands, std::size_t start, const std::optional<ESeq>& last,
                         int rem_d, int rem_w, std::map<CountKey, std::uint64_t>& memo) {
  if (rem_d == 0) return rem_w == 0 ? 1 : 0;
  CountKey key;
  if (last) {
    for (const auto& pr : last->pairs()) std::get<0>(key).emplace_back(pr.u, pr.k);
  }
  std::get<1>(key) = start;
  std::get<2>(key) = rem_d;
  std::get<3>(key) = rem_w;
  if (last) {
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  std::uint64_t total = 0;
  for (std::size_t idx = start; idx < cands.size(); ++idx) {
    const JSeq& j = cands[idx];
    if (j.size() / 2 > rem_d || j.weight() > rem_w) continue;
    std::optional<ESeq> e;
    if (!last) {
      e = max_lift(j);
    } else if (j.size() <= last->size()) {
      e = largest_dominating(*last, j);
    }
    if (!e) continue;
    total += count_walk(cands, idx, e, rem_d - j.size() / 2, rem_w - j.weight(), memo);
  }
  if (last) memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

std::vector<StandardProduct> enumerate_standard(int p, int h_max, int d, int w) {
  if (d < 0 || w < 0) return {};
  const std::vector<JSeq> cands = candidate_factors(p, h_max, w);
  std::vector<StandardProduct> out;
  Enumerator walker{cands, &out, {}};
  walker.walk(0, std::nullopt, d, w);
  return out;
}

std::uint64_t count_standard(int p, int h_max, int d, int w) {
  if (d < 0 || w < 0) return 0;
  const std::vector<JSeq> cands = candidate_factors(p, h_max, w);
  std::map<CountKey, std::uint64_t> memo;
  return count_walk(cands, 0, std::nullopt, d, w, memo);
}

Poly evaluate(int p, const std::vector<JSeq>& js) {
  FactorValues values(p);
  return values.product(js);
}

const Poly& FactorValues::value(const JSeq& j) {
  Key key{j.rows(), j.weight()};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    it = cache_.emplace(std::move(key), jseq_value(p_, j.rows(), j.weight())).first;
  }
  return it->second;
}

Poly FactorValues::product(const std::vector<JSeq>& js) {
  Poly r = Poly::constant(Alphabet::x_ring(p_), 1);
  for (const auto& j : js) r = r * value(j);
  return r;
}

std::string to_string(const StandardProduct& sp) {
  if (sp.js.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < sp.js.size(); ++i) os << (i ? " " : "") << to_string(sp.js[i]);
  return os.str();
}

}  // namespace pfarc
