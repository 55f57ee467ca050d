#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "pfarc/pfaffian.hpp"
#include "pfarc/standard.hpp"

using namespace pfarc;

namespace {

ESeq E(std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<EPair> v;
  for (auto [u, k] : pairs) v.push_back({u, k});
  return ESeq(std::move(v));
}

JSeq J(std::vector<int> rows, int n) { return JSeq(std::move(rows), n); }

// Number of lifts E_1..E_m of js meeting the three clauses of standardness,
// searched over every lift at every position.
int standard_lift_count(const std::vector<JSeq>& js, std::vector<ESeq>* found) {
  int count = 0;
  std::vector<ESeq> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (a == js.size()) {
      ++count;
      if (found) *found = cur;
      return;
    }
    const auto lifts = oracle::lifts(js[a].rows(), js[a].weight());
    for (const ESeq& cand : lifts) {
      if (a == 0) {
        bool is_max = true;
        for (const ESeq& other : lifts) is_max = is_max && !oracle::e_prec(cand, other);
        if (!is_max) continue;
      } else {
        if (!oracle::e_le(cur.back(), cand)) continue;
        bool is_max = true;
        for (const ESeq& other : lifts) {
          if (oracle::e_le(cur.back(), other) && oracle::e_prec(cand, other)) is_max = false;
        }
        if (!is_max) continue;
      }
      cur.push_back(cand);
      rec(a + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return count;
}

// Every ordered product of factors of size 2..h on rows 1..p with x-degree d
// and weight w.
std::vector<std::vector<JSeq>> ordered_products(int p, int h, int d, int w) {
  std::vector<JSeq> factors;
  for (int s = 2; s <= std::min(h, p); s += 2) {
    for (int k = 0; k <= w; ++k) {
      for (auto& j : oracle::all_j(p, s, k)) factors.push_back(std::move(j));
    }
  }
  std::vector<std::vector<JSeq>> out;
  std::vector<JSeq> cur;
  std::function<void(int, int)> rec = [&](int rd, int rw) {
    if (rd == 0) {
      if (rw == 0) out.push_back(cur);
      return;
    }
    for (const auto& f : factors) {
      if (f.size() / 2 > rd || f.weight() > rw) continue;
      cur.push_back(f);
      rec(rd - f.size() / 2, rw - f.weight());
      cur.pop_back();
    }
  };
  rec(d, w);
  return out;
}

}  // namespace

TEST_CASE("canonical lift examples") {
  auto a = canonical_lift({J({2, 1}, 0), J({2, 1}, 1)});
  REQUIRE(a);
  CHECK(*a == std::vector<ESeq>{E({{2, 0}, {1, 0}}), E({{2, 1}, {1, 0}})});
  CHECK(!canonical_lift({J({2, 1}, 1), J({2, 1}, 0)}));
  auto c = canonical_lift({J({2, 1}, 3)});
  REQUIRE(c);
  CHECK(*c == std::vector<ESeq>{E({{2, 3}, {1, 0}})});
}

TEST_CASE("standardness examples") {
  CHECK(is_standard({J({2, 1}, 0), J({2, 1}, 0)}));
  CHECK(is_standard({J({4, 3, 2, 1}, 0), J({2, 1}, 0)}));
  CHECK(!is_standard({J({2, 1}, 0), J({4, 3, 2, 1}, 0)}));
}

TEST_CASE("enumeration examples") {
  auto one = enumerate_standard(2, 2, 1, 0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].js == std::vector<JSeq>{J({2, 1}, 0)});
  auto two = enumerate_standard(2, 2, 2, 1);
  REQUIRE(two.size() == 1);
  CHECK(two[0].js == std::vector<JSeq>{J({2, 1}, 0), J({2, 1}, 1)});
  auto three = enumerate_standard(3, 2, 1, 0);
  REQUIRE(three.size() == 3);
  std::set<std::vector<int>> rows;
  for (const auto& sp : three) rows.insert(sp.js.at(0).rows());
  CHECK(rows == std::set<std::vector<int>>{{2, 1}, {3, 1}, {3, 2}});
  auto empty = enumerate_standard(3, 2, 0, 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].js.empty());
  CHECK(enumerate_standard(3, 2, 0, 1).empty());
  CHECK(enumerate_standard(2, 0, 1, 0).empty());
}

TEST_CASE("standardness agrees with exhaustive lift search; lifts are unique") {
  for (int p = 2; p <= 4; ++p) {
    for (int h = 2; h <= 4; h += 2) {
      for (int d = 1; d <= 3; ++d) {
        for (int w = 0; w <= 3; ++w) {
          std::set<std::vector<std::vector<int>>> standard_keys;
          std::vector<std::vector<JSeq>> expected;
          for (const auto& js : ordered_products(p, h, d, w)) {
            std::vector<ESeq> lift;
            const int n = standard_lift_count(js, &lift);
            CHECK(n <= 1);
            CHECK(is_standard(js) == (n == 1));
            if (n == 1) {
              CHECK(canonical_lift(js) == lift);
              expected.push_back(js);
            }
          }
          const auto got = enumerate_standard(p, h, d, w);
          CHECK(got.size() == expected.size());
          CHECK(count_standard(p, h, d, w) == expected.size());
          std::set<std::vector<std::pair<std::vector<int>, int>>> a, b;
          for (const auto& js : expected) {
            std::vector<std::pair<std::vector<int>, int>> key;
            for (const auto& j : js) key.emplace_back(j.rows(), j.weight());
            a.insert(key);
          }
          for (const auto& sp : got) {
            std::vector<std::pair<std::vector<int>, int>> key;
            for (const auto& j : sp.js) key.emplace_back(j.rows(), j.weight());
            b.insert(key);
            CHECK(sp.degree() == d);
            CHECK(sp.weight() == w);
            CHECK(canonical_lift(sp.js) == sp.es);
            for (std::size_t t = 0; t + 1 < sp.js.size(); ++t) {
              CHECK((sp.js[t] == sp.js[t + 1] || j_prec(sp.js[t], sp.js[t + 1])));
            }
          }
          CHECK(a == b);
          CHECK(b.size() == got.size());  // the map to J-products is injective
        }
      }
    }
  }
}

TEST_CASE("weight-zero counts match the classical enumerator") {
  for (int p = 2; p <= 5; ++p) {
    for (int h = 0; h <= 4; h += 2) {
      for (int d = 0; d <= 3; ++d) {
        CHECK(count_standard(p, h, d, 0) == oracle::classical_count(p, h, d));
      }
    }
  }
}

TEST_CASE("memoized count equals enumeration size") {
  for (int p = 2; p <= 5; ++p) {
    for (int h = 0; h <= 4; h += 2) {
      for (int d = 0; d <= 3; ++d) {
        for (int w = 0; w <= 3; ++w) {
          CHECK(count_standard(p, h, d, w) == enumerate_standard(p, h, d, w).size());
        }
      }
    }
  }
}

TEST_CASE("factor values") {
  const int p = 4;
  FactorValues fv(p);
  const std::vector<JSeq> js{J({4, 3, 2, 1}, 1), J({3, 1}, 0), J({3, 1}, 2)};
  Poly expected = Poly::constant(Alphabet::x_ring(p), 1);
  for (const auto& j : js) expected = expected * jseq_value(p, j.rows(), j.weight());
  CHECK(evaluate(p, js) == expected);
  CHECK(fv.product(js) == expected);
  CHECK(fv.value(js[1]) == -jseq_value(p, std::vector<int>{1, 3}, 0));
}

TEST_CASE("printing") {
  const auto sps = enumerate_standard(2, 2, 2, 1);
  REQUIRE(sps.size() == 1);
  CHECK(!to_string(sps[0]).empty());
}
