#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pfarc/pfaffian.hpp"
#include "pfarc/quotient.hpp"

using namespace pfarc;

namespace {

JSeq J(std::vector<int> rows, int n) { return JSeq(std::move(rows), n); }

Poly value(int p, const JSeq& j) { return jseq_value(p, j.rows(), j.weight()); }

// Random integer combination of the monomials of a piece.
Poly random_element(std::mt19937& rng, const GradedPiece& piece, int terms) {
  std::uniform_int_distribution<std::size_t> pick(0, piece.dim() - 1);
  std::uniform_int_distribution<int> coef(-9, 9);
  SparseVec v;
  for (int t = 0; t < terms; ++t) {
    v = combine(1, v, coef(rng), SparseVec{{static_cast<std::uint32_t>(pick(rng)), BigInt(1)}});
  }
  return piece.to_poly(v);
}

}  // namespace

TEST_CASE("graded pieces list every monomial once") {
  for (int p = 2; p <= 5; ++p) {
    for (int d = 0; d <= 3; ++d) {
      for (int w = 0; w <= 3; ++w) {
        const GradedPiece piece(p, 2, d, w);
        CHECK(piece.dim() == oracle::monomial_count(p, d, w));
        for (std::size_t i = 0; i < piece.dim(); ++i) {
          CHECK(piece.basis()[i].degree() == d);
          CHECK(piece.basis()[i].weight() == w);
          CHECK(piece.index_of(piece.basis()[i]) == i);
          if (i > 0) CHECK(piece.basis()[i] < piece.basis()[i - 1]);
        }
      }
    }
  }
  CHECK(GradedPiece(4, 2, 2, 0).dim() == 21);
}

TEST_CASE("graded piece conversions") {
  const GradedPiece piece(3, 2, 2, 1);
  const Poly f = x_var(3, 1, 2, 0) * x_var(3, 1, 3, 1) - x_var(3, 2, 3, 1) * x_var(3, 2, 3, 0).scaled(4);
  CHECK(piece.to_poly(piece.to_vector(f)) == f);
  CHECK_THROWS_AS(piece.to_vector(x_var(3, 1, 2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(piece.to_vector(x_var(4, 1, 2, 0) * x_var(4, 1, 2, 1)), AlphabetMismatch);
}

TEST_CASE("ideal spanning sets") {
  const auto a = ideal_span(4, 4, 2, 0);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == pfaffian(4, MinorSpec(std::vector<int>{1, 2, 3, 4})));
  const auto b = ideal_span(4, 4, 2, 1);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == pfaffian_derivative(4, MinorSpec(std::vector<int>{1, 2, 3, 4}), 1));
  for (int d = 0; d <= 3; ++d) {
    for (int w = 0; w <= 3; ++w) CHECK(ideal_span(3, 4, d, w).empty());
  }
  for (const auto& f : ideal_span(5, 4, 3, 2)) CHECK(f.bidegree() == std::make_pair(3, 2));
}

TEST_CASE("exact rank") {
  const GradedPiece piece(4, 2, 2, 0);
  const Poly f = x_var(4, 1, 2, 0) * x_var(4, 3, 4, 0) - x_var(4, 1, 3, 0) * x_var(4, 2, 4, 0);
  CHECK(exact_rank({f, f.scaled(2)}, piece) == 1);
  CHECK(exact_rank({}, piece) == 0);
  CHECK(exact_rank(ideal_span(4, 4, 2, 0), piece) == 1);
  CHECK_THROWS_AS(exact_rank({x_var(4, 1, 2, 0)}, piece), std::invalid_argument);
}

TEST_CASE("ideal ranks agree with rational elimination") {
  for (int p = 2; p <= 5; ++p) {
    for (int h = 2; h <= 4; h += 2) {
      for (int d = 1; d <= 3; ++d) {
        for (int w = 0; w <= 2; ++w) {
          const GradedPiece piece(p, h, d, w);
          if (piece.dim() > 400) continue;
          const auto span = ideal_span(p, h, d, w);
          CHECK(exact_rank(span, piece) == oracle::rational_rank(span));
        }
      }
    }
  }
}

TEST_CASE("certificate examples") {
  for (int d = 0; d <= 3; ++d) {
    for (int w = 0; w <= 3; ++w) {
      const auto c = verify_standard_basis(2, 2, d, w);
      CHECK(c.pass);
      CHECK(c.rank_ideal == 0);
      CHECK(c.n_standard == c.dim_ambient);
    }
  }
  const auto c = verify_standard_basis(4, 2, 2, 0);
  CHECK(c.pass);
  CHECK(c.dim_ambient == 21);
  CHECK(c.rank_ideal == 1);
  CHECK(c.n_standard == 20);
  CHECK(c.rank_combined == 21);
  CHECK(c.integral_spanning);
  const auto z = verify_standard_basis(2, 0, 1, 0);
  CHECK(z.pass);
  CHECK(z.n_standard == 0);
  const auto j = c.to_json();
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("dim_ambient") == 21);
}

TEST_CASE("certificate counts against independent ranks") {
  for (int p = 2; p <= 4; ++p) {
    for (int h = 0; h <= 4; h += 2) {
      for (int d = 0; d <= 3; ++d) {
        for (int w = 0; w <= 3; ++w) {
          const auto c = verify_standard_basis(p, h, d, w);
          CHECK(c.pass);
          if (c.dim_ambient > 300) continue;
          const std::size_t r = oracle::rational_rank(ideal_span(p, h + 2, d, w));
          CHECK(c.rank_ideal == r);
          CHECK(c.n_standard + r == c.dim_ambient);
          std::vector<Poly> all = ideal_span(p, h + 2, d, w);
          for (const auto& sp : enumerate_standard(p, h, d, w)) all.push_back(evaluate(p, sp.js));
          CHECK(oracle::rational_rank(all) == c.dim_ambient);
        }
      }
    }
  }
}

TEST_CASE("straightening examples") {
  // a standard monomial straightens to itself
  const auto sps = enumerate_standard(3, 2, 2, 1);
  REQUIRE(!sps.empty());
  for (const auto& sp : sps) {
    const auto terms = straighten(evaluate(3, sp.js), 3, 2, 2, 1);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].product.js == sp.js);
    CHECK(terms[0].coeff == 1);
  }
  // the product commutes into standard order
  const Poly f = value(2, J({2, 1}, 1)) * value(2, J({2, 1}, 0));
  const auto t = straighten(f, 2, 2, 2, 1);
  REQUIRE(t.size() == 1);
  CHECK(t[0].product.js == std::vector<JSeq>{J({2, 1}, 0), J({2, 1}, 1)});
  CHECK(t[0].coeff == 1);
  // |3,1||4,2| is already standard; |4,1||3,2| needs the quadric
  CHECK(straighten(value(4, J({3, 1}, 0)) * value(4, J({4, 2}, 0)), 4, 2, 2, 0).size() == 1);
  const Poly g = value(4, J({4, 1}, 0)) * value(4, J({3, 2}, 0));
  const auto s = straighten(g, 4, 2, 2, 0);
  CHECK(s.size() >= 2);
  const Poly diff = g - recombine(4, s);
  const GradedPiece piece(4, 2, 2, 0);
  const auto ideal = ideal_span(4, 4, 2, 0);
  auto with = ideal;
  with.push_back(diff);
  CHECK(exact_rank(with, piece) == exact_rank(ideal, piece));
}

TEST_CASE("straightening reproduces random elements and is a projection") {
  std::mt19937 rng(99);
  for (int p = 2; p <= 4; ++p) {
    for (int h = 0; h <= 4; h += 2) {
      for (int d = 1; d <= 3; ++d) {
        for (int w = 0; w <= 2; ++w) {
          const Straightener st(p, h, d, w);
          CHECK(st.independent());
          const auto ideal = ideal_span(p, h + 2, d, w);
          IntegerEchelon ech(st.piece().dim());
          for (const auto& f : ideal) ech.insert(st.piece().to_vector(f));
          for (int trial = 0; trial < 5; ++trial) {
            const Poly f = random_element(rng, st.piece(), 4);
            const auto terms = st.straighten(f);
            const Poly back = recombine(p, terms);
            CHECK(ech.in_rational_span(st.piece().to_vector(f - back)));
            const auto again = st.straighten(back);
            REQUIRE(again.size() == terms.size());
            for (std::size_t i = 0; i < terms.size(); ++i) {
              CHECK(again[i].product.js == terms[i].product.js);
              CHECK(again[i].coeff == terms[i].coeff);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("straightening rejects input outside the cell") {
  const Poly mixed = x_var(3, 1, 2, 0) + x_var(3, 1, 2, 0) * x_var(3, 1, 3, 0);
  CHECK_THROWS_AS(straighten(mixed, 3, 2, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(straighten(x_var(3, 1, 2, 1), 3, 2, 1, 0), std::invalid_argument);
  CHECK(straighten(Poly(Alphabet::x_ring(3)), 3, 2, 1, 0).empty());
}

TEST_CASE("relation examples") {
  // h = h' = 2, i = 2, j = 1, m = 1 on four rows
  RelationSpec spec{{2, 1}, {4, 3}, 2, 1, 0, 1, {BigInt(1)}};
  const Relation rel = generate_relation(4, spec);
  CHECK(rel.degree() == 2);
  CHECK(rel.weight == 1);
  CHECK(rel.coefficients.size() == 2);
  const auto chk = check_relation(4, rel);
  CHECK(chk.in_ideal_rational);
  CHECK(chk.in_ideal_integral);
  CHECK(chk.rank_after == chk.rank_before);
  // an empty seed leaves nothing to antisymmetrize against
  RelationSpec zero{{2, 1}, {4, 3}, 2, 1, 0, 1, {}};
  const Relation z = generate_relation(4, zero);
  CHECK(z.value.is_zero());
  CHECK(check_relation(4, z).identically_zero);
  // parameter violations
  RelationSpec bad = spec;
  bad.i = 3;
  CHECK_THROWS_AS(generate_relation(4, bad), std::invalid_argument);
  bad = spec;
  bad.k0 = 2;
  CHECK_THROWS_AS(generate_relation(4, bad), std::invalid_argument);
  bad = spec;
  bad.j = 0;
  CHECK_THROWS_AS(generate_relation(4, bad), std::invalid_argument);
}

TEST_CASE("curated relations lie in the ideal") {
  const auto suite = curated_relation_suite();
  CHECK(suite.size() >= 20);
  std::set<int> hs, ms;
  int nonzero = 0;
  for (const auto& [p, spec] : suite) {
    const Relation rel = generate_relation(p, spec);
    hs.insert(rel.h);
    ms.insert(spec.m);
    const auto chk = check_relation(p, rel);
    CHECK(chk.in_ideal_rational);
    CHECK(chk.in_ideal_integral);
    nonzero += !chk.identically_zero;
    CHECK(oracle::rational_rank({rel.value}) == (chk.identically_zero ? 0u : 1u));
  }
  CHECK(hs == std::set<int>{2, 4});
  CHECK(*ms.rbegin() <= 3);
  CHECK(nonzero >= 15);
}
