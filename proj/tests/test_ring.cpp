#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pfarc/bigint.hpp"
#include "pfarc/parse.hpp"
#include "pfarc/ring.hpp"

using namespace pfarc;

TEST_CASE("binomials and extended gcd") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(3, 4) == 0);
  CHECK(binom(3, -1) == 0);
  CHECK(binom(60, 30) == BigInt("118264581564861424"));
  for (long a : {0L, 1L, 12L, -18L, 35L}) {
    for (long b : {0L, 4L, -6L, 49L}) {
      BigInt s, t;
      const BigInt g = ext_gcd(a, b, s, t);
      CHECK(g >= 0);
      CHECK(s * a + t * b == g);
      CHECK(g == boost::multiprecision::gcd(BigInt(a), BigInt(b)));
    }
  }
}

TEST_CASE("skew relations are applied when a generator is built") {
  auto a = normalize_xgen(1, 2, 0, 2);
  REQUIRE(a.gen);
  CHECK(*a.gen == XGen{1, 2, 0});
  CHECK(a.sign == 1);
  auto b = normalize_xgen(2, 1, 3, 2);
  REQUIRE(b.gen);
  CHECK(*b.gen == XGen{1, 2, 3});
  CHECK(b.sign == -1);
  auto c = normalize_xgen(2, 2, 1, 2);
  CHECK(!c.gen);
  CHECK(c.sign == 0);
  CHECK_THROWS_AS(normalize_xgen(0, 1, 0, 2), std::out_of_range);
  CHECK_THROWS_AS(normalize_xgen(1, 3, 0, 2), std::out_of_range);
  CHECK(x_var(3, 3, 1, 2) == -x_var(3, 1, 3, 2));
  CHECK(x_var(3, 2, 2, 0).is_zero());
}

TEST_CASE("word order on monomials") {
  const GenKey g1 = pack_gen(0, 1, 2), g2 = pack_gen(0, 1, 3), g3 = pack_gen(1, 1, 2);
  const Monomial a = Monomial::of(g1);
  const Monomial aa = Monomial::of(g1, 2);
  const Monomial b = Monomial::of(g2);
  const Monomial c = Monomial::of(g3);
  CHECK(Monomial{} < a);   // empty word is a prefix of everything
  CHECK(a < aa);           // proper prefix
  CHECK(aa < b);           // g1 g1 < g2
  CHECK(b < c);            // weight dominates the generator order
  CHECK(a * b == Monomial::from_word({g2, g1}));
  CHECK((a * b).degree() == 2);
  CHECK((c * c).weight() == 2);
  CHECK(Monomial::from_factors({{g1, 1}, {g2, 0}, {g1, 2}}) == Monomial::of(g1, 3));
}

TEST_CASE("polynomial arithmetic is exact and canonical") {
  const Poly x = x_var(3, 1, 2, 0), y = x_var(3, 1, 3, 0);
  const Poly s = (x + y) * (x - y);
  CHECK(s == x * x - y * y);
  CHECK((x - x).is_zero());
  CHECK((x + y).pow(3).size() == 4);
  CHECK((x + y).pow(3).coefficient(Monomial::of(key_of(XGen{1, 2, 0}), 2) * Monomial::of(key_of(XGen{1, 3, 0}))) ==
        3);
  const Poly big = Poly::constant(Alphabet::x_ring(3), BigInt("123456789012345678901234567890"));
  CHECK((big * big).terms().front().second == BigInt("15241578753238836750495351562536198787501905199875019052100"));
  CHECK_THROWS_AS(x + x_var(4, 1, 2, 0), AlphabetMismatch);
  CHECK_THROWS_AS(x * a_var(3, 2, 1, 1, 0), AlphabetMismatch);
  CHECK(s.bidegree() == std::make_pair(2, 0));
  CHECK(!(x + x * y).bidegree());
}

TEST_CASE("normalized derivative on generators") {
  const Poly x = x_var(2, 1, 2, 0);
  CHECK(dbar(0, x) == x);
  CHECK(dbar(1, x) == x_var(2, 1, 2, 1));
  CHECK(dbar(2, x_var(2, 1, 2, 1)) == x_var(2, 1, 2, 3).scaled(3));
  const Poly sq = x * x;
  CHECK(dbar(1, sq) == (x * x_var(2, 1, 2, 1)).scaled(2));
  CHECK(dbar(3, Poly::constant(Alphabet::x_ring(2), 7)).is_zero());
}

TEST_CASE("normalized derivative agrees with repeated plain derivation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Poly f = oracle::random_x_poly(rng, 4, 4, 3, 2);
    for (int n = 0; n <= 3; ++n) CHECK(dbar(n, f) == oracle::dbar(n, f));
  }
}

TEST_CASE("Leibniz and composition identities on random inputs") {
  std::mt19937 rng(2024);
  int cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Poly f = oracle::random_x_poly(rng, 4, 3, 2, 2);
    const Poly g = oracle::random_x_poly(rng, 4, 3, 2, 2);
    const int n = trial % 4;
    Poly rhs(f.alphabet());
    for (int i = 0; i <= n; ++i) rhs += dbar(i, f) * dbar(n - i, g);
    CHECK(dbar(n, f * g) == rhs);
    ++cases;
    const int a = trial % 3, b = (trial / 3) % 3;
    CHECK(dbar(a, dbar(b, f)) == dbar(a + b, f).scaled(binom(a + b, a)));
    ++cases;
  }
  CHECK(cases == 200);
}

TEST_CASE("rational and integral views") {
  const Poly f = x_var(3, 1, 2, 0).scaled(4) - x_var(3, 2, 3, 1);
  const QPoly q = to_rational(f);
  auto back = to_integral(q);
  REQUIRE(back);
  CHECK(*back == f);
  CHECK(!to_integral(q.scaled(BigRational(1, 3))));
}

TEST_CASE("JSON round trip and malformed input") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly f = oracle::random_x_poly(rng, 5, 5, 3, 3);
    CHECK(poly_from_json(to_json(f)) == f);
  }
  const Poly a = a_var(2, 2, 1, 2, 3) * a_var(2, 2, 2, 1, 0);
  CHECK(poly_from_json(to_json(a)) == a);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"({"ring":"Y","p":2,"h":0,"terms":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"({"ring":"X","p":2,"h":0,"terms":[["x",[]]]})")),
                  std::invalid_argument);
}

TEST_CASE("printed polynomials parse back") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const Poly f = oracle::random_x_poly(rng, 4, 4, 3, 2);
    CHECK(parse_expr(to_string(f), 4) == f);
  }
  CHECK(to_string(x_var(2, 2, 1, 0)) == "-x^0_{1,2}");
}
