#pragma once

// Sparse exact polynomials over the skew jet ring generated by x^(k)_{uv}
// (u < v, the relations x_{vu} = -x_{uv} and x_{uu} = 0 applied eagerly)
// and over the jet coordinate ring generated by a^(k)_{il}.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include "pfarc/bigint.hpp"

namespace pfarc {

enum class RingKind : std::uint8_t { X, A };

/// Generator alphabet of a polynomial. `p` bounds the row (or copy) index,
/// `h` bounds the coordinate index of the jet ring and is 0 for the X ring.
struct Alphabet {
  RingKind kind = RingKind::X;
  int p = 0;
  int h = 0;

  static Alphabet x_ring(int p) { return {RingKind::X, p, 0}; }
  static Alphabet jet_ring(int p, int h) { return {RingKind::A, p, h}; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Generators are packed as (k << 16) | (first << 8) | second so that the
// integer order is lexicographic on (k, u, v) resp. (k, i, l).
using GenKey = std::uint32_t;

inline constexpr int kMaxIndex = 255;
inline constexpr int kMaxWeight = 65535;

struct XGen {
  int u = 0;
  int v = 0;
  int k = 0;
  friend bool operator==(const XGen&, const XGen&) = default;
};

struct AGen {
  int i = 0;
  int l = 0;
  int k = 0;
  friend bool operator==(const AGen&, const AGen&) = default;
};

constexpr GenKey pack_gen(int k, int first, int second) {
  return (static_cast<GenKey>(k) << 16) | (static_cast<GenKey>(first) << 8) | static_cast<GenKey>(second);
}
constexpr int gen_weight(GenKey g) { return static_cast<int>(g >> 16); }
constexpr int gen_first(GenKey g) { return static_cast<int>((g >> 8) & 0xffu); }
constexpr int gen_second(GenKey g) { return static_cast<int>(g & 0xffu); }
constexpr GenKey gen_with_weight(GenKey g, int k) { return (g & 0xffffu) | (static_cast<GenKey>(k) << 16); }

constexpr GenKey key_of(const XGen& g) { return pack_gen(g.k, g.u, g.v); }
constexpr GenKey key_of(const AGen& g) { return pack_gen(g.k, g.i, g.l); }
constexpr XGen xgen_of(GenKey g) { return {gen_first(g), gen_second(g), gen_weight(g)}; }
constexpr AGen agen_of(GenKey g) { return {gen_first(g), gen_second(g), gen_weight(g)}; }

/// Result of reducing x^(k)_{uv} by the skew relations.
struct NormalizedX {
  std::optional<XGen> gen;  // empty on the diagonal
  int sign = 0;             // 0 on the diagonal, otherwise +1 / -1
};

/// Canonical form of x^(k)_{uv}; throws std::out_of_range on bad indices.
NormalizedX normalize_xgen(int u, int v, int k, int p);

struct Factor {
  GenKey gen = 0;
  std::uint32_t exp = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// A monomial: generators strictly increasing, exponents >= 1.
/// Ordered by the word order: the expanded sorted generator words are
/// compared lexicographically and a proper prefix is smaller.
class Monomial {
 public:
  Monomial() = default;

  static Monomial of(GenKey g, std::uint32_t exp = 1);
  /// Sorts and merges arbitrary (gen, exp) pairs; zero exponents are dropped.
  static Monomial from_factors(std::vector<Factor> factors);
  static Monomial from_word(std::vector<GenKey> word);

  std::span<const Factor> factors() const { return {factors_.data(), factors_.size()}; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int weight() const;
  std::vector<GenKey> word() const;

  Monomial operator*(const Monomial& other) const;

  std::size_t hash() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  boost::container::small_vector<Factor, 4> factors_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

std::string to_string(const Monomial& m, RingKind kind);

template <class C>
class BasicPoly {
 public:
  using Coeff = C;
  using Term = std::pair<Monomial, C>;

  BasicPoly() = default;
  explicit BasicPoly(Alphabet a) : alphabet_(a) {}
  /// Canonicalizes: sorts, merges equal monomials, drops zero coefficients.
  BasicPoly(Alphabet a, std::vector<Term> terms) : alphabet_(a), terms_(std::move(terms)) { canonicalize(); }

  static BasicPoly constant(Alphabet a, C c) {
    BasicPoly r(a);
    if (c != 0) r.terms_.emplace_back(Monomial{}, std::move(c));
    return r;
  }
  static BasicPoly monomial(Alphabet a, Monomial m, C c = C(1)) {
    BasicPoly r(a);
    if (c != 0) r.terms_.emplace_back(std::move(m), std::move(c));
    return r;
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return C(0);
  }

  /// (x-degree, weight) when every term shares it; empty for zero or mixed input.
  std::optional<std::pair<int, int>> bidegree() const {
    if (terms_.empty()) return std::nullopt;
    const std::pair<int, int> first{terms_.front().first.degree(), terms_.front().first.weight()};
    for (const auto& [m, c] : terms_) {
      if (m.degree() != first.first || m.weight() != first.second) return std::nullopt;
    }
    return first;
  }

  BasicPoly operator-() const {
    BasicPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  BasicPoly scaled(const C& c) const {
    if (c == 0) return BasicPoly(alphabet_);
    BasicPoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  friend BasicPoly operator+(const BasicPoly& a, const BasicPoly& b) { return merge(a, b, false); }
  friend BasicPoly operator-(const BasicPoly& a, const BasicPoly& b) { return merge(a, b, true); }

  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    check_alphabet(a, b);
    if (a.is_zero() || b.is_zero()) return BasicPoly(a.alphabet_);
    if (a.size() == 1 && a.terms_.front().first.is_one()) return b.scaled(a.terms_.front().second);
    if (b.size() == 1 && b.terms_.front().first.is_one()) return a.scaled(b.terms_.front().second);
    std::unordered_map<Monomial, C, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) acc[ma * mb] += ca * cb;
    }
    return from_accumulator(a.alphabet_, std::move(acc));
  }

  BasicPoly& operator+=(const BasicPoly& o) { return *this = *this + o; }
  BasicPoly& operator-=(const BasicPoly& o) { return *this = *this - o; }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  BasicPoly pow(unsigned e) const {
    BasicPoly r = constant(alphabet_, C(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const BasicPoly& a, const BasicPoly& b) {
    return a.alphabet_ == b.alphabet_ && a.terms_ == b.terms_;
  }

  static BasicPoly from_accumulator(Alphabet a, std::unordered_map<Monomial, C, MonomialHash> acc) {
    BasicPoly r(a);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (c != 0) r.terms_.emplace_back(m, std::move(c));
    }
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    return r;
  }

 private:
  static void check_alphabet(const BasicPoly& a, const BasicPoly& b) {
    if (!(a.alphabet_ == b.alphabet_)) throw AlphabetMismatch("polynomial operands over different alphabets");
  }

  static BasicPoly merge(const BasicPoly& a, const BasicPoly& b, bool subtract) {
    check_alphabet(a, b);
    BasicPoly r(a.alphabet_);
    r.terms_.reserve(a.size() + b.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first < ia->first) {
        r.terms_.emplace_back(ib->first, subtract ? C(-ib->second) : ib->second);
        ++ib;
      } else {
        C c = subtract ? C(ia->second - ib->second) : C(ia->second + ib->second);
        if (c != 0) r.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [](const Term& t) { return t.second == 0; });
    terms_ = std::move(out);
  }

  Alphabet alphabet_;
  std::vector<Term> terms_;
};

using Poly = BasicPoly<BigInt>;
using QPoly = BasicPoly<BigRational>;

/// The polynomial x^(k)_{uv} in the X ring on p rows (skew relations applied).
Poly x_var(int p, int u, int v, int k);
/// The polynomial a^(k)_{il} in the jet ring with p copies and h coordinates.
Poly a_var(int p, int h, int i, int l, int k);

/// l-th normalized derivative, distributing l over the factors of each
/// monomial (multinomial Leibniz rule) with the generator rule
/// dbar^l g^(k) = C(k+l, l) g^(k+l). Stays in the integers throughout.
template <class C>
BasicPoly<C> dbar(int l, const BasicPoly<C>& f);

QPoly to_rational(const Poly& f);
/// Integral image of a rational polynomial; empty if some coefficient is not an integer.
std::optional<Poly> to_integral(const QPoly& f);

template <class C>
std::string to_string(const BasicPoly<C>& f);

/// Poly JSON: {"ring":"X"|"A","p":..,"h":..,"terms":[[coeff,[[idx,idx,k,exp],...]],...]}
nlohmann::json to_json(const Poly& f);
Poly poly_from_json(const nlohmann::json& j);

}  // namespace pfarc
