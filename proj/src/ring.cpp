#include "pfarc/ring.hpp"

#include <sstream>

namespace pfarc {

namespace {

void check_weight(int k) {
  if (k < 0 || k > kMaxWeight) throw std::out_of_range("jet weight out of range: " + std::to_string(k));
}

// Visits every composition (parts[0..n-1] >= 0, sum == total) in lexicographic order.
template <class Fn>
void for_each_composition(int total, std::size_t n, std::vector<int>& parts, std::size_t pos, Fn&& fn) {
  if (pos + 1 == n) {
    parts[pos] = total;
    fn(parts);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    parts[pos] = v;
    for_each_composition(total - v, n, parts, pos + 1, fn);
  }
}

}  // namespace

NormalizedX normalize_xgen(int u, int v, int k, int p) {
  if (p < 1 || p > kMaxIndex) throw std::out_of_range("row bound p out of range");
  if (u < 1 || u > p || v < 1 || v > p) {
    throw std::out_of_range("x index (" + std::to_string(u) + "," + std::to_string(v) + ") outside 1.." +
                            std::to_string(p));
  }
  check_weight(k);
  if (u == v) return {std::nullopt, 0};
  if (u < v) return {XGen{u, v, k}, 1};
  return {XGen{v, u, k}, -1};
}

Monomial Monomial::of(GenKey g, std::uint32_t exp) {
  Monomial m;
  if (exp > 0) m.factors_.push_back({g, exp});
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
  Monomial m;
  for (const auto& f : factors) {
    if (f.exp == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().gen == f.gen) {
      m.factors_.back().exp += f.exp;
    } else {
      m.factors_.push_back(f);
    }
  }
  return m;
}

Monomial Monomial::from_word(std::vector<GenKey> word) {
  std::sort(word.begin(), word.end());
  Monomial m;
  for (GenKey g : word) {
    if (!m.factors_.empty() && m.factors_.back().gen == g) {
      ++m.factors_.back().exp;
    } else {
      m.factors_.push_back({g, 1});
    }
  }
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += static_cast<int>(f.exp);
  return d;
}

int Monomial::weight() const {
  int w = 0;
  for (const auto& f : factors_) w += gen_weight(f.gen) * static_cast<int>(f.exp);
  return w;
}

std::vector<GenKey> Monomial::word() const {
  std::vector<GenKey> w;
  for (const auto& f : factors_) w.insert(w.end(), f.exp, f.gen);
  return w;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->gen < b->gen)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->gen < a->gen) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.push_back({a->gen, a->exp + b->exp});
      ++a;
      ++b;
    }
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& f : factors_) {
    h ^= (static_cast<std::size_t>(f.gen) * 0x100000001b3ull + f.exp) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  std::size_t ia = 0, ib = 0;
  std::uint32_t ra = a.factors_.empty() ? 0 : a.factors_[0].exp;
  std::uint32_t rb = b.factors_.empty() ? 0 : b.factors_[0].exp;
  while (ia < a.factors_.size() && ib < b.factors_.size()) {
    const GenKey ga = a.factors_[ia].gen;
    const GenKey gb = b.factors_[ib].gen;
    if (ga != gb) return ga <=> gb;
    const std::uint32_t take = std::min(ra, rb);
    ra -= take;
    rb -= take;
    if (ra == 0 && ++ia < a.factors_.size()) ra = a.factors_[ia].exp;
    if (rb == 0 && ++ib < b.factors_.size()) rb = b.factors_[ib].exp;
  }
  const bool a_done = ia >= a.factors_.size();
  const bool b_done = ib >= b.factors_.size();
  if (a_done && b_done) return std::strong_ordering::equal;
  return a_done ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string to_string(const Monomial& m, RingKind kind) {
  if (m.is_one()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& f : m.factors()) {
    if (!first) os << '*';
    first = false;
    os << (kind == RingKind::X ? "x^" : "a^") << gen_weight(f.gen) << "_{" << gen_first(f.gen) << ','
       << gen_second(f.gen) << '}';
    if (f.exp > 1) os << '^' << f.exp;
  }
  return os.str();
}

Poly x_var(int p, int u, int v, int k) {
  const auto n = normalize_xgen(u, v, k, p);
  if (!n.gen) return Poly(Alphabet::x_ring(p));
  return Poly::monomial(Alphabet::x_ring(p), Monomial::of(key_of(*n.gen)), BigInt(n.sign));
}

Poly a_var(int p, int h, int i, int l, int k) {
  if (i < 1 || i > p || l < 1 || l > h || p > kMaxIndex || h > kMaxIndex) {
    throw std::out_of_range("a index (" + std::to_string(i) + "," + std::to_string(l) + ") out of range");
  }
  check_weight(k);
  return Poly::monomial(Alphabet::jet_ring(p, h), Monomial::of(key_of(AGen{i, l, k})));
}

template <class C>
BasicPoly<C> dbar(int l, const BasicPoly<C>& f) {
  if (l < 0) throw std::invalid_argument("negative derivative order");
  if (l == 0) return f;
  std::unordered_map<Monomial, C, MonomialHash> acc;
  std::vector<int> parts;
  for (const auto& [mono, coeff] : f.terms()) {
    const std::vector<GenKey> word = mono.word();
    if (word.empty()) continue;
    parts.assign(word.size(), 0);
    for_each_composition(l, word.size(), parts, 0, [&](const std::vector<int>& split) {
      BigInt factor = 1;
      std::vector<GenKey> shifted(word.size());
      for (std::size_t t = 0; t < word.size(); ++t) {
        const int k = gen_weight(word[t]);
        check_weight(k + split[t]);
        if (split[t] > 0) factor *= binom(k + split[t], split[t]);
        shifted[t] = gen_with_weight(word[t], k + split[t]);
      }
      acc[Monomial::from_word(std::move(shifted))] += coeff * C(factor);
    });
  }
  return BasicPoly<C>::from_accumulator(f.alphabet(), std::move(acc));
}

template Poly dbar<BigInt>(int, const Poly&);
template QPoly dbar<BigRational>(int, const QPoly&);

QPoly to_rational(const Poly& f) {
  std::vector<QPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) terms.emplace_back(m, BigRational(c));
  return QPoly(f.alphabet(), std::move(terms));
}

std::optional<Poly> to_integral(const QPoly& f) {
  std::vector<Poly::Term> terms;
  terms.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    if (boost::multiprecision::denominator(c) != 1) return std::nullopt;
    terms.emplace_back(m, boost::multiprecision::numerator(c));
  }
  return Poly(f.alphabet(), std::move(terms));
}

template <class C>
std::string to_string(const BasicPoly<C>& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool neg = c < 0;
    const C mag = neg ? C(-c) : c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << '*';
      os << to_string(m, f.alphabet().kind);
    }
  }
  return os.str();
}

template std::string to_string<BigInt>(const Poly&);
template std::string to_string<BigRational>(const QPoly&);

nlohmann::json to_json(const Poly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : f.terms()) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& fac : m.factors()) {
      factors.push_back({gen_first(fac.gen), gen_second(fac.gen), gen_weight(fac.gen), fac.exp});
    }
    terms.push_back({c.str(), factors});
  }
  return {{"ring", f.alphabet().kind == RingKind::X ? "X" : "A"},
          {"p", f.alphabet().p},
          {"h", f.alphabet().h},
          {"terms", terms}};
}

Poly poly_from_json(const nlohmann::json& j) {
  try {
    const std::string ring = j.at("ring").get<std::string>();
    const int p = j.at("p").get<int>();
    const int h = j.at("h").get<int>();
    if (ring != "X" && ring != "A") throw std::invalid_argument("unknown ring '" + ring + "'");
    const bool is_x = ring == "X";
    const Alphabet alphabet = is_x ? Alphabet::x_ring(p) : Alphabet::jet_ring(p, h);
    Poly result(alphabet);
    for (const auto& term : j.at("terms")) {
      const BigInt coeff = parse_bigint(term.at(0).get<std::string>());
      Poly t = Poly::constant(alphabet, coeff);
      for (const auto& fac : term.at(1)) {
        if (fac.size() != 4) throw std::invalid_argument("factor must be [idx, idx, k, exp]");
        const int a = fac.at(0).get<int>();
        const int b = fac.at(1).get<int>();
        const int k = fac.at(2).get<int>();
        const int e = fac.at(3).get<int>();
        if (e < 0) throw std::invalid_argument("negative exponent");
        const Poly g = is_x ? x_var(p, a, b, k) : a_var(p, h, a, b, k);
        t = t * g.pow(static_cast<unsigned>(e));
      }
      result += t;
    }
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed Poly JSON: ") + e.what());
  }
}

}  // namespace pfarc
