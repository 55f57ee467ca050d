#include "pfarc/jet.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "pfarc/echelon.hpp"
#include "pfarc/quotient.hpp"

namespace pfarc {

JetMap::JetMap(int p, int h) : p_(p), h_(h) {
  if (h < 0 || h % 2 != 0) throw std::invalid_argument("Q_h needs an even h");
  if (p < 0 || p > kMaxIndex || h > kMaxIndex) throw std::out_of_range("index bound exceeded");
}

Poly JetMap::image(GenKey x) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(x); it != cache_.end()) return it->second;
  }
  const XGen g = xgen_of(x);
  if (g.u < 1 || g.v > p_ || g.u >= g.v) throw std::out_of_range("X generator outside the alphabet");
  std::vector<Poly::Term> terms;
  for (int i = 1; i <= h_ / 2; ++i) {
    for (int k1 = 0; k1 <= g.k; ++k1) {
      const int k2 = g.k - k1;
      terms.emplace_back(Monomial::from_factors({{pack_gen(k1, g.u, 2 * i - 1), 1}, {pack_gen(k2, g.v, 2 * i), 1}}),
                         BigInt(1));
      terms.emplace_back(Monomial::from_factors({{pack_gen(k1, g.v, 2 * i - 1), 1}, {pack_gen(k2, g.u, 2 * i), 1}}),
                         BigInt(-1));
    }
  }
  Poly img(target(), std::move(terms));
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(x, std::move(img)).first->second;
}

Poly JetMap::apply(const Poly& f) const {
  if (f.is_zero()) return Poly(target());
  if (!(f.alphabet() == Alphabet::x_ring(p_))) throw AlphabetMismatch("Q_h expects a polynomial over the X ring");
  std::unordered_map<Monomial, BigInt, MonomialHash> acc;
  for (const auto& [m, c] : f.terms()) {
    Poly prod = Poly::constant(target(), c);
    for (const Factor& fac : m.factors()) prod = prod * image(fac.gen).pow(fac.exp);
    for (const auto& [mm, cc] : prod.terms()) acc[mm] += cc;
  }
  return Poly::from_accumulator(target(), std::move(acc));
}

Poly qh(int p, int h, const Poly& f) { return JetMap(p, h).apply(f); }

std::vector<std::uint32_t> Tableau::word() const {
  std::vector<std::uint32_t> w;
  for (const auto& row : rows) w.insert(w.end(), row.begin(), row.end());
  return w;
}

Tableau tableau_of(const Monomial& m, int h) {
  std::vector<std::vector<std::uint32_t>> columns(static_cast<std::size_t>(h) + 1);
  for (const Factor& f : m.factors()) {
    const int l = gen_second(f.gen);
    if (l < 1 || l > h) throw std::out_of_range("coordinate index outside 1..h");
    columns[l].insert(columns[l].end(), f.exp, f.gen);
  }
  std::size_t height = 0;
  for (auto& col : columns) {
    std::sort(col.begin(), col.end());
    height = std::max(height, col.size());
  }
  Tableau t;
  t.h = h;
  t.rows.assign(height, std::vector<std::uint32_t>(static_cast<std::size_t>(h), kStar));
  for (int l = 1; l <= h; ++l) {
    for (std::size_t r = 0; r < columns[l].size(); ++r) t.rows[r][static_cast<std::size_t>(h - l)] = columns[l][r];
  }
  return t;
}

Monomial monomial_of(const Tableau& t) {
  std::vector<GenKey> word;
  for (const auto& row : t.rows) {
    for (std::uint32_t e : row) {
      if (e != kStar) word.push_back(e);
    }
  }
  return Monomial::from_word(std::move(word));
}

std::string to_string(const Tableau& t) {
  std::ostringstream os;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? " / " : "") << "[";
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      if (c) os << ", ";
      const std::uint32_t e = t.rows[r][c];
      if (e == kStar) {
        os << "*";
      } else {
        os << "a^" << gen_weight(e) << "_{" << gen_first(e) << "," << gen_second(e) << "}";
      }
    }
    os << "]";
  }
  return os.str();
}

std::pair<Monomial, BigInt> leading_monomial(const Poly& f, int h) {
  if (f.is_zero()) throw std::invalid_argument("leading monomial of zero");
  const Poly::Term* best = nullptr;
  std::vector<std::uint32_t> best_word;
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> w = tableau_of(t.first, h).word();
    if (!best || best_word < w) {
      best = &t;
      best_word = std::move(w);
    }
  }
  return {best->first, best->second};
}

Tableau T_map(const std::vector<ESeq>& es, int h) {
  Tableau t;
  t.h = h;
  for (std::size_t a = 0; a < es.size(); ++a) {
    const ESeq& e = es[a];
    if (e.size() > h) throw std::invalid_argument("sequence longer than h");
    std::optional<ESeq> expect;
    if (a == 0) {
      expect = max_lift(norm(e));
    } else if (e.size() <= es[a - 1].size()) {
      expect = largest_dominating(es[a - 1], norm(e));
    }
    if (!expect || !(*expect == e)) throw std::invalid_argument("sequence list is not a standard lift");
    std::vector<std::uint32_t> row(static_cast<std::size_t>(h), kStar);
    for (int l = 1; l <= e.size(); ++l) row[static_cast<std::size_t>(h - l)] = pack_gen(e.at(l).k, e.at(l).u, l);
    t.rows.push_back(std::move(row));
  }
  return t;
}

namespace {

using JKey = std::pair<std::vector<int>, int>;

// Q_h images of standard products, with the factor images memoized.
class StandardImages {
 public:
  StandardImages(int p, int h) : map_(p, h), values_(p) {}

  Poly image(const StandardProduct& s) {
    Poly r = Poly::constant(map_.target(), 1);
    for (const JSeq& j : s.js) {
      JKey key{j.rows(), j.weight()};
      auto it = cache_.find(key);
      if (it == cache_.end()) it = cache_.emplace(std::move(key), map_.apply(values_.value(j))).first;
      r = r * it->second;
      if (r.is_zero()) break;
    }
    return r;
  }

 private:
  JetMap map_;
  FactorValues values_;
  std::map<JKey, Poly> cache_;
};

// Rank over Q of jet-ring polynomials. Columns are ordered by descending
// tableau word so the leading monomials come first.
std::size_t rank_by_word(const std::vector<Poly>& polys, int h) {
  std::vector<std::pair<std::vector<std::uint32_t>, Monomial>> cols;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  for (const Poly& f : polys) {
    for (const auto& t : f.terms()) {
      if (index.emplace(t.first, 0).second) cols.emplace_back(tableau_of(t.first, h).word(), t.first);
    }
  }
  std::sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) { return b.first < a.first; });
  for (std::size_t c = 0; c < cols.size(); ++c) index[cols[c].second] = static_cast<std::uint32_t>(c);
  IntegerEchelon ech(cols.size());
  for (const Poly& f : polys) {
    SparseVec v;
    v.reserve(f.size());
    for (const auto& [m, c] : f.terms()) v.emplace_back(index.at(m), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ech.insert(std::move(v));
  }
  return ech.rank();
}

}  // namespace

LeadingCheck verify_leading(const StandardProduct& sp, int p, int h) {
  LeadingCheck out;
  out.expected = monomial_of(T_map(sp.es, h));
  const Poly img = JetMap(p, h).apply(evaluate(p, sp.js));
  if (img.is_zero()) return out;
  auto [lead, coeff] = leading_monomial(img, h);
  out.pass = lead == out.expected && (coeff == 1 || coeff == -1);
  out.leading = std::move(lead);
  out.coeff = std::move(coeff);
  return out;
}

std::vector<std::vector<BigRational>> symplectic_form(int h) {
  std::vector<std::vector<BigRational>> J(h, std::vector<BigRational>(h));
  for (int i = 0; i + 1 < h; i += 2) {
    J[i][i + 1] = 1;
    J[i + 1][i] = -1;
  }
  return J;
}

void SpElement::validate() const {
  const int n = h();
  if (n % 2 != 0) throw std::invalid_argument("sp element needs even size");
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("sp element is not square");
  }
  if (m < 0) throw std::invalid_argument("jet level must be >= 0");
  const auto J = symplectic_form(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      BigRational s = 0;
      for (int t = 0; t < n; ++t) s += g[t][r] * J[t][c] + J[r][t] * g[t][c];
      if (s != 0) throw std::invalid_argument("matrix does not preserve the symplectic form");
    }
  }
}

std::vector<SpElement> sp_basis(int h, int m) {
  if (h < 0 || h % 2 != 0) throw std::invalid_argument("sp_h needs an even h");
  const auto J = symplectic_form(h);
  std::vector<SpElement> out;
  for (int a = 0; a < h; ++a) {
    for (int b = a; b < h; ++b) {
      std::vector<std::vector<BigRational>> S(h, std::vector<BigRational>(h));
      S[a][b] = 1;
      S[b][a] = 1;
      SpElement e;
      e.m = m;
      e.g.assign(h, std::vector<BigRational>(h));
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < h; ++c) {
          for (int t = 0; t < h; ++t) e.g[r][c] -= J[r][t] * S[t][c];
        }
      }
      e.validate();
      out.push_back(std::move(e));
    }
  }
  return out;
}

QPoly sp_action(const SpElement& g, const QPoly& f) {
  const int h = g.h();
  if (f.is_zero()) return f;
  if (f.alphabet().kind != RingKind::A || f.alphabet().h != h) {
    throw AlphabetMismatch("sp action expects a jet-ring polynomial with matching h");
  }
  std::unordered_map<Monomial, BigRational, MonomialHash> acc;
  for (const auto& [mono, c] : f.terms()) {
    const auto factors = mono.factors();
    for (std::size_t idx = 0; idx < factors.size(); ++idx) {
      const AGen a = agen_of(factors[idx].gen);
      if (a.k < g.m) continue;
      std::vector<Factor> rest(factors.begin(), factors.end());
      rest[idx].exp -= 1;
      const Monomial base = Monomial::from_factors(std::move(rest));
      const BigRational scale = c * BigRational(factors[idx].exp);
      for (int lp = 1; lp <= h; ++lp) {
        const BigRational& entry = g.g[a.l - 1][lp - 1];
        if (entry == 0) continue;
        acc[base * Monomial::of(pack_gen(a.k - g.m, a.i, lp))] += scale * entry;
      }
    }
  }
  return QPoly::from_accumulator(f.alphabet(), std::move(acc));
}

QPoly sp_action(const SpElement& g, const Poly& f) { return sp_action(g, to_rational(f)); }

nlohmann::json InvarianceReport::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["h"] = h;
  j["k_max"] = k_max;
  j["m_max"] = m_max;
  j["checks"] = checks;
  j["failures"] = failures;
  j["witness"] = witness ? nlohmann::json(*witness) : nlohmann::json(nullptr);
  j["verdict"] = pass() ? "pass" : "fail";
  return j;
}

InvarianceReport verify_invariance(int p, int h, int k_max, int m_max) {
  InvarianceReport rep;
  rep.p = p;
  rep.h = h;
  rep.k_max = k_max;
  rep.m_max = m_max;
  const JetMap map(p, h);
  for (int m = 0; m <= m_max; ++m) {
    const auto basis = sp_basis(h, m);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      for (int u = 1; u <= p; ++u) {
        for (int v = u + 1; v <= p; ++v) {
          for (int k = 0; k <= k_max; ++k) {
            ++rep.checks;
            if (!sp_action(basis[b], map.image(pack_gen(k, u, v))).is_zero()) {
              ++rep.failures;
              if (!rep.witness) {
                rep.witness = "basis element " + std::to_string(b) + " at level " + std::to_string(m) +
                              " on X^" + std::to_string(k) + "_{" + std::to_string(u) + "," + std::to_string(v) + "}";
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

std::vector<Monomial> jet_monomials(int p, int h, int d, int w) {
  std::vector<GenKey> gens;
  for (int k = 0; k <= std::max(w, 0); ++k) {
    for (int i = 1; i <= p; ++i) {
      for (int l = 1; l <= h; ++l) gens.push_back(pack_gen(k, i, l));
    }
  }
  return monomials_of_bidegree(gens, d, w);
}

nlohmann::json DimensionReport::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["h"] = h;
  j["d"] = d;
  j["w"] = w;
  j["m_max"] = m_max;
  j["dim_piece"] = dim_piece;
  j["dim_kernel"] = dim_kernel;
  j["dim_image"] = dim_image;
  j["verdict"] = pass() ? "pass" : "fail";
  return j;
}

DimensionReport invariant_dimension(int p, int h, int d, int w, int m_max) {
  DimensionReport rep;
  rep.p = p;
  rep.h = h;
  rep.d = d;
  rep.w = w;
  rep.m_max = m_max;
  const std::vector<Monomial> basis = jet_monomials(p, h, d, w);
  rep.dim_piece = basis.size();

  std::vector<SpElement> ops;
  for (int m = 0; m <= m_max; ++m) {
    for (auto& e : sp_basis(h, m)) ops.push_back(std::move(e));
  }
  // Row b is the concatenation of D(b) over all operators D; the kernel of the
  // stacked operator has dimension dim - rank.
  std::map<std::pair<std::size_t, Monomial>, std::uint32_t> columns;
  std::vector<std::vector<std::pair<std::uint32_t, BigRational>>> rows;
  const Alphabet alpha = Alphabet::jet_ring(p, h);
  for (const Monomial& b : basis) {
    const QPoly f = QPoly::monomial(alpha, b);
    std::vector<std::pair<std::uint32_t, BigRational>> row;
    for (std::size_t o = 0; o < ops.size(); ++o) {
      const QPoly image = sp_action(ops[o], f);
      for (const auto& [mm, c] : image.terms()) {
        auto [it, fresh] = columns.emplace(std::make_pair(o, mm), static_cast<std::uint32_t>(columns.size()));
        row.emplace_back(it->second, c);
      }
    }
    rows.push_back(std::move(row));
  }
  IntegerEchelon ech(columns.size());
  for (auto& row : rows) {
    BigInt den = 1;
    for (const auto& e : row) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(e.second));
    SparseVec v;
    v.reserve(row.size());
    for (const auto& [col, c] : row) {
      v.emplace_back(col, boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c)));
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ech.insert(std::move(v));
  }
  rep.dim_kernel = basis.size() - ech.rank();

  if (d % 2 == 0) {
    StandardImages images(p, h);
    std::vector<Poly> polys;
    for (const auto& s : enumerate_standard(p, h, d / 2, w)) polys.push_back(images.image(s));
    rep.dim_image = rank_by_word(polys, h);
  }
  return rep;
}

nlohmann::json InjectivityReport::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["h"] = h;
  j["d"] = d;
  j["w"] = w;
  j["n_standard"] = n_standard;
  j["rank"] = rank;
  j["verdict"] = pass() ? "pass" : "fail";
  return j;
}

InjectivityReport verify_injectivity(int p, int h, int d, int w) {
  InjectivityReport rep;
  rep.p = p;
  rep.h = h;
  rep.d = d;
  rep.w = w;
  StandardImages images(p, h);
  std::vector<Poly> polys;
  for (const auto& s : enumerate_standard(p, h, d, w)) polys.push_back(images.image(s));
  rep.n_standard = polys.size();
  rep.rank = rank_by_word(polys, h);
  return rep;
}

}  // namespace pfarc
