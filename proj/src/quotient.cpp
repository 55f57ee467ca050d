#include "pfarc/quotient.hpp"

#include <algorithm>
#include <numeric>

#include "pfarc/pfaffian.hpp"

namespace pfarc {

std::vector<GenKey> x_generators(int p, int max_weight) {
  std::vector<GenKey> gens;
  for (int k = 0; k <= max_weight; ++k) {
    for (int u = 1; u <= p; ++u) {
      for (int v = u + 1; v <= p; ++v) gens.push_back(pack_gen(k, u, v));
    }
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

namespace {

void collect_monomials(const std::vector<GenKey>& gens, std::size_t start, int rem_d, int rem_w,
                       std::vector<GenKey>& word, std::vector<Monomial>& out) {
  if (rem_d == 0) {
    if (rem_w == 0) out.push_back(Monomial::from_word(word));
    return;
  }
  for (std::size_t idx = start; idx < gens.size(); ++idx) {
    const int k = gen_weight(gens[idx]);
    // gens are sorted by weight first, so every later choice weighs at least k
    if (k * rem_d > rem_w) break;
    word.push_back(gens[idx]);
    collect_monomials(gens, idx, rem_d - 1, rem_w - k, word, out);
    word.pop_back();
  }
}

std::vector<std::vector<int>> subsets(int p, int size) {
  std::vector<std::vector<int>> out;
  if (size < 0 || size > p) return out;
  std::vector<bool> mask(static_cast<std::size_t>(p), false);
  std::fill(mask.begin(), mask.begin() + size, true);
  do {
    std::vector<int> rows;
    for (int r = 1; r <= p; ++r) {
      if (mask[static_cast<std::size_t>(r - 1)]) rows.push_back(r);
    }
    out.push_back(std::move(rows));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

}  // namespace

std::vector<Monomial> monomials_of_bidegree(const std::vector<GenKey>& gens, int degree, int weight) {
  std::vector<Monomial> out;
  if (degree < 0 || weight < 0) return out;
  std::vector<GenKey> sorted = gens;
  std::sort(sorted.begin(), sorted.end());
  std::vector<GenKey> word;
  collect_monomials(sorted, 0, degree, weight, word, out);
  return out;
}

GradedPiece::GradedPiece(int p, int h, int d, int w) : p_(p), h_(h), d_(d), w_(w) {
  basis_ = monomials_of_bidegree(x_generators(p, std::max(w, 0)), d, w);
  std::sort(basis_.begin(), basis_.end(), [](const Monomial& a, const Monomial& b) { return b < a; });
  index_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::optional<std::size_t> GradedPiece::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVec GradedPiece::to_vector(const Poly& f) const {
  if (!f.is_zero() && !(f.alphabet() == Alphabet::x_ring(p_))) {
    throw AlphabetMismatch("polynomial is not over the X ring of the piece");
  }
  SparseVec v;
  v.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    auto idx = index_of(m);
    if (!idx) {
      throw std::invalid_argument("monomial " + to_string(m, RingKind::X) + " lies outside the (" +
                                  std::to_string(d_) + "," + std::to_string(w_) + ") piece");
    }
    v.emplace_back(static_cast<std::uint32_t>(*idx), c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

Poly GradedPiece::to_poly(const SparseVec& v) const {
  std::vector<Poly::Term> terms;
  terms.reserve(v.size());
  for (const auto& [col, c] : v) terms.emplace_back(basis_.at(col), c);
  return Poly(Alphabet::x_ring(p_), std::move(terms));
}

std::vector<Poly> ideal_span(int p, int h, int d, int w) {
  if (h < 0 || h % 2 != 0) throw std::invalid_argument("ideal_span needs an even minor size");
  std::vector<Poly> out;
  const int cof_d = d - h / 2;
  if (cof_d < 0 || w < 0 || h > p) return out;
  const Alphabet alpha = Alphabet::x_ring(p);
  for (const auto& rows : subsets(p, h)) {
    const MinorSpec minor(rows);
    for (int n = 0; n <= w; ++n) {
      const Poly pf = pfaffian_derivative(p, minor, n);
      if (pf.is_zero()) continue;
      for (const Monomial& m : monomials_of_bidegree(x_generators(p, w - n), cof_d, w - n)) {
        out.push_back(Poly::monomial(alpha, m) * pf);
      }
    }
  }
  return out;
}

std::size_t exact_rank(const std::vector<Poly>& vectors, const GradedPiece& piece) {
  IntegerEchelon ech(piece.dim());
  for (const Poly& f : vectors) ech.insert(piece.to_vector(f));
  return ech.rank();
}

nlohmann::json BasisCertificate::to_json() const {
  nlohmann::json j;
  j["piece"] = {{"p", p}, {"h", h}, {"d", d}, {"w", w}};
  j["dim_ambient"] = dim_ambient;
  j["rank_ideal"] = rank_ideal;
  j["n_standard"] = n_standard;
  j["rank_combined"] = rank_combined;
  j["integral_spanning"] = integral_spanning;
  j["witness"] = witness ? nlohmann::json(*witness) : nlohmann::json(nullptr);
  j["verdict"] = pass ? "pass" : "fail";
  return j;
}

BasisCertificate verify_standard_basis(int p, int h, int d, int w) {
  if (h < 0 || h % 2 != 0) throw std::invalid_argument("verify_standard_basis needs an even h");
  BasisCertificate cert;
  cert.p = p;
  cert.h = h;
  cert.d = d;
  cert.w = w;
  const GradedPiece piece(p, h, d, w);
  cert.dim_ambient = piece.dim();

  IntegerEchelon ech(piece.dim());
  for (const Poly& g : ideal_span(p, h + 2, d, w)) ech.insert(piece.to_vector(g));
  cert.rank_ideal = ech.rank();

  const std::vector<StandardProduct> standard = enumerate_standard(p, h, d, w);
  cert.n_standard = standard.size();
  FactorValues values(p);
  for (const auto& s : standard) ech.insert(piece.to_vector(values.product(s.js)));
  cert.rank_combined = ech.rank();

  // With a pivot on every column the rows are triangular, so they generate
  // Z^n exactly when every pivot is 1. A missing or non-unit pivot at column c
  // means the unit vector e_c is not an integer combination of the rows.
  cert.integral_spanning = ech.spans_full_lattice();
  if (!cert.integral_spanning) {
    if (auto c = ech.first_missing_pivot()) cert.witness = to_string(piece.basis()[*c], RingKind::X);
  }
  cert.pass = cert.rank_combined == cert.rank_ideal + cert.n_standard &&
              cert.dim_ambient - cert.rank_ideal == cert.n_standard && cert.integral_spanning;
  return cert;
}

Straightener::Straightener(int p, int h, int d, int w)
    : p_(p), h_(h), piece_(p, h, d, w), echelon_(piece_.dim()) {
  if (h < 0 || h % 2 != 0) throw std::invalid_argument("straighten needs an even h");
  for (const Poly& g : ideal_span(p, h + 2, d, w)) echelon_.insert(piece_.to_vector(g));
  standard_ = enumerate_standard(p, h, d, w);
  FactorValues values(p);
  for (std::size_t s = 0; s < standard_.size(); ++s) {
    SparseVec tag{{static_cast<std::uint32_t>(s), BigInt(1)}};
    auto res = echelon_.insert(piece_.to_vector(values.product(standard_[s].js)), std::move(tag));
    if (!res.new_pivot) independent_ = false;
  }
}

std::vector<StraightenTerm> Straightener::straighten(const Poly& f) const {
  if (f.is_zero()) return {};
  if (!(f.alphabet() == Alphabet::x_ring(p_))) throw AlphabetMismatch("polynomial is not over the X ring");
  auto bd = f.bidegree();
  if (!bd) throw std::invalid_argument("straighten needs a homogeneous polynomial");
  if (bd->first != piece_.degree() || bd->second != piece_.weight()) {
    throw std::invalid_argument("polynomial has bidegree (" + std::to_string(bd->first) + "," +
                                std::to_string(bd->second) + "), expected (" + std::to_string(piece_.degree()) +
                                "," + std::to_string(piece_.weight()) + ")");
  }
  SparseVec vec = piece_.to_vector(f);
  auto red = echelon_.reduce(vec);
  if (!red.in_lattice) {
    if (echelon_.in_rational_span(std::move(vec))) {
      throw NonIntegralSolution("straightening has no integral solution");
    }
    throw std::runtime_error("polynomial is not in the span of the standard products and the ideal");
  }
  std::vector<StraightenTerm> out;
  out.reserve(red.tag.size());
  for (auto& [s, c] : red.tag) out.push_back({standard_[s], std::move(c)});
  return out;
}

std::vector<StraightenTerm> straighten(const Poly& f, int p, int h, int d, int w) {
  return Straightener(p, h, d, w).straighten(f);
}

Poly recombine(int p, const std::vector<StraightenTerm>& terms) {
  FactorValues values(p);
  Poly r(Alphabet::x_ring(p));
  for (const auto& t : terms) r += values.product(t.product.js).scaled(t.coeff);
  return r;
}

namespace {

// Inverse of the (n x n) matrix c[r][s] = C(k0 + r, s) over Q. Its
// determinant is 1, so the inverse is integral; this is checked.
std::vector<std::vector<BigInt>> inverse_binomial(int k0, int n) {
  std::vector<std::vector<BigRational>> a(n, std::vector<BigRational>(2 * n));
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) a[r][s] = BigRational(binom(k0 + r, s));
    a[r][n + r] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("binomial matrix is singular");
    std::swap(a[piv], a[col]);
    const BigRational inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const BigRational f = a[r][col];
      for (int s = 0; s < 2 * n; ++s) a[r][s] -= f * a[col][s];
    }
  }
  std::vector<std::vector<BigInt>> out(n, std::vector<BigInt>(n));
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      const BigRational& x = a[r][n + s];
      if (boost::multiprecision::denominator(x) != 1) throw std::logic_error("binomial inverse is not integral");
      out[r][s] = boost::multiprecision::numerator(x);
    }
  }
  return out;
}

void check_rows(const std::vector<int>& rows, int p, const char* what) {
  if (rows.empty() || rows.size() % 2 != 0) {
    throw std::invalid_argument(std::string(what) + " must have a positive even number of rows");
  }
  for (int r : rows) {
    if (r < 1 || r > p) throw std::invalid_argument(std::string(what) + " has a row outside 1..p");
  }
}

}  // namespace

Relation generate_relation(int p, const RelationSpec& spec) {
  check_rows(spec.u, p, "u");
  check_rows(spec.u_prime, p, "u'");
  const int h = static_cast<int>(spec.u.size());
  const int hp = static_cast<int>(spec.u_prime.size());
  // h < h' is allowed when the whole first factor is antisymmetrized
  if (h < hp && spec.i != h) throw std::invalid_argument("relation needs h >= h' unless i = h");
  if (spec.i < 0 || spec.i > h || spec.j < 0 || spec.j > hp) throw std::invalid_argument("i or j out of range");
  if (spec.m < 0 || spec.k0 < 0 || spec.k0 > spec.m) throw std::invalid_argument("relation needs 0 <= k0 <= m");
  const int l0 = spec.i + spec.j - h - 1;
  if (l0 < 0) throw std::invalid_argument("relation needs i + j >= h + 1");
  std::vector<BigInt> seed = spec.seed;
  if (seed.empty()) seed.assign(static_cast<std::size_t>(l0 + 1), BigInt(0));
  if (static_cast<int>(seed.size()) != l0 + 1) {
    throw std::invalid_argument("seed must hold l0 + 1 = " + std::to_string(l0 + 1) + " coefficients");
  }

  const auto inv = inverse_binomial(spec.k0, l0 + 1);
  std::vector<BigInt> beta(static_cast<std::size_t>(l0 + 1));
  for (int l = 0; l <= l0; ++l) {
    for (int r = 0; r <= l0; ++r) beta[l] += inv[l][r] * seed[r];
  }
  Relation rel;
  rel.h = h;
  rel.h_prime = hp;
  rel.weight = spec.m;
  rel.coefficients.resize(static_cast<std::size_t>(spec.m + 1));
  for (int k = 0; k <= spec.m; ++k) {
    for (int l = 0; l <= std::min(k, l0); ++l) rel.coefficients[k] += binom(k, l) * beta[l];
  }

  // X lists the antisymmetrized rows: the last i of u then the last j of u'.
  const std::vector<int> head_u(spec.u.begin(), spec.u.end() - spec.i);
  const std::vector<int> head_up(spec.u_prime.begin(), spec.u_prime.end() - spec.j);
  std::vector<int> xs(spec.u.end() - spec.i, spec.u.end());
  xs.insert(xs.end(), spec.u_prime.end() - spec.j, spec.u_prime.end());
  const int n = spec.i + spec.j;

  rel.value = Poly(Alphabet::x_ring(p));
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  std::fill(mask.begin(), mask.begin() + spec.i, true);
  do {
    std::vector<int> first = head_u;
    std::vector<int> second = head_up;
    int inversions = 0;
    int taken = 0;
    for (int t = 0; t < n; ++t) {
      if (mask[static_cast<std::size_t>(t)]) {
        first.push_back(xs[t]);
        inversions += t - taken;
        ++taken;
      } else {
        second.push_back(xs[t]);
      }
    }
    const int sign = inversions % 2 == 0 ? 1 : -1;
    for (int k = 0; k <= spec.m; ++k) {
      const BigInt& a = rel.coefficients[k];
      if (a == 0) continue;
      const Poly left = jseq_value(p, first, spec.m - k);
      if (left.is_zero()) continue;
      const Poly right = jseq_value(p, second, k);
      if (right.is_zero()) continue;
      rel.value += (left * right).scaled(sign * a);
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return rel;
}

RelationCheck check_relation(int p, const Relation& rel) {
  RelationCheck out;
  out.identically_zero = rel.value.is_zero();
  const GradedPiece piece(p, rel.h, rel.degree(), rel.weight);
  IntegerEchelon ech(piece.dim());
  for (const Poly& g : ideal_span(p, rel.h + 2, rel.degree(), rel.weight)) ech.insert(piece.to_vector(g));
  out.rank_before = ech.rank();
  if (out.identically_zero) {
    out.in_ideal_rational = out.in_ideal_integral = true;
    out.rank_after = out.rank_before;
    return out;
  }
  const SparseVec vec = piece.to_vector(rel.value);
  out.in_ideal_integral = ech.reduce(vec).in_lattice;
  out.in_ideal_rational = ech.in_rational_span(vec);
  out.rank_after = out.rank_before + (out.in_ideal_rational ? 0 : 1);
  return out;
}

std::vector<CuratedRelation> curated_relation_suite() {
  auto make = [](int p, std::vector<int> u, std::vector<int> up, int i, int j, int k0, int m,
                 std::vector<long> seed) {
    CuratedRelation c{p, {std::move(u), std::move(up), i, j, k0, m, {}}};
    for (long s : seed) c.spec.seed.emplace_back(s);
    return c;
  };
  return {
      // h = h' = 2 on four rows
      make(4, {2, 1}, {4, 3}, 2, 1, 0, 0, {1}),
      make(4, {2, 1}, {4, 3}, 2, 1, 0, 1, {1}),
      make(4, {2, 1}, {4, 3}, 2, 1, 1, 1, {1}),
      make(4, {2, 1}, {4, 3}, 2, 1, 1, 2, {2}),
      make(4, {2, 1}, {4, 3}, 2, 1, 2, 3, {-1}),
      make(4, {3, 1}, {4, 2}, 2, 2, 0, 1, {1, 0}),
      make(4, {3, 1}, {4, 2}, 2, 2, 0, 2, {0, 1}),
      make(4, {3, 1}, {4, 2}, 2, 2, 1, 3, {1, 1}),
      make(4, {3, 1}, {4, 2}, 2, 2, 1, 3, {3, -2}),
      make(4, {4, 2}, {3, 1}, 1, 2, 0, 2, {1}),
      make(4, {2, 1}, {2, 1}, 2, 1, 0, 1, {1}),
      make(4, {4, 3}, {2, 1}, 2, 1, 3, 3, {1}),
      // whole first factor antisymmetrized, h = 2 < h' = 4
      make(5, {2, 1}, {5, 4, 3, 1}, 2, 1, 0, 0, {1}),
      make(5, {4, 2}, {5, 3, 2, 1}, 2, 2, 0, 1, {1, -1}),
      // h = 4, h' = 2 on six rows
      make(6, {4, 3, 2, 1}, {6, 5}, 4, 1, 0, 0, {1}),
      make(6, {4, 3, 2, 1}, {6, 5}, 4, 1, 0, 1, {1}),
      make(6, {4, 3, 2, 1}, {6, 5}, 4, 1, 1, 2, {2}),
      make(6, {6, 4, 3, 1}, {5, 2}, 3, 2, 0, 1, {1}),
      make(6, {4, 3, 2, 1}, {6, 5}, 4, 2, 0, 2, {1, 2}),
      make(6, {4, 3, 2, 1}, {6, 5}, 4, 2, 1, 3, {1, -1}),
      // h = h' = 4
      make(6, {6, 5, 4, 3}, {4, 3, 2, 1}, 2, 3, 0, 1, {1}),
      make(6, {6, 5, 3, 1}, {5, 4, 2, 1}, 3, 2, 1, 2, {1}),
      // five rows: the size-6 ideal is zero, so the relation vanishes identically
      make(5, {5, 4, 3, 2}, {4, 3, 2, 1}, 4, 1, 0, 1, {1}),
      make(5, {5, 3, 2, 1}, {5, 4, 2, 1}, 3, 2, 0, 2, {1}),
      // zero seed
      make(4, {2, 1}, {4, 3}, 2, 1, 0, 1, {0}),
  };
}

nlohmann::json to_json(const RelationSpec& spec) {
  nlohmann::json j;
  j["u"] = spec.u;
  j["u_prime"] = spec.u_prime;
  j["i"] = spec.i;
  j["j"] = spec.j;
  j["k0"] = spec.k0;
  j["m"] = spec.m;
  nlohmann::json seed = nlohmann::json::array();
  for (const auto& s : spec.seed) seed.push_back(s.str());
  j["seed"] = seed;
  return j;
}

}  // namespace pfarc
