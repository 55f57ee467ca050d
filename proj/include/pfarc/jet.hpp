#pragma once

// The jet coordinate ring B = Z[a^(k)_{il}], the homomorphism Q_h from the
// X ring, tableau words and leading monomials, and the infinitesimal action
// of the truncated symplectic jet group.

#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfarc/order.hpp"
#include "pfarc/ring.hpp"
#include "pfarc/standard.hpp"

namespace pfarc {

/// Ring homomorphism x^(k)_{uv} -> dbar^k sum_i (a_{u,2i-1} a_{v,2i} - a_{v,2i-1} a_{u,2i}).
/// Generator images are cached; the cache is guarded so one map can be shared.
class JetMap {
 public:
  /// Throws std::invalid_argument on odd or negative h.
  JetMap(int p, int h);

  int p() const { return p_; }
  int h() const { return h_; }
  Alphabet target() const { return Alphabet::jet_ring(p_, h_); }

  Poly image(GenKey x) const;
  Poly apply(const Poly& f) const;

 private:
  int p_, h_;
  mutable std::mutex mu_;
  mutable std::map<GenKey, Poly> cache_;
};

Poly qh(int p, int h, const Poly& f);

inline constexpr std::uint32_t kStar = std::numeric_limits<std::uint32_t>::max();

/// Rows of h entries in display order (column h first, column 1 last). An
/// entry is a packed a^(k)_{il} with l equal to its column, or kStar.
struct Tableau {
  int h = 0;
  std::vector<std::vector<std::uint32_t>> rows;

  /// Row-major concatenation; words compare lexicographically with star
  /// above every entry and a proper prefix below its extensions.
  std::vector<std::uint32_t> word() const;
  friend bool operator==(const Tableau&, const Tableau&) = default;
};

/// Column l collects the factors with coordinate index l, sorted ascending
/// under (k, i); columns are padded with stars at the bottom.
Tableau tableau_of(const Monomial& m, int h);
Monomial monomial_of(const Tableau& t);
std::string to_string(const Tableau& t);

/// Maximum monomial of f under the tableau word order, with its coefficient.
/// Throws std::invalid_argument on zero input.
std::pair<Monomial, BigInt> leading_monomial(const Poly& f, int h);

/// Row a holds a^(k)_{u,l} for the pair (u, k) at position l of es[a], stars
/// beyond its size. Throws std::invalid_argument unless es is the standard
/// lift of its norms and every size is at most h.
Tableau T_map(const std::vector<ESeq>& es, int h);

struct LeadingCheck {
  bool pass = false;
  Monomial leading;
  BigInt coeff;
  Monomial expected;
};

LeadingCheck verify_leading(const StandardProduct& sp, int p, int h);

/// Element of sp_h acting at jet level m.
struct SpElement {
  std::vector<std::vector<BigRational>> g;
  int m = 0;

  int h() const { return static_cast<int>(g.size()); }
  /// Throws std::invalid_argument unless g is h x h with g^T J + J g = 0.
  void validate() const;
};

/// J = blockdiag([[0, 1], [-1, 0]], ...), the form of sum dz_{2i-1} ^ dz_{2i}.
std::vector<std::vector<BigRational>> symplectic_form(int h);

/// The h(h+1)/2 elements -J S, S running over the symmetric unit matrices
/// E_ll and E_ab + E_ba (a < b); each is validated.
std::vector<SpElement> sp_basis(int h, int m);

/// Derivation a^(k)_{il} -> sum_l' g_{ll'} a^(k-m)_{il'} (zero for k < m),
/// extended by the Leibniz rule.
QPoly sp_action(const SpElement& g, const QPoly& f);
QPoly sp_action(const SpElement& g, const Poly& f);

struct InvarianceReport {
  int p = 0, h = 0, k_max = 0, m_max = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::optional<std::string> witness;
  bool pass() const { return failures == 0; }
  nlohmann::json to_json() const;
};

/// sp_action(g, Q_h(x^(k)_{uv})) == 0 for every basis element, level m <= m_max,
/// u < v <= p and k <= k_max.
InvarianceReport verify_invariance(int p, int h, int k_max, int m_max);

struct DimensionReport {
  int p = 0, h = 0, d = 0, w = 0, m_max = 0;
  std::size_t dim_piece = 0;
  std::size_t dim_kernel = 0;
  std::size_t dim_image = 0;
  bool pass() const { return dim_kernel == dim_image; }
  nlohmann::json to_json() const;
};

/// All monomials of the jet ring with p copies, h coordinates, degree d and weight w.
std::vector<Monomial> jet_monomials(int p, int h, int d, int w);

/// Joint kernel of the sp_action derivations (levels 0..m_max) on the (d, w)
/// piece of B over Q, against the rank of Q_h of the standard monomials of
/// x-degree d/2 and weight w. Here d is the degree in B.
DimensionReport invariant_dimension(int p, int h, int d, int w, int m_max);

struct InjectivityReport {
  int p = 0, h = 0, d = 0, w = 0;
  std::size_t n_standard = 0;
  std::size_t rank = 0;
  bool pass() const { return rank == n_standard; }
  nlohmann::json to_json() const;
};

/// Rank of {Q_h(S)} over the standard monomials of the (d, w) cell of the X ring.
InjectivityReport verify_injectivity(int p, int h, int d, int w);

}  // namespace pfarc
