#pragma once

// Finite graded pieces of the X ring, the Pfaffian ideals restricted to them,
// the standard-basis certificate, straightening, and the relation families
// obtained by antisymmetrizing products of two derived Pfaffians.

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "pfarc/echelon.hpp"
#include "pfarc/ring.hpp"
#include "pfarc/standard.hpp"

namespace pfarc {

/// Sorted generator keys x^(k)_{uv}, u < v <= p, k <= max_weight.
std::vector<GenKey> x_generators(int p, int max_weight);

/// All monomials of the given degree and weight over `gens`, unordered.
std::vector<Monomial> monomials_of_bidegree(const std::vector<GenKey>& gens, int degree, int weight);

/// The (d, w) component of the X ring on p rows. Basis sorted descending in
/// the monomial word order, so column 0 holds the largest monomial.
class GradedPiece {
 public:
  GradedPiece(int p, int h, int d, int w);

  int p() const { return p_; }
  int h() const { return h_; }
  int degree() const { return d_; }
  int weight() const { return w_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::optional<std::size_t> index_of(const Monomial& m) const;

  /// Throws std::invalid_argument when a monomial lies outside the piece.
  SparseVec to_vector(const Poly& f) const;
  Poly to_poly(const SparseVec& v) const;

 private:
  int p_, h_, d_, w_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

/// Spanning set of the (d, w) component of the ideal generated by the
/// size-h Pfaffians and their normalized derivatives: every product of a
/// cofactor monomial with dbar^n P(B) of matching bidegree.
std::vector<Poly> ideal_span(int p, int h, int d, int w);

/// Rank over Q, computed by integer-preserving elimination.
std::size_t exact_rank(const std::vector<Poly>& vectors, const GradedPiece& piece);

struct BasisCertificate {
  int p = 0, h = 0, d = 0, w = 0;
  std::size_t dim_ambient = 0;
  std::size_t rank_ideal = 0;
  std::size_t n_standard = 0;
  std::size_t rank_combined = 0;
  bool integral_spanning = false;
  std::optional<std::string> witness;  // first ambient monomial outside the lattice
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Checks that the standard monomials of size <= h form a Z-basis of the
/// (d, w) component of the quotient by the size-(h+2) Pfaffian ideal.
BasisCertificate verify_standard_basis(int p, int h, int d, int w);

class NonIntegralSolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct StraightenTerm {
  StandardProduct product;
  BigInt coeff;
};

/// Precomputed solver for one (p, h, d, w) cell.
class Straightener {
 public:
  Straightener(int p, int h, int d, int w);

  /// Integer coefficients c with f - sum c_S S in the ideal. Throws
  /// std::invalid_argument for input outside the cell and NonIntegralSolution
  /// when the solution is not integral.
  std::vector<StraightenTerm> straighten(const Poly& f) const;

  const GradedPiece& piece() const { return piece_; }
  const std::vector<StandardProduct>& standard() const { return standard_; }
  /// False if the standard images were found dependent modulo the ideal.
  bool independent() const { return independent_; }

 private:
  int p_, h_;
  GradedPiece piece_;
  std::vector<StandardProduct> standard_;
  IntegerEchelon echelon_;
  bool independent_ = true;
};

std::vector<StraightenTerm> straighten(const Poly& f, int p, int h, int d, int w);

/// Evaluates sum c_S * S in the X ring.
Poly recombine(int p, const std::vector<StraightenTerm>& terms);

/// Parameters of an antisymmetrized two-Pfaffian relation. Row lists are in
/// display order: u = (u_h, ..., u_1), u_prime = (u'_{h'}, ..., u'_1). The
/// last i rows of u and the last j rows of u_prime are antisymmetrized
/// together; seed holds a_{k0}, ..., a_{k0+l0} with l0 = i + j - h - 1.
struct RelationSpec {
  std::vector<int> u;
  std::vector<int> u_prime;
  int i = 0;
  int j = 0;
  int k0 = 0;
  int m = 0;
  std::vector<BigInt> seed;
};

struct Relation {
  int h = 0;
  int h_prime = 0;
  std::vector<BigInt> coefficients;  // a_0 .. a_m
  Poly value;
  int degree() const { return (h + h_prime) / 2; }
  int weight = 0;
};

/// Completes the seed through the inverse of the unimodular binomial matrix
/// C(k0 + r, c) and assembles
///   sum_k a_k sum_shuffles sign * dbar^(m-k)|u..| * dbar^k |u'..|.
Relation generate_relation(int p, const RelationSpec& spec);

struct RelationCheck {
  bool identically_zero = false;
  bool in_ideal_rational = false;
  bool in_ideal_integral = false;
  std::size_t rank_before = 0;
  std::size_t rank_after = 0;
};

/// Membership of the relation in the size-(h+2) Pfaffian ideal at its bidegree.
RelationCheck check_relation(int p, const Relation& rel);

struct CuratedRelation {
  int p;
  RelationSpec spec;
};

/// Fixed parameter tuples covering h in {2, 4} and m <= 3.
std::vector<CuratedRelation> curated_relation_suite();

nlohmann::json to_json(const RelationSpec& spec);

}  // namespace pfarc
