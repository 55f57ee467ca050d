#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfarc/order.hpp"
#include "pfarc/ring.hpp"

namespace pfarc {

/// A standard ordered product J_1 ... J_m with its unique standard lift.
struct StandardProduct {
  std::vector<JSeq> js;
  std::vector<ESeq> es;

  /// x-degree: each factor of size s contributes s/2.
  int degree() const;
  int weight() const;

  friend bool operator==(const StandardProduct& a, const StandardProduct& b) { return a.js == b.js; }
};

/// Greedy lift: E_1 is the maximum of E(J_1), E_{a+1} the largest element of
/// E(J_{a+1}) dominating E_a. Empty iff the product is not standard.
std::optional<std::vector<ESeq>> canonical_lift(const std::vector<JSeq>& js);

bool is_standard(const std::vector<JSeq>& js);

/// Every J of size 2..h_max (even, <= p) on rows 1..p with weight <= max_weight,
/// sorted ascending under j_prec.
std::vector<JSeq> candidate_factors(int p, int h_max, int max_weight);

/// All standard products with factor sizes in [2, h_max], x-degree d and
/// weight w, in depth-first order over j_prec-nondecreasing factor lists.
/// The empty product is the unique member of the (0, 0) cell.
std::vector<StandardProduct> enumerate_standard(int p, int h_max, int d, int w);

/// Same count as enumerate_standard(...).size(), memoized on (last lift,
/// next candidate, remaining degree, remaining weight).
std::uint64_t count_standard(int p, int h_max, int d, int w);

/// Product of the factor values in the X ring on p rows.
Poly evaluate(int p, const std::vector<JSeq>& js);

/// Memoized factor values for repeated evaluation. Not thread-safe; keep one
/// per worker.
class FactorValues {
 public:
  explicit FactorValues(int p) : p_(p) {}
  const Poly& value(const JSeq& j);
  Poly product(const std::vector<JSeq>& js);

 private:
  struct Key {
    std::vector<int> rows;
    int weight;
    friend bool operator<(const Key& a, const Key& b) {
      return a.weight != b.weight ? a.weight < b.weight : a.rows < b.rows;
    }
  };
  int p_;
  std::map<Key, Poly> cache_;
};

std::string to_string(const StandardProduct& sp);

}  // namespace pfarc
