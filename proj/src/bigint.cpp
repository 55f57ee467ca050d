#include "pfarc/bigint.hpp"

#include <stdexcept>

namespace pfarc {

BigInt binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, cur_s = 0;
  BigInt old_t = 0, cur_t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

std::string to_string(const BigRational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw std::invalid_argument("malformed integer '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') throw std::invalid_argument("malformed integer '" + text + "'");
  }
  BigInt v(text.substr(i));
  return text[0] == '-' ? BigInt(-v) : v;
}

BigRational parse_bigrational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return BigRational(parse_bigint(text));
  const BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return BigRational(parse_bigint(text.substr(0, slash)), den);
}

}  // namespace pfarc
