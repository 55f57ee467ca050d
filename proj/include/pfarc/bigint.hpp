#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pfarc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigInt binom(long n, long k);

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets s, t with s*a + t*b = g.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t);

inline std::string to_string(const BigInt& v) { return v.str(); }
std::string to_string(const BigRational& v);

BigInt parse_bigint(const std::string& text);
BigRational parse_bigrational(const std::string& text);

}  // namespace pfarc
