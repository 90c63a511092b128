#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace cmv {

// Expression templates are disabled so `auto x = a + b;` is a value.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

using Point = std::vector<Rational>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on garbage or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when integral.
std::string to_string(const Rational& value);
std::string to_string(const Point& point);

bool is_integral(const Rational& value);
bool is_integral(const Point& point);

Integer floor_of(const Rational& value);
Integer ceil_of(const Rational& value);

/// Narrowing conversion for lattice kernels; throws std::overflow_error when
/// the value does not fit.
std::int64_t to_int64(const Integer& value);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// binom(n, k) for n >= 0; zero when k < 0 or k > n.
Integer binomial(long n, long k);

/// Scales a nonzero rational vector to the unique primitive integer vector
/// pointing the same way.
std::vector<Integer> primitive_direction(const std::vector<Rational>& v);

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);
Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point scaled(const Point& a, const Rational& s);
Point zero_point(std::size_t dim);

}  // namespace cmv
