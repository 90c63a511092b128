#include "cmv/rational.hpp"

#include <limits>
#include <stdexcept>

namespace cmv {

namespace {

bool is_decimal_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_decimal_integer(s)) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  if (is_integral(value)) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

std::string to_string(const Point& point) {
  std::string out = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ",";
    out += to_string(point[i]);
  }
  return out + ")";
}

bool is_integral(const Rational& value) {
  return boost::multiprecision::denominator(value) == 1;
}

bool is_integral(const Point& point) {
  for (const auto& c : point) {
    if (!is_integral(c)) return false;
  }
  return true;
}

Integer floor_of(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  Integer q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

Integer ceil_of(const Rational& value) { return -floor_of(-value); }

std::int64_t to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer does not fit in 64 bits: " + value.str());
  }
  return value.convert_to<std::int64_t>();
}

Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer result = 1;
  for (long i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

std::vector<Integer> primitive_direction(const std::vector<Rational>& v) {
  Integer den_lcm = 1;
  for (const auto& c : v) den_lcm = lcm(den_lcm, boost::multiprecision::denominator(c));
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& c : v) {
    Rational scaled = c * Rational(den_lcm);
    out.push_back(boost::multiprecision::numerator(scaled));
    g = gcd(g, out.back());
  }
  if (g == 0) throw std::invalid_argument("primitive_direction of the zero vector");
  for (auto& c : out) c /= g;
  return out;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

Point operator+(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw std::invalid_argument("point sum: dimension mismatch");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Point operator-(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw std::invalid_argument("point difference: dimension mismatch");
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point scaled(const Point& a, const Rational& s) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

Point zero_point(std::size_t dim) { return Point(dim, Rational(0)); }

}  // namespace cmv
