#pragma once

// Number abstraction shared by the analytic engines: exact rationals for
// bit-exact identities, double for everything numeric.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>

namespace mvbeta {

/// Arbitrary-precision rational, always normalized (lowest terms, positive
/// denominator).
using Rational = boost::multiprecision::number<
    boost::multiprecision::cpp_rational_backend,
    boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

template <class S>
concept Scalar = std::floating_point<S> || std::same_as<S, Rational>;

template <Scalar S>
S from_int(long long v) {
  return S(v);
}

template <Scalar S>
S ratio(long long num, long long den) {
  return S(num) / S(den);
}

template <Scalar S>
S half() {
  return ratio<S>(1, 2);
}

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

inline std::string format_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// 17 significant digits, "." separator regardless of locale.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace detail {

inline bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline BigInt parse_bigint(std::string_view s) {
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  BigInt v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return negative ? BigInt(-v) : v;
}

}  // namespace detail

/// Parses "p" or "p/q" (q > 0). Throws std::invalid_argument otherwise.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!detail::is_integer_literal(num))
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "': expected p or p/q with integer p, q");
  if (slash == std::string_view::npos) return Rational(detail::parse_bigint(num));
  const std::string_view den = text.substr(slash + 1);
  if (!detail::is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "': denominator must be a positive integer");
  const BigInt d = detail::parse_bigint(den);
  if (d == 0)
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "': zero denominator");
  return Rational(detail::parse_bigint(num), d);
}

/// Accepts a rational literal or a decimal floating-point literal.
inline double parse_real(std::string_view text) {
  if (text.find('/') != std::string_view::npos)
    return to_double(parse_rational(text));
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  return v;
}

}  // namespace mvbeta
