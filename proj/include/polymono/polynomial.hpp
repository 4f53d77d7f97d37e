#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace polymono {

/// Univariate polynomial with real coefficients, stored in ascending degree.
///
/// Trailing zero coefficients are always trimmed, so two polynomials that
/// represent the same function compare equal. The zero polynomial is stored
/// as the single coefficient 0 and reports degree 0.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(std::size_t k, double c = 1.0) {
    std::vector<double> v(k + 1, 0.0);
    v[k] = c;
    return Polynomial(std::move(v));
  }

  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

  /// Coefficient of x^k; zero beyond the degree.
  double operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  /// Horner evaluation.
  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Largest absolute coefficient (0 for the zero polynomial).
  double max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  bool operator==(const Polynomial&) const = default;

 private:
  void normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
  }

  std::vector<double> coeffs_;
};

inline double eval(const Polynomial& p, double x) { return p(x); }

inline Polynomial derivative(const Polynomial& p) {
  if (p.degree() == 0) return Polynomial{};
  std::vector<double> d(p.degree());
  for (std::size_t k = 1; k <= p.degree(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return Polynomial(std::move(d));
}

/// Antiderivative with constant term `c0`.
inline Polynomial antiderivative(const Polynomial& p, double c0 = 0.0) {
  std::vector<double> a(p.degree() + 2);
  a[0] = c0;
  for (std::size_t k = 0; k <= p.degree(); ++k) a[k + 1] = p[k] / static_cast<double>(k + 1);
  return Polynomial(std::move(a));
}

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.degree(), b.degree()) + 1);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return Polynomial(std::move(c));
}

inline Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.degree(), b.degree()) + 1);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return Polynomial(std::move(c));
}

inline Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

inline Polynomial operator*(const Polynomial& p, double s) { return s * p; }

inline Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
inline Polynomial sub(const Polynomial& a, const Polynomial& b) { return a - b; }
inline Polynomial scale(const Polynomial& p, double s) { return s * p; }

/// Largest coefficient-wise deviation |a_k - b_k| over all k.
inline double max_coeff_diff(const Polynomial& a, const Polynomial& b) {
  double m = 0.0;
  const std::size_t n = std::max(a.degree(), b.degree()) + 1;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

/// Thrown by `parse_polynomial`; `position()` is the byte offset of the error.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  Polynomial parse() {
    std::vector<double> coeffs;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) break;
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      auto [c, k] = term();
      if (coeffs.size() <= k) coeffs.resize(k + 1, 0.0);
      coeffs[k] += sign * c;
      first = false;
    }
    return Polynomial(std::move(coeffs));
  }

 private:
  // term := number ['*' power] | number '/' number ['*' power] | power
  std::pair<double, std::size_t> term() {
    if (at_end()) fail("expected term");
    if (peek() == 'x') return {1.0, power()};
    double c = number();
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      double den = number();
      if (den == 0.0) fail("zero denominator", at);
      c /= den;
      skip_ws();
    }
    if (!at_end() && peek() == '*') {
      ++pos_;
      skip_ws();
      if (at_end() || peek() != 'x') fail("expected 'x'");
      return {c, power()};
    }
    return {c, 0};
  }

  std::size_t power() {
    ++pos_;  // 'x'
    skip_ws();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_ws();
    const std::size_t at = pos_;
    if (at_end()) fail("expected exponent");
    if (peek() == '-') fail("negative exponent", at);
    std::size_t end = pos_;
    while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) != 0)) ++end;
    if (end == pos_) fail("expected integer exponent", at);
    if (end < s_.size() && (s_[end] == '.' || s_[end] == 'e' || s_[end] == 'E'))
      fail("non-integer exponent", at);
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + end, k);
    if (ec != std::errc{} || k > kMaxExponent) fail("exponent out of range", at);
    pos_ = end;
    return k;
  }

  double number() {
    const std::size_t at = pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{} || ptr == s_.data() + pos_) fail("expected number", at);
    // from_chars accepts "inf"/"nan"; coefficients must be finite.
    if (!std::isfinite(v)) fail("non-finite coefficient", at);
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())) != 0) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  static constexpr std::size_t kMaxExponent = 1024;

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string shortest(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace detail

/// Parses `c`, `c*x`, `c*x^k`, `x^k` and `x` terms joined by `+`/`-`.
/// Coefficients may be decimal or rational (`a/b`) literals.
inline Polynomial parse_polynomial(std::string_view text) { return detail::PolyParser(text).parse(); }

/// Ascending-degree text form accepted by `parse_polynomial`. Coefficients are
/// written in shortest round-trip form, so parsing the result is exact.
inline std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k <= p.degree(); ++k) {
    const double c = p[k];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (k == 0) {
      out += detail::shortest(mag);
      continue;
    }
    if (mag != 1.0) out += detail::shortest(mag) + "*";
    out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace polymono
