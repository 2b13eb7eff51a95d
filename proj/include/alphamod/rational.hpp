#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "alphamod/errors.hpp"

namespace alphamod {

// Exact arithmetic for exponents, smoothness indices and alpha. int64
// numerators/denominators are far beyond anything the index calculus needs.
using Rational = boost::rational<std::int64_t>;

inline Rational rat(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  return Rational(num, den);
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::int64_t floor_rat(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && (r.numerator() < 0) != (r.denominator() < 0)) --q;
  return q;
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "a/b", integers, and finite decimal strings ("0.45" -> 9/20).
inline std::optional<Rational> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  auto parse_int = [](std::string_view t, std::int64_t& out) -> bool {
    if (t.empty()) return false;
    bool neg = false;
    std::size_t i = 0;
    if (t[0] == '+' || t[0] == '-') {
      neg = t[0] == '-';
      i = 1;
      if (t.size() == 1) return false;
    }
    std::int64_t v = 0;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
      if (v > (INT64_MAX - (t[i] - '0')) / 10) return false;
      v = v * 10 + (t[i] - '0');
    }
    out = neg ? -v : v;
    return true;
  };
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t num = 0, den = 0;
    if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::int64_t whole = 0;
    std::string_view head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (head.empty() || head == "+" || head == "-") {
      whole = 0;
    } else if (!parse_int(head, whole)) {
      return std::nullopt;
    }
    if (tail.empty() || tail.size() > 15) return std::nullopt;
    std::int64_t frac = 0;
    if (!parse_int(tail, frac) || frac < 0) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    bool neg = !head.empty() && head[0] == '-';
    Rational mag = Rational(whole < 0 ? -whole : whole) + Rational(frac, scale);
    return neg ? -mag : mag;
  }
  std::int64_t v = 0;
  if (!parse_int(s, v)) return std::nullopt;
  return Rational(v);
}

// A Lebesgue exponent p in (0, inf], stored as its reciprocal u = 1/p so that
// p = inf is the exact value u = 0 and all index formulas stay linear in u.
struct Exponent {
  Rational u{0};

  static Exponent from_u(const Rational& u) {
    if (u < 0) throw DomainError("exponent reciprocal must be >= 0");
    return Exponent{u};
  }
  static Exponent from_p(const Rational& p) {
    if (p <= 0) throw DomainError("exponent must be positive");
    return Exponent{Rational(1) / p};
  }
  static Exponent infinity() { return Exponent{Rational(0)}; }

  // Note: == against raw integers must be avoided on this Boost version
  // (C++20 rewritten-candidate recursion in boost::rational); compare
  // numerators or full Rational values instead.
  bool is_infinite() const { return u.numerator() == 0; }
  Rational p() const {
    if (is_infinite()) throw DomainError("exponent is infinite");
    return Rational(1) / u;
  }
  double p_double() const { return 1.0 / to_double(u); }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.u == b.u; }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return a.u != b.u; }
};

// Parses an exponent value as written on a command line: "inf", "2", "1/2", "0.5".
inline std::optional<Exponent> parse_exponent(std::string_view s) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return Exponent::infinity();
  auto r = parse_rational(s);
  if (!r || *r <= 0) return std::nullopt;
  return Exponent::from_p(*r);
}

inline std::string to_string(const Exponent& e) {
  if (e.is_infinite()) return "inf";
  return to_string(e.p());
}

}  // namespace alphamod
