#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "alphamod/errors.hpp"
#include "alphamod/rational.hpp"

namespace alphamod {

// A finitely supported sequence of nonnegative values. For alpha < 1 the
// indices range over the integers (block indices k); for alpha = 1 they are
// dyadic levels j >= 0.
struct WeightedSequence {
  std::vector<std::pair<long long, double>> terms;

  static WeightedSequence from_terms(std::vector<std::pair<long long, double>> t) {
    for (const auto& [k, v] : t) {
      (void)k;
      if (!(v >= 0)) throw DomainError("sequence values must be nonnegative");
    }
    return WeightedSequence{std::move(t)};
  }
};

// Japanese bracket <k> = (1 + k^2)^{1/2}.
inline double bracket(double k) { return std::sqrt(1.0 + k * k); }

// Weight attached to index k in the sequence norm: <k>^{s/(1-alpha)} for
// alpha < 1, 2^{j s} for alpha = 1 (indices must then be naturals).
inline double sequence_weight(long long k, const Rational& s, const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw DomainError("alpha must lie in [0,1]");
  if (alpha == Rational(1)) {
    if (k < 0) throw DomainError("dyadic sequence indices must be >= 0");
    return std::pow(2.0, to_double(s) * static_cast<double>(k));
  }
  const double e = to_double(s / (Rational(1) - alpha));
  return std::pow(1.0 + static_cast<double>(k) * static_cast<double>(k), 0.5 * e);
}

// Weighted l^p norm ( sum_k (w_k |a_k|)^p )^{1/p}, sup-form at p = inf.
inline double seq_norm(const WeightedSequence& a, const Exponent& p, const Rational& s,
                       const Rational& alpha) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (const auto& [k, v] : a.terms) m = std::max(m, sequence_weight(k, s, alpha) * v);
    return m;
  }
  const double pd = p.p_double();
  double acc = 0.0;
  for (const auto& [k, v] : a.terms) acc += std::pow(sequence_weight(k, s, alpha) * v, pd);
  return std::pow(acc, 1.0 / pd);
}

}  // namespace alphamod
