#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "alphamod/errors.hpp"
#include "alphamod/rational.hpp"

namespace alphamod {

// A pair of reciprocal exponents (u, v) = (1/p, 1/q) plus the dimension.
// All index formulas below are exact rational arithmetic.
struct IndexQuery {
  Rational u;  // 1/p, >= 0 (0 means p = inf)
  Rational v;  // 1/q, >= 0
  int n = 1;

  static IndexQuery from_reciprocals(const Rational& u, const Rational& v, int n) {
    if (u < 0 || v < 0) throw DomainError("reciprocal exponents must be >= 0");
    if (n < 1) throw DomainError("dimension must be >= 1");
    return IndexQuery{u, v, n};
  }
  static IndexQuery from_exponents(const Exponent& p, const Exponent& q, int n) {
    return from_reciprocals(p.u, q.u, n);
  }
};

// Lower sharp index: min{ 0, n(1-u-v), n(u-v) }.
inline Rational index_A(const IndexQuery& iq) {
  Rational a = Rational(0);
  Rational b = Rational(iq.n) * (Rational(1) - iq.u - iq.v);
  Rational c = Rational(iq.n) * (iq.u - iq.v);
  return std::min({a, b, c});
}

// Upper sharp index: max{ 0, n(1-u-v), n(u-v) }.
inline Rational index_B(const IndexQuery& iq) {
  Rational a = Rational(0);
  Rational b = Rational(iq.n) * (Rational(1) - iq.u - iq.v);
  Rational c = Rational(iq.n) * (iq.u - iq.v);
  return std::max({a, b, c});
}

enum class Region { A1, A2, A3, B1, B2, B3 };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::A1: return "A1";
    case Region::A2: return "A2";
    case Region::A3: return "A3";
    case Region::B1: return "B1";
    case Region::B2: return "B2";
    case Region::B3: return "B3";
  }
  return "?";
}

enum class IndexKind { Lower, Upper };  // A or B

// Region membership on the (u, v) quarter-plane. Closed regions: boundary
// points belong to every region touching them, so the result is a list.
inline std::vector<Region> classify_region(const IndexQuery& iq, IndexKind kind) {
  const Rational& u = iq.u;
  const Rational& v = iq.v;
  const Rational half(1, 2);
  const Rational one(1);
  std::vector<Region> out;
  if (kind == IndexKind::Lower) {
    if (v <= std::min(one - u, u)) out.push_back(Region::A1);
    if (u >= std::max(one - v, half)) out.push_back(Region::A2);
    if (u <= std::min(v, half)) out.push_back(Region::A3);
  } else {
    if (v >= std::max(one - u, u)) out.push_back(Region::B1);
    if (u <= std::min(one - v, half)) out.push_back(Region::B2);
    if (u >= std::max(v, half)) out.push_back(Region::B3);
  }
  return out;
}

// The closed-form value attached to one region label.
inline Rational region_piece_value(Region r, const IndexQuery& iq) {
  switch (r) {
    case Region::A1:
    case Region::B1: return Rational(0);
    case Region::A2:
    case Region::B2: return Rational(iq.n) * (Rational(1) - iq.u - iq.v);
    case Region::A3:
    case Region::B3: return Rational(iq.n) * (iq.u - iq.v);
  }
  throw DomainError("unknown region");
}

// Parameters of one alpha-modulation space M^{s,alpha}_{p,q}.
struct SpaceParams {
  Exponent p;
  Exponent q;
  Rational s{0};
  Rational alpha{0};
  int n = 1;

  void validate() const {
    if (alpha < 0 || alpha >= 1) throw DomainError("alpha must lie in [0,1)");
    if (n < 1) throw DomainError("dimension must be >= 1");
  }
};

struct EmbeddingVerdict {
  bool holds = false;
  Rational threshold{0};     // critical smoothness for the tested direction
  bool strict_required = false;  // threshold itself excluded when true
  std::vector<Region> regions;   // active index-function regions at the query
  std::string detail;
};

enum class HardyDirection { HardyToModulation, ModulationToHardy };

// Sharp embedding between the local Hardy scale and the alpha-modulation
// scale. p_hardy is the Hardy exponent (finite); sp carries (p,q,s,alpha,n)
// of the modulation space.
inline EmbeddingVerdict verdict_hardy_alpha(HardyDirection dir, const Exponent& p_hardy,
                                            const SpaceParams& sp) {
  sp.validate();
  if (p_hardy.is_infinite())
    throw DomainError("Hardy exponent must be finite; use the endpoint verdicts for p = inf");
  const Rational one(1);
  const Rational n(sp.n);
  EmbeddingVerdict out;
  if (dir == HardyDirection::HardyToModulation) {
    const Rational u1 = p_hardy.u;       // Hardy side
    const Rational u2 = sp.p.u;          // modulation side
    const Rational v2 = sp.q.u;
    IndexQuery iq = IndexQuery::from_reciprocals(u1, v2, sp.n);
    out.threshold = n * sp.alpha * (u2 - u1) + (one - sp.alpha) * index_A(iq);
    out.strict_required = v2 > u1;
    out.regions = classify_region(iq, IndexKind::Lower);
    bool s_ok = out.strict_required ? sp.s < out.threshold : sp.s <= out.threshold;
    out.holds = (u2 <= u1) && s_ok;
    out.detail = "requires 1/p2 <= 1/p1 and s " + std::string(out.strict_required ? "<" : "<=") +
                 " " + to_string(out.threshold);
  } else {
    const Rational u2 = p_hardy.u;       // Hardy side (target)
    const Rational u1 = sp.p.u;          // modulation side (source)
    const Rational v1 = sp.q.u;
    IndexQuery iq = IndexQuery::from_reciprocals(u2, v1, sp.n);
    out.threshold = n * sp.alpha * (u1 - u2) + (one - sp.alpha) * index_B(iq);
    out.strict_required = u2 > v1;
    out.regions = classify_region(iq, IndexKind::Upper);
    bool s_ok = out.strict_required ? sp.s > out.threshold : sp.s >= out.threshold;
    out.holds = (u2 <= u1) && s_ok;
    out.detail = "requires 1/p2 <= 1/p1 and s " + std::string(out.strict_required ? ">" : ">=") +
                 " " + to_string(out.threshold);
  }
  return out;
}

enum class EndpointCase { L1ToModulation, ModulationToL1, LinfToModulation, ModulationToLinf };

// Endpoint embeddings against L^1 and L^inf. sp is always the modulation
// space; for the L^inf cases the Hardy-scale side is fixed so only (s, q)
// (and p for the L^1 cases and ModulationToLinf) matter.
inline EmbeddingVerdict verdict_endpoint(EndpointCase c, const SpaceParams& sp) {
  sp.validate();
  const Rational one(1);
  const Rational n(sp.n);
  const Rational u = sp.p.u;
  const Rational v = sp.q.u;
  EmbeddingVerdict out;
  switch (c) {
    case EndpointCase::L1ToModulation: {
      IndexQuery iq = IndexQuery::from_reciprocals(one, v, sp.n);
      out.threshold = n * sp.alpha * (u - one) + (one - sp.alpha) * index_A(iq);
      out.strict_required = !sp.q.is_infinite();
      out.regions = classify_region(iq, IndexKind::Lower);
      bool s_ok = out.strict_required ? sp.s < out.threshold : sp.s <= out.threshold;
      out.holds = (u <= one) && s_ok;
      break;
    }
    case EndpointCase::ModulationToL1: {
      IndexQuery iq = IndexQuery::from_reciprocals(one, v, sp.n);
      out.threshold = n * sp.alpha * (u - one) + (one - sp.alpha) * index_B(iq);
      out.strict_required = sp.q.u < one;  // q > 1
      out.regions = classify_region(iq, IndexKind::Upper);
      bool s_ok = out.strict_required ? sp.s > out.threshold : sp.s >= out.threshold;
      out.holds = (u >= one) && s_ok;
      break;
    }
    case EndpointCase::LinfToModulation: {
      if (!sp.p.is_infinite())
        throw DomainError("LinfToModulation requires the modulation space to have p = inf");
      IndexQuery iq = IndexQuery::from_reciprocals(Rational(0), v, sp.n);
      out.threshold = (one - sp.alpha) * index_A(iq);
      out.strict_required = !sp.q.is_infinite();
      out.regions = classify_region(iq, IndexKind::Lower);
      out.holds = out.strict_required ? sp.s < out.threshold : sp.s <= out.threshold;
      break;
    }
    case EndpointCase::ModulationToLinf: {
      IndexQuery iq = IndexQuery::from_reciprocals(Rational(0), v, sp.n);
      out.threshold = n * sp.alpha * u + (one - sp.alpha) * index_B(iq);
      out.strict_required = sp.q.u < one;  // q > 1
      out.regions = classify_region(iq, IndexKind::Upper);
      out.holds = out.strict_required ? sp.s > out.threshold : sp.s >= out.threshold;
      break;
    }
  }
  out.detail = "threshold " + to_string(out.threshold) + (out.strict_required ? " (strict)" : "");
  return out;
}

// Embedding inside the alpha-modulation scale at one fixed alpha.
inline bool embeds_alpha_modulation(const SpaceParams& a, const SpaceParams& b) {
  a.validate();
  b.validate();
  if (a.alpha != b.alpha) throw DomainError("alpha mismatch");
  if (a.n != b.n) throw DomainError("dimension mismatch");
  const Rational u1 = a.p.u, v1 = a.q.u, u2 = b.p.u, v2 = b.q.u;
  const Rational n(a.n);
  if (!(u2 <= u1)) return false;
  Rational lhs = b.s / n - b.alpha * u2;
  Rational rhs = a.s / n - a.alpha * u1;
  if (v2 <= v1) return lhs <= rhs;
  const Rational w = Rational(1) - a.alpha;
  return lhs + w * v2 < rhs + w * v1;
}

// Embedding between the weighted sequence spaces underlying the block norms.
// alpha may equal 1 here (dyadic case).
inline bool embeds_sequence(const Exponent& q1, const Rational& s1, const Exponent& q2,
                            const Rational& s2, const Rational& alpha, int n) {
  if (alpha < 0 || alpha > 1) throw DomainError("alpha must lie in [0,1]");
  if (n < 1) throw DomainError("dimension must be >= 1");
  const Rational w = Rational(1) - alpha;
  const Rational nn(n);
  Rational lhs = w * q2.u + s2 / nn;
  Rational rhs = w * q1.u + s1 / nn;
  if (lhs < rhs) return true;
  return s1 == s2 && q2.u <= q1.u;
}

}  // namespace alphamod
