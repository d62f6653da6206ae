#pragma once

#include <string>
#include <string_view>

#include "sip/clopen.hpp"

namespace sip {

/// Class of a disjoint union.  Empty is neutral, the higher rank absorbs
/// the lower, equal ranks add degrees.
HomeoClass combine(const HomeoClass& a, const HomeoClass& b);

/// An ordered pair of bounded clopen sets, up to homeomorphism of each side.
struct ClassPair {
  HomeoClass p;
  HomeoClass q;

  static ClassPair zero() { return {}; }
  friend bool operator==(const ClassPair&, const ClassPair&) = default;
};

ClassPair pair_add(const ClassPair& x, const ClassPair& y);
ClassPair pair_neg(const ClassPair& x);
inline ClassPair pair_sub(const ClassPair& x, const ClassPair& y) {
  return pair_add(x, pair_neg(y));
}

/// (P1, Q1) ~ (P2, Q2) iff P1 + Q2 and P2 + Q1 are homeomorphic.
/// Reflexive and symmetric; not transitive.
bool sim(const ClassPair& x, const ClassPair& y);

/// Canonical signed reduction of a pair.  signed_class(x) == signed_class(y)
/// implies sim(x, y), but the converse fails and the map is not additive.
struct SignedClass {
  enum class Sign { zero, plus, minus };
  Sign sign = Sign::zero;
  Natural rank = 0;
  Natural degree = 0;

  friend bool operator==(const SignedClass&, const SignedClass&) = default;
};

SignedClass signed_class(const ClassPair& x);

std::string to_string(const ClassPair& x);
std::string to_string(const SignedClass& s);
ClassPair parse_class_pair(std::string_view text);

std::ostream& operator<<(std::ostream& os, const ClassPair& x);
std::ostream& operator<<(std::ostream& os, const SignedClass& s);

}  // namespace sip
