#include "sip/sigcalc.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace sip {

HomeoClass combine(const HomeoClass& a, const HomeoClass& b) {
  if (a.empty) return b;
  if (b.empty) return a;
  if (a.rank != b.rank) return a.rank > b.rank ? a : b;
  return HomeoClass::of(a.rank, a.degree + b.degree);
}

ClassPair pair_add(const ClassPair& x, const ClassPair& y) {
  return ClassPair{combine(x.p, y.p), combine(x.q, y.q)};
}

ClassPair pair_neg(const ClassPair& x) { return ClassPair{x.q, x.p}; }

bool sim(const ClassPair& x, const ClassPair& y) {
  return combine(x.p, y.q) == combine(y.p, x.q);
}

SignedClass signed_class(const ClassPair& x) {
  using Sign = SignedClass::Sign;
  if (x.p == x.q) return {};
  if (x.q.empty) return {Sign::plus, x.p.rank, x.p.degree};
  if (x.p.empty) return {Sign::minus, x.q.rank, x.q.degree};
  if (x.p.rank != x.q.rank) {
    return x.p.rank > x.q.rank ? SignedClass{Sign::plus, x.p.rank, x.p.degree}
                               : SignedClass{Sign::minus, x.q.rank, x.q.degree};
  }
  if (x.p.degree > x.q.degree) return {Sign::plus, x.p.rank, x.p.degree - x.q.degree};
  return {Sign::minus, x.p.rank, x.q.degree - x.p.degree};
}

std::string to_string(const ClassPair& x) {
  return "(" + to_string(x.p) + "," + to_string(x.q) + ")";
}

std::string to_string(const SignedClass& s) {
  if (s.sign == SignedClass::Sign::zero) return "0";
  std::ostringstream os;
  os << (s.sign == SignedClass::Sign::plus ? '+' : '-') << '(' << s.rank << ',' << s.degree << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ClassPair& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, const SignedClass& s) { return os << to_string(s); }

ClassPair parse_class_pair(std::string_view s) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= s.size() || s[pos] != c) throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  };
  expect('(');
  ClassPair out;
  out.p = parse_homeo_class_prefix(s, pos);
  expect(',');
  out.q = parse_homeo_class_prefix(s, pos);
  expect(')');
  skip();
  if (pos != s.size()) throw ParseError("unexpected trailing input", pos);
  return out;
}

}  // namespace sip
