#include "sip/ordinal.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>

namespace sip {

Ordinal::Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coefficient <= 0)
      throw DomainError("ordinal term with non-positive coefficient");
    if (terms_[i].exponent < 0) throw DomainError("ordinal term with negative exponent");
    if (i > 0 && !(terms_[i].exponent < terms_[i - 1].exponent))
      throw DomainError("ordinal exponents must be strictly decreasing");
  }
}

Ordinal Ordinal::finite(const Natural& n) {
  if (n < 0) throw DomainError("negative natural");
  if (n == 0) return {};
  return Ordinal({Term{0, n}}, Unchecked{});
}

Ordinal Ordinal::omega_pow(const Natural& k) { return monomial(k, 1); }

Ordinal Ordinal::monomial(const Natural& k, const Natural& c) {
  if (k < 0 || c < 0) throw DomainError("negative natural");
  if (c == 0) return {};
  return Ordinal({Term{k, c}}, Unchecked{});
}

bool Ordinal::is_finite() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

OrdinalKind Ordinal::kind() const noexcept {
  if (terms_.empty()) return OrdinalKind::zero;
  return terms_.back().exponent == 0 ? OrdinalKind::successor : OrdinalKind::limit;
}

const Term& Ordinal::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of zero");
  return terms_.front();
}

Natural Ordinal::finite_part() const {
  if (!terms_.empty() && terms_.back().exponent == 0) return terms_.back().coefficient;
  return 0;
}

const Natural& Ordinal::trailing_exponent() const {
  if (terms_.empty()) throw DomainError("trailing exponent of zero");
  return terms_.back().exponent;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const auto n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (x.exponent != y.exponent)
      return x.exponent < y.exponent ? std::strong_ordering::less : std::strong_ordering::greater;
    if (x.coefficient != y.coefficient)
      return x.coefficient < y.coefficient ? std::strong_ordering::less
                                           : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.terms_.empty()) return a;
  if (a.terms_.empty()) return b;
  const Natural& lead = b.terms_.front().exponent;
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t j = 0;
  for (const Term& t : a.terms_) {
    if (t.exponent > lead) {
      out.push_back(t);
    } else {
      if (t.exponent == lead) {
        out.push_back(Term{lead, t.coefficient + b.terms_.front().coefficient});
        j = 1;
      }
      break;
    }
  }
  for (; j < b.terms_.size(); ++j) out.push_back(b.terms_[j]);
  return Ordinal(std::move(out), Ordinal::Unchecked{});
}

Ordinal operator*(const Ordinal& a, const Ordinal& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  const Term& lead = a.terms_.front();
  Ordinal acc;
  for (const Term& t : b.terms_) {
    if (t.exponent > 0) {
      acc = acc + Ordinal({Term{lead.exponent + t.exponent, t.coefficient}}, Ordinal::Unchecked{});
    } else {
      std::vector<Term> scaled = a.terms_;
      scaled.front().coefficient *= t.coefficient;
      acc = acc + Ordinal(std::move(scaled), Ordinal::Unchecked{});
    }
  }
  return acc;
}

Ordinal add(const Ordinal& a, const Ordinal& b) { return a + b; }
Ordinal mul(const Ordinal& a, const Ordinal& b) { return a * b; }

Ordinal left_sub(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  if (k == x.size())
    return Ordinal(std::vector<Term>(y.begin() + static_cast<std::ptrdiff_t>(k), y.end()),
                   Ordinal::Unchecked{});
  if (k == y.size()) throw DomainError("left_sub: a > b");
  if (y[k].exponent > x[k].exponent)
    return Ordinal(std::vector<Term>(y.begin() + static_cast<std::ptrdiff_t>(k), y.end()),
                   Ordinal::Unchecked{});
  if (y[k].exponent == x[k].exponent && y[k].coefficient > x[k].coefficient) {
    std::vector<Term> out;
    out.push_back(Term{y[k].exponent, y[k].coefficient - x[k].coefficient});
    out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(k) + 1, y.end());
    return Ordinal(std::move(out), Ordinal::Unchecked{});
  }
  throw DomainError("left_sub: a > b");
}

std::pair<Ordinal, Natural> divmod_omega(const Ordinal& a) {
  std::vector<Term> q;
  Natural r = 0;
  for (const Term& t : a.terms_) {
    if (t.exponent == 0)
      r = t.coefficient;
    else
      q.push_back(Term{t.exponent - 1, t.coefficient});
  }
  return {Ordinal(std::move(q), Ordinal::Unchecked{}), r};
}

Ordinal divide_omega_pow(const Ordinal& a, const Natural& k) {
  std::vector<Term> q;
  for (const Term& t : a.terms_) {
    if (t.exponent < k) break;
    q.push_back(Term{t.exponent - k, t.coefficient});
  }
  return Ordinal(std::move(q), Ordinal::Unchecked{});
}

int cmp(const Ordinal& a, const Ordinal& b) {
  const auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

OrdinalKind classify(const Ordinal& a) { return a.kind(); }

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : a.terms()) {
    if (!first) os << " + ";
    first = false;
    if (t.exponent == 0) {
      os << t.coefficient;
      continue;
    }
    os << 'w';
    if (t.exponent != 1) os << '^' << t.exponent;
    if (t.coefficient != 1) os << '*' << t.coefficient;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Ordinal& a) { return os << to_string(a); }

namespace {

void skip_space(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

Natural parse_nonzero_nat(std::string_view s, std::size_t& pos) {
  const std::size_t start = pos;
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    throw ParseError("expected a natural number", pos);
  if (s[pos] == '0') throw ParseError("expected a non-zero natural without leading zeros", pos);
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  return Natural(std::string(s.substr(start, pos - start)));
}

}  // namespace

Ordinal parse_ordinal_prefix(std::string_view s, std::size_t& pos) {
  skip_space(s, pos);
  if (pos < s.size() && s[pos] == '0') {
    const std::size_t zero_at = pos;
    ++pos;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      throw ParseError("leading zero", zero_at);
    std::size_t look = pos;
    skip_space(s, look);
    if (look < s.size() && s[look] == '+')
      throw ParseError("literal 0 only allowed as a complete expression", zero_at);
    return {};
  }
  std::vector<Term> terms;
  while (true) {
    skip_space(s, pos);
    const std::size_t term_at = pos;
    Term t;
    if (pos < s.size() && s[pos] == 'w') {
      ++pos;
      t.exponent = 1;
      t.coefficient = 1;
      skip_space(s, pos);
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        skip_space(s, pos);
        t.exponent = parse_nonzero_nat(s, pos);
        skip_space(s, pos);
      }
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        skip_space(s, pos);
        t.coefficient = parse_nonzero_nat(s, pos);
      }
    } else if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      t.exponent = 0;
      t.coefficient = parse_nonzero_nat(s, pos);
    } else {
      throw ParseError("expected a term", pos);
    }
    if (!terms.empty() && !(t.exponent < terms.back().exponent))
      throw ParseError("terms must have strictly decreasing exponents", term_at);
    terms.push_back(std::move(t));
    std::size_t look = pos;
    skip_space(s, look);
    if (look < s.size() && s[look] == '+') {
      pos = look + 1;
      continue;
    }
    break;
  }
  return Ordinal(std::move(terms));
}

Ordinal parse_ordinal(std::string_view text) {
  std::size_t pos = 0;
  Ordinal a = parse_ordinal_prefix(text, pos);
  skip_space(text, pos);
  if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
  return a;
}

std::uint64_t to_u64(const Natural& n) {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max())
    throw DomainError("natural does not fit in 64 bits");
  return static_cast<std::uint64_t>(n);
}

std::uint64_t to_u64(const Ordinal& a) {
  if (!a.is_finite()) throw DomainError("ordinal is infinite");
  return to_u64(a.finite_part());
}

}  // namespace sip
