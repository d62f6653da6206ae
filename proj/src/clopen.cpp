#include "sip/clopen.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace sip {

HomeoClass HomeoClass::of(const Natural& rank, const Natural& degree) {
  if (degree < 1) throw DomainError("homeomorphism class needs degree >= 1");
  if (rank < 0) throw DomainError("negative rank");
  return HomeoClass{false, rank, degree};
}

std::string to_string(const HomeoClass& c) {
  if (c.empty) return "E";
  std::ostringstream os;
  os << '(' << c.rank << ',' << c.degree << ')';
  return os.str();
}

namespace {

void skip_space(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

void expect(std::string_view s, std::size_t& pos, char c) {
  skip_space(s, pos);
  if (pos >= s.size() || s[pos] != c) throw ParseError(std::string("expected '") + c + "'", pos);
  ++pos;
}

Natural parse_nat(std::string_view s, std::size_t& pos) {
  skip_space(s, pos);
  const std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) throw ParseError("expected a natural number", start);
  if (s[start] == '0' && pos - start > 1) throw ParseError("leading zero", start);
  return Natural(std::string(s.substr(start, pos - start)));
}

// Sorts and merges; assumes every interval is individually valid.
std::vector<Interval> normalize(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> out;
  for (auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

void same_space(const ClopenSet& a, const ClopenSet& b) {
  if (a.delta() != b.delta()) throw DomainError("clopen sets live in different spaces");
}

}  // namespace

HomeoClass parse_homeo_class_prefix(std::string_view s, std::size_t& pos) {
  skip_space(s, pos);
  if (pos < s.size() && s[pos] == 'E') {
    ++pos;
    return HomeoClass::none();
  }
  expect(s, pos, '(');
  Natural r = parse_nat(s, pos);
  expect(s, pos, ',');
  const std::size_t dpos = pos;
  Natural d = parse_nat(s, pos);
  if (d == 0) throw ParseError("degree must be positive", dpos);
  expect(s, pos, ')');
  return HomeoClass::of(r, d);
}

HomeoClass parse_homeo_class(std::string_view text) {
  std::size_t pos = 0;
  HomeoClass c = parse_homeo_class_prefix(text, pos);
  skip_space(text, pos);
  if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
  return c;
}

ClopenSet ClopenSet::make(const Ordinal& delta, std::vector<Interval> raw) {
  for (const auto& iv : raw) {
    if (!(iv.lo < iv.hi)) throw DomainError("interval (" + to_string(iv.lo) + "," +
                                            to_string(iv.hi) + "] is empty or reversed");
    if (iv.hi > delta)
      throw DomainError("interval end " + to_string(iv.hi) + " exceeds delta " + to_string(delta));
  }
  ClopenSet s;
  s.delta_ = delta;
  s.intervals_ = normalize(std::move(raw));
  return s;
}

ClopenSet ClopenSet::empty_in(const Ordinal& delta) { return make(delta, {}); }

ClopenSet ClopenSet::full(const Ordinal& delta) {
  if (delta.is_zero()) return empty_in(delta);
  return make(delta, {Interval{Ordinal{}, delta}});
}

bool ClopenSet::bounded() const noexcept {
  return intervals_.empty() || intervals_.back().hi < delta_;
}

bool ClopenSet::contains(const Ordinal& x) const {
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, const Ordinal& v) { return iv.hi < v; });
  return it != intervals_.end() && it->contains(x);
}

bool ClopenSet::subset_of(const ClopenSet& other) const {
  return intersect(*this, other.with_delta(delta_)) == *this;
}

ClopenSet ClopenSet::with_delta(const Ordinal& delta) const {
  return make(delta, intervals_);
}

ClopenSet unite(const ClopenSet& a, const ClopenSet& b) {
  same_space(a, b);
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return ClopenSet::make(a.delta(), std::move(all));
}

ClopenSet intersect(const ClopenSet& a, const ClopenSet& b) {
  same_space(a, b);
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const Ordinal& lo = std::max(x[i].lo, y[j].lo);
    const Ordinal& hi = std::min(x[i].hi, y[j].hi);
    if (lo < hi) out.push_back(Interval{lo, hi});
    if (x[i].hi < y[j].hi)
      ++i;
    else
      ++j;
  }
  return ClopenSet::make(a.delta(), std::move(out));
}

ClopenSet complement(const ClopenSet& a) {
  std::vector<Interval> out;
  Ordinal cursor;
  for (const auto& iv : a.intervals()) {
    if (cursor < iv.lo) out.push_back(Interval{cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < a.delta()) out.push_back(Interval{cursor, a.delta()});
  return ClopenSet::make(a.delta(), std::move(out));
}

ClopenSet difference(const ClopenSet& a, const ClopenSet& b) {
  return intersect(a, complement(b));
}

ClopenSet clip(const ClopenSet& a, const Interval& window) {
  std::vector<Interval> out;
  for (const auto& iv : a.intervals()) {
    const Ordinal& lo = std::max(iv.lo, window.lo);
    const Ordinal& hi = std::min(iv.hi, window.hi);
    if (lo < hi) out.push_back(Interval{lo, hi});
  }
  return ClopenSet::make(a.delta(), std::move(out));
}

Ordinal order_type(const Interval& iv) {
  return left_sub(iv.lo + Ordinal::finite(1), iv.hi) + Ordinal::finite(1);
}

Ordinal order_type(const ClopenSet& p) {
  Ordinal total;
  for (const auto& iv : p.intervals()) total = total + order_type(iv);
  return total;
}

ClopenSet cb_derivative(const ClopenSet& p) {
  std::vector<Interval> out;
  for (const auto& iv : p.intervals()) {
    Ordinal lo = divmod_omega(iv.lo).first;
    Ordinal hi = divmod_omega(iv.hi).first;
    if (lo < hi) out.push_back(Interval{std::move(lo), std::move(hi)});
  }
  return ClopenSet::make(divmod_omega(p.delta()).first, std::move(out));
}

ClopenSet cb_derivative(const ClopenSet& p, const Natural& beta) {
  ClopenSet cur = p;
  for (Natural k = 0; k < beta; ++k) {
    if (cur.empty()) return ClopenSet::empty_in(divide_omega_pow(p.delta(), beta));
    cur = cb_derivative(cur);
  }
  return cur;
}

HomeoClass homeo_class(const ClopenSet& p) {
  if (p.empty()) return HomeoClass::none();
  const Ordinal type = order_type(p);
  const Term& t = type.leading_term();
  return HomeoClass::of(t.exponent, t.coefficient);
}

HomeoClass homeo_class_iterated(const ClopenSet& p) {
  if (p.empty()) return HomeoClass::none();
  Natural rank = 0;
  ClopenSet cur = p;
  while (true) {
    ClopenSet next = cb_derivative(cur);
    if (next.empty()) {
      // compactness: the last non-empty derivative is finite
      const Ordinal points = order_type(cur);
      if (!points.is_finite()) throw std::logic_error("last non-empty derivative is infinite");
      return HomeoClass::of(rank, points.finite_part());
    }
    cur = std::move(next);
    ++rank;
  }
}

bool in_ideal(const ClopenSet& p, const Natural& beta) {
  return cb_derivative(p, beta).empty();
}

ClopenSet quotient_project(const ClopenSet& p, const Natural& beta) {
  return cb_derivative(p, beta);
}

RankDegree algebra_rank_degree(const Ordinal& delta) {
  if (delta.terms().size() != 1)
    throw DomainError("delta " + to_string(delta) + " is not of the form w^alpha*a");
  return RankDegree{delta.terms()[0].exponent, delta.terms()[0].coefficient};
}

std::optional<Natural> num_atoms(const ClopenSet& p) {
  if (!cb_derivative(p).empty()) return std::nullopt;
  return order_type(p).finite_part();
}

ClopenSet realize(const HomeoClass& c, const Ordinal& base, const Ordinal& capacity,
                  const Ordinal& delta) {
  if (c.empty) return ClopenSet::empty_in(delta);
  const Ordinal len = Ordinal::monomial(c.rank, c.degree);
  if (capacity < len)
    throw DomainError("window capacity " + to_string(capacity) + " too small for class " +
                      to_string(c));
  return ClopenSet::make(delta, {Interval{base, base + len}});
}

std::ostream& operator<<(std::ostream& os, const HomeoClass& c) { return os << to_string(c); }
std::ostream& operator<<(std::ostream& os, const ClopenSet& p) { return os << to_string(p); }
std::ostream& operator<<(std::ostream& os, const Interval& iv) { return os << to_string(iv); }

std::string to_string(const Interval& iv) {
  return "(" + to_string(iv.lo) + "," + to_string(iv.hi) + "]";
}

std::string to_string(const ClopenSet& p) {
  std::string out = "{";
  bool first = true;
  for (const auto& iv : p.intervals()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(iv);
  }
  return out + "}";
}

Interval parse_interval_prefix(std::string_view s, std::size_t& pos) {
  expect(s, pos, '(');
  Ordinal lo = parse_ordinal_prefix(s, pos);
  expect(s, pos, ',');
  Ordinal hi = parse_ordinal_prefix(s, pos);
  expect(s, pos, ']');
  return Interval{std::move(lo), std::move(hi)};
}

ClopenSet parse_clopen(std::string_view s, const Ordinal& delta) {
  std::size_t pos = 0;
  expect(s, pos, '{');
  std::vector<Interval> raw;
  skip_space(s, pos);
  if (pos < s.size() && s[pos] == '}') {
    ++pos;
  } else {
    while (true) {
      const std::size_t at = pos;
      Interval iv = parse_interval_prefix(s, pos);
      if (!(iv.lo < iv.hi) || iv.hi > delta)
        throw ParseError("interval outside (0, " + to_string(delta) + "] or empty", at);
      raw.push_back(std::move(iv));
      skip_space(s, pos);
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      expect(s, pos, '}');
      break;
    }
  }
  skip_space(s, pos);
  if (pos != s.size()) throw ParseError("unexpected trailing input", pos);
  return ClopenSet::make(delta, std::move(raw));
}

}  // namespace sip
