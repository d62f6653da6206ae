#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sip {

using Natural = boost::multiprecision::cpp_int;

/// Thrown when an operation is applied outside its domain
/// (e.g. left subtraction with a > b, leading term of zero).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown by the text parsers; carries the byte offset of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

struct Term {
  Natural exponent;
  Natural coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class OrdinalKind { zero, successor, limit };

/// An ordinal below w^w in Cantor normal form.
///
/// Terms are kept with strictly decreasing exponents and positive
/// coefficients; the empty term list is 0.  Values are immutable.
class Ordinal {
 public:
  Ordinal() = default;
  /// Validates canonical form; throws DomainError otherwise.
  explicit Ordinal(std::vector<Term> terms);

  static Ordinal finite(const Natural& n);
  static Ordinal omega_pow(const Natural& k);
  /// w^k * c
  static Ordinal monomial(const Natural& k, const Natural& c);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_finite() const noexcept;
  OrdinalKind kind() const noexcept;
  /// Requires a non-zero value.
  const Term& leading_term() const;
  /// Coefficient of w^0, i.e. the finite tail.
  Natural finite_part() const;
  /// Exponent of the last term (0 for successors).  Requires non-zero.
  const Natural& trailing_exponent() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b) = default;

  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
  friend Ordinal operator*(const Ordinal& a, const Ordinal& b);

 private:
  struct Unchecked {};
  Ordinal(std::vector<Term> terms, Unchecked) : terms_(std::move(terms)) {}
  friend Ordinal left_sub(const Ordinal&, const Ordinal&);
  friend std::pair<Ordinal, Natural> divmod_omega(const Ordinal&);
  friend Ordinal divide_omega_pow(const Ordinal&, const Natural&);

  std::vector<Term> terms_;
};

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
inline Ordinal omega_pow(const Natural& k) { return Ordinal::omega_pow(k); }

/// The unique t with a + t = b.  Throws DomainError when a > b.
Ordinal left_sub(const Ordinal& a, const Ordinal& b);

/// a = w*q + r with r finite.
std::pair<Ordinal, Natural> divmod_omega(const Ordinal& a);

/// a = w^k * q + r with r < w^k; returns q.
Ordinal divide_omega_pow(const Ordinal& a, const Natural& k);

int cmp(const Ordinal& a, const Ordinal& b);
OrdinalKind classify(const Ordinal& a);

/// Canonical text: "w^2*3 + w + 4", "0".
std::string to_string(const Ordinal& a);
std::ostream& operator<<(std::ostream& os, const Ordinal& a);

/// Parses the canonical grammar; non-canonical term order, zero
/// coefficients and malformed tokens are rejected with ParseError.
Ordinal parse_ordinal(std::string_view text);

/// Parser for one ordinal expression embedded in a larger text.  Stops at
/// the first character that cannot continue the expression.
Ordinal parse_ordinal_prefix(std::string_view text, std::size_t& pos);

/// Converts to a machine integer, throwing DomainError when the value is
/// infinite or does not fit.
std::uint64_t to_u64(const Ordinal& a);
std::uint64_t to_u64(const Natural& n);

}  // namespace sip
