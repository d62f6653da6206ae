#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sip/ordinal.hpp"

namespace sip {

/// Half-open ordinal interval (lo, hi].
struct Interval {
  Ordinal lo;
  Ordinal hi;

  bool contains(const Ordinal& x) const { return lo < x && x <= hi; }
  /// Length t with lo + t = hi.
  Ordinal length() const { return left_sub(lo, hi); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The Mazurkiewicz-Sierpinski invariant of a compact countable space:
/// either empty, or (Cantor-Bendixson rank, degree).
struct HomeoClass {
  bool empty = true;
  Natural rank = 0;
  Natural degree = 0;

  static HomeoClass none() { return {}; }
  static HomeoClass of(const Natural& rank, const Natural& degree);

  friend bool operator==(const HomeoClass&, const HomeoClass&) = default;
};

std::string to_string(const HomeoClass& c);
/// "E" or "(r,d)".
HomeoClass parse_homeo_class(std::string_view text);
HomeoClass parse_homeo_class_prefix(std::string_view text, std::size_t& pos);

/// A clopen subset of the ambient space [1, delta], held as maximal
/// disjoint intervals (lo, hi] in increasing order.  Equality is syntactic.
class ClopenSet {
 public:
  ClopenSet() = default;

  /// Merges overlapping and adjacent intervals.  Throws DomainError when an
  /// interval has lo >= hi or hi > delta.
  static ClopenSet make(const Ordinal& delta, std::vector<Interval> raw);
  static ClopenSet empty_in(const Ordinal& delta);
  static ClopenSet full(const Ordinal& delta);

  const Ordinal& delta() const noexcept { return delta_; }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }
  /// Empty, or the last interval stops short of delta.
  bool bounded() const noexcept;
  bool contains(const Ordinal& x) const;
  bool subset_of(const ClopenSet& other) const;
  /// Same set, re-homed in a larger ambient space.
  ClopenSet with_delta(const Ordinal& delta) const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

 private:
  Ordinal delta_;
  std::vector<Interval> intervals_;
};

ClopenSet unite(const ClopenSet& a, const ClopenSet& b);
ClopenSet intersect(const ClopenSet& a, const ClopenSet& b);
ClopenSet complement(const ClopenSet& a);
ClopenSet difference(const ClopenSet& a, const ClopenSet& b);
/// Intersection with a single interval.
ClopenSet clip(const ClopenSet& a, const Interval& window);

/// Order type of the set as a suborder of the ordinals.
Ordinal order_type(const ClopenSet& p);
Ordinal order_type(const Interval& iv);

/// Non-isolated points of p, expressed in the coordinate y where x = w*y,
/// as a clopen subset of [1, q] with delta = w*q + n.
ClopenSet cb_derivative(const ClopenSet& p);
/// beta-fold derivative.
ClopenSet cb_derivative(const ClopenSet& p, const Natural& beta);

/// Class read off the leading term of the order type.
HomeoClass homeo_class(const ClopenSet& p);
/// Class computed by iterating cb_derivative until it vanishes.
HomeoClass homeo_class_iterated(const ClopenSet& p);

/// Membership in the ideal I_beta: rank(p) < beta.
bool in_ideal(const ClopenSet& p, const Natural& beta);
/// The quotient map B -> B / I_beta realised as the beta-fold derivative.
ClopenSet quotient_project(const ClopenSet& p, const Natural& beta);

struct RankDegree {
  Natural rank;
  Natural degree;
  friend bool operator==(const RankDegree&, const RankDegree&) = default;
};
/// (alpha, a) for delta = w^alpha * a; DomainError for other shapes.
RankDegree algebra_rank_degree(const Ordinal& delta);
/// Number of isolated points of p; nullopt when infinite.
std::optional<Natural> num_atoms(const ClopenSet& p);

/// Canonical representative (base, base + w^rank * degree] of a class.
ClopenSet realize(const HomeoClass& c, const Ordinal& base, const Ordinal& capacity,
                  const Ordinal& delta);

/// "{(lo,hi], ...}" with "{}" for the empty set.
std::string to_string(const ClopenSet& p);
std::string to_string(const Interval& iv);
ClopenSet parse_clopen(std::string_view text, const Ordinal& delta);
Interval parse_interval_prefix(std::string_view text, std::size_t& pos);

std::ostream& operator<<(std::ostream& os, const HomeoClass& c);
std::ostream& operator<<(std::ostream& os, const ClopenSet& p);
std::ostream& operator<<(std::ostream& os, const Interval& iv);

}  // namespace sip
