#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sip/clopen.hpp"

namespace sip {

/// Order isomorphism src -> dst between intervals of equal length:
/// x |-> dst.lo + (x - src.lo).
struct Piece {
  Interval src;
  Interval dst;

  Ordinal map(const Ordinal& x) const { return dst.lo + left_sub(src.lo, x); }
  Ordinal unmap(const Ordinal& y) const { return src.lo + left_sub(dst.lo, y); }
  /// Restriction to a sub-interval of src.
  Piece restrict_src(const Interval& sub) const;
  /// Restriction to the part landing in a sub-interval of dst.
  Piece restrict_dst(const Interval& sub) const;
  bool is_identity() const { return src == dst; }

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Finitely many pieces with pairwise disjoint sources and pairwise disjoint
/// targets; a homeomorphism between the union of sources and the union of
/// targets.  Pieces are kept sorted by source and maximally merged.
class Chart {
 public:
  Chart() = default;

  /// Throws DomainError on unequal lengths or overlapping sources/targets.
  static Chart make(std::vector<Piece> pieces);
  static Chart identity_on(const Interval& iv);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }

  std::optional<Ordinal> apply(const Ordinal& x) const;
  std::optional<Ordinal> apply_inv(const Ordinal& y) const;
  /// Piece whose source contains x.
  const Piece* piece_at(const Ordinal& x) const;

  Chart inverse() const;
  ClopenSet sources(const Ordinal& delta) const;
  ClopenSet targets(const Ordinal& delta) const;
  /// Image of s; s must lie inside the sources.
  ClopenSet image(const ClopenSet& s) const;
  /// The pieces cut down to sources inside s.
  Chart restrict_to(const ClopenSet& s) const;

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<Piece> pieces_;
};

/// outer after inner; every target of inner must be covered by sources of
/// outer (DomainError otherwise).
Chart compose(const Chart& outer, const Chart& inner);

/// A chart from b onto c, which must be homeomorphic bounded clopen sets
/// (DomainError otherwise).  Identity when b == c.
Chart build_homeo_between(const ClopenSet& b, const ClopenSet& c);

std::string to_string(const Piece& p);
std::string to_string(const Chart& c);
std::ostream& operator<<(std::ostream& os, const Chart& c);

}  // namespace sip
