#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sip {

/// Index of a block A_n, n >= 1.
using BlockIndex = std::uint64_t;

/// Witness that a permutation of [1, w) is a single infinite cycle: an
/// explicit bijection between the cycle and Z with 1 at position 0 and
/// the permutation acting as +1.
class CycleCertificate {
 public:
  using PositionFn = std::function<std::int64_t(BlockIndex)>;
  using PointFn = std::function<BlockIndex(std::int64_t)>;

  CycleCertificate(PositionFn position, PointFn point)
      : position_(std::move(position)), point_(std::move(point)) {}

  std::int64_t position(BlockIndex i) const { return position_(i); }
  BlockIndex point(std::int64_t j) const { return point_(j); }

 private:
  PositionFn position_;
  PointFn point_;
};

/// A computable permutation of [1, w) with computable inverse, drawn from a
/// closed family: finite tables, the zigzag cycle, compositions, inverses,
/// and library-internal rules.
class Perm {
 public:
  /// Identity.
  Perm();

  /// Finite-support permutation given by (i, j) pairs meaning i -> j.
  /// Throws DomainError unless the pairs form a bijection of their support.
  static Perm table(const std::vector<std::pair<BlockIndex, BlockIndex>>& pairs);
  static Perm transposition(BlockIndex a, BlockIndex b);
  /// zeta(1) = 2, zeta(2k) = 2k+2, zeta(2k+1) = 2k-1.
  static Perm zigzag();
  /// a after b.
  static Perm compose(const Perm& a, const Perm& b);
  static Perm inverse(const Perm& a);
  /// Library-internal permutation given by a rule and its inverse.
  static Perm rule(std::string name, std::function<BlockIndex(BlockIndex)> forward,
                   std::function<BlockIndex(BlockIndex)> backward);

  BlockIndex apply(BlockIndex i) const;
  BlockIndex apply_inv(BlockIndex i) const;
  BlockIndex operator()(BlockIndex i) const { return apply(i); }

  /// Present only when the permutation is certified to be one infinite cycle.
  const std::shared_ptr<const CycleCertificate>& cycle() const;
  /// Sorted list of moved points when the support is known to be finite.
  const std::optional<std::vector<BlockIndex>>& finite_support() const;
  bool is_identity() const;

  /// s-expression form; rules print as "(rule name)".
  std::string to_string() const;

  struct Node;

 private:
  explicit Perm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace sip
