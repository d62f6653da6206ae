#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sip/chart.hpp"
#include "sip/perm.hpp"
#include "sip/random.hpp"
#include "sip/sigcalc.hpp"

namespace sip {

/// X = [1, w^(alpha+1)] cut into blocks A_n = (w^alpha (n-1), w^alpha n].
class BlockSystem {
 public:
  explicit BlockSystem(unsigned alpha);

  unsigned alpha() const noexcept { return alpha_; }
  const Ordinal& delta() const noexcept { return delta_; }
  /// w^alpha, the length of every block.
  const Ordinal& unit() const noexcept { return unit_; }

  Ordinal base(BlockIndex n) const;  // w^alpha (n-1)
  Ordinal top(BlockIndex n) const;   // w^alpha n
  Interval block(BlockIndex n) const;
  ClopenSet block_set(BlockIndex n) const;

  /// Block containing x, for 1 <= x < delta (DomainError otherwise).
  BlockIndex block_of(const Ordinal& x) const;
  /// beta in [1, w^alpha] with phi(block_of(x), beta) = x.
  Ordinal local(const Ordinal& x) const;

  /// phi_n(beta) = w^alpha (n-1) + beta.
  Ordinal phi(BlockIndex n, const Ordinal& beta) const;
  /// phi_j after phi_i^{-1}; x must lie in A_i.
  Ordinal phi_ij(BlockIndex i, BlockIndex j, const Ordinal& x) const;
  /// The chart piece of phi_ij on the whole block.
  Piece phi_piece(BlockIndex i, BlockIndex j) const;

  friend bool operator==(const BlockSystem& a, const BlockSystem& b) { return a.alpha_ == b.alpha_; }

 private:
  unsigned alpha_;
  Ordinal unit_;
  Ordinal delta_;
};

/// Per-block description used by rule-driven block maps: a chart for A_i
/// (nullopt = the canonical phi piece onto A_sigma(i)) and, for each j, a
/// finite list of blocks that may send points into A_j.
struct BlockRule {
  std::function<std::optional<Chart>(BlockIndex)> chart;
  std::function<std::vector<BlockIndex>(BlockIndex)> sources;
  /// When known: every block beyond this index is fixed pointwise.
  std::optional<BlockIndex> identity_beyond;
  std::string label;
};

/// A homeomorphism of X from a finitely described, composition-closed
/// family.  Immutable; per-block charts are memoized behind a mutex, so one
/// object may be read from several threads.
class Homeo {
 public:
  class Node;

  static Homeo identity(const BlockSystem& bs);
  /// Global chart whose sources and targets both partition (0, delta].
  static Homeo chart(const BlockSystem& bs, Chart global);
  /// A_i -> A_sigma(i) by phi, except on blocks with an override chart.
  /// The overrides must leave a bijection (DomainError otherwise).
  static Homeo block_map(const BlockSystem& bs, Perm sigma,
                         std::map<BlockIndex, Chart> overrides = {});
  /// Library-internal block map driven by a rule (not validated globally).
  static Homeo block_rule(const BlockSystem& bs, Perm sigma, BlockRule rule);
  static Homeo lift(const BlockSystem& bs, Perm sigma);

  const BlockSystem& blocks() const;

  Ordinal eval(const Ordinal& x) const;
  Ordinal eval_inv(const Ordinal& y) const;
  /// Finite chart whose sources partition A_i.
  const Chart& block_chart(BlockIndex i) const;
  /// Blocks that may send points into A_j (a finite superset).
  std::vector<BlockIndex> sources_of(BlockIndex j) const;
  /// pi(g)(i): the block whose top point is the image of w^alpha i.
  BlockIndex pi(BlockIndex i) const;
  /// Some N such that every block beyond N is fixed pointwise, if known.
  std::optional<BlockIndex> identity_beyond() const;
  /// s-expression description (rule-driven parts print as labels).
  std::string describe() const;

 private:
  explicit Homeo(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Homeo compose(const Homeo& g, const Homeo& h);
  friend Homeo inverse(const Homeo& g);
  std::shared_ptr<const Node> node_;
};

/// g after h.
Homeo compose(const Homeo& g, const Homeo& h);
/// Left-to-right product g1 g2 ... gn (gn acts first).
Homeo compose(std::initializer_list<Homeo> factors);
Homeo inverse(const Homeo& g);

BlockIndex pi_of(const Homeo& g, BlockIndex i);
/// pi(g) as a permutation (evaluated on demand).
Perm induced_perm(const Homeo& g);

struct Signature {
  ClopenSet p;  // A_pi(i) minus g A_i
  ClopenSet q;  // A_i minus g^{-1} A_pi(i)
  ClassPair pair;
  BlockIndex target = 0;
};
Signature signature(const Homeo& g, BlockIndex i);

/// A decision that is either exact or verified on blocks 1..checked_to.
struct BoundedVerdict {
  bool holds = true;
  bool exact = false;
  BlockIndex checked_to = 0;
};
BoundedVerdict fixes_pointwise(const Homeo& g, const ClopenSet& b, BlockIndex bound);
BoundedVerdict setwise_stabilizes(const Homeo& g, const ClopenSet& b, BlockIndex bound);

/// Pointwise agreement on the sample; nullopt when they agree, else the
/// first point where they differ.
std::optional<Ordinal> first_disagreement(const Homeo& g, const Homeo& h,
                                          const std::vector<Ordinal>& sample);
inline bool eq_on(const Homeo& g, const Homeo& h, const std::vector<Ordinal>& sample) {
  return !first_disagreement(g, h, sample);
}

/// Uniform-ish points of blocks 1..max_block, including block tops.
std::vector<Ordinal> sample_points(const BlockSystem& bs, Rng& rng, BlockIndex max_block,
                                   std::size_t count);
/// First and last point of every chart piece of g on blocks 1..max_block.
std::vector<Ordinal> chart_endpoints(const Homeo& g, BlockIndex max_block);

struct RandomHomeoOptions {
  BlockIndex perm_span = 6;     // finite permutations move blocks <= perm_span
  bool allow_zigzag = true;     // sometimes use a zigzag-based permutation
  BlockIndex perturb_span = 8;  // perturbation lives in blocks <= perturb_span
  unsigned max_moves = 6;       // number of exchanged interval groups
  bool same_block = false;      // each exchange stays inside one block
};
/// lift(sigma) after a piecewise interval exchange of bounded pieces.
Homeo random_homeo(const BlockSystem& bs, Rng& rng, const RandomHomeoOptions& opt = {});
/// Only the interval exchange part (pi = identity).
Homeo random_perturbation(const BlockSystem& bs, Rng& rng, const RandomHomeoOptions& opt = {});
Perm random_block_perm(Rng& rng, const RandomHomeoOptions& opt = {});

}  // namespace sip
