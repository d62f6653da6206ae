#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sip/homeo.hpp"
#include "sip/report.hpp"

namespace sip {

/// A partition of [1, w) into infinite zones Z_n with enumerations
/// theta_n : [1, w) -> Z_n.
class ZoneSystem {
 public:
  /// Z_n = {i : i = n mod m}, n = 1..m.
  static ZoneSystem residues(BlockIndex m);
  /// Z_n = {2^(n-1) (2k-1) : k >= 1}, n >= 1.
  static ZoneSystem dyadic();

  /// Number of zones when finite.
  std::optional<BlockIndex> zone_count() const { return count_; }
  BlockIndex zone_of(BlockIndex i) const;
  /// k-th element of Z_n.
  BlockIndex theta(BlockIndex n, BlockIndex k) const;
  /// Position of i inside Z_n (i must lie in Z_n).
  BlockIndex theta_inv(BlockIndex n, BlockIndex i) const;
  const std::string& name() const { return name_; }

 private:
  enum class Kind { residues, dyadic };
  Kind kind_ = Kind::residues;
  std::optional<BlockIndex> count_;
  std::string name_;
};

/// Set of zone indices: a finite list or a named rule.
struct ZoneSet {
  std::function<bool(BlockIndex)> contains;
  std::optional<std::vector<BlockIndex>> listed;
  std::string label;

  static ZoneSet finite(std::vector<BlockIndex> zones);
  static ZoneSet rule(std::string label, std::function<bool(BlockIndex)> member);
};

/// The chart of A_from carried to A_to by the canonical block maps.
Chart transport_chart(const BlockSystem& bs, const Chart& c, BlockIndex from, BlockIndex to);
/// Acts on every block as the given chart of A_1 acts on A_1.
Homeo uniform_block_action(const BlockSystem& bs, const Chart& on_first_block);

/// A random map fixing every block setwise: one exchange repeated in every
/// block, followed by independent exchanges inside the first blocks.
Homeo random_blockwise(const BlockSystem& bs, Rng& rng, const RandomHomeoOptions& opt = {});

/// h_n: on A_i with i in Z_n, the copy of h's action on A_{theta_n^{-1} i};
/// identity elsewhere.  h must fix every block setwise (DomainError on the
/// first block where it does not; blocks up to check_bound are checked at
/// once, later ones when first used).
Homeo copy_into_zones(const Homeo& h, const ZoneSystem& zs, BlockIndex n,
                      BlockIndex check_bound = 64);
/// Acts as h_n on the zones n in m and as the identity elsewhere.
Homeo zone_union(const Homeo& h, const ZoneSystem& zs, const ZoneSet& m,
                 BlockIndex check_bound = 64);
/// k with k = phi_{i, theta_{psi(m)} theta_m^{-1} i} on A_i for i in Z_m.
Homeo zone_conjugator(const BlockSystem& bs, const ZoneSystem& zs, const Perm& psi);

/// Compares h_{J1}^{-1} h_{J2} with k h_{I1}^{-1} h_{I2} k^{-1} on sampled
/// points and checks that zone copies stay inside their zones.  UsageError
/// unless I1, I2 and J1, J2 are disjoint and psi maps I1 onto J1 and I2
/// onto J2.
Report verify_zone_identity(const Homeo& h, const ZoneSystem& zs, const std::vector<BlockIndex>& i1,
                            const std::vector<BlockIndex>& i2, const std::vector<BlockIndex>& j1,
                            const std::vector<BlockIndex>& j2, const Perm& psi, Rng& rng,
                            std::size_t samples);

/// (A_pi(i) minus gB, A_i minus B) for a cofinal B inside A_i with gB inside
/// A_pi(i); DomainError otherwise.
std::pair<ClopenSet, ClopenSet> signature_via_cofinal(const Homeo& g, BlockIndex i,
                                                      const ClopenSet& b);

/// sim(sig_i(hg), sig_i(g) + sig_{pi(g) i}(h)).
bool check_cocycle(const Homeo& g, const Homeo& h, BlockIndex i);

using PairRule = std::function<ClassPair(BlockIndex)>;

/// The pairs (R_i, S_i) along the single cycle sigma: (R_1, S_1) = (E, E),
/// R_{sigma i} = R_i - sig_i(g) + f(i) forwards and the inverse relation
/// backwards, both anchored at 1.
class RSSequence {
 public:
  /// DomainError when sigma carries no single-cycle certificate.
  RSSequence(Homeo g, PairRule f, Perm sigma);

  ClassPair at(BlockIndex i) const;
  /// The pair at sigma^j(1).
  ClassPair at_position(std::int64_t j) const;
  /// sim(R_{sigma i} - R_i, -sig_i(g) + f(i)).
  bool step_holds(BlockIndex i) const;
  const Perm& sigma() const { return sigma_; }

 private:
  ClassPair step_term(BlockIndex i) const;  // -sig_i(g) + f(i)

  Homeo g_;
  PairRule f_;
  Perm sigma_;
  mutable std::mutex mu_;
  mutable std::map<std::int64_t, ClassPair> memo_;
};

struct ConjugatorOptions {
  /// Local offset in every block below which the conjugator is the identity.
  Ordinal base_offset;
  /// Blocks on which the preconditions are checked eagerly.
  BlockIndex check_bound = 64;
};

/// h with pi(h) = id such that sim(sig_i(h^{-1} g h), f(i)) for every i.
/// Requires pi(g) = sigma (a certified single cycle) and f(i) of rank below
/// alpha (DomainError otherwise).  The sets realizing (R_i, S_i) and their
/// padding live in per-block windows at pairwise different local offsets.
Homeo realize_conjugator(const Homeo& g, PairRule f, const Perm& sigma,
                         const ConjugatorOptions& opt = {});

/// B_i = {a in A_i : w a not in A_i}, C_i = {a in A_i : w^{-1} a not in A_i};
/// DomainError when w moves the block top.
std::pair<ClopenSet, ClopenSet> deficiency_sets(const Homeo& w, BlockIndex i);

/// l agreeing with w off the deficiency sets and mapping each B_i onto C_i.
/// DomainError naming the block when B_i and C_i are not homeomorphic.
Homeo straighten(const Homeo& w, BlockIndex bound);

/// The smallest local offset o such that g acts on (base + o, top] of every
/// block i <= bound as a canonical block map; nullopt when some block has
/// no such tail.
std::optional<Ordinal> canonical_offset(const Homeo& g, BlockIndex bound);

struct Certificate {
  Homeo h, k_prime, l, w_prime;
  /// D_i for i = 1..bound.
  std::vector<ClopenSet> envelopes;
  std::string envelope_union_type;
  Report report;
};

/// Factors g = k' l w' h^{-1} with h, k' of prescribed pi, l blockwise and
/// w' supported in envelopes D_i, and checks every side condition.
Certificate factor_certificate(const Homeo& g, const Perm& sigma, BlockIndex bound,
                               std::size_t samples, Rng& rng);

}  // namespace sip
