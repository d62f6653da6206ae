#pragma once

#include <cstdint>

#include "sip/constructions.hpp"
#include "sip/report.hpp"

namespace sip {

/// Parameters of a seeded verification run.  Zero counts select each
/// campaign's default size.
struct CampaignConfig {
  unsigned alpha = 2;
  unsigned degree = 1;
  std::uint64_t seed = 1;
  std::uint64_t instances = 0;
  BlockIndex blocks = 0;
  std::size_t samples = 0;
};

/// Associativity, distributivity, identities, left_sub and text round trips
/// on random ordinals below w^6 (default 10^4 instances).
Report ordinal_laws_campaign(const CampaignConfig& cfg);
/// Leading-term class against iterated derivatives on random subsets of
/// [1, w^alpha * degree] (default 10^3 sets).
Report classifier_campaign(const CampaignConfig& cfg);
/// Quotient maps for beta = 1, 2, 3 respect the boolean operations and have
/// kernel I_beta; algebra_rank_degree on w^a * d (default 500 pairs).
Report quotient_campaign(const CampaignConfig& cfg);
/// build_homeo_between on random class-equal pairs (default 500).
Report homeo_between_campaign(const CampaignConfig& cfg);
/// Signatures read off cofinal subsets agree with the direct ones
/// (default 200 instances).
Report cofinal_campaign(const CampaignConfig& cfg);
/// Cocycle identity on random pairs for all blocks up to `blocks`
/// (default 200 pairs, 20 blocks).
Report cocycle_campaign(const CampaignConfig& cfg);
/// Conjugators for the zigzag cycle and random eventually trivial targets
/// plus one periodic target (default 50 targets, 40 blocks).
Report conjugator_campaign(const CampaignConfig& cfg);
/// Zone conjugation identity on random instances (default 50 instances,
/// 500 samples each).
Report zone_campaign(const CampaignConfig& cfg);
/// Factorization certificates for random maps (default 25 maps, 30 blocks,
/// 1000 samples each).
Report factor_campaign(const CampaignConfig& cfg);
/// pi(gh) = pi(g) pi(h) on random pairs (default 200 pairs, 50 blocks).
Report pi_campaign(const CampaignConfig& cfg);
/// The fixed triple showing that sim is not transitive.
Report nontransitivity_campaign(const CampaignConfig& cfg);

}  // namespace sip
