#include "sip/campaigns.hpp"

#include <algorithm>
#include <numeric>

namespace sip {

namespace {

template <class T>
T or_default(T value, T fallback) {
  return value ? value : fallback;
}

Report start(const CampaignConfig& cfg, const std::string& command) {
  Report r;
  r.command = command;
  r.alpha = cfg.alpha;
  r.degree = cfg.degree;
  r.seed = cfg.seed;
  return r;
}

std::string show(const ClopenSet& s) { return to_string(s); }

// Random bounded clopen subset of block i.
ClopenSet random_in_block(const BlockSystem& bs, Rng& rng, BlockIndex i, unsigned max_intervals) {
  std::vector<Interval> out;
  const Ordinal base = bs.base(i);
  const ClopenSet local = random_clopen(rng, bs.unit(), max_intervals);
  for (const auto& iv : local.intervals())
    if (iv.hi < bs.unit()) out.push_back(Interval{base + iv.lo, base + iv.hi});
  return ClopenSet::make(bs.delta(), std::move(out));
}

ClassPair random_target(Rng& rng, unsigned alpha) {
  auto side = [&] {
    if (rng.chance(0.4)) return HomeoClass::none();
    return HomeoClass::of(rng.uniform(0, alpha - 1), rng.uniform(1, 4));
  };
  ClassPair x;
  x.p = side();
  x.q = side();
  return x;
}

}  // namespace

Report ordinal_laws_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify ordinal-laws");
  Rng rng(cfg.seed);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 10000);
  const Ordinal zero, one = Ordinal::finite(1);
  for (std::uint64_t k = 0; k < n; ++k) {
    const Ordinal a = random_ordinal(rng, 6, 6, 4), b = random_ordinal(rng, 6, 6, 4),
                  c = random_ordinal(rng, 6, 6, 4);
    auto triple = [&] { return to_string(a) + " | " + to_string(b) + " | " + to_string(c); };
    r.record("add associativity", (a + b) + c == a + (b + c), triple);
    r.record("mul associativity", (a * b) * c == a * (b * c), triple);
    r.record("left distributivity", a * (b + c) == a * b + a * c, triple);
    r.record("identity laws",
             a + zero == a && zero + a == a && a * one == a && one * a == a && a * zero == zero &&
                 zero * a == zero,
             triple);
    const Ordinal& lo = std::min(a, b);
    const Ordinal& hi = std::max(a, b);
    r.record("left_sub round trip", lo + left_sub(lo, hi) == hi, triple);
    r.record("parse/print round trip", parse_ordinal(to_string(a)) == a, triple);
  }
  return r;
}

Report classifier_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify oracle");
  Rng rng(cfg.seed);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 1000);
  const Ordinal delta = Ordinal::monomial(cfg.alpha, cfg.degree);
  for (std::uint64_t k = 0; k < n; ++k) {
    const ClopenSet s = random_clopen(rng, delta, 8);
    const HomeoClass lead = homeo_class(s), iterated = homeo_class_iterated(s);
    r.record("leading term = iterated derivative", lead == iterated, [&] {
      return show(s) + ": " + to_string(lead) + " vs " + to_string(iterated);
    });
  }
  return r;
}

Report quotient_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify quotient");
  Rng rng(cfg.seed);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 500);
  const Ordinal delta = Ordinal::omega_pow(4);
  for (unsigned beta = 1; beta <= 3; ++beta) {
    const auto q = [&](const ClopenSet& s) { return quotient_project(s, beta); };
    for (std::uint64_t k = 0; k < n; ++k) {
      const ClopenSet a = random_clopen(rng, delta, 6), b = random_clopen(rng, delta, 6);
      auto pair = [&] { return "beta=" + std::to_string(beta) + " " + show(a) + " " + show(b); };
      r.record("union", q(unite(a, b)) == unite(q(a), q(b)), pair);
      r.record("intersection", q(intersect(a, b)) == intersect(q(a), q(b)), pair);
      r.record("complement", q(complement(a)) == complement(q(a)), pair);
      const HomeoClass c = homeo_class_iterated(a);
      const bool below = c.empty || c.rank < beta;
      r.record("kernel is I_beta", q(a).empty() == below && in_ideal(a, beta) == below, pair);
    }
  }
  for (unsigned a = 1; a <= 3; ++a)
    for (unsigned d = 1; d <= 4; ++d) {
      const RankDegree rd = algebra_rank_degree(Ordinal::monomial(a, d));
      r.record("rank and degree", rd == RankDegree{a, d}, [&] {
        return "w^" + std::to_string(a) + "*" + std::to_string(d);
      });
    }
  return r;
}

Report homeo_between_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify homeo-between");
  Rng rng(cfg.seed);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 500);
  const Ordinal delta = Ordinal::omega_pow(5);
  const Ordinal window = Ordinal::omega_pow(4);
  for (std::uint64_t k = 0; k < n; ++k) {
    ClopenSet b;
    do b = random_clopen(rng, window, 5).with_delta(delta);
    while (b.empty());
    const HomeoClass cls = homeo_class(b);
    // Same class: lower-rank noise below w^4, then a canonical block.
    ClopenSet c = realize(cls, window, delta, delta);
    if (cls.rank > 0) {
      const ClopenSet noise = random_clopen(rng, Ordinal::omega_pow(cls.rank), 4);
      if (noise.bounded())
        c = unite(c, noise.with_delta(delta));
    }
    if (rng.chance(0.5)) std::swap(b, c);
    auto which = [&] { return show(b) + " -> " + show(c); };
    const Chart ch = build_homeo_between(b, c);
    r.record("sources partition", ch.sources(delta) == b, which);
    r.record("targets partition", ch.targets(delta) == c, which);
    bool ok_types = true, ok_points = true;
    for (const auto& p : ch.pieces()) {
      ok_types = ok_types && order_type(p.src) == order_type(p.dst);
      for (const Ordinal& x : {p.src.lo + Ordinal::finite(1), p.src.hi}) {
        const auto y = ch.apply(x);
        ok_points = ok_points && y && c.contains(*y) && ch.apply_inv(*y) == x &&
                    y->trailing_exponent() == x.trailing_exponent();
      }
    }
    r.record("piece order types", ok_types, which);
    r.record("bijective on endpoints", ok_points, which);
  }
  return r;
}

Report cofinal_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify lemma23");
  Rng rng(cfg.seed);
  const BlockSystem bs(cfg.alpha);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 200);
  for (std::uint64_t k = 0; k < n; ++k) {
    const Homeo g = random_homeo(bs, rng);
    const BlockIndex i = rng.uniform(1, 10);
    const BlockIndex t = g.pi(i);
    std::vector<Interval> stay;
    for (const auto& p : g.block_chart(i).pieces())
      if (bs.block_of(p.dst.hi) == t) stay.push_back(p.src);
    const ClopenSet cut = random_in_block(bs, rng, i, 3);
    const ClopenSet b = difference(ClopenSet::make(bs.delta(), std::move(stay)), cut);
    const auto [p, q] = signature_via_cofinal(g, i, b);
    const ClassPair via{homeo_class(p), homeo_class(q)};
    const ClassPair direct = signature(g, i).pair;
    r.record("cofinal signature ~ signature", sim(via, direct), [&] {
      return g.describe() + " block " + std::to_string(i) + " B=" + show(b) + ": " + to_string(via) +
             " vs " + to_string(direct);
    });
  }
  return r;
}

Report cocycle_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify lemma24");
  Rng rng(cfg.seed);
  const BlockSystem bs(cfg.alpha);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 200);
  const BlockIndex blocks = or_default<BlockIndex>(cfg.blocks, 20);
  for (std::uint64_t k = 0; k < n; ++k) {
    const Homeo g = random_homeo(bs, rng), h = random_homeo(bs, rng);
    for (BlockIndex i = 1; i <= blocks; ++i)
      r.record("cocycle", check_cocycle(g, h, i), [&] {
        return "g=" + g.describe() + " h=" + h.describe() + " block " + std::to_string(i);
      });
  }
  return r;
}

Report conjugator_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify lemma25");
  Rng rng(cfg.seed);
  const BlockSystem bs(cfg.alpha);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 50);
  const BlockIndex blocks = or_default<BlockIndex>(cfg.blocks, 40);
  const Perm zeta = Perm::zigzag();
  for (std::uint64_t k = 0; k <= n; ++k) {
    const bool periodic = k == n;
    const Homeo g = periodic || k % 2 == 0 ? Homeo::lift(bs, zeta)
                                           : compose(Homeo::lift(bs, zeta), random_perturbation(bs, rng));
    PairRule f;
    std::string label;
    if (periodic) {
      const BlockIndex period = rng.uniform(2, 5);
      std::vector<ClassPair> cycle;
      for (BlockIndex j = 0; j < period; ++j) cycle.push_back(random_target(rng, bs.alpha()));
      f = [cycle](BlockIndex i) { return cycle[i % cycle.size()]; };
      label = "periodic target, period " + std::to_string(period);
    } else {
      const BlockIndex support = rng.uniform(0, blocks);
      std::vector<ClassPair> table;
      for (BlockIndex j = 0; j < support; ++j) table.push_back(random_target(rng, bs.alpha()));
      f = [table](BlockIndex i) { return i <= table.size() ? table[i - 1] : ClassPair::zero(); };
      label = "target supported on blocks <= " + std::to_string(support);
    }
    const Homeo h = realize_conjugator(g, f, zeta);
    const Homeo conj = compose({inverse(h), g, h});
    for (BlockIndex i = 1; i <= blocks; ++i) {
      r.record("pi(h) = id", h.pi(i) == i, [&] { return label + ", block " + std::to_string(i); });
      const ClassPair got = signature(conj, i).pair, want = f(i);
      r.record("signature target", sim(got, want), [&] {
        return g.describe() + ", " + label + ", block " + std::to_string(i) + ": " + to_string(got) +
               " vs " + to_string(want);
      });
    }
  }
  return r;
}

Report zone_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify lemma21");
  Rng rng(cfg.seed);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 50);
  const std::size_t samples = or_default<std::size_t>(cfg.samples, 500);
  for (std::uint64_t k = 0; k < n; ++k) {
    const BlockSystem bs(cfg.alpha);
    const bool dyadic = rng.chance(0.3);
    const BlockIndex zones = dyadic ? 6 : rng.uniform(2, 6);
    const ZoneSystem zs = dyadic ? ZoneSystem::dyadic() : ZoneSystem::residues(zones);
    std::vector<BlockIndex> order(zones);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng.engine());
    const std::size_t n1 = rng.uniform(1, zones - 1), n2 = rng.uniform(0, zones - n1);
    const std::vector<BlockIndex> i1(order.begin(), order.begin() + n1),
        i2(order.begin() + n1, order.begin() + n1 + n2);
    std::vector<BlockIndex> image(zones);
    std::iota(image.begin(), image.end(), 1);
    std::shuffle(image.begin(), image.end(), rng.engine());
    std::vector<std::pair<BlockIndex, BlockIndex>> pairs;
    for (BlockIndex z = 1; z <= zones; ++z) pairs.emplace_back(z, image[z - 1]);
    const Perm psi = Perm::table(pairs);
    std::vector<BlockIndex> j1, j2;
    for (BlockIndex z : i1) j1.push_back(psi.apply(z));
    for (BlockIndex z : i2) j2.push_back(psi.apply(z));
    const Homeo h = random_blockwise(bs, rng);
    r.merge(verify_zone_identity(h, zs, i1, i2, j1, j2, psi, rng, samples));
  }
  r.notes.clear();
  return r;
}

Report factor_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify lemma26");
  Rng rng(cfg.seed);
  const BlockSystem bs(cfg.alpha);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 25);
  const BlockIndex blocks = or_default<BlockIndex>(cfg.blocks, 30);
  const std::size_t samples = or_default<std::size_t>(cfg.samples, 1000);
  const Perm zeta = Perm::zigzag();
  const Perm shuffled = Perm::compose(zeta, Perm::table({{1, 2}, {2, 4}, {4, 1}}));
  for (std::uint64_t k = 0; k < n; ++k) {
    const Homeo g = random_homeo(bs, rng);
    const Perm& sigma = k % 2 == 0 ? zeta : shuffled;
    const Certificate c = factor_certificate(g, sigma, blocks, samples, rng);
    for (auto check : c.report.checks) {
      if (check.first_counterexample)
        check.first_counterexample = "g=" + g.describe() + ": " + *check.first_counterexample;
      Report one;
      one.checks.push_back(std::move(check));
      r.merge(one);
    }
  }
  return r;
}

Report pi_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify pi");
  Rng rng(cfg.seed);
  const BlockSystem bs(cfg.alpha);
  const std::uint64_t n = or_default<std::uint64_t>(cfg.instances, 200);
  const BlockIndex blocks = or_default<BlockIndex>(cfg.blocks, 50);
  for (std::uint64_t k = 0; k < n; ++k) {
    const Homeo g = random_homeo(bs, rng), h = random_homeo(bs, rng);
    const Homeo gh = compose(g, h);
    for (BlockIndex i = 1; i <= blocks; ++i)
      r.record("pi(gh) = pi(g) pi(h)", gh.pi(i) == g.pi(h.pi(i)), [&] {
        return "g=" + g.describe() + " h=" + h.describe() + " block " + std::to_string(i);
      });
  }
  return r;
}

Report nontransitivity_campaign(const CampaignConfig& cfg) {
  Report r = start(cfg, "verify nontransitivity");
  const ClassPair a{HomeoClass::of(1, 1), HomeoClass::none()};
  const ClassPair b{HomeoClass::of(2, 1), HomeoClass::of(2, 1)};
  const ClassPair c = ClassPair::zero();
  r.record("sim(A,B)", sim(a, b));
  r.record("sim(B,C)", sim(b, c));
  r.record("not sim(A,C)", !sim(a, c));
  return r;
}

}  // namespace sip
