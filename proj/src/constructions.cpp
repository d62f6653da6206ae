#include "sip/constructions.hpp"

#include <algorithm>
#include <set>

namespace sip {

namespace {

unsigned trailing_zeros(BlockIndex i) {
  unsigned v = 0;
  while (i % 2 == 0) {
    i /= 2;
    ++v;
  }
  return v;
}

// Interval inside A_from moved to the same local position in A_to.
Interval shift(const BlockSystem& bs, const Interval& iv, BlockIndex from, BlockIndex to) {
  const Ordinal from_base = bs.base(from), to_base = bs.base(to);
  return Interval{to_base + left_sub(from_base, iv.lo), to_base + left_sub(from_base, iv.hi)};
}

void require_blockwise(const Homeo& h, BlockIndex i) {
  const BlockSystem& bs = h.blocks();
  for (const auto& p : h.block_chart(i).pieces())
    if (bs.block_of(p.dst.hi) != i)
      throw DomainError("map does not fix block " + std::to_string(i) + " setwise");
}

void require_zone(const ZoneSystem& zs, BlockIndex n) {
  if (n == 0 || (zs.zone_count() && n > *zs.zone_count()) || (!zs.zone_count() && n > 63))
    throw DomainError("zone index " + std::to_string(n) + " out of range for " + zs.name());
}

std::string list_label(const std::vector<BlockIndex>& v) {
  std::string out = "{";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? " " : "") + std::to_string(v[k]);
  return out + "}";
}

}  // namespace

ZoneSystem ZoneSystem::residues(BlockIndex m) {
  if (m == 0) throw DomainError("residue zones need m >= 1");
  ZoneSystem z;
  z.kind_ = Kind::residues;
  z.count_ = m;
  z.name_ = "residues mod " + std::to_string(m);
  return z;
}

ZoneSystem ZoneSystem::dyadic() {
  ZoneSystem z;
  z.kind_ = Kind::dyadic;
  z.name_ = "dyadic";
  return z;
}

BlockIndex ZoneSystem::zone_of(BlockIndex i) const {
  if (i == 0) throw DomainError("block indices start at 1");
  if (kind_ == Kind::residues) return (i - 1) % *count_ + 1;
  return trailing_zeros(i) + 1;
}

BlockIndex ZoneSystem::theta(BlockIndex n, BlockIndex k) const {
  if (k == 0) throw DomainError("zone positions start at 1");
  if (kind_ == Kind::residues) return n + *count_ * (k - 1);
  return (BlockIndex{1} << (n - 1)) * (2 * k - 1);
}

BlockIndex ZoneSystem::theta_inv(BlockIndex n, BlockIndex i) const {
  if (zone_of(i) != n)
    throw DomainError("block " + std::to_string(i) + " is not in zone " + std::to_string(n));
  if (kind_ == Kind::residues) return (i - n) / *count_ + 1;
  return ((i >> (n - 1)) + 1) / 2;
}

ZoneSet ZoneSet::finite(std::vector<BlockIndex> zones) {
  std::sort(zones.begin(), zones.end());
  zones.erase(std::unique(zones.begin(), zones.end()), zones.end());
  ZoneSet s;
  s.label = list_label(zones);
  s.contains = [zones](BlockIndex n) { return std::binary_search(zones.begin(), zones.end(), n); };
  s.listed = std::move(zones);
  return s;
}

ZoneSet ZoneSet::rule(std::string label, std::function<bool(BlockIndex)> member) {
  ZoneSet s;
  s.label = std::move(label);
  s.contains = std::move(member);
  return s;
}

Chart transport_chart(const BlockSystem& bs, const Chart& c, BlockIndex from, BlockIndex to) {
  if (from == to) return c;
  std::vector<Piece> out;
  for (const auto& p : c.pieces())
    out.push_back(Piece{shift(bs, p.src, from, to), shift(bs, p.dst, from, to)});
  return Chart::make(std::move(out));
}

Homeo uniform_block_action(const BlockSystem& bs, const Chart& on_first_block) {
  if (on_first_block.sources(bs.delta()) != bs.block_set(1) ||
      on_first_block.targets(bs.delta()) != bs.block_set(1))
    throw DomainError("chart is not a bijection of the first block");
  bool trivial = true;
  for (const auto& p : on_first_block.pieces()) trivial = trivial && p.is_identity();
  if (trivial) return Homeo::identity(bs);
  BlockRule rule;
  rule.chart = [bs, on_first_block](BlockIndex i) -> std::optional<Chart> {
    return transport_chart(bs, on_first_block, 1, i);
  };
  rule.sources = [](BlockIndex j) { return std::vector<BlockIndex>{j}; };
  rule.label = "(uniform " + to_string(on_first_block) + ")";
  return Homeo::block_rule(bs, Perm(), std::move(rule));
}

Homeo random_blockwise(const BlockSystem& bs, Rng& rng, const RandomHomeoOptions& opt) {
  RandomHomeoOptions local = opt;
  local.same_block = true;
  RandomHomeoOptions first = local;
  first.perturb_span = 1;
  const Homeo common = uniform_block_action(bs, random_perturbation(bs, rng, first).block_chart(1));
  return compose(random_perturbation(bs, rng, local), common);
}

namespace {

// Acts on A_i, i in zone n with n selected, as h acts on A_{theta_n^{-1} i}.
Homeo zone_copies(const Homeo& h, const ZoneSystem& zs, const ZoneSet& m, BlockIndex check_bound,
                  std::optional<BlockIndex> identity_beyond, std::string label) {
  const BlockSystem& bs = h.blocks();
  if (h.identity_beyond() == BlockIndex{0}) return Homeo::identity(bs);
  for (BlockIndex i = 1; i <= check_bound; ++i) require_blockwise(h, i);
  BlockRule rule;
  rule.chart = [h, zs, m](BlockIndex i) -> std::optional<Chart> {
    const BlockSystem& bs = h.blocks();
    const BlockIndex n = zs.zone_of(i);
    if (!m.contains(n)) return Chart::identity_on(bs.block(i));
    const BlockIndex src = zs.theta_inv(n, i);
    require_blockwise(h, src);
    return transport_chart(bs, h.block_chart(src), src, i);
  };
  rule.sources = [](BlockIndex j) { return std::vector<BlockIndex>{j}; };
  rule.identity_beyond = identity_beyond;
  rule.label = std::move(label);
  return Homeo::block_rule(bs, Perm(), std::move(rule));
}

}  // namespace

Homeo copy_into_zones(const Homeo& h, const ZoneSystem& zs, BlockIndex n, BlockIndex check_bound) {
  require_zone(zs, n);
  std::optional<BlockIndex> beyond;
  if (auto hb = h.identity_beyond()) beyond = *hb ? zs.theta(n, *hb) : 0;
  return zone_copies(h, zs, ZoneSet::finite({n}), check_bound, beyond,
                     "(zone-copy " + std::to_string(n) + " " + zs.name() + ")");
}

Homeo zone_union(const Homeo& h, const ZoneSystem& zs, const ZoneSet& m, BlockIndex check_bound) {
  std::optional<BlockIndex> beyond;
  const auto hb = h.identity_beyond();
  if (m.listed) {
    for (BlockIndex n : *m.listed) require_zone(zs, n);
    if (m.listed->empty()) return Homeo::identity(h.blocks());
    if (hb) {
      beyond = 0;
      for (BlockIndex n : *m.listed) beyond = std::max(*beyond, *hb ? zs.theta(n, *hb) : 0);
    }
  } else if (hb == BlockIndex{0}) {
    beyond = 0;
  }
  return zone_copies(h, zs, m, check_bound, beyond, "(zone-union " + m.label + " " + zs.name() + ")");
}

Homeo zone_conjugator(const BlockSystem& bs, const ZoneSystem& zs, const Perm& psi) {
  if (psi.is_identity()) return Homeo::identity(bs);
  if (const auto count = zs.zone_count()) {
    for (BlockIndex n = 1; n <= *count; ++n)
      if (psi.apply(n) > *count)
        throw DomainError("zone permutation sends zone " + std::to_string(n) + " outside " +
                          zs.name());
  }
  auto forward = [zs, psi](BlockIndex i) {
    const BlockIndex m = zs.zone_of(i);
    return zs.theta(psi.apply(m), zs.theta_inv(m, i));
  };
  auto backward = [zs, psi](BlockIndex j) {
    const BlockIndex m = zs.zone_of(j);
    return zs.theta(psi.apply_inv(m), zs.theta_inv(m, j));
  };
  return Homeo::lift(bs, Perm::rule("zone-transfer " + psi.to_string() + " " + zs.name(),
                                    forward, backward));
}

Report verify_zone_identity(const Homeo& h, const ZoneSystem& zs, const std::vector<BlockIndex>& i1,
                            const std::vector<BlockIndex>& i2, const std::vector<BlockIndex>& j1,
                            const std::vector<BlockIndex>& j2, const Perm& psi, Rng& rng,
                            std::size_t samples) {
  const BlockSystem& bs = h.blocks();
  auto as_set = [](const std::vector<BlockIndex>& v) { return std::set<BlockIndex>(v.begin(), v.end()); };
  auto disjoint = [&](const std::vector<BlockIndex>& a, const std::vector<BlockIndex>& b) {
    const auto sb = as_set(b);
    return std::none_of(a.begin(), a.end(), [&](BlockIndex x) { return sb.count(x) > 0; });
  };
  auto image = [&](const std::vector<BlockIndex>& v) {
    std::set<BlockIndex> out;
    for (BlockIndex x : v) out.insert(psi.apply(x));
    return out;
  };
  if (!disjoint(i1, i2)) throw UsageError("I1 and I2 must be disjoint");
  if (!disjoint(j1, j2)) throw UsageError("J1 and J2 must be disjoint");
  if (image(i1) != as_set(j1)) throw UsageError("psi does not map I1 onto J1");
  if (image(i2) != as_set(j2)) throw UsageError("psi does not map I2 onto J2");
  std::vector<BlockIndex> zones;
  for (const auto* v : {&i1, &i2, &j1, &j2}) zones.insert(zones.end(), v->begin(), v->end());
  for (BlockIndex n : zones) {
    try {
      require_zone(zs, n);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }

  Report r;
  r.command = "verify lemma21";
  r.alpha = bs.alpha();
  const Homeo h_i1 = zone_union(h, zs, ZoneSet::finite(i1));
  const Homeo h_i2 = zone_union(h, zs, ZoneSet::finite(i2));
  const Homeo h_j1 = zone_union(h, zs, ZoneSet::finite(j1));
  const Homeo h_j2 = zone_union(h, zs, ZoneSet::finite(j2));
  const Homeo k = zone_conjugator(bs, zs, psi);
  const Homeo lhs = compose(inverse(h_j1), h_j2);
  const Homeo rhs = compose({k, inverse(h_i1), h_i2, inverse(k)});

  // Blocks carrying the first few copies of every zone involved.
  BlockIndex max_block = 1;
  for (BlockIndex n : zones) max_block = std::max(max_block, zs.theta(n, 6));
  std::vector<Ordinal> points = chart_endpoints(lhs, std::min<BlockIndex>(max_block, 64));
  const auto rhs_ends = chart_endpoints(rhs, std::min<BlockIndex>(max_block, 64));
  points.insert(points.end(), rhs_ends.begin(), rhs_ends.end());
  const auto uniform = sample_points(bs, rng, max_block, samples);
  points.insert(points.end(), uniform.begin(), uniform.end());
  for (const auto& x : points) {
    const Ordinal a = lhs.eval(x), b = rhs.eval(x);
    r.record("pointwise identity", a == b, [&] {
      return "x=" + to_string(x) + " lhs=" + to_string(a) + " rhs=" + to_string(b);
    });
  }

  std::set<BlockIndex> blocks;
  for (const auto& x : uniform) blocks.insert(bs.block_of(x));
  for (BlockIndex n : as_set(zones)) {
    const Homeo hn = copy_into_zones(h, zs, n);
    for (BlockIndex i : blocks) {
      bool ok = true;
      for (const auto& p : hn.block_chart(i).pieces()) {
        if (zs.zone_of(i) == n) ok = ok && bs.block_of(p.dst.hi) == i;
        else ok = ok && p.is_identity();
      }
      r.record("zone support", ok, [&] {
        return "copy for zone " + std::to_string(n) + " moves block " + std::to_string(i);
      });
    }
  }
  r.notes.push_back("zones " + zs.name() + ", blocks sampled up to " + std::to_string(max_block));
  return r;
}

std::pair<ClopenSet, ClopenSet> signature_via_cofinal(const Homeo& g, BlockIndex i,
                                                      const ClopenSet& b) {
  const BlockSystem& bs = g.blocks();
  const ClopenSet blk = bs.block_set(i);
  if (b.delta() != bs.delta()) throw DomainError("set lives in a different space");
  if (!b.subset_of(blk)) throw DomainError("B is not inside block " + std::to_string(i));
  if (!b.contains(bs.top(i))) throw DomainError("B is not cofinal in block " + std::to_string(i));
  const BlockIndex t = g.pi(i);
  const ClopenSet gb = g.block_chart(i).image(b);
  if (!gb.subset_of(bs.block_set(t)))
    throw DomainError("image of B leaves block " + std::to_string(t));
  return {difference(bs.block_set(t), gb), difference(blk, b)};
}

bool check_cocycle(const Homeo& g, const Homeo& h, BlockIndex i) {
  const ClassPair lhs = signature(compose(h, g), i).pair;
  const ClassPair rhs = pair_add(signature(g, i).pair, signature(h, g.pi(i)).pair);
  return sim(lhs, rhs);
}

}  // namespace sip

namespace sip {

RSSequence::RSSequence(Homeo g, PairRule f, Perm sigma)
    : g_(std::move(g)), f_(std::move(f)), sigma_(std::move(sigma)) {
  if (!sigma_.cycle()) throw DomainError("permutation carries no single-cycle certificate");
  memo_[0] = ClassPair::zero();
}

ClassPair RSSequence::step_term(BlockIndex i) const {
  return pair_add(pair_neg(signature(g_, i).pair), f_(i));
}

ClassPair RSSequence::at_position(std::int64_t j) const {
  const auto& cert = *sigma_.cycle();
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = memo_.find(j); it != memo_.end()) return it->second;
  if (j > 0) {
    std::int64_t k = memo_.rbegin()->first;
    ClassPair r = memo_.rbegin()->second;
    for (; k < j; ++k) {
      const BlockIndex i = cert.point(k);
      r = pair_add(r, step_term(i));
      memo_[k + 1] = r;
    }
    return r;
  }
  std::int64_t k = memo_.begin()->first;
  ClassPair r = memo_.begin()->second;
  for (; k > j; --k) {
    const BlockIndex i = cert.point(k - 1);
    r = pair_add(r, pair_add(signature(g_, i).pair, pair_neg(f_(i))));
    memo_[k - 1] = r;
  }
  return r;
}

ClassPair RSSequence::at(BlockIndex i) const { return at_position(sigma_.cycle()->position(i)); }

bool RSSequence::step_holds(BlockIndex i) const {
  return sim(pair_sub(at(sigma_.apply(i)), at(i)), step_term(i));
}

namespace {

// Where the pieces of the conjugator sit inside one block.  Out-going sets
// B_bj (j <= b, class of R_j) and C_bj (j < b, class of S_j), then in-coming
// sets B'_bj (j < b) and C'_bj (j <= b), one interval each, laid end to end
// from the local offset `start`.
struct BlockLayout {
  Ordinal start, end;
  std::vector<std::optional<Interval>> b_out, c_out, b_in, c_in;  // index j - 1
};

class ConjugatorLayout {
 public:
  ConjugatorLayout(BlockSystem bs, std::shared_ptr<const RSSequence> rs, Ordinal base_offset)
      : bs_(std::move(bs)), rs_(std::move(rs)), base_offset_(std::move(base_offset)) {}

  BlockLayout at(BlockIndex b) {
    std::lock_guard<std::mutex> lock(mu_);
    while (layouts_.size() < b) extend();
    return layouts_[b - 1];
  }

 private:
  std::optional<Ordinal> length_of(const HomeoClass& c) const {
    if (c.empty) return std::nullopt;
    if (c.rank >= bs_.alpha())
      throw DomainError("target class " + to_string(c) + " has rank not below " +
                        std::to_string(bs_.alpha()));
    return Ordinal::monomial(c.rank, c.degree);
  }

  void extend() {
    const BlockIndex b = layouts_.size() + 1;
    classes_.push_back(rs_->at(b));
    BlockLayout l;
    l.start = layouts_.empty() ? base_offset_ : layouts_.back().end;
    const Ordinal base = bs_.base(b);
    Ordinal cursor = l.start;
    auto place = [&](const HomeoClass& c) -> std::optional<Interval> {
      const auto len = length_of(c);
      if (!len) return std::nullopt;
      Interval iv{base + cursor, base + cursor + *len};
      cursor = cursor + *len;
      return iv;
    };
    for (BlockIndex j = 1; j <= b; ++j) l.b_out.push_back(place(classes_[j - 1].p));
    for (BlockIndex j = 1; j < b; ++j) l.c_out.push_back(place(classes_[j - 1].q));
    for (BlockIndex j = 1; j < b; ++j) l.b_in.push_back(place(classes_[j - 1].p));
    for (BlockIndex j = 1; j <= b; ++j) l.c_in.push_back(place(classes_[j - 1].q));
    if (cursor >= bs_.unit())
      throw DomainError("conjugator windows overflow block " + std::to_string(b));
    l.end = cursor;
    layouts_.push_back(std::move(l));
  }

  BlockSystem bs_;
  std::shared_ptr<const RSSequence> rs_;
  Ordinal base_offset_;
  std::mutex mu_;
  std::vector<ClassPair> classes_;
  std::vector<BlockLayout> layouts_;
};

ClopenSet union_of(const Ordinal& delta, const std::vector<std::optional<Interval>>& a,
                   const std::vector<std::optional<Interval>>& b) {
  std::vector<Interval> out;
  for (const auto* v : {&a, &b})
    for (const auto& iv : *v)
      if (iv) out.push_back(*iv);
  return ClopenSet::make(delta, std::move(out));
}

Chart conjugator_chart(const BlockSystem& bs, ConjugatorLayout& layout, BlockIndex b) {
  const BlockLayout here = layout.at(b);
  std::vector<Piece> pieces;
  const Ordinal base = bs.base(b);
  if (!here.start.is_zero()) {
    const Interval head{base, base + here.start};
    pieces.push_back(Piece{head, head});
  }
  const BlockLayout next = layout.at(b + 1);
  for (std::size_t k = 0; k < here.b_out.size(); ++k)
    if (here.b_out[k]) pieces.push_back(Piece{*here.b_out[k], *next.b_in[k]});
  if (b > 1) {
    const BlockLayout prev = layout.at(b - 1);
    for (std::size_t k = 0; k < here.c_out.size(); ++k)
      if (here.c_out[k]) pieces.push_back(Piece{*here.c_out[k], *prev.c_in[k]});
  }
  const Interval rest{base + here.start, bs.top(b)};
  const ClopenSet region = ClopenSet::make(bs.delta(), {rest});
  const ClopenSet outgoing = union_of(bs.delta(), here.b_out, here.c_out);
  const ClopenSet incoming = union_of(bs.delta(), here.b_in, here.c_in);
  const ClopenSet from = difference(region, outgoing), to = difference(region, incoming);
  if (homeo_class(from) != homeo_class(to))
    throw std::logic_error("closing map class mismatch in block " + std::to_string(b));
  const Chart closing = build_homeo_between(from, to);
  pieces.insert(pieces.end(), closing.pieces().begin(), closing.pieces().end());
  return Chart::make(std::move(pieces));
}

}  // namespace

Homeo realize_conjugator(const Homeo& g, PairRule f, const Perm& sigma, const ConjugatorOptions& opt) {
  const BlockSystem& bs = g.blocks();
  if (!sigma.cycle()) throw DomainError("permutation carries no single-cycle certificate");
  if (bs.alpha() == 0) throw DomainError("conjugator needs alpha >= 1");
  if (opt.base_offset >= bs.unit()) throw DomainError("base offset does not fit in a block");
  for (BlockIndex i = 1; i <= opt.check_bound; ++i) {
    if (g.pi(i) != sigma.apply(i))
      throw DomainError("pi(g) differs from sigma at block " + std::to_string(i));
    const ClassPair fi = f(i);
    for (const HomeoClass* c : {&fi.p, &fi.q})
      if (!c->empty && c->rank >= bs.alpha())
        throw DomainError("target " + to_string(fi) + " at block " + std::to_string(i) +
                          " is not realizable below rank " + std::to_string(bs.alpha()));
  }
  auto rs = std::make_shared<const RSSequence>(g, std::move(f), sigma);
  auto layout = std::make_shared<ConjugatorLayout>(bs, rs, opt.base_offset);
  BlockRule rule;
  rule.chart = [bs, layout](BlockIndex b) -> std::optional<Chart> {
    return conjugator_chart(bs, *layout, b);
  };
  rule.sources = [](BlockIndex j) {
    std::vector<BlockIndex> out{j, j + 1};
    if (j > 1) out.push_back(j - 1);
    return out;
  };
  rule.label = "(conjugator offset " + to_string(opt.base_offset) + ")";
  return Homeo::block_rule(bs, Perm(), std::move(rule));
}

}  // namespace sip

namespace sip {

std::pair<ClopenSet, ClopenSet> deficiency_sets(const Homeo& w, BlockIndex i) {
  const BlockSystem& bs = w.blocks();
  if (w.pi(i) != i) throw DomainError("map moves the top of block " + std::to_string(i));
  std::vector<Interval> leaving, staying_image;
  for (const auto& p : w.block_chart(i).pieces()) {
    if (bs.block_of(p.dst.hi) == i) staying_image.push_back(p.dst);
    else leaving.push_back(p.src);
  }
  return {ClopenSet::make(bs.delta(), std::move(leaving)),
          difference(bs.block_set(i), ClopenSet::make(bs.delta(), std::move(staying_image)))};
}

namespace {

Chart straightened_chart(const Homeo& w, BlockIndex i) {
  const BlockSystem& bs = w.blocks();
  const auto [b, c] = deficiency_sets(w, i);
  if (homeo_class(b) != homeo_class(c))
    throw DomainError("deficiency sets of block " + std::to_string(i) + " are not homeomorphic: " +
                      to_string(homeo_class(b)) + " vs " + to_string(homeo_class(c)));
  std::vector<Piece> pieces;
  for (const auto& p : w.block_chart(i).pieces())
    if (bs.block_of(p.dst.hi) == i) pieces.push_back(p);
  const Chart inside = build_homeo_between(b, c);
  pieces.insert(pieces.end(), inside.pieces().begin(), inside.pieces().end());
  return Chart::make(std::move(pieces));
}

bool canonical_piece(const BlockSystem& bs, const Piece& p) {
  const BlockIndex s = bs.block_of(p.src.hi), t = bs.block_of(p.dst.hi);
  return left_sub(bs.base(s), p.src.lo) == left_sub(bs.base(t), p.dst.lo);
}

// Smallest m >= i with offset <= w^(alpha-1) m.
Natural envelope_multiple(unsigned alpha, BlockIndex i, const Ordinal& offset) {
  const Natural floor_m = i;
  if (offset <= Ordinal::monomial(alpha - 1, floor_m)) return floor_m;
  const auto& lead = offset.terms().front();
  return offset == Ordinal::monomial(alpha - 1, lead.coefficient) ? lead.coefficient : lead.coefficient + 1;
}

}  // namespace

Homeo straighten(const Homeo& w, BlockIndex bound) {
  const BlockSystem& bs = w.blocks();
  for (BlockIndex i = 1; i <= bound; ++i) straightened_chart(w, i);
  BlockRule rule;
  rule.chart = [w](BlockIndex i) -> std::optional<Chart> { return straightened_chart(w, i); };
  rule.sources = [](BlockIndex j) { return std::vector<BlockIndex>{j}; };
  rule.identity_beyond = w.identity_beyond();
  rule.label = "(straighten " + w.describe() + ")";
  return Homeo::block_rule(bs, Perm(), std::move(rule));
}

std::optional<Ordinal> canonical_offset(const Homeo& g, BlockIndex bound) {
  const BlockSystem& bs = g.blocks();
  Ordinal o;
  for (BlockIndex i = 1; i <= bound; ++i) {
    const Piece& top = g.block_chart(i).pieces().back();
    if (!canonical_piece(bs, top)) return std::nullopt;
    o = std::max(o, left_sub(bs.base(i), top.src.lo));
  }
  return o;
}

Certificate factor_certificate(const Homeo& g, const Perm& sigma, BlockIndex bound,
                               std::size_t samples, Rng& rng) {
  const BlockSystem& bs = g.blocks();
  if (!sigma.cycle()) throw DomainError("permutation carries no single-cycle certificate");
  if (bs.alpha() == 0) throw DomainError("factorization needs alpha >= 1");
  Certificate cert{Homeo::identity(bs), Homeo::identity(bs), Homeo::identity(bs),
                   Homeo::identity(bs), {}, {}, {}};
  Report& r = cert.report;
  r.command = "verify lemma26";
  r.alpha = bs.alpha();

  const Perm pg = induced_perm(g);
  cert.h = Homeo::lift(bs, Perm::compose(Perm::inverse(pg), sigma));
  const Homeo k0 = Homeo::lift(bs, sigma);
  const Homeo m = compose(g, cert.h);

  // Blocks whose charts meet the checked range.
  BlockIndex reach = bound + 1;
  for (BlockIndex i = 1; i <= bound + 1; ++i)
    reach = std::max({reach, sigma.apply(i), sigma.apply_inv(i)});
  const auto offset = canonical_offset(m, reach);
  r.record("canonical tail", offset.has_value(), [] {
    return std::string("g h is not a canonical block map on any tail of the checked blocks");
  });
  const Ordinal base_offset = offset ? *offset : Ordinal();

  auto cache = std::make_shared<std::map<BlockIndex, ClassPair>>();
  auto mu = std::make_shared<std::mutex>();
  const PairRule f = [m, cache, mu](BlockIndex i) {
    std::lock_guard<std::mutex> lock(*mu);
    auto it = cache->find(i);
    if (it == cache->end()) it = cache->emplace(i, signature(m, i).pair).first;
    return it->second;
  };
  ConjugatorOptions opt;
  opt.base_offset = base_offset;
  opt.check_bound = reach;
  const Homeo c = realize_conjugator(k0, f, sigma, opt);
  cert.k_prime = compose({inverse(c), k0, c});
  const Homeo w = compose(inverse(cert.k_prime), m);

  for (BlockIndex i = 1; i <= bound; ++i) {
    const ClassPair sk = signature(cert.k_prime, i).pair, sm = f(i);
    r.record("signature match", sim(sk, sm), [&] {
      return "block " + std::to_string(i) + ": " + to_string(sk) + " vs " + to_string(sm);
    });
    const ClassPair sw = signature(w, i).pair;
    r.record("trivial signatures", sim(sw, ClassPair::zero()), [&] {
      return "block " + std::to_string(i) + ": " + to_string(sw);
    });
  }

  try {
    cert.l = straighten(w, bound);
  } catch (const DomainError& e) {
    r.record("straighten", false, [&] { return std::string(e.what()); });
    return cert;
  }
  r.record("straighten", true);
  cert.w_prime = compose(inverse(cert.l), w);

  Ordinal union_type;
  for (BlockIndex i = 1; i <= bound; ++i) {
    const ClopenSet b = deficiency_sets(w, i).first;
    const Ordinal reach_in_block =
        b.empty() ? Ordinal() : left_sub(bs.base(i), b.intervals().back().hi);
    const Natural mult = envelope_multiple(bs.alpha(), i, reach_in_block);
    const Ordinal len = Ordinal::monomial(bs.alpha() - 1, mult);
    cert.envelopes.push_back(ClopenSet::make(bs.delta(), {Interval{bs.base(i), bs.base(i) + len}}));
    union_type = union_type + len;
  }
  cert.envelope_union_type = to_string(Ordinal::omega_pow(bs.alpha()));
  r.notes.push_back("envelopes D_i = (base, base + w^" + std::to_string(bs.alpha() - 1) +
                    " m_i], m_i >= i; union over all blocks has order type " +
                    cert.envelope_union_type + " (first " + std::to_string(bound) +
                    " blocks: " + to_string(union_type) + ")");
  r.notes.push_back("conjugator windows start at local offset " + to_string(base_offset));

  std::vector<Ordinal> points = sample_points(bs, rng, bound, samples);
  for (const Homeo* factor : std::initializer_list<const Homeo*>{&g, &cert.h, &cert.k_prime, &cert.l, &cert.w_prime}) {
    const auto ends = chart_endpoints(*factor, bound);
    points.insert(points.end(), ends.begin(), ends.end());
  }
  const Homeo h_inv = inverse(cert.h);
  for (const auto& x : points) {
    const Ordinal lhs = g.eval(x);
    const Ordinal rhs = cert.k_prime.eval(cert.l.eval(cert.w_prime.eval(h_inv.eval(x))));
    r.record("four-factor identity", lhs == rhs, [&] {
      return "x=" + to_string(x) + " g=" + to_string(lhs) + " product=" + to_string(rhs);
    });
  }

  for (BlockIndex i = 1; i <= bound; ++i) {
    const std::string at = "block " + std::to_string(i);
    r.record("pi(h)", g.pi(cert.h.pi(i)) == sigma.apply(i), [&] { return at; });
    r.record("pi(k')", cert.k_prime.pi(i) == sigma.apply(i), [&] { return at; });
    r.record("pi(w')", cert.w_prime.pi(i) == i, [&] { return at; });
    bool blockwise = true;
    for (const auto& p : cert.l.block_chart(i).pieces())
      blockwise = blockwise && bs.block_of(p.dst.hi) == i;
    r.record("l blockwise", blockwise, [&] { return at; });
    const ClopenSet outside = difference(bs.block_set(i), cert.envelopes[i - 1]);
    bool supported = true;
    const Chart off_envelope = cert.w_prime.block_chart(i).restrict_to(outside);
    for (const auto& p : off_envelope.pieces())
      supported = supported && p.is_identity();
    r.record("support of w' in envelopes", supported, [&] { return at; });
    r.record("deficiency set in envelope",
             deficiency_sets(w, i).first.subset_of(cert.envelopes[i - 1]), [&] { return at; });
  }
  return cert;
}

}  // namespace sip
