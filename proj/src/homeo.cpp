#include "sip/homeo.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>

namespace sip {

BlockSystem::BlockSystem(unsigned alpha)
    : alpha_(alpha), unit_(Ordinal::omega_pow(alpha)), delta_(Ordinal::omega_pow(alpha + 1)) {}

Ordinal BlockSystem::base(BlockIndex n) const {
  if (n == 0) throw DomainError("block indices start at 1");
  if (n == 1) return Ordinal{};
  return Ordinal::monomial(alpha_, n - 1);
}

Ordinal BlockSystem::top(BlockIndex n) const {
  if (n == 0) throw DomainError("block indices start at 1");
  return Ordinal::monomial(alpha_, n);
}

Interval BlockSystem::block(BlockIndex n) const { return Interval{base(n), top(n)}; }

ClopenSet BlockSystem::block_set(BlockIndex n) const {
  return ClopenSet::make(delta_, {block(n)});
}

BlockIndex BlockSystem::block_of(const Ordinal& x) const {
  if (x.is_zero() || !(x < delta_))
    throw DomainError(to_string(x) + " is not in [1, " + to_string(delta_) + ")");
  const auto& t = x.terms();
  if (t.front().exponent != alpha_) return 1;
  const BlockIndex c = to_u64(t.front().coefficient);
  return t.size() == 1 ? c : c + 1;
}

Ordinal BlockSystem::local(const Ordinal& x) const { return left_sub(base(block_of(x)), x); }

Ordinal BlockSystem::phi(BlockIndex n, const Ordinal& beta) const {
  if (beta.is_zero() || unit_ < beta)
    throw DomainError(to_string(beta) + " is not in [1, " + to_string(unit_) + "]");
  return base(n) + beta;
}

Ordinal BlockSystem::phi_ij(BlockIndex i, BlockIndex j, const Ordinal& x) const {
  if (block_of(x) != i)
    throw DomainError(to_string(x) + " is not in block " + std::to_string(i));
  return phi(j, local(x));
}

Piece BlockSystem::phi_piece(BlockIndex i, BlockIndex j) const { return Piece{block(i), block(j)}; }

class Homeo::Node {
 public:
  explicit Node(BlockSystem bs) : bs(std::move(bs)) {}
  virtual ~Node() = default;

  virtual Ordinal eval(const Ordinal& x) const {
    if (x == bs.delta()) return x;
    const auto y = block_chart(bs.block_of(x)).apply(x);
    if (!y) throw std::logic_error("block chart does not cover " + to_string(x));
    return *y;
  }

  virtual Ordinal eval_inv(const Ordinal& y) const {
    if (y == bs.delta()) return y;
    for (BlockIndex i : sources_of(bs.block_of(y)))
      if (auto x = block_chart(i).apply_inv(y)) return *x;
    throw std::logic_error("no preimage found for " + to_string(y));
  }

  const Chart& block_chart(BlockIndex i) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(i);
      if (it != memo_.end()) return *it->second;
    }
    auto chart = std::make_unique<const Chart>(compute_chart(i));
    std::lock_guard<std::mutex> lock(mu_);
    return *memo_.try_emplace(i, std::move(chart)).first->second;
  }

  virtual Chart compute_chart(BlockIndex i) const = 0;
  virtual std::vector<BlockIndex> sources_of(BlockIndex j) const = 0;
  virtual std::optional<BlockIndex> identity_beyond() const = 0;
  virtual std::string describe() const = 0;
  virtual bool is_identity() const { return false; }

  BlockSystem bs;

 private:
  mutable std::mutex mu_;
  mutable std::unordered_map<BlockIndex, std::unique_ptr<const Chart>> memo_;
};

namespace {

using Node = Homeo::Node;

std::vector<BlockIndex> sorted_unique(std::vector<BlockIndex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string describe_chart(const Chart& c) {
  std::string out = "(chart";
  for (const auto& p : c.pieces()) out += " (piece " + to_string(p.src) + " " + to_string(p.dst) + ")";
  return out + ")";
}

class IdentityNode final : public Node {
 public:
  using Node::Node;
  Ordinal eval(const Ordinal& x) const override { return x; }
  Ordinal eval_inv(const Ordinal& y) const override { return y; }
  Chart compute_chart(BlockIndex i) const override { return Chart::identity_on(bs.block(i)); }
  std::vector<BlockIndex> sources_of(BlockIndex j) const override { return {j}; }
  std::optional<BlockIndex> identity_beyond() const override { return 0; }
  std::string describe() const override { return "(identity)"; }
  bool is_identity() const override { return true; }
};

class ChartNode final : public Node {
 public:
  ChartNode(BlockSystem b, Chart global) : Node(std::move(b)), global_(std::move(global)) {
    const ClopenSet all = ClopenSet::full(bs.delta());
    if (global_.sources(bs.delta()) != all)
      throw DomainError("chart sources do not cover the space");
    if (global_.targets(bs.delta()) != all)
      throw DomainError("chart targets do not cover the space");
  }

  Ordinal eval(const Ordinal& x) const override { return *global_.apply(x); }
  Ordinal eval_inv(const Ordinal& y) const override { return *global_.apply_inv(y); }

  Chart compute_chart(BlockIndex i) const override {
    const Interval blk = bs.block(i);
    std::vector<Piece> out;
    for (const auto& p : global_.pieces()) {
      const Ordinal& lo = std::max(p.src.lo, blk.lo);
      const Ordinal& hi = std::min(p.src.hi, blk.hi);
      if (lo < hi) out.push_back(p.restrict_src(Interval{lo, hi}));
    }
    return Chart::make(std::move(out));
  }

  std::vector<BlockIndex> sources_of(BlockIndex j) const override {
    const Interval blk = bs.block(j);
    std::vector<BlockIndex> out;
    for (const auto& p : global_.pieces()) {
      const Ordinal& lo = std::max(p.dst.lo, blk.lo);
      const Ordinal& hi = std::min(p.dst.hi, blk.hi);
      if (lo < hi) out.push_back(bs.block_of(p.restrict_dst(Interval{lo, hi}).src.hi));
    }
    return sorted_unique(std::move(out));
  }

  std::optional<BlockIndex> identity_beyond() const override {
    const Piece& tail = global_.pieces().back();
    if (!tail.is_identity()) return std::nullopt;
    return tail.src.lo.is_zero() ? 0 : bs.block_of(tail.src.lo);
  }

  std::string describe() const override { return describe_chart(global_); }

 private:
  Chart global_;
};

class BlockMapNode final : public Node {
 public:
  BlockMapNode(BlockSystem b, Perm sigma, std::map<BlockIndex, Chart> overrides,
               std::optional<BlockRule> rule)
      : Node(std::move(b)),
        sigma_(std::move(sigma)),
        overrides_(std::move(overrides)),
        rule_(std::move(rule)) {
    validate_overrides();
  }

  Chart compute_chart(BlockIndex i) const override {
    if (auto it = overrides_.find(i); it != overrides_.end()) return it->second;
    if (rule_) {
      if (auto c = rule_->chart(i)) return *c;
    }
    return Chart::make({bs.phi_piece(i, sigma_.apply(i))});
  }

  std::vector<BlockIndex> sources_of(BlockIndex j) const override {
    if (rule_) return sorted_unique(rule_->sources(j));
    std::vector<BlockIndex> out{sigma_.apply_inv(j)};
    if (auto it = into_.find(j); it != into_.end())
      out.insert(out.end(), it->second.begin(), it->second.end());
    return sorted_unique(std::move(out));
  }

  std::optional<BlockIndex> identity_beyond() const override {
    if (rule_) return rule_->identity_beyond;
    const auto& supp = sigma_.finite_support();
    if (!supp) return std::nullopt;
    BlockIndex n = supp->empty() ? 0 : supp->back();
    for (const auto& [i, srcs] : into_) {
      n = std::max(n, i);
      for (BlockIndex s : srcs) n = std::max(n, s);
    }
    return n;
  }

  std::string describe() const override {
    if (rule_) return "(blockmap " + sigma_.to_string() + " " + rule_->label + ")";
    if (overrides_.empty()) return "(lift " + sigma_.to_string() + ")";
    std::string out = "(blockmap " + sigma_.to_string();
    for (const auto& [i, c] : overrides_)
      out += " (override " + std::to_string(i) + " " + describe_chart(c) + ")";
    return out + ")";
  }

 private:
  void validate_overrides() {
    std::map<BlockIndex, std::vector<Interval>> hits;
    for (const auto& [i, c] : overrides_) {
      if (c.sources(bs.delta()) != bs.block_set(i))
        throw DomainError("override chart for block " + std::to_string(i) +
                          " does not cover exactly that block");
      for (const auto& p : c.pieces()) {
        const BlockIndex j = bs.block_of(p.dst.hi);
        hits[j].push_back(p.dst);
        into_[j].push_back(i);
      }
      hits[sigma_.apply(i)];
    }
    for (auto& [j, ivs] : hits) {
      const BlockIndex pre = sigma_.apply_inv(j);
      if (!overrides_.count(pre)) ivs.push_back(bs.block(j));
      std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
      Ordinal cursor = bs.base(j);
      for (const auto& iv : ivs) {
        if (iv.lo != cursor)
          throw DomainError("overrides do not map onto block " + std::to_string(j) +
                            " bijectively near " + to_string(iv));
        cursor = iv.hi;
      }
      if (cursor != bs.top(j))
        throw DomainError("overrides leave part of block " + std::to_string(j) + " uncovered");
    }
  }

  Perm sigma_;
  std::map<BlockIndex, Chart> overrides_;
  std::optional<BlockRule> rule_;
  std::map<BlockIndex, std::vector<BlockIndex>> into_;  // target block -> overridden sources
};

class ComposeNode final : public Node {
 public:
  ComposeNode(std::shared_ptr<const Node> g, std::shared_ptr<const Node> h)
      : Node(g->bs), g_(std::move(g)), h_(std::move(h)) {}

  Ordinal eval(const Ordinal& x) const override { return g_->eval(h_->eval(x)); }
  Ordinal eval_inv(const Ordinal& y) const override { return h_->eval_inv(g_->eval_inv(y)); }

  Chart compute_chart(BlockIndex i) const override {
    const Chart& inner = h_->block_chart(i);
    std::set<BlockIndex> mids;
    for (const auto& p : inner.pieces()) mids.insert(bs.block_of(p.dst.hi));
    std::vector<Piece> outer;
    for (BlockIndex m : mids) {
      const auto& ps = g_->block_chart(m).pieces();
      outer.insert(outer.end(), ps.begin(), ps.end());
    }
    return compose(Chart::make(std::move(outer)), inner);
  }

  std::vector<BlockIndex> sources_of(BlockIndex j) const override {
    std::vector<BlockIndex> out;
    for (BlockIndex m : g_->sources_of(j)) {
      const auto s = h_->sources_of(m);
      out.insert(out.end(), s.begin(), s.end());
    }
    return sorted_unique(std::move(out));
  }

  std::optional<BlockIndex> identity_beyond() const override {
    const auto a = g_->identity_beyond(), b = h_->identity_beyond();
    if (!a || !b) return std::nullopt;
    return std::max(*a, *b);
  }

  std::string describe() const override {
    return "(compose " + g_->describe() + " " + h_->describe() + ")";
  }

 private:
  std::shared_ptr<const Node> g_, h_;
};

class InverseNode final : public Node {
 public:
  explicit InverseNode(std::shared_ptr<const Node> g) : Node(g->bs), g_(std::move(g)) {}

  Ordinal eval(const Ordinal& x) const override { return g_->eval_inv(x); }
  Ordinal eval_inv(const Ordinal& y) const override { return g_->eval(y); }

  Chart compute_chart(BlockIndex i) const override {
    std::vector<Piece> out;
    for (BlockIndex m : g_->sources_of(i))
      for (const auto& p : g_->block_chart(m).pieces())
        if (bs.block_of(p.dst.hi) == i) out.push_back(Piece{p.dst, p.src});
    return Chart::make(std::move(out));
  }

  std::vector<BlockIndex> sources_of(BlockIndex j) const override {
    std::vector<BlockIndex> out;
    for (const auto& p : g_->block_chart(j).pieces()) out.push_back(bs.block_of(p.dst.hi));
    return sorted_unique(std::move(out));
  }

  std::optional<BlockIndex> identity_beyond() const override { return g_->identity_beyond(); }
  std::string describe() const override { return "(inverse " + g_->describe() + ")"; }

  const std::shared_ptr<const Node>& inner() const { return g_; }

 private:
  std::shared_ptr<const Node> g_;
};

}  // namespace

Homeo Homeo::identity(const BlockSystem& bs) { return Homeo(std::make_shared<IdentityNode>(bs)); }

Homeo Homeo::chart(const BlockSystem& bs, Chart global) {
  return Homeo(std::make_shared<ChartNode>(bs, std::move(global)));
}

Homeo Homeo::block_map(const BlockSystem& bs, Perm sigma, std::map<BlockIndex, Chart> overrides) {
  if (overrides.empty() && sigma.is_identity()) return identity(bs);
  return Homeo(std::make_shared<BlockMapNode>(bs, std::move(sigma), std::move(overrides),
                                              std::nullopt));
}

Homeo Homeo::block_rule(const BlockSystem& bs, Perm sigma, BlockRule rule) {
  return Homeo(std::make_shared<BlockMapNode>(bs, std::move(sigma),
                                              std::map<BlockIndex, Chart>{}, std::move(rule)));
}

Homeo Homeo::lift(const BlockSystem& bs, Perm sigma) { return block_map(bs, std::move(sigma)); }

const BlockSystem& Homeo::blocks() const { return node_->bs; }

Ordinal Homeo::eval(const Ordinal& x) const {
  if (x.is_zero() || node_->bs.delta() < x)
    throw DomainError(to_string(x) + " is not in [1, " + to_string(node_->bs.delta()) + "]");
  return node_->eval(x);
}

Ordinal Homeo::eval_inv(const Ordinal& y) const {
  if (y.is_zero() || node_->bs.delta() < y)
    throw DomainError(to_string(y) + " is not in [1, " + to_string(node_->bs.delta()) + "]");
  return node_->eval_inv(y);
}

const Chart& Homeo::block_chart(BlockIndex i) const { return node_->block_chart(i); }
std::vector<BlockIndex> Homeo::sources_of(BlockIndex j) const { return node_->sources_of(j); }
std::optional<BlockIndex> Homeo::identity_beyond() const { return node_->identity_beyond(); }
std::string Homeo::describe() const { return node_->describe(); }

BlockIndex Homeo::pi(BlockIndex i) const {
  const BlockSystem& bs = node_->bs;
  const Ordinal y = node_->eval(bs.top(i));
  const BlockIndex n = bs.block_of(y);
  if (y != bs.top(n))
    throw std::logic_error("internal invariant violation: top of block " + std::to_string(i) +
                           " maps to " + to_string(y));
  return n;
}

Homeo compose(const Homeo& g, const Homeo& h) {
  if (!(g.blocks() == h.blocks())) throw DomainError("composing maps of different spaces");
  if (g.node_->is_identity()) return h;
  if (h.node_->is_identity()) return g;
  return Homeo(std::make_shared<ComposeNode>(g.node_, h.node_));
}

Homeo compose(std::initializer_list<Homeo> factors) {
  if (factors.size() == 0) throw DomainError("empty product");
  auto it = std::rbegin(factors);
  Homeo acc = *it;
  for (++it; it != std::rend(factors); ++it) acc = compose(*it, acc);
  return acc;
}

Homeo inverse(const Homeo& g) {
  if (g.node_->is_identity()) return g;
  if (auto inv = std::dynamic_pointer_cast<const InverseNode>(g.node_)) return Homeo(inv->inner());
  return Homeo(std::make_shared<InverseNode>(g.node_));
}

BlockIndex pi_of(const Homeo& g, BlockIndex i) { return g.pi(i); }

Perm induced_perm(const Homeo& g) {
  const Homeo gi = inverse(g);
  return Perm::rule(
      "pi", [g](BlockIndex i) { return g.pi(i); }, [gi](BlockIndex i) { return gi.pi(i); });
}

Signature signature(const Homeo& g, BlockIndex i) {
  const BlockSystem& bs = g.blocks();
  Signature s;
  s.target = g.pi(i);
  std::vector<Interval> img, pre;
  for (const auto& p : g.block_chart(i).pieces()) {
    if (bs.block_of(p.dst.hi) != s.target) continue;
    img.push_back(p.dst);
    pre.push_back(p.src);
  }
  s.p = difference(bs.block_set(s.target), ClopenSet::make(bs.delta(), std::move(img)));
  s.q = difference(bs.block_set(i), ClopenSet::make(bs.delta(), std::move(pre)));
  s.pair = ClassPair{homeo_class(s.p), homeo_class(s.q)};
  return s;
}

namespace {

template <class BlockCheck>
BoundedVerdict scan_blocks(const Homeo& g, const ClopenSet& b, BlockIndex bound,
                           BlockCheck&& ok) {
  if (b.delta() != g.blocks().delta()) throw DomainError("set lives in a different space");
  const auto n = g.identity_beyond();
  BoundedVerdict v;
  v.exact = n.has_value();
  v.checked_to = n ? *n : bound;
  for (BlockIndex i = 1; i <= v.checked_to; ++i) {
    const ClopenSet bi = clip(b, g.blocks().block(i));
    if (bi.empty()) continue;
    if (!ok(i, bi)) return BoundedVerdict{false, true, i};
  }
  return v;
}

}  // namespace

BoundedVerdict fixes_pointwise(const Homeo& g, const ClopenSet& b, BlockIndex bound) {
  return scan_blocks(g, b, bound, [&](BlockIndex i, const ClopenSet& bi) {
    const Chart on_b = g.block_chart(i).restrict_to(bi);
    for (const auto& p : on_b.pieces())
      if (!p.is_identity()) return false;
    return true;
  });
}

BoundedVerdict setwise_stabilizes(const Homeo& g, const ClopenSet& b, BlockIndex bound) {
  const Homeo gi = inverse(g);
  return scan_blocks(g, b, bound, [&](BlockIndex i, const ClopenSet& bi) {
    return g.block_chart(i).image(bi).subset_of(b) && gi.block_chart(i).image(bi).subset_of(b);
  });
}

std::optional<Ordinal> first_disagreement(const Homeo& g, const Homeo& h,
                                          const std::vector<Ordinal>& sample) {
  for (const auto& x : sample)
    if (g.eval(x) != h.eval(x)) return x;
  return std::nullopt;
}

std::vector<Ordinal> sample_points(const BlockSystem& bs, Rng& rng, BlockIndex max_block,
                                   std::size_t count) {
  std::vector<Ordinal> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const BlockIndex n = rng.uniform(1, max_block);
    const Ordinal beta =
        rng.chance(0.1) ? bs.unit() : Ordinal::finite(1) + random_below(rng, bs.unit());
    out.push_back(bs.phi(n, beta));
  }
  return out;
}

std::vector<Ordinal> chart_endpoints(const Homeo& g, BlockIndex max_block) {
  std::vector<Ordinal> out;
  for (BlockIndex i = 1; i <= max_block; ++i) {
    for (const auto& p : g.block_chart(i).pieces()) {
      out.push_back(p.src.lo + Ordinal::finite(1));
      out.push_back(p.src.hi);
    }
  }
  return out;
}

Perm random_block_perm(Rng& rng, const RandomHomeoOptions& opt) {
  auto table = [&] {
    std::vector<BlockIndex> img(opt.perm_span);
    std::iota(img.begin(), img.end(), 1);
    std::shuffle(img.begin(), img.end(), rng.engine());
    std::vector<std::pair<BlockIndex, BlockIndex>> pairs;
    for (BlockIndex i = 1; i <= opt.perm_span; ++i) pairs.emplace_back(i, img[i - 1]);
    return Perm::table(pairs);
  };
  switch (rng.uniform(0, opt.allow_zigzag ? 3 : 1)) {
    case 0:
      return table();
    case 1:
      return Perm::transposition(rng.uniform(1, opt.perm_span), rng.uniform(1, opt.perm_span));
    case 2:
      return Perm::compose(table(), Perm::zigzag());
    default:
      return Perm::zigzag();
  }
}

Homeo random_perturbation(const BlockSystem& bs, Rng& rng, const RandomHomeoOptions& opt) {
  if (bs.alpha() == 0) return Homeo::identity(bs);
  std::map<BlockIndex, Ordinal> cursor;
  std::vector<Piece> pieces;
  std::vector<Interval> moved;
  const auto groups = rng.uniform(0, opt.max_moves);
  for (std::uint64_t g = 0; g < groups; ++g) {
    const Ordinal len = random_below(rng, bs.unit(), 3) + Ordinal::finite(1);
    const auto copies = rng.uniform(2, 3);
    std::vector<Interval> slots;
    const BlockIndex home = rng.uniform(1, opt.perturb_span);
    for (std::uint64_t c = 0; c < copies; ++c) {
      const BlockIndex b = opt.same_block ? home : rng.uniform(1, opt.perturb_span);
      Ordinal& cur = cursor[b];
      const Ordinal start = cur + random_below(rng, bs.unit(), 3);
      cur = start + len;
      slots.push_back(Interval{bs.base(b) + start, bs.base(b) + cur});
    }
    std::vector<std::size_t> order(slots.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (std::size_t k = 0; k < slots.size(); ++k) {
      pieces.push_back(Piece{slots[k], slots[order[k]]});
      moved.push_back(slots[k]);
    }
  }
  const ClopenSet rest = complement(ClopenSet::make(bs.delta(), moved));
  for (const auto& iv : rest.intervals()) pieces.push_back(Piece{iv, iv});
  return Homeo::chart(bs, Chart::make(std::move(pieces)));
}

Homeo random_homeo(const BlockSystem& bs, Rng& rng, const RandomHomeoOptions& opt) {
  const Homeo lifted = Homeo::lift(bs, random_block_perm(rng, opt));
  const Homeo pert = random_perturbation(bs, rng, opt);
  return rng.chance(0.5) ? compose(lifted, pert) : compose(pert, lifted);
}

}  // namespace sip
