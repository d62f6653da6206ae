#include "sip/perm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "sip/ordinal.hpp"

namespace sip {

struct Perm::Node {
  enum class Kind { table, zigzag, compose, inverse, rule };
  Kind kind = Kind::table;
  std::map<BlockIndex, BlockIndex> fwd, bwd;  // table
  std::shared_ptr<const Node> a, b;           // compose: a after b; inverse: a
  std::string name;                           // rule
  std::function<BlockIndex(BlockIndex)> rule_fwd, rule_bwd;
  std::optional<std::vector<BlockIndex>> support;
  std::shared_ptr<const CycleCertificate> cycle;

  BlockIndex apply(BlockIndex i) const {
    switch (kind) {
      case Kind::table: {
        auto it = fwd.find(i);
        return it == fwd.end() ? i : it->second;
      }
      case Kind::zigzag:
        if (i == 1) return 2;
        return i % 2 == 0 ? i + 2 : i - 2;
      case Kind::compose:
        return a->apply(b->apply(i));
      case Kind::inverse:
        return a->apply_inv(i);
      case Kind::rule:
        return rule_fwd(i);
    }
    return i;
  }

  BlockIndex apply_inv(BlockIndex i) const {
    switch (kind) {
      case Kind::table: {
        auto it = bwd.find(i);
        return it == bwd.end() ? i : it->second;
      }
      case Kind::zigzag:
        if (i == 2) return 1;
        return i % 2 == 0 ? i - 2 : i + 2;
      case Kind::compose:
        return b->apply_inv(a->apply_inv(i));
      case Kind::inverse:
        return a->apply(i);
      case Kind::rule:
        return rule_bwd(i);
    }
    return i;
  }
};

namespace {

using Node = Perm::Node;

std::shared_ptr<const CycleCertificate> zigzag_certificate() {
  return std::make_shared<const CycleCertificate>(
      [](BlockIndex i) -> std::int64_t {
        if (i == 1) return 0;
        const auto k = static_cast<std::int64_t>(i / 2);
        return i % 2 == 0 ? k : -k;
      },
      [](std::int64_t j) -> BlockIndex {
        if (j == 0) return 1;
        if (j > 0) return static_cast<BlockIndex>(2 * j);
        return static_cast<BlockIndex>(-2 * j + 1);
      });
}

std::shared_ptr<const CycleCertificate> inverse_certificate(
    std::shared_ptr<const CycleCertificate> c) {
  return std::make_shared<const CycleCertificate>(
      [c](BlockIndex i) { return -c->position(i); },
      [c](std::int64_t j) { return c->point(-j); });
}

// rho agrees with the certified cycle c outside the finite set S.  Walk rho
// through a window of c-positions covering every disturbed point; rho is one
// infinite cycle iff the walk threads the whole window before leaving it on
// the right.
std::shared_ptr<const CycleCertificate> perturbed_certificate(
    std::shared_ptr<const CycleCertificate> c, std::shared_ptr<const Node> rho,
    const std::vector<BlockIndex>& S) {
  const BlockIndex one = 1;
  std::int64_t lo = c->position(one), hi = lo;
  auto widen = [&](BlockIndex x) {
    const std::int64_t p = c->position(x);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  };
  for (BlockIndex x : S) {
    widen(x);
    widen(rho->apply(x));
    widen(rho->apply_inv(x));
  }
  --lo;
  ++hi;
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<BlockIndex> walk;
  walk.reserve(width);
  BlockIndex x = c->point(lo);
  while (true) {
    walk.push_back(x);
    if (walk.size() > width) return nullptr;
    const BlockIndex y = rho->apply(x);
    const std::int64_t p = c->position(y);
    if (p > hi) {
      if (p != hi + 1 || walk.size() != width) return nullptr;
      break;
    }
    if (p < lo) return nullptr;
    x = y;
  }
  auto table = std::make_shared<std::unordered_map<BlockIndex, std::int64_t>>();
  for (std::size_t k = 0; k < walk.size(); ++k) (*table)[walk[k]] = static_cast<std::int64_t>(k);
  if (table->size() != width) return nullptr;
  auto seq = std::make_shared<std::vector<BlockIndex>>(std::move(walk));
  const auto n = static_cast<std::int64_t>(width);
  auto raw_pos = [c, table, lo, hi, n](BlockIndex i) -> std::int64_t {
    const std::int64_t j = c->position(i);
    if (j < lo) return j - lo;
    if (j > hi) return n + (j - hi - 1);
    return table->at(i);
  };
  const std::int64_t offset = raw_pos(one);
  return std::make_shared<const CycleCertificate>(
      [raw_pos, offset](BlockIndex i) { return raw_pos(i) - offset; },
      [c, seq, lo, hi, n, offset](std::int64_t m) -> BlockIndex {
        const std::int64_t r = m + offset;
        if (r < 0) return c->point(lo + r);
        if (r < n) return (*seq)[static_cast<std::size_t>(r)];
        return c->point(hi + 1 + (r - n));
      });
}

std::vector<BlockIndex> merge_support(const std::vector<BlockIndex>& x,
                                      const std::vector<BlockIndex>& y,
                                      const Node& composite) {
  std::set<BlockIndex> s(x.begin(), x.end());
  s.insert(y.begin(), y.end());
  std::vector<BlockIndex> out;
  for (BlockIndex i : s)
    if (composite.apply(i) != i) out.push_back(i);
  return out;
}

}  // namespace

Perm::Perm() {
  auto n = std::make_shared<Node>();
  n->support = std::vector<BlockIndex>{};
  node_ = std::move(n);
}

Perm Perm::table(const std::vector<std::pair<BlockIndex, BlockIndex>>& pairs) {
  auto n = std::make_shared<Node>();
  for (const auto& [i, j] : pairs) {
    if (i == 0 || j == 0) throw DomainError("block indices start at 1");
    if (n->fwd.count(i)) throw DomainError("index " + std::to_string(i) + " mapped twice");
    if (n->bwd.count(j)) throw DomainError("index " + std::to_string(j) + " hit twice");
    n->fwd[i] = j;
    n->bwd[j] = i;
  }
  for (const auto& [i, j] : n->fwd) {
    (void)j;
    if (!n->bwd.count(i))
      throw DomainError("index " + std::to_string(i) + " is moved but nothing maps onto it");
  }
  for (auto it = n->fwd.begin(); it != n->fwd.end();) {
    if (it->first == it->second) {
      n->bwd.erase(it->second);
      it = n->fwd.erase(it);
    } else {
      ++it;
    }
  }
  std::vector<BlockIndex> supp;
  for (const auto& kv : n->fwd) supp.push_back(kv.first);
  n->support = std::move(supp);
  return Perm(std::move(n));
}

Perm Perm::transposition(BlockIndex a, BlockIndex b) {
  if (a == b) return table({});
  return table({{a, b}, {b, a}});
}

Perm Perm::zigzag() {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::zigzag;
  n->cycle = zigzag_certificate();
  return Perm(std::move(n));
}

Perm Perm::compose(const Perm& a, const Perm& b) {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::compose;
  n->a = a.node_;
  n->b = b.node_;
  if (a.node_->support && b.node_->support) {
    n->support = merge_support(*a.node_->support, *b.node_->support, *n);
  } else if (a.node_->cycle && b.node_->support) {
    n->cycle = perturbed_certificate(a.node_->cycle, n, *b.node_->support);
  } else if (b.node_->cycle && a.node_->support) {
    std::vector<BlockIndex> S;
    for (BlockIndex y : *a.node_->support) S.push_back(b.node_->apply_inv(y));
    n->cycle = perturbed_certificate(b.node_->cycle, n, S);
  }
  return Perm(std::move(n));
}

Perm Perm::inverse(const Perm& a) {
  if (a.is_identity()) return a;
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::inverse;
  n->a = a.node_;
  n->support = a.node_->support;
  if (a.node_->cycle) n->cycle = inverse_certificate(a.node_->cycle);
  return Perm(std::move(n));
}

Perm Perm::rule(std::string name, std::function<BlockIndex(BlockIndex)> forward,
                std::function<BlockIndex(BlockIndex)> backward) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::rule;
  n->name = std::move(name);
  n->rule_fwd = std::move(forward);
  n->rule_bwd = std::move(backward);
  return Perm(std::move(n));
}

BlockIndex Perm::apply(BlockIndex i) const { return node_->apply(i); }
BlockIndex Perm::apply_inv(BlockIndex i) const { return node_->apply_inv(i); }

const std::shared_ptr<const CycleCertificate>& Perm::cycle() const { return node_->cycle; }

const std::optional<std::vector<BlockIndex>>& Perm::finite_support() const {
  return node_->support;
}

bool Perm::is_identity() const { return node_->support && node_->support->empty(); }

namespace {

std::string render(const Node& n) {
  switch (n.kind) {
    case Node::Kind::table: {
      std::string out = "(table";
      for (const auto& [i, j] : n.fwd) out += " (" + std::to_string(i) + " " + std::to_string(j) + ")";
      return out + ")";
    }
    case Node::Kind::zigzag:
      return "(zigzag)";
    case Node::Kind::compose:
      return "(perm-compose " + render(*n.a) + " " + render(*n.b) + ")";
    case Node::Kind::inverse:
      return "(perm-inverse " + render(*n.a) + ")";
    case Node::Kind::rule:
      return "(rule " + n.name + ")";
  }
  return "";
}

}  // namespace

std::string Perm::to_string() const { return render(*node_); }

}  // namespace sip
