#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "sip/perm.hpp"
#include "sip/random.hpp"

using namespace sip;

namespace {

// Independent single-cycle test: walk the orbit of 1 both ways and demand
// that every index up to k shows up.  A finite cycle among small indices
// is never reached, so it is caught.
bool orbit_of_one_covers(const Perm& p, BlockIndex k, int steps) {
  std::set<BlockIndex> seen{1};
  BlockIndex f = 1, b = 1;
  for (int s = 0; s < steps; ++s) {
    f = p.apply(f);
    b = p.apply_inv(b);
    if (f == 1 || b == 1) return false;  // returned to start: finite cycle
    seen.insert(f);
    seen.insert(b);
  }
  for (BlockIndex i = 1; i <= k; ++i)
    if (!seen.count(i)) return false;
  return true;
}

void check_certificate(const Perm& p, BlockIndex upto) {
  const auto& c = p.cycle();
  REQUIRE(c);
  CHECK(c->position(1) == 0);
  for (BlockIndex i = 1; i <= upto; ++i) {
    CHECK(c->point(c->position(i)) == i);
    CHECK(c->position(p.apply(i)) == c->position(i) + 1);
  }
  for (std::int64_t j = -40; j <= 40; ++j) CHECK(c->position(c->point(j)) == j);
}

Perm random_table(Rng& rng, BlockIndex m) {
  std::vector<BlockIndex> img(m);
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng.engine());
  std::vector<std::pair<BlockIndex, BlockIndex>> pairs;
  for (BlockIndex i = 1; i <= m; ++i) pairs.emplace_back(i, img[i - 1]);
  return Perm::table(pairs);
}

}  // namespace

TEST_CASE("zigzag values") {
  const Perm z = Perm::zigzag();
  CHECK(z(1) == 2);
  CHECK(z(2) == 4);
  CHECK(z(3) == 1);
  CHECK(z(5) == 3);
  for (BlockIndex i = 1; i < 200; ++i) CHECK(z.apply_inv(z(i)) == i);
  check_certificate(z, 200);
  check_certificate(Perm::inverse(z), 200);
  CHECK(orbit_of_one_covers(z, 50, 200));
}

TEST_CASE("tables") {
  CHECK_THROWS_AS(Perm::table({{1, 2}, {2, 3}}), DomainError);
  CHECK_THROWS_AS(Perm::table({{1, 2}, {3, 2}}), DomainError);
  CHECK_THROWS_AS(Perm::table({{1, 2}, {1, 3}}), DomainError);
  const Perm t = Perm::table({{1, 3}, {3, 2}, {2, 1}, {7, 7}});
  CHECK(t(1) == 3);
  CHECK(t(9) == 9);
  CHECK(t.apply_inv(3) == 1);
  CHECK(*t.finite_support() == std::vector<BlockIndex>{1, 2, 3});
  CHECK(t.to_string() == "(table (1 3) (2 1) (3 2))");
  CHECK(Perm::compose(t, Perm::inverse(t)).is_identity());
  CHECK(!t.cycle());
}

TEST_CASE("composition and inverse act pointwise") {
  Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    const Perm a = random_table(rng, 8), b = random_table(rng, 8);
    const Perm ab = Perm::compose(a, b);
    for (BlockIndex i = 1; i <= 12; ++i) {
      CHECK(ab(i) == a(b(i)));
      CHECK(ab.apply_inv(ab(i)) == i);
      CHECK(Perm::inverse(ab)(ab(i)) == i);
    }
  }
}

TEST_CASE("certificates survive finite perturbations exactly when the cycle does") {
  Rng rng(12);
  int certified = 0, rejected = 0;
  for (int n = 0; n < 400; ++n) {
    const Perm t = random_table(rng, static_cast<BlockIndex>(rng.uniform(2, 9)));
    Perm base = rng.chance(0.5) ? Perm::zigzag() : Perm::inverse(Perm::zigzag());
    const Perm p = rng.chance(0.5) ? Perm::compose(t, base) : Perm::compose(base, t);
    const bool oracle = orbit_of_one_covers(p, 30, 200);
    CHECK(static_cast<bool>(p.cycle()) == oracle);
    if (p.cycle()) {
      ++certified;
      check_certificate(p, 60);
      // nesting keeps working
      const Perm q = Perm::compose(Perm::transposition(2, 3), p);
      CHECK(static_cast<bool>(q.cycle()) == orbit_of_one_covers(q, 30, 200));
      if (q.cycle()) check_certificate(q, 60);
    } else {
      ++rejected;
    }
  }
  CHECK(certified > 20);
  CHECK(rejected > 20);
}

TEST_CASE("rule permutations") {
  const Perm shift_pairs = Perm::rule(
      "swap-pairs", [](BlockIndex i) { return i % 2 ? i + 1 : i - 1; },
      [](BlockIndex i) { return i % 2 ? i + 1 : i - 1; });
  CHECK(shift_pairs(1) == 2);
  CHECK(shift_pairs(4) == 3);
  CHECK(!shift_pairs.finite_support());
  CHECK(shift_pairs.to_string() == "(rule swap-pairs)");
}
