#include <doctest.h>

#include "sip/chart.hpp"
#include "sip/random.hpp"

using namespace sip;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }
Interval I(const char* lo, const char* hi) { return Interval{O(lo), O(hi)}; }

// Checks that c is a strictly increasing-on-pieces bijection b -> c by
// pushing sample points through and comparing with membership, and that it
// preserves Cantor-Bendixson rank of every sampled point.
void check_bijection(const Chart& ch, const ClopenSet& b, const ClopenSet& c, Rng& rng) {
  CHECK(ch.sources(b.delta()) == b);
  CHECK(ch.targets(c.delta()) == c);
  for (const auto& p : ch.pieces()) {
    for (int k = 0; k < 6; ++k) {
      Ordinal x = p.src.lo + Ordinal::finite(1) + random_below(rng, left_sub(p.src.lo, p.src.hi));
      if (x > p.src.hi) x = p.src.hi;
      const Ordinal y = *ch.apply(x);
      CHECK(c.contains(y));
      CHECK(*ch.apply_inv(y) == x);
      CHECK(y.trailing_exponent() == x.trailing_exponent());
    }
  }
}

}  // namespace

TEST_CASE("pieces and charts") {
  const Piece p{I("w", "w*2"), I("w^2", "w^2 + w")};
  CHECK(p.map(O("w + 3")) == O("w^2 + 3"));
  CHECK(p.restrict_src(I("w + 1", "w + 5")) == Piece{I("w + 1", "w + 5"), I("w^2 + 1", "w^2 + 5")});
  CHECK_THROWS_AS(Chart::make({Piece{I("0", "w"), I("0", "w + 1")}}), DomainError);
  CHECK_THROWS_AS(Chart::make({Piece{I("0", "2"), I("0", "2")}, Piece{I("1", "3"), I("5", "7")}}),
                  DomainError);
  CHECK_THROWS_AS(Chart::make({Piece{I("0", "2"), I("0", "2")}, Piece{I("4", "6"), I("1", "3")}}),
                  DomainError);
  const Chart merged = Chart::make({Piece{I("1", "2"), I("5", "6")}, Piece{I("0", "1"), I("4", "5")}});
  CHECK(merged.pieces().size() == 1);
  CHECK(*merged.apply(O("2")) == O("6"));
  CHECK(!merged.apply(O("3")));
}

TEST_CASE("chart composition") {
  const Chart inner = Chart::make({Piece{I("0", "w*2"), I("w*2", "w*4")}});
  const Chart outer = Chart::make({Piece{I("w*2", "w*3"), I("0", "w")},
                                   Piece{I("w*3", "w*4"), I("w*5", "w*6")}});
  const Chart c = compose(outer, inner);
  for (const char* s : {"1", "w", "w + 7", "w*2"})
    CHECK(*c.apply(O(s)) == *outer.apply(*inner.apply(O(s))));
  CHECK_THROWS_AS(compose(inner, inner), DomainError);
}

TEST_CASE("build_homeo_between examples") {
  const Ordinal delta = O("w^2");
  const auto B1 = ClopenSet::make(delta, {I("0", "w")});
  const auto C1 = ClopenSet::make(delta, {I("0", "1"), I("w", "w*2")});
  const Chart h1 = build_homeo_between(B1, C1);
  CHECK(h1 == Chart::make({Piece{I("0", "1"), I("0", "1")}, Piece{I("1", "w"), I("w", "w*2")}}));

  const auto B2 = ClopenSet::make(delta, {I("0", "w*2")});
  const auto C2 = ClopenSet::make(delta, {I("0", "w"), I("w*2", "w*3")});
  const Chart h2 = build_homeo_between(B2, C2);
  CHECK(h2 == Chart::make({Piece{I("0", "w"), I("0", "w")}, Piece{I("w", "w*2"), I("w*2", "w*3")}}));

  CHECK_THROWS_AS(build_homeo_between(B1, B2), DomainError);
  CHECK(build_homeo_between(B1, B1) == Chart::identity_on(I("0", "w")));
  CHECK(build_homeo_between(ClopenSet::empty_in(delta), ClopenSet::empty_in(delta)).empty());
}

TEST_CASE("build_homeo_between on random homeomorphic pairs") {
  Rng rng(21);
  const Ordinal delta = Ordinal::omega_pow(4);
  int done = 0;
  while (done < 500) {
    const ClopenSet b = random_clopen(rng, delta, 5);
    const ClopenSet c = random_clopen(rng, delta, 5);
    if (!b.bounded() || !c.bounded()) continue;
    if (homeo_class(b) != homeo_class(c)) {
      if (!b.empty() && !c.empty()) CHECK_THROWS_AS(build_homeo_between(b, c), DomainError);
      continue;
    }
    check_bijection(build_homeo_between(b, c), b, c, rng);
    ++done;
  }
}

TEST_CASE("build_homeo_between on forced class matches") {
  // Pad c with a realization so both sides share a class.
  Rng rng(22);
  const Ordinal delta = Ordinal::omega_pow(4);
  for (int n = 0; n < 500; ++n) {
    const ClopenSet b = random_clopen(rng, Ordinal::omega_pow(3), 4).with_delta(delta);
    const HomeoClass cls = homeo_class(b);
    const ClopenSet extra = random_clopen(rng, Ordinal::omega_pow(2), 3);
    // Union with a lower-rank set of the same top structure.
    ClopenSet c = realize(cls, Ordinal::omega_pow(3), delta, delta);
    if (!cls.empty && cls.rank > 2) {
      c = unite(c, extra.with_delta(delta));
      REQUIRE(homeo_class(c) == cls);
    }
    check_bijection(build_homeo_between(b, c), b, c, rng);
    check_bijection(build_homeo_between(c, b), c, b, rng);
  }
}
