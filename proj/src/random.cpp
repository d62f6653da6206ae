#include "sip/random.hpp"

#include <algorithm>
#include <vector>

namespace sip {

Ordinal random_ordinal(Rng& rng, unsigned exp_bound, unsigned max_coef, unsigned max_terms,
                       bool allow_zero) {
  if (exp_bound == 0 || max_terms == 0) return {};
  const unsigned lo = allow_zero ? 0 : 1;
  const unsigned count =
      static_cast<unsigned>(rng.uniform(lo, std::min(max_terms, exp_bound)));
  std::vector<unsigned> exps(exp_bound);
  for (unsigned i = 0; i < exp_bound; ++i) exps[i] = i;
  std::shuffle(exps.begin(), exps.end(), rng.engine());
  exps.resize(count);
  std::sort(exps.begin(), exps.end(), std::greater<>());
  std::vector<Term> terms;
  for (unsigned e : exps) terms.push_back(Term{e, rng.uniform(1, max_coef)});
  return Ordinal(std::move(terms));
}


Ordinal random_below(Rng& rng, const Ordinal& bound, unsigned max_coef) {
  if (bound.is_zero()) throw DomainError("no ordinal below 0");
  const unsigned top = static_cast<unsigned>(to_u64(bound.leading_term().exponent));
  for (int attempt = 0; attempt < 64; ++attempt) {
    Ordinal x = random_ordinal(rng, top + 1, max_coef, 3);
    if (x < bound) return x;
  }
  return Ordinal{};
}

ClopenSet random_clopen(Rng& rng, const Ordinal& delta, unsigned max_intervals) {
  const unsigned n = static_cast<unsigned>(rng.uniform(0, max_intervals));
  std::vector<Ordinal> ends;
  for (unsigned i = 0; i < 2 * n; ++i) {
    if (rng.chance(0.05))
      ends.push_back(delta);
    else
      ends.push_back(random_below(rng, delta));
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::vector<Interval> raw;
  for (std::size_t i = 0; i + 1 < ends.size(); i += 2) raw.push_back(Interval{ends[i], ends[i + 1]});
  return ClopenSet::make(delta, std::move(raw));
}

}  // namespace sip
