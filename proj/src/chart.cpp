#include "sip/chart.hpp"

#include <algorithm>
#include <ostream>

namespace sip {

Piece Piece::restrict_src(const Interval& sub) const {
  return Piece{sub, Interval{map(sub.lo), map(sub.hi)}};
}

Piece Piece::restrict_dst(const Interval& sub) const {
  return Piece{Interval{unmap(sub.lo), unmap(sub.hi)}, sub};
}

namespace {

bool by_src(const Piece& a, const Piece& b) { return a.src.lo < b.src.lo; }

void check_disjoint(const std::vector<Interval>& sorted, const char* what) {
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k].lo < sorted[k - 1].hi)
      throw DomainError(std::string("chart ") + what + " " + to_string(sorted[k - 1]) + " and " +
                        to_string(sorted[k]) + " overlap");
}

// First piece whose source ends after x.
std::vector<Piece>::const_iterator first_ending_after(const std::vector<Piece>& v,
                                                      const Ordinal& x) {
  return std::upper_bound(v.begin(), v.end(), x,
                          [](const Ordinal& val, const Piece& p) { return val < p.src.hi; });
}

}  // namespace

Chart Chart::make(std::vector<Piece> pieces) {
  for (const auto& p : pieces) {
    if (!(p.src.lo < p.src.hi) || !(p.dst.lo < p.dst.hi))
      throw DomainError("chart piece " + to_string(p) + " has an empty side");
    if (p.src.length() != p.dst.length())
      throw DomainError("chart piece " + to_string(p) + " joins intervals of different length");
  }
  std::sort(pieces.begin(), pieces.end(), by_src);
  std::vector<Interval> srcs, dsts;
  for (const auto& p : pieces) {
    srcs.push_back(p.src);
    dsts.push_back(p.dst);
  }
  check_disjoint(srcs, "sources");
  std::sort(dsts.begin(), dsts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  check_disjoint(dsts, "targets");
  Chart c;
  for (auto& p : pieces) {
    if (!c.pieces_.empty()) {
      Piece& last = c.pieces_.back();
      if (last.src.hi == p.src.lo && last.dst.hi == p.dst.lo) {
        last.src.hi = p.src.hi;
        last.dst.hi = p.dst.hi;
        continue;
      }
    }
    c.pieces_.push_back(std::move(p));
  }
  return c;
}

Chart Chart::identity_on(const Interval& iv) { return make({Piece{iv, iv}}); }

const Piece* Chart::piece_at(const Ordinal& x) const {
  auto it = first_ending_after(pieces_, x);
  if (it != pieces_.begin()) {
    auto prev = std::prev(it);
    if (prev->src.contains(x)) return &*prev;
  }
  if (it != pieces_.end() && it->src.contains(x)) return &*it;
  return nullptr;
}

std::optional<Ordinal> Chart::apply(const Ordinal& x) const {
  const Piece* p = piece_at(x);
  if (!p) return std::nullopt;
  return p->map(x);
}

std::optional<Ordinal> Chart::apply_inv(const Ordinal& y) const {
  for (const auto& p : pieces_)
    if (p.dst.contains(y)) return p.unmap(y);
  return std::nullopt;
}

Chart Chart::inverse() const {
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(Piece{p.dst, p.src});
  return make(std::move(out));
}

ClopenSet Chart::sources(const Ordinal& delta) const {
  std::vector<Interval> v;
  for (const auto& p : pieces_) v.push_back(p.src);
  return ClopenSet::make(delta, std::move(v));
}

ClopenSet Chart::targets(const Ordinal& delta) const {
  std::vector<Interval> v;
  for (const auto& p : pieces_) v.push_back(p.dst);
  return ClopenSet::make(delta, std::move(v));
}

Chart Chart::restrict_to(const ClopenSet& s) const {
  std::vector<Piece> out;
  const auto& ivs = s.intervals();
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < ivs.size()) {
    const Ordinal& lo = std::max(pieces_[i].src.lo, ivs[j].lo);
    const Ordinal& hi = std::min(pieces_[i].src.hi, ivs[j].hi);
    if (lo < hi) out.push_back(pieces_[i].restrict_src(Interval{lo, hi}));
    if (pieces_[i].src.hi < ivs[j].hi)
      ++i;
    else
      ++j;
  }
  return make(std::move(out));
}

ClopenSet Chart::image(const ClopenSet& s) const {
  const Chart r = restrict_to(s);
  if (r.sources(s.delta()) != s)
    throw DomainError("set " + to_string(s) + " is not inside the chart's sources");
  return r.targets(s.delta());
}

Chart compose(const Chart& outer, const Chart& inner) {
  std::vector<Piece> out;
  const auto& os = outer.pieces();
  for (const auto& p : inner.pieces()) {
    Ordinal cursor = p.dst.lo;
    for (auto it = first_ending_after(os, p.dst.lo); it != os.end() && it->src.lo < p.dst.hi;
         ++it) {
      if (it->src.lo > cursor) break;
      const Ordinal hi = std::min(it->src.hi, p.dst.hi);
      const Interval mid{cursor, hi};
      const Piece left = p.restrict_dst(mid);
      out.push_back(Piece{left.src, it->restrict_src(mid).dst});
      cursor = hi;
    }
    if (cursor != p.dst.hi)
      throw DomainError("composition undefined: " + to_string(p.dst) +
                        " is not covered by the outer chart");
  }
  return Chart::make(std::move(out));
}

namespace {

// A run (start, start + w^e * c] of c consecutive copies of w^e + 1.
struct Run {
  Ordinal start;
  Natural exponent;
  Natural count;
  Ordinal end() const { return start + Ordinal::monomial(exponent, count); }
};

std::vector<Run> runs_of(const ClopenSet& s) {
  std::vector<Run> out;
  for (const auto& iv : s.intervals()) {
    Ordinal cursor = iv.lo;
    const Ordinal len = iv.length();
    for (const auto& t : len.terms()) {
      out.push_back(Run{cursor, t.exponent, t.coefficient});
      cursor = cursor + Ordinal::monomial(t.exponent, t.coefficient);
    }
  }
  return out;
}

// Carves consecutive pieces out of the window starting at cursor, one per
// run, each as long as that run; returns the pieces as (window part, run).
std::vector<Piece> donate(Ordinal& cursor, const std::vector<Run>& runs, bool window_is_src) {
  std::vector<Piece> out;
  for (const auto& r : runs) {
    const Ordinal len = Ordinal::monomial(r.exponent, r.count);
    const Interval w{cursor, cursor + len};
    const Interval run{r.start, r.end()};
    out.push_back(window_is_src ? Piece{w, run} : Piece{run, w});
    cursor = w.hi;
  }
  return out;
}

}  // namespace

Chart build_homeo_between(const ClopenSet& b, const ClopenSet& c) {
  const HomeoClass cb = homeo_class(b), cc = homeo_class(c);
  if (cb != cc)
    throw DomainError("no homeomorphism between classes " + to_string(cb) + " and " +
                      to_string(cc));
  if (b.intervals() == c.intervals()) {
    std::vector<Piece> id;
    for (const auto& iv : b.intervals()) id.push_back(Piece{iv, iv});
    return Chart::make(std::move(id));
  }
  if (cb.empty) return Chart{};
  const Natural& r = cb.rank;
  std::vector<Run> top_b, top_c, low_b, low_c;
  for (auto& run : runs_of(b)) (run.exponent == r ? top_b : low_b).push_back(run);
  for (auto& run : runs_of(c)) (run.exponent == r ? top_c : low_c).push_back(run);

  std::vector<Piece> pieces;
  if (!low_b.empty() || !low_c.empty()) {
    // One top-rank unit on each side absorbs the other side's lower runs.
    const Ordinal unit = Ordinal::omega_pow(r);
    Ordinal cur_b = top_b.front().start, cur_c = top_c.front().start;
    const Ordinal end_b = cur_b + unit, end_c = cur_c + unit;
    for (auto& p : donate(cur_b, low_c, true)) pieces.push_back(std::move(p));
    for (auto& p : donate(cur_c, low_b, false)) pieces.push_back(std::move(p));
    pieces.push_back(Piece{Interval{cur_b, end_b}, Interval{cur_c, end_c}});
    for (auto* top : {&top_b, &top_c}) {
      Run& first = top->front();
      first.start = first.start + unit;
      first.count -= 1;
      if (first.count == 0) top->erase(top->begin());
    }
  }
  std::size_t i = 0, j = 0;
  while (i < top_b.size() && j < top_c.size()) {
    const Natural m = std::min(top_b[i].count, top_c[j].count);
    const Ordinal len = Ordinal::monomial(r, m);
    pieces.push_back(Piece{Interval{top_b[i].start, top_b[i].start + len},
                           Interval{top_c[j].start, top_c[j].start + len}});
    for (auto [run, k] : {std::pair{&top_b, &i}, std::pair{&top_c, &j}}) {
      Run& x = (*run)[*k];
      x.start = x.start + len;
      x.count -= m;
      if (x.count == 0) ++*k;
    }
  }
  if (i != top_b.size() || j != top_c.size())
    throw std::logic_error("top-rank runs did not pair off");
  return Chart::make(std::move(pieces));
}

std::string to_string(const Piece& p) { return to_string(p.src) + "->" + to_string(p.dst); }

std::string to_string(const Chart& c) {
  std::string out = "[";
  for (std::size_t k = 0; k < c.pieces().size(); ++k) {
    if (k) out += ", ";
    out += to_string(c.pieces()[k]);
  }
  return out + "]";
}

std::ostream& operator<<(std::ostream& os, const Chart& c) { return os << to_string(c); }

}  // namespace sip
