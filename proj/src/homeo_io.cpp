#include "sip/homeo_io.hpp"

#include <cctype>

namespace sip {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  // "(" keyword
  std::string open() {
    expect('(');
    skip();
    const std::size_t start = pos_;
    kw_pos_ = start;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-'))
      ++pos_;
    if (pos_ == start) throw ParseError("expected a keyword", start);
    return std::string(s_.substr(start, pos_ - start));
  }

  BlockIndex index() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected a block index", start);
    const std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 18) throw ParseError("block index too large", start);
    const BlockIndex v = std::stoull(digits);
    if (v == 0) throw ParseError("block indices start at 1", start);
    return v;
  }

  Interval interval() {
    skip();
    return parse_interval_prefix(s_, pos_);
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
  }

  std::size_t pos() const { return pos_; }
  std::size_t keyword_pos() const { return kw_pos_; }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t kw_pos_ = 0;
};

Perm read_perm(Reader& r) {
  const std::string kw = r.open();
  const std::size_t at = r.keyword_pos();
  if (kw == "table") {
    std::vector<std::pair<BlockIndex, BlockIndex>> pairs;
    while (r.peek('(')) {
      r.expect('(');
      const BlockIndex i = r.index();
      const BlockIndex j = r.index();
      r.expect(')');
      pairs.emplace_back(i, j);
    }
    r.expect(')');
    return Perm::table(pairs);
  }
  if (kw == "zigzag") {
    r.expect(')');
    return Perm::zigzag();
  }
  if (kw == "perm-compose") {
    Perm a = read_perm(r);
    Perm b = read_perm(r);
    r.expect(')');
    return Perm::compose(a, b);
  }
  if (kw == "perm-inverse") {
    Perm a = read_perm(r);
    r.expect(')');
    return Perm::inverse(a);
  }
  throw ParseError("unknown permutation form '" + kw + "'", at);
}

Chart read_chart(Reader& r) {
  const std::size_t at = r.pos();
  if (r.open() != "chart") throw ParseError("expected (chart ...)", at);
  std::vector<Piece> pieces;
  while (r.peek('(')) {
    const std::size_t p = r.pos();
    if (r.open() != "piece") throw ParseError("expected (piece src dst)", p);
    Interval src = r.interval();
    Interval dst = r.interval();
    r.expect(')');
    pieces.push_back(Piece{std::move(src), std::move(dst)});
  }
  r.expect(')');
  return Chart::make(std::move(pieces));
}

Homeo read_homeo(Reader& r, const BlockSystem& bs) {
  Reader probe = r;
  const std::string kw = probe.open();
  const std::size_t kw_at = probe.keyword_pos();
  if (kw == "chart") return Homeo::chart(bs, read_chart(r));
  r.open();
  if (kw == "identity") {
    r.expect(')');
    return Homeo::identity(bs);
  }
  if (kw == "lift") {
    Perm p = read_perm(r);
    r.expect(')');
    return Homeo::lift(bs, std::move(p));
  }
  if (kw == "blockmap") {
    Perm p = read_perm(r);
    std::map<BlockIndex, Chart> overrides;
    while (r.peek('(')) {
      const std::size_t o = r.pos();
      if (r.open() != "override") throw ParseError("expected (override i chart)", o);
      const BlockIndex i = r.index();
      if (overrides.count(i)) throw ParseError("block " + std::to_string(i) + " overridden twice", o);
      overrides[i] = read_chart(r);
      r.expect(')');
    }
    r.expect(')');
    return Homeo::block_map(bs, std::move(p), std::move(overrides));
  }
  if (kw == "compose") {
    Homeo g = read_homeo(r, bs);
    Homeo h = read_homeo(r, bs);
    r.expect(')');
    return compose(g, h);
  }
  if (kw == "inverse") {
    Homeo g = read_homeo(r, bs);
    r.expect(')');
    return inverse(g);
  }
  throw ParseError("unknown map form '" + kw + "'", kw_at);
}

}  // namespace

Homeo parse_homeo(std::string_view text, const BlockSystem& bs) {
  Reader r(text);
  Homeo h = read_homeo(r, bs);
  r.finish();
  return h;
}

Perm parse_perm(std::string_view text) {
  Reader r(text);
  Perm p = read_perm(r);
  r.finish();
  return p;
}

}  // namespace sip
