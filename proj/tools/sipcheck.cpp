// sipcheck: ordinal, clopen-set and signature queries, map descriptions, and
// seeded verification campaigns.  Exit status: 0 pass, 1 failed check,
// 2 usage or parse error.

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sip/campaigns.hpp"
#include "sip/homeo_io.hpp"

using namespace sip;

namespace {

std::string read_source(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int emit(const Report& r, const std::string& format) {
  std::cout << (format == "json" ? r.to_json() + "\n" : r.to_text());
  return r.pass() ? 0 : 1;
}

// Samples a described map: bijectivity on charts and points, blocks covered.
Report check_map(const Homeo& g, BlockIndex blocks, std::size_t samples, std::uint64_t seed) {
  const BlockSystem& bs = g.blocks();
  Report r;
  r.command = "homeo check";
  r.alpha = bs.alpha();
  r.seed = seed;
  Rng rng(seed);
  const Homeo gi = inverse(g);
  for (BlockIndex i = 1; i <= blocks; ++i) {
    const Chart& c = g.block_chart(i);
    r.record("block chart covers its block", c.sources(bs.delta()) == bs.block_set(i),
             [&] { return "block " + std::to_string(i); });
    const BlockIndex t = g.pi(i);
    r.record("pi reads the top image", g.eval(bs.top(i)) == bs.top(t),
             [&] { return "block " + std::to_string(i); });
  }
  auto points = sample_points(bs, rng, blocks, samples);
  const auto ends = chart_endpoints(g, blocks);
  points.insert(points.end(), ends.begin(), ends.end());
  for (const auto& x : points) {
    const Ordinal y = g.eval(x);
    r.record("inverse round trip", gi.eval(y) == x, [&] { return "x=" + to_string(x); });
    r.record("rank preserved", y.trailing_exponent() == x.trailing_exponent(),
             [&] { return "x=" + to_string(x) + " -> " + to_string(y); });
  }
  return r;
}

struct Common {
  unsigned alpha = 2;
  unsigned degree = 1;
  std::uint64_t seed = 1;
  std::uint64_t instances = 0;
  BlockIndex blocks = 0;
  std::size_t samples = 0;
  std::string format = "text";

  CampaignConfig config() const {
    CampaignConfig c;
    c.alpha = alpha;
    c.degree = degree;
    c.seed = seed;
    c.instances = instances;
    c.blocks = blocks;
    c.samples = samples;
    return c;
  }
};

void add_run_options(CLI::App* cmd, Common& opt) {
  cmd->add_option("--alpha", opt.alpha, "block exponent alpha")->check(CLI::Range(1u, 8u))->capture_default_str();
  cmd->add_option("--degree", opt.degree, "degree a of the space w^alpha * a")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  cmd->add_option("--instances", opt.instances, "number of random instances (default per campaign)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--blocks", opt.blocks, "verification bound on block indices")->check(CLI::PositiveNumber);
  cmd->add_option("--samples", opt.samples, "sampled points per instance")->check(CLI::PositiveNumber);
  cmd->add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordinals below w^w, clopen sets, signature pairs and block homeomorphisms"};
  app.require_subcommand(1);
  std::function<int()> action;
  Common opt;

  // ord
  auto* ord = app.add_subcommand("ord", "ordinal arithmetic in Cantor normal form");
  ord->require_subcommand(1);
  std::string a_text, b_text;
  {
    auto* eval = ord->add_subcommand("eval", "normalize an ordinal expression");
    eval->add_option("expr", a_text)->required();
    eval->callback([&] { action = [&] { std::cout << to_string(parse_ordinal(a_text)) << "\n"; return 0; }; });
    auto binary = [&](const char* name, const char* help, std::function<std::string(const Ordinal&, const Ordinal&)> op) {
      auto* cmd = ord->add_subcommand(name, help);
      cmd->add_option("a", a_text)->required();
      cmd->add_option("b", b_text)->required();
      cmd->callback([&, op] {
        action = [&, op] {
          std::cout << op(parse_ordinal(a_text), parse_ordinal(b_text)) << "\n";
          return 0;
        };
      });
    };
    binary("add", "a + b", [](const Ordinal& a, const Ordinal& b) { return to_string(a + b); });
    binary("mul", "a * b", [](const Ordinal& a, const Ordinal& b) { return to_string(a * b); });
    binary("sub", "the t with a + t = b (needs a <= b)",
           [](const Ordinal& a, const Ordinal& b) { return to_string(left_sub(a, b)); });
    binary("cmp", "prints <, = or >", [](const Ordinal& a, const Ordinal& b) {
      return std::string(a < b ? "<" : a == b ? "=" : ">");
    });
  }

  // clopen
  auto* clopen = app.add_subcommand("clopen", "clopen subsets of [1, delta]");
  clopen->require_subcommand(1);
  std::string set_text, delta_text = "w^4";
  unsigned times = 1, beta = 1;
  {
    auto with_set = [&](const char* name, const char* help, std::function<std::string(const ClopenSet&)> op) {
      auto* cmd = clopen->add_subcommand(name, help);
      cmd->add_option("set", set_text, "e.g. \"{(0,w^2*3+4]}\"")->required();
      cmd->add_option("--delta", delta_text, "ambient space [1, delta]")->capture_default_str();
      return std::make_pair(cmd, op);
    };
    auto bind = [&](std::pair<CLI::App*, std::function<std::string(const ClopenSet&)>> p) {
      auto op = p.second;
      p.first->callback([&, op] {
        action = [&, op] {
          std::cout << op(parse_clopen(set_text, parse_ordinal(delta_text))) << "\n";
          return 0;
        };
      });
      return p.first;
    };
    bind(with_set("class", "homeomorphism class (rank,degree) or E",
                  [](const ClopenSet& s) { return to_string(homeo_class(s)); }));
    bind(with_set("type", "order type", [](const ClopenSet& s) { return to_string(order_type(s)); }));
    auto* derive = bind(with_set("derive", "Cantor-Bendixson derivative", [&](const ClopenSet& s) {
      const ClopenSet d = cb_derivative(s, times);
      return to_string(d) + " in [1, " + to_string(d.delta()) + "]";
    }));
    derive->add_option("--times", times, "number of derivatives")->capture_default_str();
    auto* quotient = bind(with_set("quotient", "image in the quotient by I_beta", [&](const ClopenSet& s) {
      const ClopenSet q = quotient_project(s, beta);
      return to_string(q) + " in [1, " + to_string(q.delta()) + "]";
    }));
    quotient->add_option("--beta", beta, "ideal level")->capture_default_str();
    bind(with_set("atoms", "number of isolated points", [](const ClopenSet& s) {
      const auto n = num_atoms(s);
      return n ? n->str() : std::string("infinity");
    }));
  }

  // sig
  auto* sig = app.add_subcommand("sig", "signature pairs up to homeomorphism");
  sig->require_subcommand(1);
  {
    auto* sim_cmd = sig->add_subcommand("sim", "x ~ y");
    sim_cmd->add_option("x", a_text, "e.g. \"((2,1),E)\"")->required();
    sim_cmd->add_option("y", b_text)->required();
    sim_cmd->callback([&] {
      action = [&] {
        std::cout << (sim(parse_class_pair(a_text), parse_class_pair(b_text)) ? "true" : "false") << "\n";
        return 0;
      };
    });
    auto* add = sig->add_subcommand("add", "x + y");
    add->add_option("x", a_text)->required();
    add->add_option("y", b_text)->required();
    add->callback([&] {
      action = [&] {
        std::cout << to_string(pair_add(parse_class_pair(a_text), parse_class_pair(b_text))) << "\n";
        return 0;
      };
    });
    auto* sgn = sig->add_subcommand("signed", "canonical signed reduction");
    sgn->add_option("x", a_text)->required();
    sgn->callback([&] {
      action = [&] {
        std::cout << to_string(signed_class(parse_class_pair(a_text))) << "\n";
        return 0;
      };
    });
  }

  // homeo
  auto* homeo = app.add_subcommand("homeo", "maps described in a file ('-' reads stdin)");
  homeo->require_subcommand(1);
  std::string file;
  BlockIndex block = 1;
  bool inverse_flag = false;
  {
    auto load = [&] { return parse_homeo(read_source(file), BlockSystem(opt.alpha)); };
    auto base_cmd = [&](const char* name, const char* help) {
      auto* cmd = homeo->add_subcommand(name, help);
      cmd->add_option("file", file)->required();
      cmd->add_option("--alpha", opt.alpha, "block exponent alpha")->check(CLI::Range(1u, 8u))->capture_default_str();
      return cmd;
    };
    auto* eval = base_cmd("eval", "image of a point");
    eval->add_option("point", a_text)->required();
    eval->add_flag("--inverse", inverse_flag, "apply the inverse map");
    eval->callback([&, load] {
      action = [&, load] {
        const Homeo g = load();
        const Ordinal x = parse_ordinal(a_text);
        if (x.is_zero() || x > g.blocks().delta()) throw UsageError("point must lie in [1, delta]");
        std::cout << to_string(inverse_flag ? g.eval_inv(x) : g.eval(x)) << "\n";
        return 0;
      };
    });
    auto* pi = base_cmd("pi", "induced permutation of blocks");
    pi->add_option("--blocks", opt.blocks, "blocks to list")->check(CLI::PositiveNumber);
    pi->callback([&, load] {
      action = [&, load] {
        const Homeo g = load();
        const BlockIndex n = opt.blocks ? opt.blocks : 10;
        for (BlockIndex i = 1; i <= n; ++i) std::cout << i << " -> " << g.pi(i) << "\n";
        return 0;
      };
    });
    auto* sg = base_cmd("sig", "signature at a block");
    sg->add_option("block", block)->required()->check(CLI::PositiveNumber);
    sg->callback([&, load] {
      action = [&, load] {
        const Signature s = signature(load(), block);
        std::cout << "target: " << s.target << "\nP: " << to_string(s.p) << "\nQ: " << to_string(s.q)
                  << "\npair: " << to_string(s.pair) << "\n";
        return 0;
      };
    });
    auto* check = base_cmd("check", "sampled consistency checks");
    check->add_option("--blocks", opt.blocks, "blocks to check")->check(CLI::PositiveNumber);
    check->add_option("--samples", opt.samples, "sampled points")->check(CLI::PositiveNumber);
    check->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    check->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"text", "json"}));
    check->callback([&, load] {
      action = [&, load] {
        Report r = check_map(load(), opt.blocks ? opt.blocks : 20, opt.samples ? opt.samples : 500, opt.seed);
        return emit(r, opt.format);
      };
    });
  }

  // verify
  auto* verify = app.add_subcommand("verify", "seeded verification campaigns");
  verify->require_subcommand(1);
  {
    auto campaign = [&](const char* name, const char* help, Report (*run)(const CampaignConfig&)) {
      auto* cmd = verify->add_subcommand(name, help);
      add_run_options(cmd, opt);
      cmd->callback([&, run] { action = [&, run] { return emit(run(opt.config()), opt.format); }; });
    };
    campaign("lemma21", "zone copies and the zone conjugation identity", zone_campaign);
    campaign("lemma23", "signatures read off cofinal subsets", cofinal_campaign);
    campaign("lemma24", "cocycle identity of signatures", cocycle_campaign);
    campaign("lemma25", "conjugators realizing signature targets", conjugator_campaign);
    campaign("lemma26", "factorization certificates", factor_campaign);
    campaign("oracle", "classifier cross-check", classifier_campaign);
  }

  // demo
  auto* demo = app.add_subcommand("demo", "worked constructions");
  demo->require_subcommand(1);
  {
    auto* factor = demo->add_subcommand("factor", "factor one map and print the certificate");
    add_run_options(factor, opt);
    factor->add_option("--file", file, "map description (default: zigzag lift after a swap in A_1)");
    factor->callback([&] {
      action = [&] {
        const BlockSystem bs(opt.alpha);
        Homeo g = Homeo::identity(bs);
        if (file.empty()) {
          const Ordinal half = Ordinal::monomial(bs.alpha() - 1, 1);
          const Chart swap = Chart::make({Piece{Interval{Ordinal(), half}, Interval{half, half + half}},
                                          Piece{Interval{half, half + half}, Interval{Ordinal(), half}},
                                          Piece{Interval{half + half, bs.delta()}, Interval{half + half, bs.delta()}}});
          g = compose(Homeo::lift(bs, Perm::zigzag()), Homeo::chart(bs, swap));
        } else {
          g = parse_homeo(read_source(file), bs);
        }
        Rng rng(opt.seed);
        const BlockIndex blocks = opt.blocks ? opt.blocks : 30;
        const std::size_t samples = opt.samples ? opt.samples : 1000;
        Certificate c = factor_certificate(g, Perm::zigzag(), blocks, samples, rng);
        c.report.command = "demo factor";
        c.report.degree = opt.degree;
        c.report.seed = opt.seed;
        if (opt.format == "text") {
          std::cout << "g: " << g.describe() << "\nsigma: " << Perm::zigzag().to_string()
                    << "\nh: " << c.h.describe() << "\nk': " << c.k_prime.describe()
                    << "\nl: " << c.l.describe() << "\nw': " << c.w_prime.describe() << "\n";
          for (std::size_t i = 0; i < std::min<std::size_t>(c.envelopes.size(), 5); ++i)
            std::cout << "D_" << i + 1 << ": " << to_string(c.envelopes[i]) << "\n";
        }
        return emit(c.report, opt.format);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const sip::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
  }
  return 2;
}
