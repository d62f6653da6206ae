// Runs every acceptance campaign at its stated size and prints one line per
// criterion.  Exit status is nonzero when any criterion fails or overruns.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "sip/campaigns.hpp"

using namespace sip;

namespace {

constexpr std::uint64_t kSeed = 20240607;

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<Report()> run;
  // Extra size requirements on the finished report.
  std::function<std::string(const Report&)> size_problem = [](const Report&) { return ""; };
};

Report over_alphas(Report (*campaign)(const CampaignConfig&), CampaignConfig cfg) {
  Report all;
  for (unsigned a = 1; a <= 3; ++a) {
    cfg.alpha = a;
    cfg.seed = kSeed + a;
    Report r = campaign(cfg);
    if (all.command.empty()) all = r;
    else all.merge(r);
  }
  return all;
}

std::uint64_t instances(const Report& r, const std::string& check) {
  const CheckResult* c = r.find(check);
  return c ? c->instances : 0;
}

std::string at_least(const Report& r, const std::string& check, std::uint64_t n) {
  const std::uint64_t got = instances(r, check);
  return got >= n ? "" : check + " ran " + std::to_string(got) + " < " + std::to_string(n);
}

}  // namespace

int main() {
  CampaignConfig base;
  base.seed = kSeed;
  std::vector<Criterion> criteria;
  criteria.push_back({"ordinal laws (10^4 instances below w^6)", 10,
                      [&] { return ordinal_laws_campaign(base); },
                      [](const Report& r) { return at_least(r, "add associativity", 10000); }});
  criteria.push_back({"classifier oracle (10^3 sets, delta = w^4)", 10,
                      [&] {
                        CampaignConfig c = base;
                        c.alpha = 4;
                        return classifier_campaign(c);
                      },
                      [](const Report& r) {
                        return at_least(r, "leading term = iterated derivative", 1000);
                      }});
  criteria.push_back({"quotient homomorphism (beta 1..3, 500 pairs)", 60,
                      [&] { return quotient_campaign(base); },
                      [](const Report& r) { return at_least(r, "union", 1500); }});
  criteria.push_back({"build_homeo_between (500 class-equal pairs)", 60,
                      [&] { return homeo_between_campaign(base); },
                      [](const Report& r) { return at_least(r, "sources partition", 500); }});
  criteria.push_back({"cofinal signatures (200 instances per alpha 1..3)", 60,
                      [&] { return over_alphas(cofinal_campaign, base); },
                      [](const Report& r) {
                        return at_least(r, "cofinal signature ~ signature", 600);
                      }});
  criteria.push_back({"cocycle (200 pairs, blocks <= 20, alpha 1..3)", 60,
                      [&] { return over_alphas(cocycle_campaign, base); },
                      [](const Report& r) { return at_least(r, "cocycle", 3 * 200 * 20); }});
  criteria.push_back({"conjugator targets (zigzag, 50 + periodic f, blocks <= 40)", 60,
                      [&] { return over_alphas(conjugator_campaign, base); },
                      [](const Report& r) { return at_least(r, "signature target", 3 * 51 * 40); }});
  criteria.push_back({"zone conjugation identity (50 instances, >= 500 points)", 60,
                      [&] { return zone_campaign(base); },
                      [](const Report& r) { return at_least(r, "pointwise identity", 50 * 500); }});
  criteria.push_back({"factorization certificate (25 maps, alpha 2, 30 blocks)", 120,
                      [&] {
                        CampaignConfig c = base;
                        c.alpha = 2;
                        return factor_campaign(c);
                      },
                      [](const Report& r) {
                        const std::string s = at_least(r, "four-factor identity", 25 * 1000);
                        return s.empty() ? at_least(r, "support of w' in envelopes", 25 * 30) : s;
                      }});
  criteria.push_back({"pi homomorphism (200 pairs, blocks <= 50)", 60,
                      [&] { return pi_campaign(base); },
                      [](const Report& r) { return at_least(r, "pi(gh) = pi(g) pi(h)", 200 * 50); }});
  criteria.push_back({"non-transitivity witness", 1, [&] { return nontransitivity_campaign(base); }});

  using Clock = std::chrono::steady_clock;
  const auto suite_start = Clock::now();
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const Criterion& c = criteria[k];
    const auto t0 = Clock::now();
    std::string problem;
    Report r;
    try {
      r = c.run();
      if (!r.pass()) {
        for (const auto& check : r.checks)
          if (check.failures) {
            problem = check.name + ": " + std::to_string(check.failures) + " failures, first " +
                      check.first_counterexample.value_or("?");
            break;
          }
      }
      if (problem.empty()) problem = c.size_problem(r);
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (problem.empty() && secs > c.limit_seconds)
      problem = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s";
    std::uint64_t total = 0;
    for (const auto& check : r.checks) total += check.instances;
    std::printf("%s %2zu. %s: %llu checks in %.2f s (limit %.0f s)%s%s\n",
                problem.empty() ? "PASS" : "FAIL", k + 1, c.name.c_str(),
                static_cast<unsigned long long>(total), secs, c.limit_seconds,
                problem.empty() ? "" : " -- ", problem.c_str());
    std::fflush(stdout);
    if (!problem.empty()) ++failed;
  }
  const double total_secs = std::chrono::duration<double>(Clock::now() - suite_start).count();
  const bool in_time = total_secs <= 300;
  std::printf("%s suite: %zu criteria, %d failed, %.2f s (limit 300 s), seed %llu\n",
              failed == 0 && in_time ? "PASS" : "FAIL", criteria.size(), failed, total_secs,
              static_cast<unsigned long long>(kSeed));
  return failed == 0 && in_time ? 0 : 1;
}
