// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "relaynet/cli.hpp"
#include "relaynet/constructions.hpp"
#include "relaynet/cutset.hpp"
#include "relaynet/experiments.hpp"
#include "relaynet/mimo_select.hpp"
#include "relaynet/routing.hpp"

using namespace relaynet;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  }
  void summary(const std::string& msg) {
    if (ok) detail = msg;
  }
  void expect(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
  }
};

// A fixed but varied relay mask per trial.
std::uint64_t oracle_mask(std::size_t t, std::size_t n) {
  return (static_cast<std::uint64_t>(t) * 0x9e3779b97f4a7c15ULL >> 20) & ((std::uint64_t{1} << n) - 1);
}

std::string fmt(double v) { return format_double(v); }

Check criterion1() {
  Check c;
  for (std::size_t n = 3; n <= 9; ++n) {
    const TightExample ex = construct_general_tight(n, 1.0);
    const double cap = approx_capacity(ex.network).bits.bits();
    const double expected = static_cast<double>(n / 2 + 1);
    c.expect(std::abs(cap - expected) <= 1e-9, "N=" + std::to_string(n) + " capacity " + fmt(cap));
    c.expect(std::abs(oracle::min_cut_bits(ex.network) - expected) <= 1e-9, "oracle capacity N=" + std::to_string(n));
    const double route = best_route(ex.network).bits.bits();
    c.expect(route == 1.0, "N=" + std::to_string(n) + " route " + fmt(route));
    c.expect(oracle::best_path_bits(ex.network) == 1.0, "oracle route N=" + std::to_string(n));
    const double f = thm1_guarantee(n).fraction;
    c.expect(f == 1.0 / expected, "guarantee fraction N=" + std::to_string(n));
    c.expect(std::abs(route / cap - f) <= 1e-9, "achieved fraction N=" + std::to_string(n));
    c.expect(verify_tight_example(ex).ok(), "verify_tight_example N=" + std::to_string(n));
  }
  c.summary("N=3..9: capacity floor(N/2)+1, route 1, fraction 1/(floor(N/2)+1)");
  return c;
}

Check criterion2() {
  Check c;
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 4}, {2, 2}, {2, 3}, {3, 2},
                                                                {3, 3}, {4, 2}, {5, 2}};
  for (auto [l, nl] : shapes) {
    const std::string tag = "(" + std::to_string(l) + "," + std::to_string(nl) + ")";
    const TightExample ex = construct_layered_tight(l, nl, 12.0);
    const double cap = approx_capacity(ex.network).bits.bits();
    c.expect(std::abs(cap - 12.0) <= 1e-9, tag + " capacity " + fmt(cap));
    c.expect(std::abs(oracle::min_cut_bits(ex.network) - 12.0) <= 1e-9, tag + " oracle capacity");
    const double f = thm2_guarantee(l, nl).fraction;
    const double route = best_route(ex.network).bits.bits();
    // The weak links are realized by gain sqrt(2^(f W) - 1); the route must
    // equal that link's capacity exactly and f W to rounding.
    const double weak = capacity_of_gain(gain_for_capacity(f * 12.0));
    c.expect(route == weak, tag + " route " + fmt(route) + " vs weak link " + fmt(weak));
    c.expect(std::abs(route - f * 12.0) <= 1e-12, tag + " route " + fmt(route) + " vs f W");
    c.expect(oracle::best_path_bits(ex.network) == route, tag + " oracle route");
    c.expect(verify_tight_example(ex).ok(), tag + " verify_tight_example");
  }
  c.expect(thm2_guarantee(3, 10).fraction == 1.0 / 12.0, "(3,10) fraction");
  c.expect(thm2_guarantee(6, 5).fraction == 1.0 / 16.0, "(6,5) fraction");
  c.summary("7 shapes at W=12: capacity 12, route f*12; (3,10) -> 1/12, (6,5) -> 1/16");
  return c;
}

Check criterion3() {
  Check c;
  std::size_t trials = 0, violations = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (double scale : {0.1, 1.0, 10.0}) {
      EnsembleSpec spec;
      spec.num_relays = n;
      spec.fading = Fading::rayleigh(scale);
      spec.trials = 1000;
      spec.seed = 1000 + n;
      const VerifySummary s = run_verify(spec);
      trials += s.records.size();
      violations += s.violations;
    }
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.summary(std::to_string(trials) + " networks (N=1..8, scales 0.1/1/10), " + std::to_string(violations) +
             " violations");
  return c;
}

Check criterion4() {
  Check c;
  std::size_t trials = 0, violations = 0, shapes = 0;
  for (std::size_t l = 1; l <= 9; ++l) {
    for (std::size_t nl = 1; l * nl <= 9; ++nl) {
      EnsembleSpec spec;
      spec.topology = Topology::layered(l, nl);
      spec.num_relays = l * nl;
      spec.trials = 1000;
      spec.seed = 77 * l + nl;
      const VerifySummary s = run_verify(spec);
      trials += s.records.size();
      violations += s.violations;
      ++shapes;
    }
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.summary(std::to_string(shapes) + " shapes x 1000 networks, " + std::to_string(violations) + " violations");
  return c;
}

Check criterion5() {
  Check c;
  std::size_t checks = 0, violations = 0, lemma1_checks = 0, reciprocal_checks = 0;
  for (std::size_t nt = 1; nt <= 5; ++nt) {
    for (std::size_t nr = 1; nr <= 5; ++nr) {
      const MimoVerifySummary s = run_mimo_verify(nt, nr, 200, 500 + 10 * nt + nr);
      checks += s.checks;
      violations += s.violations;
      for (const auto& r : s.records) {
        if (r.lemma1_applies) ++lemma1_checks;
        // Upper bound for the many-receivers case, checked directly.
        if (nt <= nr && r.k_t == nt && r.k_r >= nt) {
          c.expect(r.best_bits <= r.capacity_bits + 1e-9, "C* > C");
        }
        if (nt > nr && r.k_r == nr) ++reciprocal_checks;
        c.expect(r.greedy_bits >= r.lemma2_bound_bits - 1e-9, "greedy below k_t k_r/(n_t n_r) C");
        c.expect(r.greedy_steps_ok, "greedy step below (m-1)/m");
      }
    }
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.summary(std::to_string(checks) + " (channel, k_t, k_r) checks over 25 shapes, " + std::to_string(lemma1_checks) +
             " with the full-side bound (" + std::to_string(reciprocal_checks) + " reciprocal), " +
             std::to_string(violations) + " violations");
  return c;
}

Check criterion6() {
  Check c;
  std::size_t exact = 0, ones = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& t : run_mimo_tightness(n, n)) {
      if (t.channel != "parallel") continue;
      c.expect(t.ratio == t.expected, "parallel n=" + std::to_string(n) + " ratio " + fmt(t.ratio));
      ++exact;
    }
  }
  for (std::size_t nt = 1; nt <= 5; ++nt) {
    for (std::size_t nr = 1; nr <= 5; ++nr) {
      for (const auto& t : run_mimo_tightness(nt, nr)) {
        if (t.channel != "allones") continue;
        c.expect(std::abs(t.ratio / t.expected - 1.0) <= 0.01, "all-ones ratio " + fmt(t.ratio));
        ++ones;
      }
    }
  }
  c.summary(std::to_string(exact) + " exact parallel ratios, " + std::to_string(ones) + " all-ones ratios within 1%");
  return c;
}

Check criterion7() {
  Check c;
  std::size_t shapes = 0;
  for (std::size_t l = 1; l <= 10; ++l) {
    for (std::size_t nl = 1; l * nl <= 10; ++nl) {
      const Prop1Result r = run_prop1(l, nl);
      c.expect(r.ok, "(" + std::to_string(l) + "," + std::to_string(nl) + ") max T " + std::to_string(r.max_t) +
                         " > " + std::to_string(r.bound));
      ++shapes;
    }
  }
  const TightExample ex = construct_layered_tight(3, 2, 12.0);
  const std::size_t t = t_of_cut(ex.network, ex.designed_cut);
  c.expect(t == 4 && t_max(3, 2) == 4, "designed cut of (3,2) has T=" + std::to_string(t));
  c.summary(std::to_string(shapes) + " shapes within bound; (3,2) designed cut attains T=4");
  return c;
}

Check criterion8() {
  Check c;
  std::size_t matrices = 0, checks = 0;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto recs = run_prop2(n, 100, 808 + n);
    matrices += 100;
    for (const auto& r : recs) {
      ++checks;
      worst = std::max({worst, r.poly_relative, r.scalar_relative});
      c.expect(r.satisfied, "n=" + std::to_string(n) + " k=" + std::to_string(r.k) + " residual");
    }
  }
  c.summary(std::to_string(matrices) + " matrices (n=1..6), " + std::to_string(checks) + " (matrix, k) checks, worst " +
             fmt(worst));
  return c;
}

Check criterion9() {
  Check c;
  std::size_t routes = 0;
  for (std::size_t t = 0; t < 500; ++t) {
    EnsembleSpec spec;
    spec.num_relays = 1 + t % 7;
    // fixed SNR gives many equal-capacity links, i.e. many ties
    spec.fading = t % 5 == 4 ? Fading::fixed_snr(3.0) : Fading::rayleigh(t % 3 == 0 ? 0.3 : 3.0);
    spec.seed = 9;
    const Network net = random_network(spec, t);
    const double got = best_route(net).bits.bits();
    const double want = oracle::best_path_bits(net);
    c.expect(std::abs(got - want) <= 1e-12 * std::max(1.0, want),
             "route mismatch trial " + std::to_string(t) + ": " + fmt(got) + " vs " + fmt(want));
    ++routes;
  }
  std::size_t selections = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    const MimoChannel h = random_channel(4, 4, 99, t);
    for (std::size_t kt = 1; kt <= 4; ++kt) {
      for (std::size_t kr = 1; kr <= 4; ++kr) {
        const SubchannelSelection s = best_subchannel_bruteforce(h, kt, kr);
        const oracle::Subchannel o = oracle::best_subchannel(h.matrix(), kt, kr);
        c.expect(std::abs(s.capacity.bits() - o.bits) <= 1e-9 * std::max(1.0, o.bits),
                 "subchannel capacity trial " + std::to_string(t));
        c.expect(oracle::mask_of(s.tx) == o.tx_mask && oracle::mask_of(s.rx) == o.rx_mask,
                 "subchannel choice trial " + std::to_string(t));
        ++selections;
      }
    }
  }
  std::size_t layered = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < 500; ++t) {
    const std::size_t l = 1 + t % 4, nl = 1 + (t / 4) % 3;
    EnsembleSpec spec;
    spec.topology = Topology::layered(l, nl);
    spec.num_relays = l * nl;
    spec.seed = 31;
    const Network net = random_network(spec, t);
    const std::uint64_t mask = oracle_mask(t, l * nl);
    const Cut cut = Cut::from_relay_mask(l * nl, mask);
    const double whole = cut_value(net, cut).bits();
    const double staged = layered_cut_value(net, cut).total;
    worst = std::max(worst, std::abs(whole - staged));
    c.expect(std::abs(whole - staged) <= 1e-9, "layered sum trial " + std::to_string(t));
    ++layered;
  }
  c.summary(std::to_string(routes) + " routes, " + std::to_string(selections) + " selections, " +
             std::to_string(layered) + " layered cuts (worst gap " + fmt(worst) + ")");
  return c;
}

std::string run_cli(const std::vector<std::string>& args, int& rc) {
  std::vector<const char*> argv{"relaynet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Check criterion10() {
  Check c;
  const std::vector<std::vector<std::string>> runs{
      {"verify", "thm1", "--n", "5", "--trials", "300", "--seed", "42"},
      {"verify", "thm1", "--n", "4", "--trials", "200", "--seed", "42", "--snr-db", "10"},
      {"verify", "thm2", "--l", "2", "--nl", "3", "--trials", "300", "--seed", "5"},
      {"verify", "thm3", "--nt", "3", "--nr", "4", "--trials", "50", "--seed", "8"},
      {"verify", "lemma1", "--nt", "4", "--nr", "2", "--trials", "50", "--seed", "8"},
      {"verify", "lemma2", "--nt", "4", "--nr", "4", "--trials", "50", "--seed", "8"},
      {"verify", "prop2", "--n", "5", "--trials", "20", "--seed", "3"},
  };
  for (const auto& args : runs) {
    int rc1 = 0, rc2 = 0, rc3 = 0;
    const std::string a = run_cli(args, rc1);
    const std::string b = run_cli(args, rc2);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    const std::string d = run_cli(threaded, rc3);
    c.expect(rc1 == 0 && rc2 == 0 && rc3 == 0, "nonzero exit for " + args[1]);
    c.expect(!a.empty() && a == b && a == d, "output differs for " + args[1]);
  }
  c.summary(std::to_string(runs.size()) + " verify invocations byte-identical (repeat and 3 threads)");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"tight general construction", criterion1},
      {"tight layered constructions", criterion2},
      {"general route guarantee on random networks", criterion3},
      {"layered route guarantee on random networks", criterion4},
      {"MIMO subchannel lower bounds", criterion5},
      {"MIMO tight channels", criterion6},
      {"layered cut weak-term count", criterion7},
      {"principal submatrix identity", criterion8},
      {"oracle equivalences", criterion9},
      {"verify determinism", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %2zu %s: %s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, c.detail.c_str());
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
