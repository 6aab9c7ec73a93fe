#include "relaynet/cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "relaynet/constructions.hpp"
#include "relaynet/cutset.hpp"
#include "relaynet/errors.hpp"
#include "relaynet/experiments.hpp"
#include "relaynet/io.hpp"
#include "relaynet/mimo_select.hpp"
#include "relaynet/routing.hpp"

namespace relaynet {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
  if (!f) throw InvalidArgument("write failed: " + path);
}

std::string node_list(const std::vector<Node>& nodes) {
  std::string s = "[";
  for (std::size_t i = 0; i < nodes.size(); ++i) s += (i ? ", " : "") + std::to_string(nodes[i]);
  return s + "]";
}

std::string path_text(const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.nodes().size(); ++i) s += (i ? " -> " : "") + std::to_string(p.nodes()[i]);
  return s;
}

struct Options {
  std::string net, out, csv, json, channel;
  bool as_json = false;
  std::size_t n = 6, l = 2, nl = 3, nt = 4, nr = 4, kt = 1, kr = 1;
  double a = 1.0, w = 12.0, scale = 1.0;
  std::optional<double> snr_db;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool bruteforce = false, greedy = false, tight = false;
};

// CSV to the file or to `out`; JSON only to a file.
void emit(const Options& o, std::ostream& out, const std::string& csv, const std::string& json) {
  if (o.csv.empty()) {
    out << csv;
  } else {
    write_file(o.csv, csv);
  }
  if (!o.json.empty()) write_file(o.json, json);
}

int run_network_verify(const Options& o, EnsembleSpec spec, std::ostream& out, std::ostream& err) {
  spec.fading = o.snr_db ? Fading::fixed_snr(*o.snr_db) : Fading::rayleigh(o.scale);
  spec.trials = o.trials;
  spec.seed = o.seed;
  if (spec.num_relays > kDefaultExhaustiveCap) throw LimitExceeded("exhaustive capacity is capped at N <= 20");
  const VerifySummary s = run_verify(spec, o.threads);
  std::ostringstream csv;
  write_trial_csv(csv, s.records);
  emit(o, out, csv.str(), trial_records_json(s.records));
  err << "trials: " << s.records.size() << "\nviolations: " << s.violations
      << "\nmin_fraction: " << format_double(s.min_fraction) << "\nmean_fraction: " << format_double(s.mean_fraction)
      << "\n";
  return s.violations == 0 ? kExitOk : kExitViolation;
}

int run_mimo(const Options& o, MimoClaim claim, std::ostream& out, std::ostream& err) {
  if (o.nt < 1 || o.nr < 1) throw InvalidArgument("--nt and --nr must be at least 1");
  if (o.nt > 5 || o.nr > 5) throw LimitExceeded("MIMO verification is capped at 5 x 5");
  if (o.trials < 1) throw InvalidArgument("trials must be at least 1");
  const MimoVerifySummary s = run_mimo_verify(o.nt, o.nr, o.trials, o.seed, claim, o.threads);
  std::ostringstream csv;
  write_mimo_csv(csv, s.records);
  auto arr = nlohmann::json::array();
  for (const auto& r : s.records) {
    arr.push_back({{"trial", r.trial},
                   {"kt", r.k_t},
                   {"kr", r.k_r},
                   {"cap_bits", r.capacity_bits},
                   {"best_bits", r.best_bits},
                   {"greedy_bits", r.greedy_bits},
                   {"thm3_bound_bits", r.thm3_bound_bits},
                   {"lemma1_bound_bits", r.lemma1_applies ? nlohmann::json(r.lemma1_bound_bits) : nlohmann::json()},
                   {"lemma2_bound_bits", r.lemma2_bound_bits},
                   {"satisfied", r.satisfied}});
  }
  emit(o, out, csv.str(), arr.dump(2) + "\n");
  std::size_t violations = s.violations;
  err << "checks: " << s.checks << "\nviolations: " << s.violations << "\n";
  auto slack = [&](const char* name, double v) {
    if (std::isfinite(v)) err << name << ": " << format_double(v) << "\n";
  };
  slack("worst_thm3_slack", s.worst_thm3_slack);
  slack("worst_lemma1_slack", s.worst_lemma1_slack);
  slack("worst_lemma2_slack", s.worst_lemma2_slack);
  slack("worst_step_slack", s.worst_step_slack);
  if (o.tight) {
    for (const auto& t : run_mimo_tightness(o.nt, o.nr)) {
      if (claim == MimoClaim::thm3 && t.channel != "parallel") continue;
      if (claim == MimoClaim::lemma2 && t.channel != "allones") continue;
      err << "tight " << t.channel << " kt=" << t.k_t << " kr=" << t.k_r << " ratio=" << format_double(t.ratio)
          << " expected=" << format_double(t.expected) << (t.ok ? " ok" : " FAIL") << "\n";
      if (!t.ok) ++violations;
    }
  }
  return violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relay network approximate capacity, best routes and MIMO subchannel selection", "relaynet"};
  app.require_subcommand(1);
  Options o;

  auto* capacity = app.add_subcommand("capacity", "Approximate capacity (minimum cut value) of a network");
  capacity->add_option("--net", o.net, "Network JSON file")->required();
  capacity->add_flag("--json", o.as_json, "Print JSON");
  capacity->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto* route = app.add_subcommand("route", "Best single route (widest path)");
  route->add_option("--net", o.net, "Network JSON file")->required();

  auto* ratio = app.add_subcommand("ratio", "Best route over capacity and the guaranteed bound");
  ratio->add_option("--net", o.net, "Network JSON file")->required();
  ratio->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  auto* construct = app.add_subcommand("construct", "Generate a network where the guarantee is tight");
  construct->require_subcommand(1);
  auto* c_general = construct->add_subcommand("general", "General N-relay family");
  c_general->add_option("--n", o.n, "Relays")->required();
  c_general->add_option("--a", o.a, "Weak link capacity in bits")->required();
  c_general->add_option("--out", o.out, "Output JSON file")->required();
  auto* c_layered = construct->add_subcommand("layered", "Layered family");
  c_layered->add_option("--l", o.l, "Relay layers")->required();
  c_layered->add_option("--nl", o.nl, "Relays per layer")->required();
  c_layered->add_option("--w", o.w, "Strong link capacity in bits")->required();
  c_layered->add_option("--out", o.out, "Output JSON file")->required();

  auto* check = app.add_subcommand("check-example", "Re-verify a constructed example file");
  check->add_option("--net", o.net, "Example JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Seeded checks of the guarantees over random ensembles");
  verify->require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--trials", o.trials, "Trials");
    sub->add_option("--seed", o.seed, "Seed");
    sub->add_option("--csv", o.csv, "CSV output file (default: stdout)");
    sub->add_option("--json", o.json, "JSON output file");
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  };
  auto fading = [&](CLI::App* sub) {
    auto* sc = sub->add_option("--scale", o.scale, "Rayleigh scale");
    sub->add_option("--snr-db", o.snr_db, "Fixed per-link SNR in dB")->excludes(sc);
  };
  auto* v_thm1 = verify->add_subcommand("thm1", "Route guarantee on full networks");
  v_thm1->add_option("--n", o.n, "Relays");
  common(v_thm1);
  fading(v_thm1);
  auto* v_thm2 = verify->add_subcommand("thm2", "Route guarantee on layered networks");
  v_thm2->add_option("--l", o.l, "Relay layers");
  v_thm2->add_option("--nl", o.nl, "Relays per layer");
  common(v_thm2);
  fading(v_thm2);
  std::vector<std::pair<CLI::App*, MimoClaim>> mimo_subs;
  for (auto [name, claim] : {std::pair{"thm3", MimoClaim::thm3}, std::pair{"lemma1", MimoClaim::lemma1},
                             std::pair{"lemma2", MimoClaim::lemma2}}) {
    auto* sub = verify->add_subcommand(name, std::string("MIMO subchannel bound ") + name);
    sub->add_option("--nt", o.nt, "Transmit antennas");
    sub->add_option("--nr", o.nr, "Receive antennas");
    sub->add_flag("--tight", o.tight, "Also check the tight channels");
    common(sub);
    mimo_subs.emplace_back(sub, claim);
  }
  auto* v_prop1 = verify->add_subcommand("prop1", "Exhaustive maximum of T over layered cuts");
  v_prop1->add_option("--l", o.l, "Relay layers");
  v_prop1->add_option("--nl", o.nl, "Relays per layer");
  auto* v_prop2 = verify->add_subcommand("prop2", "Principal submatrix identity on random Hermitian matrices");
  v_prop2->add_option("--n", o.n, "Dimension");
  common(v_prop2);

  auto* select = app.add_subcommand("mimo-select", "Pick a k_t x k_r subchannel of a channel");
  select->add_option("--channel", o.channel, "Channel JSON file")->required();
  select->add_option("--nt", o.nt, "Expected transmit antennas");
  select->add_option("--nr", o.nr, "Expected receive antennas");
  select->add_option("--kt", o.kt, "Transmit antennas to keep")->required();
  select->add_option("--kr", o.kr, "Receive antennas to keep")->required();
  auto* bf = select->add_flag("--bruteforce", o.bruteforce, "Exhaustive search (default)");
  select->add_flag("--greedy", o.greedy, "Greedy removal")->excludes(bf);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*capacity) {
      const Network net = load_network(read_file(o.net));
      const ApproxCapacity c = approx_capacity(net, kDefaultExhaustiveCap, o.threads);
      if (o.as_json) {
        out << nlohmann::json{{"capacity_bits", c.bits.bits()}, {"min_cut", c.min_cut.members()}}.dump(2) << "\n";
      } else {
        out << "capacity_bits: " << format_double(c.bits.bits()) << "\nmin_cut: " << node_list(c.min_cut.members())
            << "\n";
      }
      return kExitOk;
    }
    if (*route) {
      const Network net = load_network(read_file(o.net));
      const Route r = best_route(net);
      out << "path: " << path_text(r.path) << "\nbottleneck_bits: " << format_double(r.bits.bits()) << "\n";
      return kExitOk;
    }
    if (*ratio) {
      const Network net = load_network(read_file(o.net));
      const TrialRecord rec = evaluate_trial(net, 0);
      const Guarantee g = net.is_layered()
                              ? thm2_guarantee(net.layering()->num_layers, net.layering()->relays_per_layer)
                              : thm1_guarantee(net.num_relays());
      out << "route_bits: " << format_double(rec.best_route_bits)
          << "\ncapacity_bits: " << format_double(rec.approx_capacity_bits)
          << "\nfraction: " << format_double(rec.fraction_achieved)
          << "\nguaranteed_fraction: " << format_double(g.fraction) << "\ngap_bits: " << format_double(g.gap_bits)
          << "\nbound_bits: " << format_double(rec.theorem_bound_bits)
          << "\nsatisfied: " << (rec.satisfied ? "true" : "false") << "\n";
      return rec.satisfied ? kExitOk : kExitViolation;
    }
    if (*construct) {
      const TightExample ex = *c_general ? construct_general_tight(o.n, o.a) : construct_layered_tight(o.l, o.nl, o.w);
      write_file(o.out, tight_example_to_json(ex).dump(2) + "\n");
      out << "family: " << family_name(ex.family) << "\ncapacity_bits: " << format_double(ex.designed_capacity_bits)
          << "\nroute_bound_bits: " << format_double(ex.designed_route_bound_bits)
          << "\ndesigned_cut: " << node_list(ex.designed_cut.members()) << "\n";
      if (ex.degenerate) err << "warning: one relay per layer is outside the family's range\n";
      return kExitOk;
    }
    if (*check) {
      const TightExample ex = tight_example_from_json(parse_json(read_file(o.net)));
      const TightExampleReport rep = verify_tight_example(ex);
      out << "capacity_bits: " << format_double(rep.computed_capacity_bits)
          << "\nbest_route_bits: " << format_double(rep.best_route_bits)
          << "\npaths_checked: " << rep.paths_checked << "\nok: " << (rep.ok() ? "true" : "false") << "\n";
      for (const auto& f : rep.failures) err << "failed: " << f << "\n";
      return rep.ok() ? kExitOk : kExitViolation;
    }
    if (*verify) {
      if (*v_thm1) {
        EnsembleSpec spec;
        spec.topology = Topology::full();
        spec.num_relays = o.n;
        return run_network_verify(o, spec, out, err);
      }
      if (*v_thm2) {
        EnsembleSpec spec;
        spec.topology = Topology::layered(o.l, o.nl);
        spec.num_relays = o.l * o.nl;
        return run_network_verify(o, spec, out, err);
      }
      for (auto& [sub, claim] : mimo_subs) {
        if (*sub) return run_mimo(o, claim, out, err);
      }
      if (*v_prop1) {
        const Prop1Result r = run_prop1(o.l, o.nl);
        out << "max_t: " << r.max_t << "\nbound: " << r.bound << "\nargmax_mask: " << r.argmax_mask
            << "\nok: " << (r.ok ? "true" : "false") << "\n";
        return r.ok ? kExitOk : kExitViolation;
      }
      if (*v_prop2) {
        const auto recs = run_prop2(o.n, o.trials, o.seed);
        std::ostringstream csv;
        write_prop2_csv(csv, recs);
        auto arr = nlohmann::json::array();
        std::size_t violations = 0;
        for (const auto& r : recs) {
          if (!r.satisfied) ++violations;
          arr.push_back({{"trial", r.trial},
                         {"k", r.k},
                         {"positive_definite", r.positive_definite},
                         {"poly_relative", r.poly_relative},
                         {"scalar_relative", r.scalar_relative},
                         {"satisfied", r.satisfied}});
        }
        emit(o, out, csv.str(), arr.dump(2) + "\n");
        err << "checks: " << recs.size() << "\nviolations: " << violations << "\n";
        return violations == 0 ? kExitOk : kExitViolation;
      }
    }
    if (*select) {
      const MimoChannel h = load_channel(read_file(o.channel));
      if ((select->count("--nt") && o.nt != h.num_tx()) || (select->count("--nr") && o.nr != h.num_rx())) {
        throw InvalidArgument("channel is " + std::to_string(h.num_rx()) + " x " + std::to_string(h.num_tx()) +
                              ", not --nr x --nt");
      }
      const SubchannelSelection s =
          o.greedy ? greedy_subchannel(h, o.kt, o.kr) : best_subchannel_bruteforce(h, o.kt, o.kr);
      out << "tx: " << node_list(s.tx.indices()) << "\nrx: " << node_list(s.rx.indices())
          << "\ncapacity_bits: " << format_double(s.capacity.bits())
          << "\nfull_capacity_bits: " << format_double(mimo_capacity(h).bits()) << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace relaynet
