#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "relaynet/cli.hpp"
#include "relaynet/constructions.hpp"
#include "relaynet/network.hpp"

using namespace relaynet;
namespace fs = std::filesystem;

namespace {

struct Result {
  int rc;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::vector<const char*> argv{"relaynet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

fs::path temp(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "relaynet_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(run({}).rc == kExitUsage);
  CHECK(run({"bogus"}).rc == kExitUsage);
  CHECK(run({"capacity"}).rc == kExitUsage);
  CHECK(run({"capacity", "--net", "/nonexistent.json"}).rc == kExitUsage);
  CHECK(run({"verify", "thm1", "--n", "0"}).rc == kExitUsage);
  CHECK(run({"verify", "thm1", "--n", "21", "--trials", "1"}).rc == kExitUsage);
  CHECK(run({"verify", "thm3", "--nt", "6"}).rc == kExitUsage);
  CHECK(run({"verify", "thm1", "--scale", "1", "--snr-db", "3"}).rc == kExitUsage);
  const Result h = run({"--help"});
  CHECK(h.rc == kExitOk);
  CHECK(h.out.find("verify") != std::string::npos);
  CHECK(run({"verify", "--help"}).rc == kExitOk);
}

TEST_CASE("capacity, route and ratio on a file") {
  const fs::path p = temp("line.json");
  write(p, R"({"num_relays": 1, "link_capacities": [{"from": 0, "to": 1, "bits": 2}, {"from": 1, "to": 2, "bits": 3}]})");
  const Result c = run({"capacity", "--net", p.string()});
  CHECK(c.rc == kExitOk);
  CHECK(c.out.find("min_cut: [0]") != std::string::npos);
  const Result cj = run({"capacity", "--net", p.string(), "--json"});
  CHECK(cj.out.find("\"min_cut\"") != std::string::npos);
  const Result r = run({"route", "--net", p.string()});
  CHECK(r.out.find("path: 0 -> 1 -> 2") != std::string::npos);
  const Result q = run({"ratio", "--net", p.string()});
  CHECK(q.rc == kExitOk);
  CHECK(q.out.find("fraction: 1\n") != std::string::npos);

  write(p, R"({"num_relays": 1, "link_capacities": [{"from": 0, "to": 1, "bits": 2}]})");
  CHECK(run({"route", "--net", p.string()}).rc == kExitUsage);
  write(p, R"({"num_relays": 1, "gains": [], "surprise": true})");
  CHECK(run({"capacity", "--net", p.string()}).rc == kExitUsage);
}

TEST_CASE("construct output re-loads and re-verifies") {
  const fs::path g = temp("general.json"), l = temp("layered.json");
  CHECK(run({"construct", "general", "--n", "7", "--a", "1", "--out", g.string()}).rc == kExitOk);
  CHECK(run({"construct", "layered", "--l", "3", "--nl", "2", "--w", "12", "--out", l.string()}).rc == kExitOk);
  for (const auto& p : {g, l}) {
    const Result c = run({"check-example", "--net", p.string()});
    CHECK(c.rc == kExitOk);
    CHECK(c.out.find("ok: true") != std::string::npos);
    CHECK(run({"capacity", "--net", p.string()}).rc == kExitOk);
    const Result q = run({"ratio", "--net", p.string()});
    CHECK(q.rc == kExitOk);
  }
  const Result q = run({"ratio", "--net", g.string()});
  CHECK(q.out.find("fraction: 0.2") != std::string::npos);
  CHECK(q.out.find("guaranteed_fraction: 0.25") != std::string::npos);
  CHECK(run({"construct", "general", "--n", "0", "--a", "1", "--out", g.string()}).rc == kExitUsage);
}

TEST_CASE("a broken example is a verification failure") {
  const fs::path p = temp("broken.json");
  nlohmann::json doc = tight_example_to_json(construct_general_tight(5, 1.0));
  doc["designed"]["capacity_bits"] = 4.0;
  write(p, doc.dump());
  const Result c = run({"check-example", "--net", p.string()});
  CHECK(c.rc == kExitViolation);
  CHECK(c.err.find("failed:") != std::string::npos);
}

TEST_CASE("verify subcommands") {
  const Result a = run({"verify", "thm1", "--n", "4", "--trials", "50", "--seed", "7"});
  CHECK(a.rc == kExitOk);
  CHECK(a.out.rfind("trial,cap_bits,route_bits,fraction,bound_bits,satisfied\n", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 51);
  CHECK(a.err.find("violations: 0") != std::string::npos);
  CHECK(run({"verify", "thm1", "--n", "4", "--trials", "50", "--seed", "7"}).out == a.out);
  CHECK(run({"verify", "thm1", "--n", "4", "--trials", "50", "--seed", "8"}).out != a.out);

  const fs::path csv = temp("v.csv"), js = temp("v.json");
  const Result b = run({"verify", "thm2", "--l", "2", "--nl", "2", "--trials", "30", "--csv", csv.string(), "--json",
                        js.string()});
  CHECK(b.rc == kExitOk);
  CHECK(b.out.empty());
  CHECK(slurp(csv).rfind("trial,", 0) == 0);
  CHECK(slurp(js).find("\"bound_bits\"") != std::string::npos);

  CHECK(run({"verify", "thm3", "--nt", "3", "--nr", "3", "--trials", "10", "--tight"}).rc == kExitOk);
  CHECK(run({"verify", "lemma1", "--nt", "2", "--nr", "4", "--trials", "10"}).rc == kExitOk);
  CHECK(run({"verify", "lemma2", "--nt", "4", "--nr", "3", "--trials", "10", "--tight"}).rc == kExitOk);
  const Result p1 = run({"verify", "prop1", "--l", "3", "--nl", "2"});
  CHECK(p1.rc == kExitOk);
  CHECK(p1.out.find("max_t: 4") != std::string::npos);
  const Result p2 = run({"verify", "prop2", "--n", "4", "--trials", "5"});
  CHECK(p2.rc == kExitOk);
  CHECK(p2.out.rfind("trial,k,", 0) == 0);
}

TEST_CASE("mimo-select") {
  const fs::path p = temp("chan.json");
  write(p, R"({"rows": 2, "cols": 3, "entries": [[1,0],[0,0],[0,0],[0,0],[0,0],[2,0]]})");
  const Result b = run({"mimo-select", "--channel", p.string(), "--kt", "1", "--kr", "1"});
  CHECK(b.rc == kExitOk);
  CHECK(b.out.find("tx: [2]") != std::string::npos);
  CHECK(b.out.find("rx: [1]") != std::string::npos);
  const Result g = run({"mimo-select", "--channel", p.string(), "--kt", "1", "--kr", "1", "--greedy"});
  CHECK(g.rc == kExitOk);
  CHECK(g.out.find("rx: [1]") != std::string::npos);
  CHECK(run({"mimo-select", "--channel", p.string(), "--nt", "2", "--kt", "1", "--kr", "1"}).rc == kExitUsage);
  CHECK(run({"mimo-select", "--channel", p.string(), "--kt", "4", "--kr", "1"}).rc == kExitUsage);
  CHECK(run({"mimo-select", "--channel", p.string(), "--kt", "1", "--kr", "1", "--greedy", "--bruteforce"}).rc ==
        kExitUsage);
}
