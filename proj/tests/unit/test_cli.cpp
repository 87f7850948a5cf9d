#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "temp_dir.hpp"

namespace {

struct Outcome {
  int status = -1;
  std::string output;  // stdout and stderr
};

Outcome bench(const std::string& args) {
  const std::string cmd = std::string("\"") + STOWAGE_BENCH_PATH + "\" " + args + " 2>&1";
  Outcome o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) o.output += buf.data();
  const int raw = ::pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("unknown scenario id names the valid ids") {
  const Outcome o = bench("run --scenario 42 --timesteps 10 --out /tmp/unused");
  CHECK(o.status != 0);
  CHECK(o.output.find("error:") != std::string::npos);
  CHECK(o.output.find("1-8") != std::string::npos);
}

TEST_CASE("validate accepts good configs and rejects a crane mismatch") {
  TempDir tmp;
  std::ofstream(tmp / "good.json") << R"({"scenario": 6, "env": "spaec", "algo": "dqn"})";
  std::ofstream(tmp / "bad.json") << R"({"scenario": 7, "env": "spge"})";
  std::ofstream(tmp / "typo.json") << R"({"scenario": 1, "timesteps": 10})";
  CHECK(bench("validate --config " + q(tmp / "good.json")).status == 0);
  const Outcome bad = bench("validate --config " + q(tmp / "bad.json"));
  CHECK(bad.status != 0);
  CHECK(bad.output.find("crane") != std::string::npos);
  CHECK(bench("validate --config " + q(tmp / "typo.json")).status != 0);
}

TEST_CASE("usage errors exit nonzero") {
  CHECK(bench("").status != 0);
  CHECK(bench("frobnicate").status != 0);
  CHECK(bench("compare --a x").status != 0);
}

TEST_CASE("instance, oracle and simulate") {
  TempDir tmp;
  nlohmann::json spec = {{"vessel", {{"bays", 1}, {"rows", 2}, {"tiers", 2}}},
                         {"yard", {{"bays", 1}, {"rows", 2}, {"tiers", 3}}},
                         {"num_containers", 4},
                         {"num_groups", 2},
                         {"num_cranes", 1}};
  std::ofstream(tmp / "spec.json") << spec.dump();
  REQUIRE(bench("instance --spec " + q(tmp / "spec.json") + " --seed 3 --out " + q(tmp / "inst.json")).status == 0);

  const Outcome oracle = bench("oracle --instance " + q(tmp / "inst.json") + " --out " + q(tmp / "opt.json") +
                               " --trace " + q(tmp / "trace.jsonl"));
  REQUIRE(oracle.status == 0);
  std::ifstream in(tmp / "opt.json");
  const auto opt = nlohmann::json::parse(in);
  CHECK(opt.at("objective") == "shifters");
  CHECK(opt.at("best_value").get<double>() >= 0);
  CHECK(!slurp(tmp / "trace.jsonl").empty());

  const Outcome sim = bench("simulate --instance " + q(tmp / "inst.json") + " --policy greedy");
  REQUIRE(sim.status == 0);
  const auto kpis = nlohmann::json::parse(sim.output);
  CHECK(kpis.at("steps") == 4);
  CHECK(kpis.at("shifters").get<int>() >= opt.at("best_value").get<double>());
  CHECK(bench("simulate --instance " + q(tmp / "inst.json") + " --policy psychic").status != 0);
}

TEST_CASE("run, compare and plotdata") {
  TempDir tmp;
  const std::string common = " --scenario 6 --algo a2c --reps 2 --timesteps 60 --eval-every 30 --eval-episodes 2 --quiet";
  REQUIRE(bench("run" + common + " --env spge-mc --out " + q(tmp / "mc")).status == 0);
  REQUIRE(bench("run" + common + " --env spaec --out " + q(tmp / "aec")).status == 0);
  for (const char* dir : {"mc", "aec"}) {
    CHECK(std::filesystem::exists(tmp / dir / "curves.csv"));
    CHECK(std::filesystem::exists(tmp / dir / "finals.csv"));
    CHECK(std::filesystem::exists(tmp / dir / "experiment.json"));
  }
  CHECK(std::filesystem::exists(tmp / "mc" / "plotdata" / "scenario_6_spge-mc.csv"));

  REQUIRE(bench("compare --a " + q(tmp / "mc") + " --b " + q(tmp / "aec") + " --out " + q(tmp / "cmp.csv")).status == 0);
  const std::string table = slurp(tmp / "cmp.csv");
  CHECK(table.rfind("scenario,algo,kpi,a,b,diff,", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);

  REQUIRE(bench("plotdata --in " + q(tmp.path()) + " --out " + q(tmp / "plots")).status == 0);
  CHECK(std::filesystem::exists(tmp / "plots" / "scenario_6_spge-mc.csv"));
  CHECK(std::filesystem::exists(tmp / "plots" / "scenario_6_spaec.csv"));
}
