#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "shades/asymptotics.hpp"
#include "shades/cli.hpp"

using namespace shades;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// CSV rows (without header and slope row) split into fields.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  const auto lines = lines_of(text);
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    std::vector<std::string> fields;
    std::stringstream ss(lines[i]);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("shades_test_" + name);
}

}  // namespace

TEST_CASE("count") {
  CHECK(run({"count", "frankl", "6", "3", "2", "1"}).out == "4\n");
  CHECK(run({"count", "eq68", "2", "1", "0"}).out == "1\n");
  CHECK(run({"count", "binomial", "4", "2"}).out == "6\n");
  CHECK(run({"count", "g", "4", "2", "1", "0", "1"}).out == "5\n");
  CHECK(run({"count", "binomial", "1000", "500"}).out.size() == 300 + 1);

  const Run bad = run({"count", "frankl", "3", "5", "1", "0"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
  CHECK(run({"count", "frankl", "6", "3", "2"}).code == kExitUsage);
  CHECK(run({"count", "frankl", "6", "3", "2", "x"}).code == kExitUsage);
  CHECK(run({"count", "binomial", "--", "-1", "0"}).code == kExitUsage);
  CHECK(run({"count", "nonsense", "1"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("family") {
  const Run f = run({"family", "frankl", "4", "2", "1", "0"});
  CHECK(f.code == kExitOk);
  CHECK(f.out == "n=4 k=2\n1,2\n1,3\n1,4\n");
  const auto g = lines_of(run({"family", "g", "4", "2", "1", "0", "1"}).out);
  CHECK(g.size() == 1 + 5);

  const auto json = nlohmann::json::parse(run({"family", "frankl", "4", "2", "1", "0", "--format", "json"}).out);
  CHECK(json["size"] == 3);
  CHECK(json["members"][2] == "1,4");
  CHECK(run({"family", "frankl", "64", "2", "1", "0"}).code == kExitUsage);
}

TEST_CASE("kshade-of round trip") {
  const auto path = temp_file("family.txt");
  {
    std::ofstream file(path);
    file << "n=6 k=3\n4,5,6\n1,2,3\n2,4,6\n1,2,3\n";
  }
  const Run same = run({"family", "kshade-of", path.string(), "3"});
  CHECK(same.code == kExitOk);
  CHECK(same.out == "n=6 k=3\n1,2,3\n2,4,6\n4,5,6\n");

  // Emitted output re-ingested reproduces itself.
  const Run emitted = run({"family", "frankl", "7", "3", "2", "1"});
  {
    std::ofstream file(path);
    file << emitted.out;
  }
  CHECK(run({"family", "kshade-of", path.string(), "3"}).out == emitted.out);
  CHECK(run({"family", "kshade-of", path.string(), "5"}).out == run({"family", "frankl", "7", "5", "2", "1"}).out);

  CHECK(run({"family", "kshade-of", (path.string() + ".missing"), "3"}).code == kExitUsage);
  CHECK(run({"family", "kshade-of", path.string(), "2"}).code == kExitUsage);
  std::filesystem::remove(path);
}

TEST_CASE("search") {
  const Run m = run({"search", "M", "4", "2", "2"});
  CHECK(m.code == kExitOk);
  const auto j = nlohmann::json::parse(m.out);
  CHECK(j["quantity"] == "M");
  CHECK(j["params"]["n"] == 4);
  CHECK(j["value"] == "1");
  CHECK(j["status"] == "OPTIMAL");
  CHECK(j["witness"] == nlohmann::json::array({"n=4 k=2", "1,2"}));
  CHECK(j.contains("nodes"));
  CHECK(j.contains("seconds"));

  const auto n = nlohmann::json::parse(run({"search", "N", "4", "2", "2", "1"}).out);
  CHECK(n["value"] == "9");
  CHECK(n["witness_a"].size() == 4);
  CHECK(n["witness_b"].size() == 4);

  const auto s = nlohmann::json::parse(run({"search", "sperner", "4"}).out);
  CHECK(std::stoi(s["value"].get<std::string>()) <= 11);
  CHECK(s["antichains"] == 168);
  CHECK(s["witness"][0] == "n=4 k=mixed");

  CHECK(nlohmann::json::parse(run({"search", "M0", "6", "3", "2", "1"}).out)["value"] == "10");
  CHECK(nlohmann::json::parse(run({"search", "N0", "6", "3", "3", "2", "2", "1"}).out)["value"] == "100");
  CHECK(nlohmann::json::parse(run({"search", "N1", "6", "3", "2", "1"}).out)["value"] == "100");
  CHECK(nlohmann::json::parse(run({"search", "--symmetry", "N", "5", "2", "3", "1"}).out)["value"] == "25");

  CHECK(run({"search", "M", "13", "2", "1"}).code == kExitUsage);
  CHECK(run({"search", "sperner", "6"}).code == kExitUsage);
  CHECK(run({"search", "M", "4", "2"}).code == kExitUsage);

  const Run partial = run({"search", "M", "8", "4", "1", "--max-nodes", "3"});
  CHECK(partial.code == kExitLowerBound);
  CHECK(nlohmann::json::parse(partial.out)["status"] == "LOWER_BOUND");
  CHECK(run({"search", "M", "8", "4", "1", "--max-nodes", "0"}).code == kExitUsage);

  const Run text = run({"search", "M", "4", "2", "1", "--format", "text"});
  CHECK(lines_of(text.out)[0].rfind("M(4,2,1) = 3 OPTIMAL", 0) == 0);
  const auto csv = lines_of(run({"search", "M", "4", "2", "1", "--format", "csv"}).out);
  CHECK(csv[0] == "quantity,params,value,status,nodes,seconds");
  CHECK(csv[1].rfind("M,n=4 k=2 t=1,3,OPTIMAL,", 0) == 0);
}

TEST_CASE("verify") {
  const Run ak = run({"verify", "ak-eq63", "--n-max", "7"});
  CHECK(ak.code == kExitOk);
  const auto ak_lines = lines_of(ak.out);
  CHECK(ak_lines.size() == 85);  // 84 tuples with 1 <= t <= k <= n <= 7, then the summary
  for (std::size_t i = 0; i + 1 < ak_lines.size(); ++i) CHECK(ak_lines[i].find(" CONFIRMED") != std::string::npos);
  CHECK(ak_lines.back().rfind("summary reports=84 confirmed=84 refuted=0 budget_exceeded=0", 0) == 0);

  const Run lemma = run({"verify", "lemma-2.2", "--n-max", "10"});
  CHECK(lemma.code == kExitOk);
  CHECK(lemma.out.find("REFUTED") == std::string::npos);

  // Any refutation carries its witness family on the following lines.
  const Run j1 = run({"verify", "conj-j1", "--n-max", "7"});
  const auto j1_lines = lines_of(j1.out);
  for (std::size_t i = 0; i < j1_lines.size(); ++i)
    if (j1_lines[i].find(" REFUTED") != std::string::npos) {
      REQUIRE(i + 1 < j1_lines.size());
      CHECK(j1_lines[i + 1].rfind("  | n=", 0) == 0);
    }
  CHECK(j1.code == (j1.out.find(" REFUTED") == std::string::npos ? kExitOk : kExitRefuted));

  const Run json = run({"verify", "eq-49", "--n-max", "6", "--format", "json"});
  const auto jl = lines_of(json.out);
  CHECK(jl.size() == 7);
  CHECK(nlohmann::json::parse(jl[0])["verdict"] == "CONFIRMED");
  CHECK(nlohmann::json::parse(jl.back())["summary"]["confirmed"] == 6);

  const auto csv = lines_of(run({"verify", "ekr", "--n-max", "6", "--format", "csv"}).out);
  CHECK(csv[0] == "claim,params,verdict,note");

  CHECK(run({"verify", "no-such-claim"}).code == kExitUsage);
  CHECK(run({"verify", "ekr", "--samples", "0"}).code == kExitUsage);
}

TEST_CASE("verify output does not depend on parallelism") {
  for (const char* claim : {"lemma-3.6", "conj-j4", "lemma-1.2", "prop-p5"}) {
    const Run one = run({"verify", claim, "--parallelism", "1"});
    const Run many = run({"--parallelism", "8", "verify", claim});
    CHECK(one.out == many.out);
    CHECK(one.code == many.code);
  }
}

TEST_CASE("asympt") {
  const Run eq69 = run({"asympt", "eq69", "--t", "2", "--m", "10,100,1000,10000"});
  CHECK(eq69.code == kExitOk);
  const auto rows = csv_rows(eq69.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::abs(std::stod(rows.back()[4]) - 0.25) <= 1e-3);
  CHECK(lines_of(eq69.out)[0] == "m,k,t,i_star,value,method");
  CHECK(lines_of(eq69.out).back().rfind("slope,,,,", 0) == 0);

  const auto l10 = csv_rows(run({"asympt", "l10", "--c", "2", "--k", "400", "--m", "1000000"}).out);
  REQUIRE(l10.size() == 1);
  CHECK(std::abs(std::stod(l10[0][4]) - (1 - std_normal_cdf(std::sqrt(2.0)))) <= 0.02);

  const auto j2 = csv_rows(run({"asympt", "j2", "--k-exp", "0.5", "--t-exp", "0.75", "--m-list", "default"}).out);
  REQUIRE(j2.size() == 9);
  CHECK(j2.front()[0] == "1000");
  CHECK(j2.back()[0] == "10000000");
  for (std::size_t i = 1; i < j2.size(); ++i) CHECK(std::stod(j2[i][4]) < std::stod(j2[i - 1][4]));

  const auto lemma3 = csv_rows(run({"asympt", "lemma3", "--k", "1000", "--m", "1e6"}).out);
  CHECK(std::abs(std::stod(lemma3[0][4]) - 0.68269) <= 0.02);

  const auto l12 = csv_rows(run({"asympt", "l12"}).out);
  CHECK(l12[0][2] == "1000");
  CHECK(std::stod(l12[0][4]) <= 0.01);

  const auto l9 = csv_rows(run({"asympt", "l9", "--k", "4", "--c", "2", "--m", "100"}).out);
  CHECK(l9[0][5] == "DEGENERATE");

  const auto json = nlohmann::json::parse(run({"asympt", "l10", "--format", "json"}).out);
  CHECK(json["rule"] == "s = max(1, floor(c sqrt(k) / 2)), t = 2s, i = k");
  CHECK(json["rows"].size() == 1);

  const Run co1 = run({"asympt", "co1", "--schedule", "sqrt", "--m", "1000,10000"});
  CHECK(co1.code == kExitOk);
  CHECK(csv_rows(co1.out)[0][3].find(':') != std::string::npos);

  CHECK(run({"asympt", "j2", "--m", "100,10"}).code == kExitUsage);
  CHECK(run({"asympt", "j2", "--m", "abc"}).code == kExitUsage);
  CHECK(run({"asympt", "j2", "--k-exp", "0.5", "--t", "0"}).code == kExitUsage);
  CHECK(run({"asympt", "j2", "--t", "2", "--t-exp", "0.5"}).code == kExitUsage);
  CHECK(run({"asympt", "j2", "--schedule", "bogus"}).code == kExitUsage);
  CHECK(run({"asympt", "nope"}).code == kExitUsage);
}

TEST_CASE("output file") {
  const auto path = temp_file("out.txt");
  const Run r = run({"--out", path.string(), "count", "binomial", "52", "5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "2598960");
  std::filesystem::remove(path);
  CHECK(run({"--out", "/nonexistent-dir/x.txt", "count", "binomial", "4", "2"}).code == kExitUsage);
}
