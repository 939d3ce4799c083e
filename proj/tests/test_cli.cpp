#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mindim/json_io.hpp"

namespace fs = std::filesystem;
using mindim::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string &args) {
  std::string cmd = std::string(MINDIM_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE *p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mindim_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string &f) const { return (dir_ / f).string(); }

  json read_json(const std::string &f) const {
    std::ifstream in(path(f));
    return json::parse(in);
  }
  void write_json(const std::string &f, const json &j) const {
    std::ofstream(path(f)) << j.dump(2);
  }

  fs::path dir_;
};

json strip_wall(json j) {
  j.erase("wall_seconds");
  return j;
}

} // namespace

TEST_F(Cli, ExitCodesForUsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("witness 3").code, 2);
  EXPECT_EQ(run("bruteforce 13").code, 2);
  EXPECT_EQ(run("--format yaml classify 5").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("verify " + path("missing.json")).code, 2);
}

TEST_F(Cli, ClassifyText) {
  auto r = run("classify 34");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("TwoPNoQPlusOne"), std::string::npos);
  EXPECT_NE(r.out.find("3,11"), std::string::npos);
}

TEST_F(Cli, ClassifyRangeAndPrimes) {
  auto r = run("--format json classify --range 4 12");
  ASSERT_EQ(r.code, 0);
  std::vector<int> values;
  auto doc = json::parse(r.out);
  for (const auto &row : doc["result"]["rows"]) values.push_back(row["value"]);
  EXPECT_EQ(values, (std::vector<int>{2, 2, 3, 3, 3, 2, 2, 3, 3}));
  r = run("--format json classify --primes-3 30");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["result"]["primes"], json({17, 23, 29}));
}

TEST_F(Cli, WitnessVerifiesInFreshProcess) {
  for (int n : {5, 6, 8, 11, 14, 16}) {
    std::string f = "w" + std::to_string(n) + ".json";
    ASSERT_EQ(run("--format json --out " + path(f) + " witness " + std::to_string(n)).code, 0)
        << n;
    EXPECT_EQ(read_json(f)["validation"], "ok");
    EXPECT_EQ(run("verify " + path(f)).code, 0) << n;
  }
}

TEST_F(Cli, TamperedCertificateExitsOne) {
  ASSERT_EQ(run("--format json --out " + path("w.json") + " witness 7").code, 0);
  auto j = read_json("w.json");
  auto &cert = j["result"]["certificate"];
  std::swap(cert[0], cert[2]);
  write_json("bad.json", j);
  EXPECT_EQ(run("verify " + path("bad.json")).code, 1);
  // A bare certificate (without the run record) is accepted too.
  write_json("bare.json", read_json("w.json")["result"]);
  EXPECT_EQ(run("verify " + path("bare.json")).code, 0);
  std::ofstream(path("junk.json")) << "{ not json";
  EXPECT_EQ(run("verify " + path("junk.json")).code, 1);
}

TEST_F(Cli, DeterministicPayload) {
  auto a = run("--format json --seed 3 witness 11");
  auto b = run("--format json --seed 3 witness 11");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(strip_wall(json::parse(a.out)), strip_wall(json::parse(b.out)));
  auto c = run("--format json third-subgroup --n 14 --a 'intransitive:{1,2,3}' "
               "--b 'imprimitive:{1,2|3,4|5,6|7,8|9,10|11,12|13,14}'");
  auto d = run("--format json third-subgroup --n 14 --a 'intransitive:{1,2,3}' "
               "--b 'imprimitive:{1,2|3,4|5,6|7,8|9,10|11,12|13,14}'");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(strip_wall(json::parse(c.out)), strip_wall(json::parse(d.out)));
}

TEST_F(Cli, BruteforceSixAndJobsIndependence) {
  ASSERT_EQ(run("--format json --out " + path("b1.json") + " bruteforce 6").code, 0);
  ASSERT_EQ(run("--format json --jobs 4 --out " + path("b4.json") + " bruteforce 6").code, 0);
  auto r1 = read_json("b1.json")["result"], r4 = read_json("b4.json")["result"];
  EXPECT_EQ(r1["value"], 3);
  EXPECT_EQ(r1["complete"], true);
  EXPECT_EQ(r1, r4);
  EXPECT_EQ(run("verify " + path("b1.json")).code, 0);
}

TEST_F(Cli, BruteforceLogResumes) {
  std::string log = path("bf.log");
  ASSERT_EQ(run("--format json --out " + path("a.json") + " bruteforce 7 --log " + log).code, 0);
  ASSERT_EQ(run("--format json --out " + path("b.json") + " bruteforce 7 --log " + log).code, 0);
  auto a = read_json("a.json")["result"], b = read_json("b.json")["result"];
  EXPECT_EQ(a["tasks_resumed"], 0);
  EXPECT_EQ(b["tasks_resumed"], b["tasks_total"]);
  a.erase("tasks_resumed");
  b.erase("tasks_resumed");
  EXPECT_EQ(a, b);
}

TEST_F(Cli, BudgetExhaustionExitsThree) {
  EXPECT_EQ(run("--budget-elements 10 bruteforce 8").code, 3);
}

TEST_F(Cli, ThirdSubgroupVerifies) {
  ASSERT_EQ(run("--format json --out " + path("t.json") +
                " third-subgroup --n 14 --a 'imprimitive:{1,2,3,4,5,6,7|8,9,10,11,12,13,14}'"
                " --b 'imprimitive:{4,5,6,7,8,9,10|1,2,3,11,12,13,14}'")
                .code,
            0);
  auto j = read_json("t.json");
  EXPECT_EQ(j["result"]["case"], 1);
  EXPECT_EQ(j["result"]["valid"], true);
  EXPECT_EQ(run("verify " + path("t.json")).code, 0);
  EXPECT_EQ(run("third-subgroup --n 14 --a 'intransitive:{1}' --b 'intransitive:{1}'").code, 2);
}

TEST_F(Cli, CatalogCounts) {
  auto r = run("--format json catalog 8");
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out)["result"];
  EXPECT_FALSE(j.dump().find("intransitive:{1}") == std::string::npos);
}
