#include <lfm/io.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(LFM_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Run r{-1, ""};
  if (!p) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& f) { return std::string(LFM_DATA_DIR) + "/" + f; }

}  // namespace

TEST(Cli, AnalyzeLyness) {
  auto r = run("analyze --json --params " + data("lyness.json"));
  ASSERT_EQ(r.rc, 0);
  auto j = lfm::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["signature"]["N"], 10);
  EXPECT_EQ(j["signature"]["m_s"], 3);
  EXPECT_EQ(j["growth"]["class"], "quadratic");
  EXPECT_TRUE(j["rotor"].is_null());
}

TEST(Cli, Period) {
  auto r = run("period --params " + data("p8.json"));
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out, "8\n");
  r = run("period --json --pmax 4 --params " + data("p12.json"));
  EXPECT_EQ(r.rc, 0);
  EXPECT_TRUE(lfm::json::parse(r.out)["period"].is_null());
}

TEST(Cli, DegreesLineMatchesPrediction) {
  auto r = run("degrees --json --method line --nmax 8 --params " + data("sec7.json"));
  ASSERT_EQ(r.rc, 0);
  auto j = lfm::json::parse(r.out);
  EXPECT_EQ(j["degrees"], lfm::json({2, 3, 3, 4, 6, 8, 10, 13}));
  std::vector<std::string> pred = j["predicted"];
  ASSERT_EQ(pred.size(), 8u);
  EXPECT_EQ(pred.back(), "13");
}

TEST(Cli, CharpolyIntervalBracketsValue) {
  auto r = run("charpoly --json --params " + data("sec7.json"));
  ASSERT_EQ(r.rc, 0);
  auto d = lfm::json::parse(r.out)["dynamical_degree"];
  mpq_class lo(d["interval"][0].get<std::string>()), hi(d["interval"][1].get<std::string>());
  double v = d["value"];
  EXPECT_LE(lo.get_d(), v + 1e-12);
  EXPECT_GE(hi.get_d(), v - 1e-12);
  EXPECT_LT(mpq_class(hi - lo).get_d(), 1e-9);
}

TEST(Cli, RotorFixture) {
  auto r = run("rotor --json --ledger " + data("rotor_c1.json"));
  ASSERT_EQ(r.rc, 0);
  auto j = lfm::json::parse(r.out);
  EXPECT_EQ(j["stable"]["matrix"], lfm::json({{3, 1}, {-1, 0}}));
  EXPECT_EQ(j["stable"]["verdict"], "not-conjugate");
}

TEST(Cli, ByteStable) {
  std::string args = "analyze --json --params " + data("sec7.json");
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.rc, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("timing"), std::string::npos);
}

TEST(Cli, MalformedInput) {
  std::string bad = testing::TempDir() + "/bad_params.json";
  std::ofstream(bad) << "{\"alpha\": [1, 2";
  EXPECT_EQ(run("analyze --params " + bad).rc, 2);
  std::ofstream(bad) << "{\"alpha\": [1, 0, 0, 0], \"beta\": [1, 0, 0, 0]}";
  EXPECT_EQ(run("analyze --params " + bad).rc, 2);
  EXPECT_EQ(run("analyze --params /nonexistent.json").rc, 2);
  EXPECT_EQ(run("nosuchcommand").rc, 2);
  EXPECT_EQ(run("rotor").rc, 2);
}

TEST(Cli, Selftest) {
  // selftest exits nonzero on any failure; the only failures allowed here are the recorded deviations
  auto r = run("selftest --json");
  auto j = lfm::json::parse(r.out);
  int failed = 0;
  for (auto& c : j["results"]) {
    if (c["pass"]) continue;
    ++failed;
    EXPECT_TRUE(c["known_deviation"].get<bool>()) << c["id"] << " " << c["detail"];
  }
  EXPECT_GE(j["results"].size(), 17u);
  EXPECT_EQ(r.rc, failed ? 1 : 0);
}
