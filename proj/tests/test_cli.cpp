#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(NCPENCIL_BIN) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& f) { return std::string(NCPENCIL_DATA) + "/" + f; }

fs::path tmpdir() {
  fs::path d = fs::temp_directory_path() / ("ncpencil_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

json load(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

}  // namespace

TEST(Cli, CheckAinfPasses) {
  auto r = run("check-ainf " + data("kronecker_n3.json"));
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_NE(r.out.find("result: PASS"), std::string::npos) << r.out;
}

TEST(Cli, CheckAinfJsonOutput) {
  auto r = run("--format json check-ainf " + data("kronecker_n3.json"));
  ASSERT_EQ(r.rc, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "check-ainf");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_FALSE(j["checks"].empty());
}

TEST(Cli, CorruptedUnitFailsWithExitOne) {
  json j = load(data("kronecker_n3.json"));
  bool flipped = false;
  for (auto& m : j["mu"]) {
    if (m["arity"] == 2 && m["inputs"][0][1] == "a" && m["inputs"][1][1] == "e") {
      m["coeff"] = "-1";
      flipped = true;
    }
  }
  ASSERT_TRUE(flipped);
  fs::path f = tmpdir() / "bad_unit.json";
  std::ofstream(f) << j.dump(2);
  auto r = run("check-ainf " + f.string());
  EXPECT_EQ(r.rc, 1) << r.out;
  EXPECT_NE(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Cli, MalformedInputExitsTwo) {
  fs::path f = tmpdir() / "malformed.json";
  std::ofstream(f) << "{ \"objects\": [\"X\", }";
  auto r = run("check-ainf " + f.string());
  EXPECT_EQ(r.rc, 2) << r.out;
  EXPECT_NE(r.out.find("error:"), std::string::npos) << r.out;
}

TEST(Cli, MissingFieldNamesField) {
  json j = load(data("kronecker_n3.json"));
  j["mu"][2].erase("coeff");
  fs::path f = tmpdir() / "missing_coeff.json";
  std::ofstream(f) << j.dump(2);
  auto r = run("check-ainf " + f.string());
  EXPECT_EQ(r.rc, 2) << r.out;
  EXPECT_NE(r.out.find("coeff"), std::string::npos) << r.out;
}

TEST(Cli, MissingFileAndBadOptionExitTwo) {
  EXPECT_EQ(run("check-ainf /nonexistent/none.json").rc, 2);
  EXPECT_EQ(run("check-ainf " + data("kronecker_n3.json") + " --bogus").rc, 2);
  EXPECT_EQ(run("no-such-command").rc, 2);
  EXPECT_EQ(run("--format yaml check-ainf " + data("kronecker_n3.json")).rc, 2);
}

TEST(Cli, Cohomology) {
  auto r = run("--format json cohomology " + data("kronecker_n3.json") + " --source X --target Y");
  ASSERT_EQ(r.rc, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "cohomology");
  EXPECT_NE(j["data"].dump().find("2"), std::string::npos);
}

TEST(Cli, FibreTransferLocalise) {
  EXPECT_EQ(run("fibre " + data("kronecker_pencil_n3.json") + " --at 1,1").rc, 0);
  EXPECT_EQ(run("transfer " + data("transfer_example.json") + " " + data("transfer_example_datum.json")).rc, 0);
  EXPECT_EQ(run("localise " + data("localisation_toy.json") + " --invert s --lmax 2").rc, 0);
}

TEST(Cli, PopsicleCancellation) {
  auto r = run("popsicle verify-cancellation --dmax 4");
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_NE(r.out.find("result: PASS"), std::string::npos) << r.out;
}

TEST(Cli, CaseStudy) {
  auto r = run("case-study kronecker --n 3");
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_NE(r.out.find("55/55"), std::string::npos) << r.out;
}

TEST(Cli, ExportRoundTrip) {
  fs::path f = tmpdir() / "exported.json";
  auto r = run("export kronecker --n 3 > " + f.string());
  ASSERT_EQ(r.rc, 0) << r.out;
  auto c = run("check-ainf " + f.string());
  EXPECT_EQ(c.rc, 0) << c.out;
}

TEST(Cli, ReportDirWritesFiles) {
  fs::path d = tmpdir() / "reports";
  fs::remove_all(d);
  auto r = run("--report-dir " + d.string() + " check-ainf " + data("kronecker_n3.json"));
  ASSERT_EQ(r.rc, 0) << r.out;
  EXPECT_TRUE(fs::exists(d / "check-ainf.json"));
  EXPECT_TRUE(fs::exists(d / "check-ainf.txt"));
  EXPECT_TRUE(load((d / "check-ainf.json").string())["pass"].get<bool>());
}
