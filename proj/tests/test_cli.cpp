#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "qrs/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(QRS_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("qrs_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

} // namespace

TEST_CASE("fine counts from the command line") {
  CHECK(run("--plain fine-count --type A4").out == "14\n");
  CHECK(run("--plain fine-count --type F4").out == "46\n");
  CHECK(run("--plain fine-count --type G2").out == "5\n");
  Run e8 = run("fine-count --type E8");
  REQUIRE(e8.code == 0);
  auto doc = nlohmann::json::parse(e8.out);
  CHECK(doc["format_version"] == 1);
  CHECK(doc["command"] == "fine-count");
  CHECK(doc["system"] == "E8");
  CHECK(doc["payload"]["count"] == 8392);
}

TEST_CASE("output is byte stable") {
  for (const char* args : {"roots --type F4", "fine-enumerate --type B3", "quotient --type E6 --kill 2,4", "oracle --type A3 --parts 3"}) {
    Run a = run(args);
    Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("roots and quotients") {
  auto doc = nlohmann::json::parse(run("roots --type G2").out);
  CHECK(doc["payload"]["count"] == 6);
  CHECK(doc["payload"]["highest_root"] == "32");
  CHECK(doc["payload"]["gram"][0][0] == "2");
  CHECK(doc["payload"]["gram"][1][1] == "6");

  auto q = nlohmann::json::parse(run("quotient --type B3 --kill 1").out);
  CHECK(q["payload"]["killed"] == nlohmann::json::array({1}));
  CHECK(q["payload"]["roots"].size() == 5);
  CHECK(q["payload"]["all_primitive"] == false);
}

TEST_CASE("inversion sets from a file or enumerated") {
  std::string good = write_temp("good.txt", "# two roots\n10\n\n11  # trailing comment\n");
  Run r = run("--plain inversions --type A2 --set " + good);
  CHECK(r.code == 0);
  CHECK(r.out.find("inversion_set yes") != std::string::npos);

  std::string bad = write_temp("bad.txt", "10\n01\n");
  CHECK(run("--plain inversions --type A2 --set " + bad).out.find("inversion_set no") != std::string::npos);

  auto all = nlohmann::json::parse(run("inversions --type B3 --enumerate").out);
  CHECK(all["payload"]["count"] == 48);
}

TEST_CASE("canonical form and components of a fixture set") {
  qrs::Fixture fx = qrs::Fixture::load(qrs::fixture_path("e6_first.txt"));
  std::string text;
  for (const auto& row : fx.lines("phi"))
    for (const auto& token : row) text += token + "\n";
  std::string path = write_temp("e6.txt", text);

  Run c = run("--plain canonical --type E6 --set " + path);
  CHECK(c.code == 0);
  CHECK(c.out.find("killed 2 4 5 6\n") != std::string::npos);
  CHECK(c.out.find("psi 10 01 11 12\n") != std::string::npos);
  CHECK(c.out.find("psi_kind full\n") != std::string::npos);

  auto comps = nlohmann::json::parse(run("components --type E6 --table --poset --set " + path).out);
  CHECK(comps["payload"]["components"].size() == 5);
  CHECK(comps["payload"]["table"].size() == 5);
  CHECK(comps["payload"]["hasse"].size() == 4);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("fine-count").code == 2);
  CHECK(run("fine-count --type Q7").code == 2);
  CHECK(run("quotient --type A3 --kill 9").code == 2);
  CHECK(run("canonical --type A2 --set " + write_temp("notinv.txt", "10\n01\n")).code == 2);
  CHECK(run("canonical --type A2 --set " + write_temp("neg.txt", "-10\n")).code == 2);
  CHECK(run("oracle --type A5 --parts 2").code == 3);
  CHECK(run("fine-enumerate --type E6 --cap 10").code == 3);
  CHECK(run("inversions --type E6 --enumerate --cap 100").code == 3);
  CHECK(run("--help").code == 0);
}

TEST_CASE("selftest reports eight criteria") {
  Run r = run("selftest --quick");
  auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["payload"]["criteria"].size() == 8);
  bool all = doc["payload"]["passed"].get<bool>();
  CHECK(r.code == (all ? 0 : 1));
  for (const auto& c : doc["payload"]["criteria"]) CHECK(!c["title"].get<std::string>().empty());
}
