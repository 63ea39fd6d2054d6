#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <vector>

#include "commands.hpp"
#include "json.hpp"

namespace {

struct Result {
  int status;
  std::string out, err;
  nlohmann::json report() const { return nlohmann::json::parse(out); }
};

Result gpdact(std::vector<std::string> args) {
  args.insert(args.begin(), "gpdact");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = gpdact::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(GPDACT_FIXTURES) + "/" + name; }

TEST(Cli, EncryptZ2) {
  const auto r = gpdact({"encrypt", "Z2", "--plaintext", "1", "--key", "1"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["details"]["ciphertext"], "delta(0)");
  EXPECT_EQ(j["details"]["heat"], "1");
}

TEST(Cli, CheckAxiomsOnTwoBits) {
  const auto r = gpdact({"check-axioms", fixture("two_bits.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.report()["details"]["equalities"], "6/6");
  EXPECT_EQ(r.report()["checks"].size(), 6u);
}

TEST(Cli, TeleportBasisState) {
  const auto r = gpdact({"teleport", "2", "--state", "1,0"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto branches = r.report()["details"]["branches"];
  ASSERT_EQ(branches.size(), 4u);
  for (const auto& b : branches) EXPECT_NEAR(b["fidelity"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, ReportsAreReproducible) {
  const std::vector<std::string> args{"teleport", "3", "--seed", "11"};
  const auto a = gpdact(args), b = gpdact(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.report()["seed"], 11);
  EXPECT_NE(gpdact({"teleport", "3", "--seed", "12"}).out, a.out);
  // timing is opt-in
  EXPECT_EQ(a.out.find("timing_ms"), std::string::npos);
  EXPECT_NE(gpdact({"--timing", "check-mub", "3"}).out.find("timing_ms"), std::string::npos);
}

TEST(Cli, ChecksSortedByName) {
  const auto j = gpdact({"check-communication", "Z/3"}).report();
  std::string prev;
  for (const auto& c : j["checks"]) {
    EXPECT_LE(prev, c["name"].get<std::string>());
    prev = c["name"];
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(gpdact({}).status, 2);
  EXPECT_EQ(gpdact({"no-such-command"}).status, 2);
  EXPECT_EQ(gpdact({"encrypt", "Z/2", "--plaintext", "5", "--key", "0"}).status, 2);
  EXPECT_EQ(gpdact({"check-axioms", "Z/99x"}).status, 2);
  EXPECT_EQ(gpdact({"teleport", "2", "--state", "1,1"}).status, 2);
  EXPECT_EQ(gpdact({"--format", "xml", "check-mub", "2"}).status, 2);
}

TEST(Cli, FailedValidationExitsOne) {
  const auto bad = testing::TempDir() + "bad_span.json";
  {
    std::ofstream f(bad);
    f << R"({"source": {"builtin": "hom", "groupoid": "Z/2"}, "target": {"builtin": "hom", "groupoid": "Z/2"},
            "entries": [[["*","*"], "0", "1", 1]]})";
  }
  const auto r = gpdact({"validate", bad});
  EXPECT_EQ(r.status, 1);
  const auto j = r.report();
  EXPECT_EQ(j["status"], "fail");
  EXPECT_FALSE(j["checks"][0]["witness"].get<std::string>().empty());
  EXPECT_EQ(gpdact({"validate", fixture("swap_z2.json")}).status, 0);
}

TEST(Cli, OtherCommands) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"validate", fixture("two_bits.json")},
           {"check-complementary", "S3", "--chase", "1,2"},
           {"build-lambda", "Z/2"},
           {"distribution", "Z/4", "--plaintext", "3"},
           {"decohere", "Z/3", "--seed", "5"},
           {"quantize", fixture("swap_z2.json")},
           {"check-q", "Z/2", "--pairs", "10"},
           {"check-mub", "5"},
           {"dense-code", "3"},
           {"dense-code-span", "S3"},
           {"eval-term", fixture("snake.json")},
           {"--format", "text", "encrypt", "S3", "--plaintext", "1", "--key", "2"},
       }) {
    const auto r = gpdact(args);
    EXPECT_EQ(r.status, 0) << args[0] << "\n" << r.out << r.err;
  }
}

}  // namespace
