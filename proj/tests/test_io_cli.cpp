#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "support.hpp"
#include "wcg/cli.hpp"
#include "wcg/io.hpp"
#include "wcg/oracle.hpp"

using namespace wcg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("wcg_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

const char* kParallelLinks = R"({
  "d": 1, "W": "1/1", "A": "1/1",
  "players": [
    {"weight": "1/1", "strategies": [[0], [1]]},
    {"weight": "1/1", "strategies": [[0], [1]]}
  ],
  "resources": [{"coeffs": ["0/1", "1/1"]}, {"coeffs": ["0/1", "1/1"]}]
})";

}  // namespace

TEST(Io, GameRoundTrip) {
  for (const Game& g : fixtures::corpus(50)) EXPECT_EQ(io::parse_game(io::serialize_game(g)), g);
  for (std::size_t i = 0; i < 30; ++i) {
    const Game g = generate(fixtures::network_spec(i));
    EXPECT_EQ(io::parse_game(io::serialize_game(g)), g);
  }
}

TEST(Io, ParsesParallelLinks) {
  const Game g = io::parse_game(kParallelLinks);
  EXPECT_EQ(g, fixtures::parallel_links(2, {Rational(1), Rational(1)}));
}

TEST(Io, RationalsAreStrings) {
  const std::string text = io::serialize_game(fixtures::parallel_links(1, {Rational(3, 2)}));
  EXPECT_NE(text.find("\"3/2\""), std::string::npos);
  EXPECT_EQ(text.find('.'), std::string::npos);
}

TEST(Io, RejectsMalformedDocuments) {
  std::string bad = kParallelLinks;
  bad.replace(bad.find("\"W\": \"1/1\"") + 5, 5, "\"1.5\"");
  EXPECT_THROW(io::parse_game(bad), ParseError);
  EXPECT_THROW(io::parse_game("{"), ParseError);
  EXPECT_THROW(io::parse_game(R"({"d": 1})"), ParseError);
  EXPECT_THROW(io::parse_game(R"({"d":1,"W":1,"A":"1","players":[],"resources":[]})"), ParseError);
}

TEST(Io, ProfileAndSpecRoundTrip) {
  const Profile p{{{0, 2}, {1}}};
  EXPECT_EQ(io::parse_profile(io::serialize_profile(p)), p);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(io::parse_spec(io::serialize_spec(fixtures::corpus_spec(i))), fixtures::corpus_spec(i));
    EXPECT_EQ(io::parse_spec(io::serialize_spec(fixtures::network_spec(i))), fixtures::network_spec(i));
  }
}

TEST(Cli, SolveParallelLinks) {
  TempDir dir;
  io::write_file(dir.file("g.json"), kParallelLinks);
  const auto r = cli({"solve", "--game", dir.file("g.json"), "--algorithm", "alg1", "--epsilon", "2/5", "--trace",
                      dir.file("t.csv"), "--profile-out", dir.file("p.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["iterations"], 1);
  EXPECT_EQ(doc["target_ratio"], "5/3");
  EXPECT_EQ(doc["terminated"], "converged");
  EXPECT_EQ(io::parse_profile(io::read_file(dir.file("p.json"))), (Profile{{{1}, {0}}}));
  EXPECT_NE(io::read_file(dir.file("t.csv")).find("0,0,0,1,2/1,1/1,3/1,2/1,2"), std::string::npos);
}

TEST(Cli, VerifyMinimizer) {
  TempDir dir;
  io::write_file(dir.file("g.json"), kParallelLinks);
  const Game g = io::parse_game(kParallelLinks);
  const auto [p, v] = oracle::brute_min_potential(g, PotentialKind::PsiHatExact);
  io::write_file(dir.file("p.json"), io::serialize_profile(p));
  auto r = cli({"verify", "--game", dir.file("g.json"), "--profile", dir.file("p.json"), "--rho", "1", "--model",
                "psihat"});
  EXPECT_EQ(r.code, 0) << r.err;
  io::write_file(dir.file("q.json"), io::serialize_profile(Profile{{{0}, {0}}}));
  r = cli({"verify", "--game", dir.file("g.json"), "--profile", dir.file("q.json"), "--rho", "1"});
  EXPECT_EQ(r.code, 1);
  r = cli({"verify", "--game", dir.file("g.json"), "--profile", dir.file("q.json"), "--rho", "2"});
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, InputErrors) {
  TempDir dir;
  std::string bad = kParallelLinks;
  bad.replace(bad.find("\"0/1\", \"1/1\""), 5, "\"1.5\"");
  io::write_file(dir.file("bad.json"), bad);
  EXPECT_EQ(cli({"solve", "--game", dir.file("bad.json")}).code, 2);
  EXPECT_EQ(cli({"solve", "--game", dir.file("missing.json")}).code, 2);
  io::write_file(dir.file("g.json"), kParallelLinks);
  EXPECT_EQ(cli({"solve", "--game", dir.file("g.json"), "--epsilon", "1"}).code, 2);
  EXPECT_EQ(cli({"solve", "--game", dir.file("g.json"), "--algorithm", "alg3"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
}

TEST(Cli, OracleBudget) {
  TempDir dir;
  io::write_file(dir.file("g.json"), kParallelLinks);
  EXPECT_EQ(cli({"oracle", "--game", dir.file("g.json")}).code, 0);
  EXPECT_EQ(cli({"oracle", "--game", dir.file("g.json"), "--max-profiles", "3"}).code, 3);
}

TEST(Cli, GenerateAndBenchAreDeterministic) {
  TempDir dir;
  io::write_file(dir.file("spec.json"), io::serialize_spec(fixtures::corpus_spec(4)));
  const auto a = cli({"generate", "--spec", dir.file("spec.json"), "--out", dir.file("a.json")});
  const auto b = cli({"generate", "--spec", dir.file("spec.json"), "--out", dir.file("b.json")});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(io::read_file(dir.file("a.json")), io::read_file(dir.file("b.json")));
  const auto c1 = cli({"bench", "--spec", dir.file("spec.json"), "--runs", "5"});
  const auto c2 = cli({"bench", "--spec", dir.file("spec.json"), "--runs", "5"});
  EXPECT_EQ(c1.code, 0) << c1.err;
  EXPECT_EQ(c1.out, c2.out);
  EXPECT_EQ(std::count(c1.out.begin(), c1.out.end(), '\n'), 6);
}
