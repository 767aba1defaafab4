#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace u1braid;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "u1braid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(U1BRAID_DATA_DIR) + "/" + name; }

std::filesystem::path temp_path(const char* name) { return std::filesystem::temp_directory_path() / name; }

json read(const std::filesystem::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

}  // namespace

TEST(Cli, EightSeven) {
  const auto path = temp_path("u1braid_cli_87.json");
  const Result r = run({"--out", path.string(), "u1", "s1^-4 s2 s1^-1 s2^2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("verdict witness"), std::string::npos);
  EXPECT_NE(r.out.find("crossing sigma1 block 2"), std::string::npos);
  const json j = read(path);
  EXPECT_EQ(j["verdict"], "witness");
  EXPECT_EQ(j["determinant"], 23);
  EXPECT_EQ(j.get<embed::PipelineReport>(), embed::u1_pipeline(*braid::alt_canonical(braid::parse_braid_word("s1^-4 s2 s1^-1 s2^2"))));
  std::filesystem::remove(path);
}

TEST(Cli, TenSeventyNine) {
  Result r = run({"u1", "s1^-3 s2^2 s1^-2 s2^3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("stage change_making  verdict obstructed"), std::string::npos);
  const auto path = temp_path("u1braid_cli_1079.json");
  r = run({"--out", path.string(), "u1", "--no-change-making", "s1^-3 s2^2 s1^-2 s2^3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(read(path)["witnesses"].size(), 1u);
  std::filesystem::remove(path);
}

TEST(Cli, MatrixInput) {
  Result r = run({"u1", "--matrix", data("8_7_goeritz.json"), "--sigma", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("stage witness"), std::string::npos);
  r = run({"u1", "--matrix", data("10_79_goeritz.json"), "--sigma", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("change_making"), std::string::npos);
  EXPECT_EQ(run({"u1", "--matrix", data("8_7_goeritz.json")}).code, cli::input_error);
}

TEST(Cli, DTableUnknot) {
  const auto path = temp_path("u1braid_cli_dt.json");
  const Result r = run({"--out", path.string(), "dtable", "--unknot", "9"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 4), "0  0");
  const json j = read(path);
  EXPECT_EQ(j["values"].size(), 9u);
  EXPECT_EQ(j["values"]["0"], "0");
  std::filesystem::remove(path);
}

TEST(Cli, OtherSubcommands) {
  EXPECT_EQ(run({"invariants", "s1^-4 s2 s1^-1 s2^2"}).out,
            "word s1^-4 s2 s1^-1 s2^2\ndeterminant 23  signature 2  s -2  n 12\n");
  EXPECT_EQ(run({"goeritz", "s1^-4 s2 s1^-1 s2^2"}).code, 0);
  EXPECT_NE(run({"symmetry", "s1^-4 s2 s1^-1 s2^2"}).out.find("holds"), std::string::npos);
  EXPECT_NE(run({"symmetry", "s1^-3 s2^2 s1^-2 s2^3"}).out.find("fails"), std::string::npos);
  EXPECT_NE(run({"embed", "--matrix", data("pretzel_form.json"), "--rank", "5"}).out.find("1 classes"),
            std::string::npos);
  EXPECT_NE(run({"b0", "--rmax", "4"}).out.find("claim holds"), std::string::npos);
  EXPECT_NE(run({"pretzel-check", "--nmax", "6"}).out.find("det M = 9"), std::string::npos);
  EXPECT_NE(run({"--workers", "2", "enumerate", "--bound", "8"}).out.find(", 0 disagreements"), std::string::npos);
}

TEST(Cli, ErrorsAndExitCodes) {
  EXPECT_EQ(run({}).code, cli::usage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::usage);
  EXPECT_EQ(run({"u1", "s1 s2"}).code, cli::input_error);
  EXPECT_EQ(run({"u1", "s3"}).code, cli::input_error);
  EXPECT_EQ(run({"u1"}).code, cli::input_error);
  EXPECT_EQ(run({"u1", "--matrix", "/nonexistent.json", "--sigma", "0"}).code, cli::input_error);
  EXPECT_EQ(run({"dtable", "--unknot", "8"}).code, cli::input_error);
  EXPECT_EQ(run({"b0", "--rmax", "9"}).code, cli::usage);
  EXPECT_EQ(run({"invariants", "s1^-2 s2^2"}).code, cli::input_error);
  EXPECT_EQ(run({"--help"}).code, 0);
}
