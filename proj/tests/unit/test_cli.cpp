#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rbcm/cli.hpp"

namespace rbcm::cli {
namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rbcm");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
        fields.back() += '"', ++i;
      else if (c == '"')
        quoted = false;
      else
        fields.back() += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

TEST(Cli, ClassifyIsDeterministic) {
  const auto a = invoke({"classify", "--p", "13", "--type", "I", "--format", "json"});
  const auto b = invoke({"classify", "--p", "13", "--type", "I", "--format", "json"});
  EXPECT_EQ(a.code, kExitAgree);
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["meta"]["p"], 13);
  EXPECT_EQ(doc["meta"]["e"], 2);
  EXPECT_EQ(doc["meta"]["version"], kVersion);
  ASSERT_FALSE(doc["classes"].empty());
  for (const auto& c : doc["classes"]) {
    EXPECT_EQ(c["type"], "I");
    EXPECT_EQ(c["sigma"].size(), 4u);
    EXPECT_EQ(c["omega"].size(), 4u);
  }
}

TEST(Cli, JsonAndCsvHaveSameRows) {
  using Row = std::tuple<int, std::string, int, std::string, std::string, long, long>;
  const auto js = invoke({"classify", "--p", "11", "--mode", "brute_force", "--format", "json"});
  const auto cs = invoke({"classify", "--p", "11", "--mode", "brute_force", "--format", "csv"});
  ASSERT_EQ(js.code, 0);
  ASSERT_EQ(cs.code, 0);
  std::vector<Row> from_json, from_csv;
  const auto doc = nlohmann::json::parse(js.out);
  for (const auto& c : doc["classes"])
    from_json.emplace_back(11, c["type"], c["valence"], c["family"], c["params"], c["genus"], c["face_length"]);
  std::istringstream lines(cs.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "p,type,valence,family,params,sigma,omega,genus,face_length");
  while (std::getline(lines, line)) {
    const auto f = split_csv_line(line);
    ASSERT_EQ(f.size(), 9u) << line;
    from_csv.emplace_back(std::stoi(f[0]), f[1], std::stoi(f[2]), f[3], f[4], std::stol(f[7]), std::stol(f[8]));
  }
  std::sort(from_json.begin(), from_json.end());
  std::sort(from_csv.begin(), from_csv.end());
  EXPECT_EQ(from_json, from_csv);
  EXPECT_EQ(from_json.size(), 62u);
}

TEST(Cli, EmptyCsvIsHeaderOnly) {
  RunConfig cfg;
  cfg.format = OutputFormat::csv;
  EXPECT_EQ(render(RunResult{}, cfg), "p,type,valence,family,params,sigma,omega,genus,face_length\n");
  cfg.format = OutputFormat::json;
  EXPECT_EQ(nlohmann::json::parse(render(RunResult{}, cfg)), nlohmann::json::array());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"verify", "--p", "11"}).code, kExitAgree);
  EXPECT_EQ(invoke({"verify", "--p", "7"}).code, kExitDisagree);
  EXPECT_EQ(invoke({"verify", "--p", "9"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--p", "3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--p", "37"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify"}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", "--p", "7", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"--version"}).code, 0);
}

TEST(Cli, DiagnosticsAreDistinct) {
  const auto bad_prime = invoke({"classify", "--p", "9"});
  const auto guard = invoke({"verify", "--p", "37"});
  const auto bad_path = invoke({"classify", "--p", "7", "--out", "/nonexistent-dir/x.json"});
  EXPECT_NE(bad_prime.err.find("invalid prime 9"), std::string::npos) << bad_prime.err;
  EXPECT_NE(guard.err.find("brute-force bound"), std::string::npos) << guard.err;
  EXPECT_EQ(bad_path.code, kExitUsage);
  EXPECT_FALSE(bad_path.err.empty());
  EXPECT_NE(bad_prime.err, guard.err);
}

TEST(Cli, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "rbcm_cli_test.csv";
  const auto r = invoke({"classify", "--p", "11", "--format", "csv", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "p,type,valence,family,params,sigma,omega,genus,face_length");
  std::filesystem::remove(path);
}

TEST(Cli, VerifyIgnoresJobCount) {
  const auto a = invoke({"verify", "--p", "11", "--p", "13", "--format", "json", "--jobs", "1"});
  const auto b = invoke({"verify", "--p", "11", "--p", "13", "--format", "json", "--jobs", "4"});
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(nlohmann::json::parse(a.out).is_array());
}

TEST(Cli, A5Mode) {
  const auto r = invoke({"a5", "--format", "json"});
  EXPECT_EQ(r.code, kExitAgree);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["meta"]["model"], "permutation");
  EXPECT_EQ(doc["classes"].size(), 8u);
  bool valence_finding = false;
  for (const auto& f : doc["findings"])
    valence_finding |= f["code"] == "a5_valences";
  EXPECT_TRUE(valence_finding);
  for (const auto& s : doc["steps"])
    EXPECT_TRUE(s["pass"].get<bool>()) << s["label"];
}

TEST(Cli, ClosedFormSpuriaExitNonzero) {
  const auto r = invoke({"classify", "--p", "7"});
  EXPECT_EQ(r.code, kExitDisagree);
  EXPECT_NE(r.out.find("[spurious_candidate]"), std::string::npos);
}

TEST(Cli, GenusAtlasTable) {
  const auto r = invoke({"classify", "--p", "7", "--mode", "genus_atlas"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("V=168"), std::string::npos);
}

}  // namespace
}  // namespace rbcm::cli
