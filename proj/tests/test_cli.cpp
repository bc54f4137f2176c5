#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hitchin/cli.hpp"

using namespace hitchin;
using hitchin::io::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hitchin");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& rel) { return std::string(HITCHIN_CORPUS_DIR) + "/" + rel; }

json load(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

// Writes text to a fresh file in the temp directory.
std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("hitchin_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

json machine(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "machine"});
  Result r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, Discr) {
  EXPECT_EQ(run({"discr", "--n", "2"}).out, "q1^2 - 4*q2\n");
  EXPECT_EQ(run({"discr", "--n", "1"}).out, "1\n");
  EXPECT_EQ(run({"discr", "--family", corpus("families/cubic_cusp.json")}).out, "-27*z^2\n");
  json j = machine({"discr", "--n", "3"});
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["discriminant"].get<std::string>(), "-4*q1^3*q3 + q1^2*q2^2 + 18*q1*q2*q3 - 4*q2^3 - 27*q3^2");
}

TEST(Cli, DecomposeHuman) {
  Result r = run({"decompose", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("R0 = -27\n"), std::string::npos);
  EXPECT_NE(r.out.find("R1 = 18*q1\n"), std::string::npos);
  EXPECT_NE(r.out.find("S = q1^2 - 4*q2\n"), std::string::npos);
}

TEST(Cli, DecomposeMatchesCorpus) {
  for (int n = 3; n <= 5; ++n)
    EXPECT_EQ(machine({"decompose", "--n", std::to_string(n)}), load(corpus("decompositions/n" + std::to_string(n) + ".json")))
        << "n=" << n;
}

TEST(Cli, ClassifyCorpus) {
  json node = machine({"classify", "--family", corpus("families/node.json")});
  ASSERT_EQ(node["records"].size(), 1u);
  EXPECT_EQ(node["records"][0]["tag"], "Boundary");
  EXPECT_EQ(node["records"][0]["point"], "0");

  json mq = machine({"classify", "--family", corpus("families/maxwell_quartic.json")});
  ASSERT_EQ(mq["records"].size(), 2u);
  EXPECT_EQ(mq["records"][0]["point"], "1/4");
  EXPECT_EQ(mq["records"][0]["tag"], "Boundary");
  EXPECT_EQ(mq["records"][0]["profile"], json({2, 1, 1}));
  EXPECT_EQ(mq["records"][1]["point"], "0");
  EXPECT_EQ(mq["records"][1]["tag"], "Maxwell");
  EXPECT_EQ(mq["records"][1]["profile"], json({2, 2}));

  json simple = machine({"classify", "--family", corpus("families/simple.json")});
  ASSERT_EQ(simple["records"].size(), 1u);
  EXPECT_EQ(simple["records"][0]["tag"], "Simple");

  json deg = machine({"classify", "--family", corpus("families/degenerate.json")});
  ASSERT_EQ(deg["records"].size(), 1u);
  EXPECT_EQ(deg["records"][0]["tag"], "Degenerate");

  json cusp = machine({"classify", "--family", corpus("families/cubic_cusp.json")});
  ASSERT_EQ(cusp["records"].size(), 1u);
  EXPECT_EQ(cusp["records"][0]["tag"], "Caustic");
  EXPECT_EQ(cusp["records"][0]["profile"], json({3}));
}

TEST(Cli, ClassifyHuman) {
  Result r = run({"classify", "--family", corpus("families/maxwell_quartic.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("z = 1/4: Boundary, ord W = 2, profile (2,1,1) [singular]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("z = 0: Maxwell, ord W = 2, profile (2,2) [two double roots]"), std::string::npos) << r.out;
}

TEST(Cli, Genus) {
  EXPECT_EQ(run({"genus", "--n", "4", "--g", "3"}).out, "33\n");
  EXPECT_EQ(run({"genus", "--n", "2", "--g", "2", "--b", "4"}).out, "5\n");
  json j = machine({"genus", "--n", "3", "--g", "2"});
  EXPECT_EQ(j["b"], "12");
  EXPECT_EQ(j["genus"], "10");
}

TEST(Cli, ClassesSpecialized) {
  json j = machine({"classes", "--n", "3", "--g", "2"});
  const json& h = j["classes"]["lambda_hat"];
  EXPECT_EQ(h["lambda"], "51");
  EXPECT_EQ(h["delta"], "-4");
  EXPECT_EQ(h["phi"], "-13");

  // one sheet: the spectral curve is the base curve
  json one = machine({"classes", "--n", "1", "--g", "3"});
  EXPECT_EQ(one["classes"]["lambda_hat"]["lambda"], "1");
  EXPECT_EQ(one["classes"]["lambda_hat"]["delta"], "0");
  EXPECT_EQ(one["classes"]["DW"]["lambda"], "0");
}

TEST(Cli, ClassesVerify) {
  Result r = run({"classes", "--verify"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
  json j = machine({"classes", "--verify"});
  EXPECT_TRUE(j["verified"].get<bool>());
  ASSERT_EQ(j["verification"].size(), 9u);
  for (const auto& c : j["verification"]) EXPECT_TRUE(c["equal"].get<bool>()) << c["name"];
  ASSERT_EQ(j["errata"].size(), 3u);
  for (const auto& c : j["errata"]) EXPECT_FALSE(c["equal"].get<bool>()) << c["name"];
}

TEST(Cli, Deterministic) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"--format", "machine", "classify", "--family", corpus("families/maxwell_quartic.json")},
           {"--format", "machine", "classes"},
           {"decompose", "--n", "4"}})
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, RecordRoundTrip) {
  json mq = machine({"classify", "--family", corpus("families/maxwell_quartic.json")});
  for (const auto& r : mq["records"]) EXPECT_EQ(io::to_json(io::record_from_json(r)), r);
  SpectralFamily fam = io::read_family(corpus("families/maxwell_quartic.json"));
  for (const auto& rec : classify_family(fam)) {
    BranchPointRecord back = io::record_from_json(io::to_json(rec));
    EXPECT_EQ(back.locus, monic(rec.locus));
    EXPECT_EQ(back.point, rec.point);
    EXPECT_EQ(back.local, rec.local);
  }
}

TEST(Cli, BaseClassRoundTrip) {
  auto h = picard::derive_hodge_hat();
  EXPECT_EQ(io::base_class_from_json(io::to_json(h)), h);
  auto s = picard::derive_strata_classes();
  EXPECT_EQ(io::base_class_from_json(io::to_json(s.Dm)), s.Dm);
}

TEST(Cli, FamilyRoundTrip) {
  SpectralFamily fam = io::read_family(corpus("families/maxwell_quartic.json"));
  EXPECT_EQ(discriminant_family(io::family_from_json(io::family_to_json(fam))), discriminant_family(fam));
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"--format", "xml", "discr", "--n", "2"}).code, 1);
  EXPECT_EQ(run({"discr", "--n", "two"}).code, 1);
  EXPECT_EQ(run({"discr"}).code, 1);
  EXPECT_EQ(run({"discr", "--n", "2", "--family", corpus("families/node.json")}).code, 1);
  EXPECT_EQ(run({"decompose", "--n", "2"}).code, 1);
  EXPECT_EQ(run({"classes", "--n", "3"}).code, 1);
  EXPECT_EQ(run({"genus", "--n", "3"}).code, 1);
  EXPECT_EQ(run({"classify", "--family", "/nonexistent/family.json"}).code, 1);
  EXPECT_EQ(run({"classify", "--family", temp_file("bad.json", "{ not json")}).code, 1);
  EXPECT_EQ(run({"classify", "--family", temp_file("badpoly.json", R"({"n": 2, "coeffs": ["0", "z +* 1"]})")}).code, 1);
  EXPECT_EQ(run({"classify", "--family", temp_file("mismatch.json", R"({"n": 3, "coeffs": ["0", "z"]})")}).code, 1);
  EXPECT_EQ(run({"classify", "--family", temp_file("zero.json", R"({"n": 2, "coeffs": ["0", "0"]})")}).code, 1);
  Result r = run({"classify", "--family", temp_file("bad2.json", "[]")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpIsSuccess) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, GuardedMapsExceptions) {
  std::ostringstream err;
  EXPECT_EQ(cli::guarded([]() -> int { throw cli::VerificationFailure("x"); }, err), 2);
  EXPECT_EQ(cli::guarded([]() -> int { throw DecompositionError("x"); }, err), 2);
  EXPECT_EQ(cli::guarded([]() -> int { throw std::runtime_error("x"); }, err), 2);
  EXPECT_EQ(cli::guarded([]() -> int { throw std::invalid_argument("x"); }, err), 1);
  EXPECT_EQ(cli::guarded([]() -> int { throw std::domain_error("x"); }, err), 1);
  EXPECT_EQ(cli::guarded([] { return 0; }, err), 0);
}
