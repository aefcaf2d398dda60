#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "nambu/system.hpp"

using namespace nambu;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string fixture(const std::string& name) { return std::string(NAMBU_FIXTURE_DIR) + "/" + name; }

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "nambu");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST(CliVerify, NambuTensorPasses) {
  const auto r = run({"verify", fixture("n4.sys"), "--tensor", "L1", "--cond1", "--cond2"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "cond_algebraic: PASS"));
  EXPECT_TRUE(contains(r.out, "cond_differential: PASS"));
}

TEST(CliVerify, BlockTensorFailsWithWitness) {
  const auto r = run({"verify", fixture("n6.sys"), "--tensor", "LBLOCK", "--cond1"});
  EXPECT_EQ(r.code, cli::kExitViolation);
  EXPECT_TRUE(contains(r.out, "witness: (1,4,2,3,5,6)"));
  EXPECT_TRUE(contains(r.out, "residual: 1"));
}

TEST(CliVerify, Casimir) {
  EXPECT_EQ(run({"verify", fixture("n3.sys"), "--matrix", "J", "--casimir", "C"}).code, cli::kExitOk);
  const auto r = run({"verify", fixture("n3.sys"), "--matrix", "J", "--casimir", "H"});
  EXPECT_EQ(r.code, cli::kExitViolation);
  EXPECT_EQ(run({"verify", fixture("n3.sys"), "--casimir", "u - q^2"}).code, cli::kExitOk);
}

TEST(CliVerify, JsonIsDeterministic) {
  const std::vector<std::string> args{"verify", fixture("n6.sys"), "--tensor", "LBLOCK",
                                      "--format", "json"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["reports"][0]["check"], "cond_algebraic");
  EXPECT_EQ(j["reports"][0]["witness"], nlohmann::json::array({1, 4, 2, 3, 5, 6}));
}

TEST(CliVerify, FundamentalIdentityModes) {
  EXPECT_EQ(run({"verify", fixture("n3.sys"), "--tensor", "EPS", "--fi"}).code, cli::kExitOk);
  const auto mu1 = run({"verify", fixture("n6.sys"), "--tensor", "LBLOCK", "--fi-tuple",
                        "p1,u1,p2;H,E"});
  EXPECT_EQ(mu1.code, cli::kExitViolation);
  EXPECT_TRUE(contains(mu1.out, "residual:"));
  EXPECT_EQ(run({"verify", fixture("n6_mu0.sys"), "--tensor", "LBLOCK", "--fi-tuple",
                 "p1,u1,p2;H,E"})
                .code,
            cli::kExitOk);
  EXPECT_EQ(run({"verify", fixture("n6.sys"), "--tensor", "LBLOCK", "--fi-tuple", "q1,p1;H,E"}).code,
            cli::kExitInputError);
}

TEST(CliVerify, Compatibility) {
  EXPECT_EQ(run({"verify", fixture("n6.sys"), "--matrix", "J", "--compatible", "J1"}).code,
            cli::kExitOk);
}

TEST(CliVerify, InputErrors) {
  EXPECT_EQ(run({"verify", fixture("n3.sys"), "--tensor", "NOPE"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"verify", "/nonexistent.sys", "--tensor", "EPS"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"verify", fixture("n3.sys"), "--matrix", "J", "--cond1"}).code,
            cli::kExitInputError);
  EXPECT_EQ(run({"verify", fixture("n3.sys"), "--bogus"}).code, cli::kExitInputError);
  EXPECT_EQ(run({}).code, cli::kExitInputError);
  const auto r = run({"verify", fixture("n3.sys"), "--matrix", "J", "--casimir", "q +"});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliVerify, ParseErrorsCarryPosition) {
  const std::string path = ::testing::TempDir() + "bad.sys";
  std::ofstream(path) << "vars: q p u\nmatrix J\n1 2 : 2q\n";
  const auto r = run({"verify", path, "--matrix", "J"});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_TRUE(contains(r.err, "bad.sys:3:"));
}

TEST(CliAdmissible, Verdicts) {
  const auto n3 = run({"admissible", fixture("n3.sys")});
  EXPECT_EQ(n3.code, cli::kExitOk);
  EXPECT_TRUE(contains(n3.out, "generic rank: 2"));
  EXPECT_TRUE(contains(n3.out, "admissible: yes"));
  const auto n6 = run({"admissible", fixture("n6.sys"), "--matrix", "J"});
  EXPECT_EQ(n6.code, cli::kExitOk);
  EXPECT_TRUE(contains(n6.out, "generic rank: 4"));
  EXPECT_TRUE(contains(n6.out, "casimir count K: 2"));
  EXPECT_TRUE(contains(n6.out, "admissible: no"));
  const auto n4 = run({"admissible", fixture("n4.sys"), "--matrix", "J", "--format", "json"});
  const auto j = nlohmann::json::parse(n4.out);
  EXPECT_EQ(j["report"]["rank"], 2);
  EXPECT_EQ(j["report"]["casimirs"], 2);
  EXPECT_TRUE(j["report"]["admissible"].get<bool>());
}

TEST(CliTransform, Outputs) {
  const auto r = run({"transform", fixture("n3.sys"), "--matrix", "J", "--map", "PHI"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto spec = parse_system(r.out);
  EXPECT_EQ(spec.matrices.at("J"), levi_civita(3, {0, 1}));

  const auto l1 = run({"transform", fixture("n4.sys"), "--tensor", "L1", "--map", "PHI2"});
  EXPECT_EQ(parse_system(l1.out).tensors.at("L1"), levi_civita(4, {0, 1, 2}));

  const std::string path = ::testing::TempDir() + "identity.sys";
  std::ofstream(path) << "vars: q p u\ntensor L rank 3\n1 2 3 : q*u\n"
                      << "map ID forward = q, p, u inverse = x1, x2, x3\n";
  const auto id = run({"transform", path, "--tensor", "L", "--map", "ID"});
  EXPECT_TRUE(contains(id.out, "1 2 3 : x1*x3"));

  const auto back = run({"transform", fixture("n3.sys"), "--canonical", "3", "--map", "PHI"});
  EXPECT_EQ(parse_system(back.out).tensors.at("CANONICAL"), levi_civita(3, {0, 1, 2}));
  EXPECT_EQ(run({"transform", fixture("n3.sys"), "--matrix", "J", "--map", "NOPE"}).code,
            cli::kExitInputError);
}

TEST(CliSimulate, Oscillator) {
  const auto r = run({"simulate", fixture("n3.sys"), "--tensor", "EPS", "--gen", "H", "--gen", "C",
                      "--z0", "1,0,1", "--dt", "1e-3", "--T", "100", "--tol", "1e-7"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "overall: PASS"));
}

TEST(CliSimulate, HenonHeiles) {
  const auto r = run({"simulate", fixture("n6.sys"), "--matrix", "J", "--gen", "H", "--monitor", "H",
                      "--monitor", "C1", "--monitor", "C2", "--z0", "0.1,0,0.01,0,0.1,0", "--dt",
                      "1e-3", "--T", "100", "--tol", "1e-7", "--format", "json"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["drift"].size(), 3u);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(CliSimulate, CsvToStdout) {
  const auto r = run({"simulate", fixture("n3.sys"), "--tensor", "EPS", "--gen", "H", "--gen", "C",
                      "--z0", "1,0,1", "--dt", "0.5", "--T", "1", "--tol", "1", "--csv", "-"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,z1,z2,z3,H,C");
  EXPECT_TRUE(contains(r.err, "overall: PASS"));
}

TEST(CliSimulate, Errors) {
  const std::vector<std::string> base{"simulate", fixture("n3.sys"), "--tensor", "EPS", "--gen",
                                      "H", "--gen", "C", "--z0", "1,0,1"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return run(a).code;
  };
  EXPECT_EQ(with({"--dt", "0"}), cli::kExitInputError);
  EXPECT_EQ(with({"--dt", "-1"}), cli::kExitInputError);
  EXPECT_EQ(with({"--z0", "1,0"}), cli::kExitInputError);
  EXPECT_EQ(with({"--z0", "1,x,0"}), cli::kExitInputError);
  EXPECT_EQ(with({"--gen", "NOPE"}), cli::kExitInputError);
  EXPECT_EQ(with({"--dt", "0.1", "--T", "10", "--tol", "1e-15"}), cli::kExitViolation);

  const std::string path = ::testing::TempDir() + "blowup.sys";
  std::ofstream(path) << "vars: x y\nmatrix J\n1 2 : 1\nobs H = x^2*y\n";
  EXPECT_EQ(run({"simulate", path, "--matrix", "J", "--gen", "H", "--z0", "10,0", "--dt", "0.1",
                 "--T", "10"})
                .code,
            cli::kExitViolation);
}

TEST(CliDerive, FixtureMatrices) {
  const auto n3 = run({"derive", fixture("n3.sys"), "--tensor", "EPS", "--casimir", "C"});
  ASSERT_EQ(n3.code, cli::kExitOk) << n3.err;
  EXPECT_EQ(parse_system(n3.out).matrices.at("J"), load_system(fixture("n3.sys")).matrices.at("J"));
  const auto n4 = run({"derive", fixture("n4.sys"), "--tensor", "EPS4", "--casimir", "C1",
                       "--casimir", "C2"});
  EXPECT_EQ(parse_system(n4.out).matrices.at("J"), load_system(fixture("n4.sys")).matrices.at("J"));
  const auto zero = run({"derive", fixture("n3.sys"), "--tensor", "EPS", "--casimir", "7"});
  EXPECT_TRUE(parse_system(zero.out).matrices.at("J").is_zero());
  EXPECT_EQ(run({"derive", fixture("n4.sys"), "--tensor", "EPS4", "--casimir", "C1"}).code,
            cli::kExitInputError);
}
