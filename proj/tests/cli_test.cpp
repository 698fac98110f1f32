#include "jetplane/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace jetplane {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << "cannot open " << path;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string golden(const std::string& name) {
  return read_file(std::string(JETPLANE_TEST_SOURCE_DIR) + "/golden/" + name);
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "cli_test_" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  return path;
}

FiberPoint3 fiber(const Rational& a, const Rational& b, const Rational& c,
                  const Rational& d) {
  FiberPoint3 t;
  t.u = {a, b, c, d};
  return t;
}

TEST(Serialize, RoundTripIsByteStable) {
  const CartanSubspace plane = jet_plane(fiber(1, 2, Rational(-3, 2), 4));
  const std::string text = write_subspace_string(plane);
  std::istringstream in(text);
  const CartanSubspace back = read_subspace(in);
  EXPECT_TRUE(back == plane);
  EXPECT_EQ(write_subspace_string(back), text);
}

TEST(Serialize, AcceptsCommentsAndCanonicalizes) {
  std::istringstream in(
      "# a single line, non-canonical entries\n"
      "jetplane-subspace v1\n"
      "\n"
      "context 2 1 3\n"
      "vectors 1\n"
      "2/4 0 0 0 0\n");
  const CartanSubspace s = read_subspace(in);
  EXPECT_TRUE(s == line_from_jet_components(1, 0, 0, 0, 0));
}

TEST(Serialize, DiagnosticsCarryLineAndField) {
  const auto expect_error = [](const std::string& text,
                               const std::string& fragment) {
    std::istringstream in(text);
    try {
      read_subspace(in);
      FAIL() << "expected ParseError containing '" << fragment << "'";
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
          << "actual: " << e.what();
    }
  };
  expect_error("nonsense\n", "line 1");
  expect_error("jetplane-subspace v1\ncontext 2 1\n",
               "expected 'context <n> <m> <k>'");
  expect_error("jetplane-subspace v1\ncontext 2 1 3\nvectors 1\n1 0 0 0\n",
               "line 4: expected 5 coordinates, got 4");
  expect_error(
      "jetplane-subspace v1\ncontext 2 1 3\nvectors 1\n1 0 3/x 0 0\n",
      "line 4, field 3");
  expect_error(
      "jetplane-subspace v1\ncontext 2 1 3\nvectors 1\n1 0 3/0 0 0\n",
      "zero denominator");
  expect_error("jetplane-subspace v1\ncontext 0 1 3\n", "out of range");
  expect_error(
      "jetplane-subspace v1\ncontext 2 1 3\nvectors 1\n1 0 0 0 0\nextra\n",
      "unexpected trailing input");
  EXPECT_THROW(read_subspace_file("does_not_exist.sub"),
               std::invalid_argument);
}

TEST(Cli, DimsMatchesGolden) {
  RunConfig cfg;
  cfg.subcommand = "dims";
  cfg.n = 3;
  cfg.m = 1;
  cfg.k = 2;
  cfg.s = 2;
  const CliResult text = run_cli(cfg);
  EXPECT_EQ(text.exit_code, kExitPass);
  EXPECT_EQ(text.output, golden("dims_n3m1k2s2.txt"));

  cfg.format = "json";
  const CliResult js = run_cli(cfg);
  EXPECT_EQ(js.exit_code, kExitPass);
  EXPECT_EQ(js.output, golden("dims_n3m1k2s2.json"));

  cfg.format = "text";
  cfg.s = 3;
  const CliResult top = run_cli(cfg);
  EXPECT_EQ(top.exit_code, kExitPass);
  EXPECT_NE(top.output.find("dim_is 6 FORMULA"), std::string::npos);
}

TEST(Cli, MaExampleMatchesGoldenAndIsDeterministic) {
  RunConfig cfg;
  cfg.subcommand = "ma-example";
  cfg.seed = 1;
  cfg.format = "json";
  const CliResult first = run_cli(cfg);
  const CliResult second = run_cli(cfg);
  EXPECT_EQ(first.exit_code, kExitPass);
  EXPECT_EQ(first.output, second.output);
  EXPECT_EQ(first.output, golden("ma_example_seed1.json"));

  // Structured shape: rationals are {num, den} string pairs.
  const auto j = OrderedJson::parse(first.output);
  EXPECT_EQ(j.at("verdict"), "NOT_CONTACT_EQUIVALENT");
  const auto& a = j.at("line_samples").at(0).at("a");
  EXPECT_TRUE(a.at("num").is_string());
  EXPECT_TRUE(a.at("den").is_string());
  EXPECT_EQ(j.at("line_samples").size(), 50u);
  EXPECT_EQ(j.at("fiber_samples").size(), 20u);
}

TEST(Cli, CheckAcceptsIntegralAndFlagsNonIntegral) {
  const std::string good = write_temp(
      "line.sub", write_subspace_string(monge_ampere_line(1, Rational(3))));
  RunConfig cfg;
  cfg.subcommand = "check";
  cfg.input_path = good;
  const CliResult ok = run_cli(cfg);
  EXPECT_EQ(ok.exit_code, kExitPass);
  EXPECT_NE(ok.output.find("integral yes"), std::string::npos);

  // A vertical line is isotropic but not horizontal: falsified, not an error.
  const std::string vertical = write_temp(
      "vert.sub",
      write_subspace_string(line_from_jet_components(0, 0, 1, 0, 0)));
  cfg.input_path = vertical;
  const CliResult bad = run_cli(cfg);
  EXPECT_EQ(bad.exit_code, kExitFalsified);
  EXPECT_NE(bad.output.find("horizontal no"), std::string::npos);

  const std::string malformed = write_temp(
      "bad.sub",
      "jetplane-subspace v1\ncontext 2 1 3\nvectors 1\n1 0 3/x 0 0\n");
  cfg.input_path = malformed;
  const CliResult err = run_cli(cfg);
  EXPECT_EQ(err.exit_code, kExitBadInput);
  EXPECT_NE(err.output.find("line 4, field 3"), std::string::npos);

  std::remove(good.c_str());
  std::remove(vertical.c_str());
  std::remove(malformed.c_str());
}

TEST(Cli, FiberRecoversTheJetPlaneGenerator) {
  const std::string path = write_temp(
      "plane.sub",
      write_subspace_string(jet_plane(fiber(1, 2, 3, 4))));
  RunConfig cfg;
  cfg.subcommand = "fiber";
  cfg.input_path = path;
  const CliResult res = run_cli(cfg);
  EXPECT_EQ(res.exit_code, kExitPass);
  EXPECT_NE(res.output.find("roundtrip_exact yes"), std::string::npos);
  // Monomial coefficients are the jet components scaled by k / tau!.
  EXPECT_NE(res.output.find("exponents=3,0 value=1/2"), std::string::npos);
  EXPECT_NE(res.output.find("exponents=2,1 value=3"), std::string::npos);
  EXPECT_NE(res.output.find("exponents=1,2 value=9/2"), std::string::npos);
  EXPECT_NE(res.output.find("exponents=0,3 value=2"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, VerificationSubcommandsPassOnSmallRuns) {
  RunConfig cfg;
  cfg.subcommand = "verify-theorem1";
  cfg.n = 3;
  cfg.m = 1;
  cfg.k = 2;
  cfg.s = 2;
  cfg.seed = 7;
  cfg.samples = 3;
  EXPECT_EQ(run_cli(cfg).exit_code, kExitPass);

  cfg.subcommand = "polar";
  cfg.samples = 2;
  EXPECT_EQ(run_cli(cfg).exit_code, kExitPass);

  cfg.subcommand = "contactize";
  cfg.verify = true;
  cfg.samples = 3;
  const CliResult contact = run_cli(cfg);
  EXPECT_EQ(contact.exit_code, kExitPass);
  EXPECT_NE(contact.output.find("frame_size 4"), std::string::npos);

  cfg.subcommand = "grid";
  cfg.n_min = cfg.n_max = 2;
  cfg.m_min = cfg.m_max = 1;
  cfg.k_min = cfg.k_max = 2;
  cfg.samples = 2;
  cfg.format = "json";
  const CliResult grid = run_cli(cfg);
  EXPECT_EQ(grid.exit_code, kExitPass);
  const auto j = OrderedJson::parse(grid.output);
  EXPECT_EQ(j.at("cells").size(), 2u);
  EXPECT_EQ(j.at("failures"), 0);
}

TEST(Cli, ExitCodeContract) {
  RunConfig cfg;
  cfg.subcommand = "no-such-command";
  EXPECT_EQ(run_cli(cfg).exit_code, kExitBadInput);

  cfg.subcommand = "dims";
  cfg.format = "yaml";
  EXPECT_EQ(run_cli(cfg).exit_code, kExitBadInput);
  cfg.format = "text";

  cfg.subcommand = "polar";
  cfg.k = 1;  // pairing is identically zero: rejected as bad parameters
  EXPECT_EQ(run_cli(cfg).exit_code, kExitBadInput);
  cfg.k = 2;

  cfg.subcommand = "check";
  cfg.input_path.clear();
  EXPECT_EQ(run_cli(cfg).exit_code, kExitBadInput);

  cfg.subcommand = "grid";
  cfg.n_min = 3;
  cfg.n_max = 2;
  EXPECT_EQ(run_cli(cfg).exit_code, kExitBadInput);
}

TEST(Cli, EnvironmentOverridesApplyOnlyToUnsetValues) {
  RunConfig cfg;
  setenv("JETPLANE_SEED", "99", 1);
  setenv("JETPLANE_GRID_NMAX", "3", 1);
  apply_env_defaults(cfg, ExplicitFlags{});
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.n_max, 3);

  RunConfig explicit_cfg;
  explicit_cfg.seed = 5;
  explicit_cfg.n_max = 4;
  ExplicitFlags all_given;
  all_given.seed = true;
  all_given.n_max = true;
  apply_env_defaults(explicit_cfg, all_given);
  EXPECT_EQ(explicit_cfg.seed, 5u);
  EXPECT_EQ(explicit_cfg.n_max, 4);

  RunConfig mixed;
  mixed.m_max = 7;
  ExplicitFlags only_m_max;
  only_m_max.m_max = true;
  apply_env_defaults(mixed, only_m_max);
  EXPECT_EQ(mixed.n_max, 3) << "unrelated explicit flag must not mask the env";
  EXPECT_EQ(mixed.m_max, 7);

  setenv("JETPLANE_SEED", "not-a-number", 1);
  RunConfig bad;
  EXPECT_THROW(apply_env_defaults(bad, ExplicitFlags{}), std::invalid_argument);

  setenv("JETPLANE_GRID_NMAX", "30", 1);
  RunConfig out_of_range;
  ExplicitFlags seed_only;
  seed_only.seed = true;
  EXPECT_THROW(apply_env_defaults(out_of_range, seed_only),
               std::invalid_argument);

  unsetenv("JETPLANE_SEED");
  unsetenv("JETPLANE_GRID_NMAX");
}

}  // namespace
}  // namespace jetplane
