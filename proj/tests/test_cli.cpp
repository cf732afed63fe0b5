// Drives the unproj binary through the shell and checks stdout, stderr and
// exit codes.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "unproj/unproj.hpp"

namespace fs = std::filesystem;
using namespace unproj;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() / ("unproj_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

Run cli(const std::string& args, const std::string& env = "") {
  auto out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  std::string cmd = env + (env.empty() ? "" : " ") + "'" UNPROJ_CLI_PATH "' " + args + " >'" + out.string() +
                    "' 2>'" + err.string() + "'";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

std::string in(const std::string& name, const std::string& text) { return "--in '" + write(name, text).string() + "'"; }

const char* kTwistedCubic = "ring lex: x, y, z\nideal I:\n  x^2 - y\n  x^3 - z\n";
const char* kColon = "ring grevlex: x, y\nideal I:\n  x*y\nideal J:\n  x\n";

std::vector<std::string> result_lines(const std::string& out) {
  std::vector<std::string> lines;
  std::istringstream ss(out);
  bool inside = false;
  for (std::string l; std::getline(ss, l);) {
    if (l == "ideal result:") inside = true;
    else if (inside && l.rfind("  ", 0) == 0) lines.push_back(l.substr(2));
  }
  return lines;
}

}  // namespace

TEST(CliCompute, GroebnerLex) {
  auto r = cli("gb " + in("tc.ideal", kTwistedCubic) + " --order lex");
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = result_lines(r.out);
  // y^3 - z^2 = S(x*y - z, x*z - y^2) has no lead divisible by x^2, x*y, x*z
  EXPECT_EQ(lines, (std::vector<std::string>{"y^3 - z^2", "x*z - y^2", "x*y - z", "x^2 - y"}));

  // same ideal as the input, read back through the library
  auto pf = parse_problem_file<RationalField>(r.out, RationalField{});
  auto src = parse_problem_file<RationalField>(kTwistedCubic, RationalField{});
  auto moved = Ideal<RationalField>(pf.ring, {map_to_ring(src.at("I").generators()[0], pf.ring),
                                              map_to_ring(src.at("I").generators()[1], pf.ring)});
  EXPECT_TRUE(ideal_equal(pf.at("result"), moved));
}

TEST(CliCompute, Colon) {
  auto r = cli("colon " + in("f.ideal", kColon) + " --num I --den J");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(result_lines(r.out), std::vector<std::string>{"y"});
}

TEST(CliCompute, SyntaxErrorNamesLineAndColumn) {
  auto r = cli("gb " + in("bad.ideal", "ring grevlex: x, y\nideal I:\n  x*y\nideal J:\n  x +\n"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 5, column 6"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());

  auto u = cli("gb " + in("undeclared.ideal", "ring grevlex: x, y\nideal I:\n  x*q\n"));
  EXPECT_EQ(u.code, 2);
  EXPECT_NE(u.err.find("line 3, column 5"), std::string::npos) << u.err;
}

TEST(CliCompute, OtherCommands) {
  const std::string e = in("e.ideal", "ring grevlex: x, y, z\nideal I:\n  x^2 - y\n  x*y - z\n");
  auto nf = cli("nf " + e + " --poly 'x^3'");
  ASSERT_EQ(nf.code, 0) << nf.err;
  EXPECT_EQ(nf.out, "z\n");

  auto dim = cli("dim " + e);
  ASSERT_EQ(dim.code, 0) << dim.err;
  EXPECT_EQ(dim.out, "1\n");

  auto el = cli("eliminate " + e + " --vars x");
  ASSERT_EQ(el.code, 0) << el.err;
  EXPECT_EQ(result_lines(el.out), std::vector<std::string>{"y^3 - z^2"});

  auto sat = cli("saturate " + in("s.ideal", "ring grevlex: x, y\nideal I:\n  x^2*y\n") + " --by x");
  ASSERT_EQ(sat.code, 0) << sat.err;
  EXPECT_EQ(result_lines(sat.out), std::vector<std::string>{"y"});

  auto cap = cli("intersect " + in("f2.ideal", kColon) + " --left I --right J");
  ASSERT_EQ(cap.code, 0) << cap.err;
  EXPECT_EQ(result_lines(cap.out), std::vector<std::string>{"x*y"});

  auto ker = cli("kernel " + in("k.ideal", "ring grevlex: t\nideal Z:\n") +
                    " --image x=t^2 --image y=t^3 --eliminate t");
  ASSERT_EQ(ker.code, 0) << ker.err;
  EXPECT_EQ(result_lines(ker.out), std::vector<std::string>{"x^3 - y^2"});
}

TEST(CliCompute, OutFlagMatchesStdout) {
  const std::string f = in("tc2.ideal", kTwistedCubic);
  auto a = cli("gb " + f);
  auto path = scratch() / "gb_out.txt";
  auto b = cli("gb " + f + " --out '" + path.string() + "'");
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_TRUE(b.out.empty());
  EXPECT_EQ(slurp(path), a.out);
}

TEST(CliCompute, ModularField) {
  auto r = cli("gb " + in("m.ideal", "ring grevlex: x, y\nideal I:\n  3*x - 1\n  y^2 + x\n") + " --field fp:7");
  ASSERT_EQ(r.code, 0) << r.err;
  // 3*x - 1 = 3*(x - 5) mod 7, then y^2 + 5; residues print symmetrically
  EXPECT_EQ(result_lines(r.out), (std::vector<std::string>{"x + 2", "y^2 - 2"}));
}

TEST(CliFamily, Examples) {
  auto one = cli("family --n 1");
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_NE(one.out.find("ideal IX:\n  a11*z1 + a12*z2\nideal"), std::string::npos) << one.out;

  auto two = cli("family --n 2");
  ASSERT_EQ(two.code, 0) << two.err;
  EXPECT_NE(two.out.find("ideal Delta1:\n  a12*a23 - a13*a22\n"), std::string::npos) << two.out;

  EXPECT_EQ(cli("family --n 0").code, 2);
  EXPECT_EQ(cli("family --n -1").code, 2);
}

TEST(CliFamily, OutputIsAProblemFile) {
  auto r = cli("family --n 2");
  ASSERT_EQ(r.code, 0);
  auto pf = parse_problem_file<RationalField>(r.out, RationalField{});
  EXPECT_EQ(pf.ring->size(), 6u + 3u + 3u);
  auto fam = build_generic_family<RationalField>(2);
  auto claimed = claimed_ideals(fam);
  std::vector<Polynomial<RationalField>> j;
  for (const auto& g : claimed.j.generators()) j.push_back(map_to_ring(g, pf.ring));
  EXPECT_EQ(pf.at("J").generators(), j);
}

TEST(CliFamily, NCap) {
  EXPECT_EQ(cli("family --n 5").code, 2);
  EXPECT_EQ(cli("family --n 5 --max-n 5").code, 0);
  EXPECT_EQ(cli("family --n 5", "UNPROJ_MAX_N=5").code, 0);
  EXPECT_EQ(cli("family --n 4").code, 0);
  EXPECT_EQ(cli("verify --n 5 --check cramer").code, 2);
}

TEST(CliVerify, AllPassAtOne) {
  auto r = cli("verify --n 1 --field q");
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  auto rep = parse_report(r.out);
  EXPECT_EQ(rep.n, 1);
  EXPECT_EQ(rep.field, "q");
  ASSERT_EQ(rep.checks.size(), 11u);
  for (const auto& c : rep.checks) EXPECT_EQ(c.status, CheckStatus::pass) << c.id;
}

TEST(CliVerify, SingleCheck) {
  auto r = cli("verify --n 1 --check residual");
  ASSERT_EQ(r.code, 0) << r.err;
  auto rep = parse_report(r.out);
  ASSERT_EQ(rep.checks.size(), 1u);
  EXPECT_EQ(rep.checks[0].id, "residual");
  EXPECT_EQ(rep.checks[0].status, CheckStatus::pass);
}

TEST(CliVerify, TimeoutsExitThree) {
  // the engine settles n=3 in well under a second, so exhaust the budget
  // through the pair cap and through a vanishing deadline instead
  auto pairs = cli("verify --n 3 --max-pairs 1");
  EXPECT_EQ(pairs.code, 3) << pairs.err;
  auto rep = parse_report(pairs.out);
  int timeouts = 0;
  for (const auto& c : rep.checks) {
    EXPECT_NE(c.status, CheckStatus::fail) << c.id << ": " << c.detail;
    timeouts += c.status == CheckStatus::timeout;
  }
  EXPECT_GT(timeouts, 0);

  auto tiny = cli("verify --n 3 --timeout 1e-9");
  EXPECT_EQ(tiny.code, 3);
  for (const auto& c : parse_report(tiny.out).checks) EXPECT_EQ(c.status, CheckStatus::timeout) << c.id;

  auto gb = cli("gb " + in("tc3.ideal", kTwistedCubic) + " --max-pairs 1");
  EXPECT_EQ(gb.code, 3);
}

TEST(CliVerify, PrimeField) {
  auto r = cli("verify --n 2 --field fp:65521");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_report(r.out).field, "fp:65521");
}

TEST(CliVerify, BadFlags) {
  EXPECT_EQ(cli("verify --n 1 --field r").code, 2);
  EXPECT_EQ(cli("verify --n 1 --field fp:12").code, 2);
  EXPECT_EQ(cli("verify --n 1 --check bogus").code, 2);
  EXPECT_EQ(cli("verify --n 1 --timeout 0").code, 2);
  EXPECT_EQ(cli("verify --n 0").code, 2);
  EXPECT_EQ(cli("verify").code, 2);
}

TEST(CliVerify, Deterministic) {
  auto a = cli("verify --n 2 --no-timing");
  auto b = cli("verify --n 2 --no-timing --jobs 1");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);

  const std::string f = in("tc4.ideal", kTwistedCubic);
  EXPECT_EQ(cli("gb " + f).out, cli("gb " + f).out);
  EXPECT_EQ(cli("family --n 3").out, cli("family --n 3").out);
}

// Exit codes over crafted inputs: 0 ok, 2 usage/parse, 3 budget.
TEST(CliExitCodes, Table) {
  const std::string ok = in("ok.ideal", kColon);
  const struct {
    std::string args;
    int code;
  } cases[] = {
      {"gb " + ok, 0},
      {"gb " + ok + " --ideal J", 0},
      {"gb " + ok + " --ideal K", 2},
      {"gb --in /nonexistent/file.ideal", 2},
      {"gb", 2},
      {"frobnicate", 2},
      {"gb " + ok + " --order deglex", 2},
      {"gb " + ok + " --field fp:4", 2},
      {"nf " + ok + " --poly 'x^'", 2},
      {"nf " + ok + " --poly 'w'", 2},
      {"colon " + ok + " --num I", 2},
      {"colon " + ok + " --num I --den J", 0},
      {"saturate " + ok + " --by 'x +'", 2},
      {"eliminate " + ok + " --vars q", 2},
      {"eliminate " + ok + " --vars x", 0},
      {"dim " + ok, 0},
      {"gb " + in("dup.ideal", "ring grevlex: x, x\nideal I:\n  x\n"), 2},
      {"gb " + in("noring.ideal", "ideal I:\n  x\n"), 2},
      {"gb " + in("noorder.ideal", "ring: x, y\nideal I:\n  x\n"), 2},
      {"gb " + in("fmt.ideal", "format: 2\nring grevlex: x\nideal I:\n  x\n"), 2},
      {"gb " + in("w.ideal", "ring grevlex: x, y\nweights: x=1\nideal I:\n  x\n"), 2},
      {"gb " + in("tc5.ideal", kTwistedCubic) + " --max-pairs 1", 3},
      {"gb " + in("tc6.ideal", kTwistedCubic) + " --max-pairs 0", 0},
      {"verify --n 2 --check cramer", 0},
      {"verify --n 2 --check cramer --max-pairs 1", 3},
  };
  for (const auto& c : cases) {
    auto r = cli(c.args);
    EXPECT_EQ(r.code, c.code) << c.args << "\nstderr: " << r.err;
    if (c.code == 2) EXPECT_FALSE(r.err.empty()) << c.args;
    if (c.code != 0 && c.args.rfind("verify", 0) != 0) EXPECT_TRUE(r.out.empty()) << c.args;
  }
}
