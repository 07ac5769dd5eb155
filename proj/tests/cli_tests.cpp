#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(EXPERTVOTE_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("vote: one-sided neutral vote on the normal model") {
  RunResult r = run_cli("vote --model normal --sigma 1 --one-sided 0.5 --x 2.18");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"q0\":0.953521,\"q1\":0.046479"));
  CHECK(contains(r.out, "\"labels\""));
}

TEST_CASE("vote: symmetric treatment reproduces the quoted p-value") {
  RunResult r =
      run_cli("vote --model normal --sigma 1 --symmetric-c 0.5 --lambda1 0 --x 2.18");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"q0\":0.092957"));
}

TEST_CASE("vote: anova point mass at t = 0") {
  RunResult r = run_cli("vote --model anova --k 3 --l 10 --t 0 --u 5 --theta 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"q1\":1.000000"));
}

TEST_CASE("vote: student summary realization") {
  RunResult r = run_cli("vote --model student --n 5 --mean 1.2 --s2 0.8 --theta 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"q1\":0.019971"));
}

TEST_CASE("vote: compatible bilateral hypothesis") {
  RunResult r =
      run_cli("vote --model normal --sigma 1 --bilateral -0.5 0.5 --x 2.18 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "q0,q1\n0.042798,0.957202"));
}

TEST_CASE("vote: usage errors exit with 2") {
  CHECK(run_cli("vote --model normal --x 2.18").exit_code == 2);  // no hypothesis
  CHECK(run_cli("vote --model nosuch --x 1 --one-sided 0").exit_code == 2);
  CHECK(run_cli("vote --model normal --one-sided 0 --bilateral 0 1 --x 1").exit_code == 2);
  CHECK(run_cli("vote --model gamma --one-sided 1 --x 1").exit_code == 2);
}

TEST_CASE("inductive: normal grid matches the N(x,1) CDF") {
  RunResult r =
      run_cli("inductive --model normal --sigma 1 --x 2.18 --grid 1.18 2.18 3.18");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "theta,cdf"));
  CHECK(contains(r.out, "1.180000,0.158655"));
  CHECK(contains(r.out, "2.180000,0.500000"));
  CHECK(contains(r.out, "3.180000,0.841345"));
}

TEST_CASE("inductive: anova row at theta 0 equals the vote point mass") {
  RunResult vote = run_cli("vote --model anova --p 1.5 --q 5 --t 3 --u 5 --theta 0");
  RunResult table =
      run_cli("inductive --model anova --p 1.5 --q 5 --t 3 --u 5 --grid 0 1 2");
  CHECK(vote.exit_code == 0);
  CHECK(table.exit_code == 0);
  // Extract q1 from the vote JSON and look for it in the table.
  std::size_t pos = vote.out.find("\"q1\":");
  REQUIRE(pos != std::string::npos);
  std::string q1 = vote.out.substr(pos + 5, 8);
  CHECK(contains(table.out, "0.000000," + q1));
}

TEST_CASE("inductive: gamma-scale table is the inverse gamma CDF") {
  RunResult r = run_cli(
      "inductive --model gamma --shape 2 --scale-mult 2 --x 1 --grid 0.25 0.5 1 2 "
      "--format json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"model\":\"gamma_scale(p=2,m=2)\""));
  // 1 - P(2, 1/(2*0.5)) = 1 - P(2,1) = 0.735759, 1 - P(2, 0.25) = 0.973501
  CHECK(contains(r.out, "{\"theta\":0.500000,\"cdf\":0.735759}"));
  CHECK(contains(r.out, "{\"theta\":2.000000,\"cdf\":0.973501}"));
}

TEST_CASE("inductive: monotone column and grid validation") {
  RunResult bad = run_cli("inductive --model gamma --shape 2 --scale-mult 2 --x 1 "
                          "--grid -1 0.5");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.out, "parameter interval"));
}

TEST_CASE("inductive: restricted parameter interval fails compatibility with exit 4") {
  RunResult r = run_cli(
      "inductive --model normal --sigma 1 --restrict-theta 0 1 --x 2.18 --grid 0.5");
  CHECK(r.exit_code == 4);
  CHECK(contains(r.out, "does not tend to 1 at the open inf"));
}

TEST_CASE("demo-schervish prints both triples and exits 0") {
  RunResult r = run_cli("demo-schervish");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "0.092957"));
  CHECK(contains(r.out, "0.050160"));
  CHECK(contains(r.out, "0.049807"));
  CHECK(contains(r.out, "0.042798"));
  CHECK(contains(r.out, "0.047107"));
  CHECK(contains(r.out, "nondecreasing"));
}

TEST_CASE("check: default suite passes and is byte-deterministic") {
  RunResult a = run_cli("check --seed 7 --n-samples 2000");
  RunResult b = run_cli("check --seed 7 --n-samples 2000");
  CHECK(a.exit_code == 0);
  CHECK(contains(a.out, "\"pass\":true"));
  CHECK(a.out == b.out);
}

TEST_CASE("check: a gap rule is reported with a witness and exit 1") {
  RunResult r = run_cli("check --seed 7 --n-samples 2000 --rule \"(-inf,0)u(1,2)\"");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "\"name\":\"expert_rule\",\"pass\":false"));
  CHECK(contains(r.out, "\"witness\""));
  CHECK(contains(r.out, "\"pass\":false}"));
}

TEST_CASE("check: malformed rule text exits with 2") {
  RunResult r = run_cli("check --rule \"(0,1)x(2,3)\" --n-samples 2000");
  CHECK(r.exit_code == 2);
}

TEST_CASE("numeric failures exit with 3") {
  RunResult r =
      run_cli("vote --model anova --p 1.5 --q 5 --t 3 --u 5 --theta 10 --max-terms 3");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.out, "numeric error"));
}
