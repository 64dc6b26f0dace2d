#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the tool with stdout captured and stderr folded in.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path cap =
      fs::temp_directory_path() / ("dagmatch_cli_" + std::to_string(::getpid()) +
                                   "_" + std::to_string(counter++) + ".out");
  const std::string cmd = std::string("\"") + DAGMATCH_CLI_PATH + "\" " + args +
                          " > \"" + cap.string() + "\" 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(cap);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(cap);
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() /
                     ("dagmatch_fixture_" + std::to_string(::getpid()) + "_" +
                      name);
  std::ofstream(p) << content;
  return p;
}

const std::string kThreeEdge = "4 3\nabab\n0 1\n1 2\n1 3\n";
const std::string kButterfly = "6 5\naabbaa\n0 2\n1 2\n2 3\n3 4\n3 5\n";
const std::string kDiamond = "4 4\naaaa\n0 1\n0 2\n1 3\n2 3\n";
const std::string kCycle = "3 3\naaa\n0 1\n1 2\n2 0\n";

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("match exit codes separate hit, miss and error") {
  const fs::path g = write_file("three.txt", kThreeEdge);
  RunResult hit = run_cli("match \"" + g.string() + "\" aba");
  CHECK(hit.code == 0);
  CHECK(contains(hit.out, "found: yes"));
  CHECK(contains(hit.out, "algorithm:"));

  RunResult miss = run_cli("match \"" + g.string() + "\" bbb");
  CHECK(miss.code == 1);
  CHECK(contains(miss.out, "found: no"));

  RunResult missing = run_cli("match /nonexistent/graph.txt aba");
  CHECK(missing.code == 2);
  CHECK(contains(missing.out, "error:"));

  const fs::path bad = write_file("bad.txt", "2 1\nabc\n0 1\n");
  CHECK(run_cli("match \"" + bad.string() + "\" a").code == 2);

  const fs::path cyc = write_file("cyc.txt", kCycle);
  CHECK(run_cli("match \"" + cyc.string() + "\" a").code == 2);
  fs::remove(g);
  fs::remove(bad);
  fs::remove(cyc);
}

TEST_CASE("match options: algorithm choice, json, pattern files") {
  const fs::path g = write_file("bf.txt", kButterfly);
  for (const char* algo : {"baseline", "w", "sk", "tk", "stk", "auto"}) {
    RunResult r = run_cli("match \"" + g.string() + "\" abba --algo " +
                          algo + " --json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"found\": true"));
  }

  RunResult t = run_cli("match \"" + g.string() + "\" abba --algo tk");
  CHECK(contains(t.out, "start vertices: 0 1"));
  RunResult b = run_cli("match \"" + g.string() + "\" abba --algo baseline");
  CHECK(contains(b.out, "end vertices: 4 5"));

  const fs::path pf = write_file("pat.txt", "# comment\nabba\n");
  RunResult r = run_cli("match \"" + g.string() + "\" \"" + pf.string() +
                        "\" --pattern-file");
  CHECK(r.code == 0);

  // A k too small for the live prefix sets is an error, not a wrong answer.
  const fs::path viol =
      write_file("viol.txt", "6 4\naaaaba\n0 5\n1 2\n2 4\n4 5\n");
  RunResult low = run_cli("match \"" + viol.string() +
                          "\" aabab --algo sk --k 1");
  CHECK(low.code == 2);
  // With k = 2 the run completes, but the longest path has only four
  // vertices, so a five-letter pattern cannot occur.
  RunResult high = run_cli("match \"" + viol.string() +
                           "\" aabab --algo sk --k 2");
  CHECK(high.code == 1);
  CHECK(high.out.find("found: no") != std::string::npos);
  fs::remove(g);
  fs::remove(pf);
  fs::remove(viol);
}

TEST_CASE("recognize reports membership through the exit code") {
  const fs::path bf = write_file("bf2.txt", kButterfly);
  const fs::path dm = write_file("dm.txt", kDiamond);

  RunResult no = run_cli("recognize \"" + bf.string() + "\" --class funnel");
  CHECK(no.code == 1);
  CHECK(contains(no.out, "member: no"));
  CHECK(contains(no.out, "forbidden path: 2 3"));

  RunResult yes = run_cli("recognize \"" + dm.string() + "\" --class funnel");
  CHECK(yes.code == 0);
  CHECK(contains(yes.out, "member: yes"));

  RunResult bfs = run_cli("recognize \"" + dm.string() +
                          "\" --class funnel --method bfs --json");
  CHECK(bfs.code == 0);
  CHECK(contains(bfs.out, "\"member\": true"));

  RunResult k1 = run_cli("recognize \"" + bf.string() +
                         "\" --class kfunnel --k 1");
  CHECK(k1.code == 1);
  CHECK(contains(k1.out, "shared witness:"));
  CHECK(run_cli("recognize \"" + bf.string() + "\" --class kfunnel --k 2")
            .code == 0);

  CHECK(run_cli("recognize \"" + bf.string() + "\" --class sk --k 2").code ==
        0);
  CHECK(run_cli("recognize \"" + bf.string() + "\" --class sk --k 1").code ==
        1);
  CHECK(run_cli("recognize \"" + bf.string() + "\" --class stk --k 2").code ==
        0);
  CHECK(run_cli("recognize \"" + bf.string() + "\" --class stk --k 1").code ==
        1);
  // Class parameters are required for the parameterized families.
  CHECK(run_cli("recognize \"" + bf.string() + "\" --class kfunnel").code ==
        2);
  fs::remove(bf);
  fs::remove(dm);
}

TEST_CASE("analyze prints the class profile") {
  const fs::path bf = write_file("bf3.txt", kButterfly);
  RunResult r = run_cli("analyze \"" + bf.string() + "\"");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "n: 6"));
  CHECK(contains(r.out, "funnel: no"));
  CHECK(contains(r.out, "min_k: 2"));
  CHECK(contains(r.out, "k_st: 2"));

  RunResult mu = run_cli("analyze \"" + bf.string() + "\" --mu");
  CHECK(contains(mu.out, "mu 2: 2 2"));

  RunResult js = run_cli("analyze \"" + bf.string() + "\" --json");
  CHECK(contains(js.out, "\"min_k\": 2"));
  fs::remove(bf);
}

TEST_CASE("distance reports the deletion budget") {
  const fs::path bf = write_file("bf4.txt", kButterfly);
  RunResult v = run_cli("distance \"" + bf.string() + "\"");
  CHECK(v.code == 0);
  CHECK(contains(v.out, "distance: 1"));

  RunResult e = run_cli("distance \"" + bf.string() + "\" --mode edge --json");
  CHECK(e.code == 0);
  CHECK(contains(e.out, "\"d\": 1"));

  RunResult over = run_cli("distance \"" + bf.string() + "\" --max-d 0");
  CHECK(over.code == 1);
  CHECK(contains(over.out, "distance exceeds 0"));
  fs::remove(bf);
}

TEST_CASE("gen writes loadable graphs and patterns") {
  const fs::path out = fs::temp_directory_path() /
                       ("dagmatch_gen_" + std::to_string(::getpid()) + ".txt");
  const fs::path pout = fs::temp_directory_path() /
                        ("dagmatch_genp_" + std::to_string(::getpid()) + ".txt");
  RunResult r = run_cli("gen --kind butterfly -o \"" + out.string() + "\"");
  CHECK(r.code == 0);
  {
    std::ifstream in(out);
    std::string first;
    std::getline(in, first);
    CHECK(first == "6 5");
  }

  RunResult p = run_cli("gen --kind planted-match --base path --n 12 "
                        "--pattern abab --seed 4 -o \"" +
                        out.string() + "\" --pattern-out \"" + pout.string() +
                        "\"");
  CHECK(p.code == 0);
  RunResult m = run_cli("match \"" + out.string() + "\" \"" + pout.string() +
                        "\" --pattern-file");
  CHECK(m.code == 0);

  CHECK(run_cli("gen --kind fan --k 0").code == 2);
  fs::remove(out);
  fs::remove(pout);
}

TEST_CASE("bench emits one csv row per algorithm") {
  const fs::path bf = write_file("bf5.txt", kButterfly);
  RunResult r = run_cli("bench \"" + bf.string() +
                        "\" abba --algos baseline,w,auto --reps 2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "algo,n,edges,m,param,reps,best_ms,pi_mass,found,status"));
  CHECK(contains(r.out, "baseline,6,5,4,"));
  CHECK(contains(r.out, "w,6,5,4,"));
  fs::remove(bf);
}
