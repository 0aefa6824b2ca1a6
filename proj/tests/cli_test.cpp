#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpp/graph.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class TempDir {
 public:
  TempDir() {
    char tmpl[] = "/tmp/lpp_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    path_ = tmpl;
  }
  ~TempDir() {
    std::string cmd = "rm -rf " + path_;
    (void)std::system(cmd.c_str());
  }
  std::string file(const std::string& name) const { return path_ + "/" + name; }
  std::string write(const std::string& name, const std::string& content) const {
    std::string p = file(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    REQUIRE(out.good());
    return p;
  }

 private:
  std::string path_;
};

// Runs the installed binary with shell redirection; arguments here are
// test-controlled literals, never untrusted input.
CliResult run_cli(const TempDir& dir, const std::string& args) {
  std::string out_f = dir.file(".stdout"), err_f = dir.file(".stderr");
  std::string cmd = std::string(LPP_CLI_PATH) + " " + args + " >" + out_f +
                    " 2>" + err_f;
  int rc = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  res.out = slurp(out_f);
  res.err = slurp(err_f);
  return res;
}

// Foreground responder for one session: popen so the "listening on" line can
// be read before the client connects.
class OnceServer {
 public:
  OnceServer(const TempDir& dir, const std::string& graph_path,
             const std::string& extra = "") {
    std::string cmd = std::string(LPP_CLI_PATH) + " serve --graph " +
                      graph_path + " --listen 127.0.0.1:0 --once " + extra +
                      " 2>" + dir.file(".serve_err");
    pipe_ = popen(cmd.c_str(), "r");
    REQUIRE(pipe_ != nullptr);
    char line[256] = {0};
    REQUIRE(fgets(line, sizeof line, pipe_) != nullptr);
    std::string s(line);  // "listening on 127.0.0.1:PORT"
    auto pos = s.rfind(':');
    REQUIRE(pos != std::string::npos);
    port_ = s.substr(pos + 1);
    while (!port_.empty() && !isdigit(port_.back())) port_.pop_back();
    REQUIRE(!port_.empty());
  }
  ~OnceServer() {
    if (pipe_) pclose(pipe_);
  }
  std::string endpoint() const { return "127.0.0.1:" + port_; }

 private:
  FILE* pipe_ = nullptr;
  std::string port_;
};

const char* kG1 = "x a\nx b\ny a\ny c\n";
const char* kG2 = "x a\nx c\nx d\ny a\ny b\ny d\n";

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("cli: gen is deterministic and well-formed") {
  TempDir dir;
  auto a = run_cli(dir, "gen --nodes 80 --k 3 --seed 5");
  auto b = run_cli(dir, "gen --nodes 80 --k 3 --seed 5");
  auto c = run_cli(dir, "gen --nodes 80 --k 3 --seed 6");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  lpp::Graph g = lpp::load_edge_list(a.out);
  CHECK(g.node_count() == 80);
  CHECK(g.edge_count() == 3 + (80 - 3) * 3);

  // --out writes the same bytes to a file
  auto d = run_cli(dir, "gen --nodes 80 --k 3 --seed 5 --out " + dir.file("g.txt"));
  REQUIRE(d.exit_code == 0);
  CHECK(slurp(dir.file("g.txt")) == a.out);
}

TEST_CASE("cli: gen rejects out-of-range k") {
  TempDir dir;
  auto r = run_cli(dir, "gen --nodes 10 --k 9 --seed 1");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("cli: oracle fixture output, human and json") {
  TempDir dir;
  std::string g1 = dir.write("g1.txt", kG1), g2 = dir.write("g2.txt", kG2);
  auto r = run_cli(dir, "oracle --graph1 " + g1 + " --graph2 " + g2 +
                            " --x x --y y");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "cn=4 local1=1 local2=2 cr1=1 cr2=1 overlap=1\n");

  auto j = run_cli(dir, "oracle --graph1 " + g1 + " --graph2 " + g2 +
                            " --x x --y y --json");
  REQUIRE(j.exit_code == 0);
  json parsed = json::parse(j.out);
  CHECK(parsed["cn"] == 4);
  CHECK(parsed["local1"] == 1);
  CHECK(parsed["local2"] == 2);
  CHECK(parsed["crossover1"] == 1);
  CHECK(parsed["crossover2"] == 1);
  CHECK(parsed["overlap"] == 1);
  CHECK(parsed["direct_neighbours"] == false);

  auto same = run_cli(dir, "oracle --graph1 " + g1 + " --graph2 " + g2 +
                               " --x x --y x");
  CHECK(same.exit_code == 1);
}

TEST_CASE("cli: leakage table") {
  TempDir dir;
  auto r = run_cli(dir, "leakage --universe 8");
  REQUIRE(r.exit_code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 10);
  CHECK(ls[0] == "cardinality,possibilities,log10");
  CHECK(ls[1].substr(0, 4) == "0,1,");
  CHECK(ls[4] == "3,56,1.748188");
  CHECK(ls[9].substr(0, 4) == "8,1,");

  auto one = run_cli(dir, "leakage --universe 8 --cardinality 3");
  REQUIRE(one.exit_code == 0);
  auto ols = lines_of(one.out);
  REQUIRE(ols.size() == 2);
  CHECK(ols[1] == "3,56,1.748188");

  auto bad = run_cli(dir, "leakage --universe 3 --cardinality 7");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("cli: psi query end to end over tcp") {
  TempDir dir;
  std::string g1 = dir.write("g1.txt", kG1), g2 = dir.write("g2.txt", kG2);
  OnceServer server(dir, g2);
  auto r = run_cli(dir, "query --graph " + g1 + " --connect " +
                            server.endpoint() + " --x x --y y");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "cn=4 local1=1 local2=2 cr1=1 cr2=1 overlap=1\n");
}

TEST_CASE("cli: he query end to end, json output") {
  TempDir dir;
  std::string g1 = dir.write("g1.txt", kG1), g2 = dir.write("g2.txt", kG2);
  OnceServer server(dir, g2);
  auto r = run_cli(dir, "query --graph " + g1 + " --connect " +
                            server.endpoint() + " --x x --y y --mode he --json");
  REQUIRE(r.exit_code == 0);
  json parsed = json::parse(r.out);
  CHECK(parsed["cn"] == 4);
  CHECK(parsed["outcome"] == "completed");
  CHECK(parsed.count("local1") == 0);  // he mode reveals the total only
}

TEST_CASE("cli: direct neighbours halt maps to exit code 2") {
  TempDir dir;
  std::string g1 = dir.write("g1.txt", kG1);
  std::string g2 = dir.write("g2.txt", std::string(kG2) + "x y\n");
  OnceServer server(dir, g2);
  auto r = run_cli(dir, "query --graph " + g1 + " --connect " +
                            server.endpoint() + " --x x --y y");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("direct neighbours") != std::string::npos);
}

TEST_CASE("cli: responder mode restriction aborts the query") {
  TempDir dir;
  std::string g1 = dir.write("g1.txt", kG1), g2 = dir.write("g2.txt", kG2);
  OnceServer server(dir, g2, "--mode he");
  auto r = run_cli(dir, "query --graph " + g1 + " --connect " +
                            server.endpoint() + " --x x --y y --mode psi");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("aborted") != std::string::npos);
}

TEST_CASE("cli: query argument validation") {
  TempDir dir;
  std::string g1 = dir.write("g1.txt", kG1);
  // same node twice fails before any connection attempt
  auto same = run_cli(dir, "query --graph " + g1 +
                               " --connect 127.0.0.1:1 --x x --y x");
  CHECK(same.exit_code == 1);
  CHECK(same.err.find("must differ") != std::string::npos);

  auto missing = run_cli(dir, "query --graph " + dir.file("absent.txt") +
                                  " --connect 127.0.0.1:1 --x x --y y");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  auto badmode = run_cli(dir, "query --graph " + g1 +
                                  " --connect 127.0.0.1:1 --x x --y y --mode zz");
  CHECK(badmode.exit_code == 1);
}

TEST_CASE("cli: bench emits the expected csv") {
  TempDir dir;
  auto r = run_cli(dir, "bench --sizes 4 --sizes 2,3,4,5 --reps 2");
  REQUIRE(r.exit_code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 1 + 2 * 5);
  CHECK(ls[0] == "nx1,ny1,nx2,ny2,phase,mean_ms,stddev_ms");
  CHECK(ls[1].substr(0, 8) == "4,4,4,4,");
  CHECK(ls[6].substr(0, 8) == "2,3,4,5,");
  const char* phases[] = {"offline", "psi1", "psi2", "psi3", "total"};
  for (int i = 0; i < 5; ++i) {
    CHECK(ls[1 + i].find(phases[i]) != std::string::npos);
    CHECK(ls[6 + i].find(phases[i]) != std::string::npos);
  }
  auto bad = run_cli(dir, "bench --sizes 1,2,3");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("cli: experiment-utility csv shows the pooling gain") {
  TempDir dir;
  auto r = run_cli(dir, "experiment-utility --nodes 120 --k 4 --seeds 2 "
                        "--seed-base 10");
  REQUIRE(r.exit_code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "seed,avg_graph1,avg_graph2,avg_union");
  for (int row = 1; row <= 2; ++row) {
    std::stringstream ss(ls[row]);
    std::string seed, a1, a2, au;
    std::getline(ss, seed, ',');
    std::getline(ss, a1, ',');
    std::getline(ss, a2, ',');
    std::getline(ss, au, ',');
    CHECK(std::stod(au) > std::stod(a1));
    CHECK(std::stod(au) > std::stod(a2));
  }
  CHECK(ls[1].substr(0, 3) == "10,");
  CHECK(ls[2].substr(0, 3) == "12,");
}

TEST_CASE("cli: ksweep csv") {
  TempDir dir;
  auto r = run_cli(dir, "ksweep --nodes 80 --k1 6 --kvalues 2,4 --seeds 2 "
                        "--seed-base 3");
  REQUIRE(r.exit_code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "k,avg_union,avg_graph2");
  CHECK(ls[1].substr(0, 2) == "2,");
  CHECK(ls[2].substr(0, 2) == "4,");
}
