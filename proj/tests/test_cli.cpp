#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cob3/cli.hpp"
#include "cob3/fixtures.hpp"
#include "cob3/frobenius.hpp"

using namespace cob3;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cob3");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("cob3_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string hadamard_json() {
  return algebra_to_json(fixtures::hadamard(), {{PrimeLabel("P"), {2, 3}}}).dump();
}

}  // namespace

TEST_CASE("eq") {
  TempDir dir;
  std::string a = dir.write("a.term", "m . (unit * id)\n");
  std::string b = dir.write("b.term", "id");
  std::string h = dir.write("h.term", "m . comul");
  std::string bad = dir.write("bad.term", "m . m");
  std::string junk = dir.write("junk.term", "m . (");

  Run r = cli({"eq", a, b});
  CHECK(r.code == 0);
  CHECK(r.out.find("EQUAL") != std::string::npos);

  r = cli({"eq", h, b});
  CHECK(r.code == 1);
  CHECK(r.out ==
        "A: (S2xS1)^1 \\ 2 balls (1 in, 1 out)\n"
        "B: S3 \\ 2 balls (1 in, 1 out)\n"
        "NOT-EQUAL\n");

  r = cli({"eq", bad, b});
  CHECK(r.code == 2);
  CHECK(r.err.find("2->1") != std::string::npos);
  r = cli({"eq", junk, b});
  CHECK(r.code == 2);
  CHECK(r.err.find("syntax error at 1:") != std::string::npos);
  CHECK(cli({"eq", a, "/nonexistent/file"}).code == 2);

  r = cli({"--format", "json", "eq", a, b});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["equal"] == true);
  CHECK(j["a"]["cospan"]["dom"] == 1);
}

TEST_CASE("normalize") {
  Run r = cli({"-e", "normalize", "pe(P) . unit"});
  CHECK(r.code == 0);
  CHECK(r.out == "pu(P)\n");
  CHECK(cli({"-e", "normalize", "id"}).out == "id\n");
  r = cli({"-e", "normalize", "--presentation", "G2", "pu(P)"});
  CHECK(r.out == "(pe(P) . unit)\n");
  CHECK(cli({"-e", "normalize", "--presentation", "G3", "id"}).code == 2);

  const std::string t = "(pe(Q) * id) . comul . m . (pe(P) * m) . (id * (swap . (unit * id)))";
  std::string once = cli({"-e", "normalize", t}).out;
  REQUIRE(once.size() > 1);
  once.pop_back();
  CHECK(cli({"-e", "normalize", once}).out == once + "\n");
}

TEST_CASE("eval") {
  TempDir dir;
  std::string alg = dir.write("h.json", hadamard_json());
  Run r = cli({"-e", "eval", "tr . unit", "--algebra", alg});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  r = cli({"-e", "eval", "m . (unit * id)", "--algebra", alg});
  CHECK(r.out == "1 0\n0 1\n");
  r = cli({"-e", "--format", "json", "eval", "pe(P)", "--algebra", alg});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["entries"][1][1] == "3");

  r = cli({"-e", "eval", "pe(Q)", "--algebra", alg});
  CHECK(r.code == 3);
  CHECK(r.err.find("unknown prime label 'Q'") != std::string::npos);

  FrobeniusAlgebraSpec broken = fixtures::diagonal({1, 0});
  Tensor3 w(2);
  w(0, 0, 0) = 1;
  w(1, 1, 1) = 1;
  broken.comul = w;
  std::string bad = dir.write("bad.json", algebra_to_json(broken, {}).dump());
  r = cli({"-e", "eval", "id", "--algebra", bad});
  CHECK(r.code == 3);
  CHECK(r.err.find("FAIL counit") != std::string::npos);

  std::string malformed = dir.write("m.json", R"({"dim": 2, "mul": []})");
  CHECK(cli({"-e", "eval", "id", "--algebra", malformed}).code == 2);
  std::string notjson = dir.write("n.json", "{");
  CHECK(cli({"-e", "eval", "id", "--algebra", notjson}).code == 2);
}

TEST_CASE("invariant") {
  TempDir dir;
  std::string alg = dir.write("h.json", hadamard_json());
  std::string idem = dir.write("i.json", "[[1,0],[0,1]]");
  CHECK(cli({"invariant", "--algebra", alg, "--manifold", "S3"}).out == "Z(S3) = 2\n");
  CHECK(cli({"invariant", "--algebra", alg, "--manifold", "P#P"}).out == "Z(P#P) = 13\n");
  CHECK(cli({"invariant", "--algebra", alg, "--manifold", "(S2xS1)^1"}).out ==
        "Z((S2xS1)^1) = 2\n");
  Run r = cli({"invariant", "--algebra", alg, "--manifold", "P#P#g0", "--idempotents", idem});
  CHECK(r.code == 0);
  CHECK(r.out == "Z(P#P#g0) = 13\ncharacter formula = 13\nagree\n");
  CHECK(cli({"invariant", "--algebra", alg, "--manifold", "P##"}).code == 2);
  CHECK(cli({"invariant", "--algebra", alg, "--manifold", "Q"}).code == 3);
  std::string not_idem = dir.write("x.json", "[[1,1],[0,1]]");
  CHECK(cli({"invariant", "--algebra", alg, "--manifold", "P", "--idempotents", not_idem}).code == 2);
}

TEST_CASE("verify-algebra") {
  TempDir dir;
  Run r = cli({"verify-algebra", dir.write("h.json", hadamard_json())});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS frobenius") != std::string::npos);
  r = cli({"verify-algebra", dir.write("d.json", algebra_to_json(fixtures::dual_numbers(), {}).dump())});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("comul derived", 0) == 0);
  FrobeniusAlgebraSpec nc = fixtures::hadamard();
  nc.mul(0, 0, 1) = 1;
  r = cli({"verify-algebra", dir.write("nc.json", algebra_to_json(nc, {}).dump())});
  CHECK(r.code == 3);
  CHECK(r.out.find("FAIL commutativity") != std::string::npos);
  r = cli({"verify-algebra", dir.write("deg.json", algebra_to_json(fixtures::diagonal({1, 0}), {}).dump())});
  CHECK(r.code == 3);
}

TEST_CASE("rewrite-path") {
  Run r = cli({"-e", "rewrite-path", "pe(P) . m", "m . (pe(P) * id)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("found path of") != std::string::npos);
  r = cli({"-e", "rewrite-path", "--rules", "CF", "--max-steps", "6", "m . (pe(P) * id)",
           "m . (id * pe(P))"});
  CHECK(r.code == 1);
  CHECK(r.out.find("no path within 6 steps under CF") != std::string::npos);
  r = cli({"-e", "--format", "json", "rewrite-path", "m . swap", "m"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["trace"]["steps"][0]["rule"] == "commutativity");
  CHECK(cli({"-e", "rewrite-path", "--rules", "XX", "m", "m"}).code == 2);
}

TEST_CASE("demos") {
  Run r = cli({"demo", "legs-counterexample"});
  CHECK(r.code == 0);
  CHECK(r.out.find("= -e2\n") != std::string::npos);
  CHECK(r.out.find("= e1\n") != std::string::npos);
  r = cli({"demo", "ruleset-soundness"});
  CHECK(r.code == 0);
  CHECK(r.out.find("G2_FULL: all rules sound") != std::string::npos);
  r = cli({"demo", "redundancy-paths"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all redundancy witnesses found") != std::string::npos);
  CHECK(cli({"demo", "nothing"}).code == 2);
}

TEST_CASE("output is deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"demo", "redundancy-paths"},
           {"--format", "json", "demo", "legs-counterexample"},
           {"-e", "--format", "json", "rewrite-path", "pe(P) . pe(Q)", "pe(Q) . pe(P)"}}) {
    Run a = cli(args), b = cli(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"--format", "xml", "demo", "ruleset-soundness"}).code == 2);
  CHECK(cli({"eq", "only-one"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}
