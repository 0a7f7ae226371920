#include <doctest.h>

#include <sstream>
#include <vector>

#include "wittlab/cli.hpp"
#include "wittlab/json_io.hpp"

using namespace wittlab;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "witt-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kIdentity4 = "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]";

// The explicit eight-basis chain over F4 from e to e-hat, a = alpha, b = alpha + 1.
Json f4_certificate() {
  const char* rows[8][4][4] = {
      {{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}},
      {{"a", "1+a", "0", "0"}, {"1+a", "a", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}},
      {{"1", "a", "a", "0"}, {"1+a", "a", "0", "0"}, {"1+a", "1", "1+a", "0"}, {"0", "0", "0", "1"}},
      {{"1+a", "1", "1", "a"}, {"1+a", "a", "0", "0"}, {"1+a", "1", "1+a", "0"}, {"a", "1+a", "1+a", "1+a"}},
      {{"1+a", "1", "1", "a"}, {"1+a", "a", "0", "0"}, {"1", "a", "1+a", "1"}, {"0", "0", "1+a", "a"}},
      {{"1+a", "1", "1", "a"}, {"1", "1+a", "a", "1"}, {"1", "a", "1+a", "1"}, {"a", "1", "1", "1+a"}},
      {{"1+a", "1", "1", "a"}, {"1", "0", "1", "1"}, {"1", "1", "0", "1"}, {"a", "1", "1", "1+a"}},
      {{"0", "1", "1", "1"}, {"1", "0", "1", "1"}, {"1", "1", "0", "1"}, {"1", "1", "1", "0"}},
  };
  Json bases = Json::array();
  for (const auto& basis : rows) {
    Json b = Json::array();
    for (const auto& v : basis) b.push_back(Json::array({v[0], v[1], v[2], v[3]}));
    bases.push_back(b);
  }
  return {{"ring", "GF(4)"}, {"gram", Json::parse(kIdentity4)}, {"bases", bases}};
}

}  // namespace

TEST_CASE("compare reports the Z/2 kernel") {
  Run r = run({"compare", "--ring", "GF(2)[x]/(x^4)"});
  REQUIRE(r.code == cli::kExitOk);
  Json j = r.json();
  CHECK(j["schema"] == "witt-lab/1");
  CHECK(j["command"] == "compare");
  CHECK(j["kernel"]["free_rank"] == 0);
  CHECK(j["kernel"]["invariant_factors"] == Json::array({2}));
  CHECK(j["gw"]["invariant_factors"] == Json::array({2, 2}));
  CHECK(j["kmw"]["invariant_factors"] == Json::array({2, 2, 2}));
  CHECK(j["is_isomorphism"] == false);
}

TEST_CASE("gw, kmw and witt structures") {
  Run gw = run({"gw", "--ring", "GF(2)"});
  REQUIRE(gw.code == cli::kExitOk);
  CHECK(gw.json()["free_rank"] == 1);
  CHECK(gw.json()["invariant_factors"].empty());
  Run w = run({"witt", "--ring", "GF(3)"});
  REQUIRE(w.code == cli::kExitOk);
  CHECK(w.json()["free_rank"] == 0);
  CHECK(w.json()["invariant_factors"] == Json::array({4}));
  Run k = run({"kmw", "--ring", "GF(5)"});
  REQUIRE(k.code == cli::kExitOk);
  CHECK(k.json()["free_rank"] == 1);
  CHECK(k.json()["invariant_factors"] == Json::array({2}));
}

TEST_CASE("the F4 chain certificate verifies") {
  Json cert = f4_certificate();
  Run r = run({"verify", "--cert", cert.dump()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.json()["verified"] == true);
  CHECK(r.json()["kind"] == "chain");
  // Changing one entry breaks the chain.
  cert["bases"][3][0][0] = "1";
  Run bad = run({"verify", "--cert", cert.dump()});
  CHECK(bad.code == cli::kExitFailure);
  CHECK(bad.json()["verified"] == false);
}

TEST_CASE("chain output round-trips through verify") {
  for (const char* ring : {"GF(4)", "GF(8)"}) {
    CAPTURE(ring);
    Run r = run({"chain", "--ring", ring, "--gram", kIdentity4});
    REQUIRE(r.code == cli::kExitOk);
    Json j = r.json();
    CHECK(j["status"] == "found");
    CHECK(j["verified"] == true);
    Run v = run({"verify", "--cert", j["certificate"].dump()});
    CHECK(v.code == cli::kExitOk);
    CHECK(v.json()["verified"] == true);
    // The whole chain output is accepted too.
    Run whole = run({"verify", "--cert", r.out});
    CHECK(whole.code == cli::kExitOk);
    CHECK(whole.json()["verified"] == true);
  }
}

TEST_CASE("F2 counterexample through the CLI") {
  Run r = run({"chain", "--ring", "GF(2)", "--gram", kIdentity4});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.json()["status"] == "unreachable");
  Run ok = run({"chain", "--ring", "GF(2)", "--gram", kIdentity4, "--allow-unreachable"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.json()["status"] == "unreachable");
}

TEST_CASE("witness verification") {
  // diag(1,1) -> diag(2,2) over F3 via [[1,1],[1,2]].
  Json w = {{"ring", "GF(3)"},
            {"source", Json::parse("[[1,0],[0,1]]")},
            {"target", Json::parse("[[2,0],[0,2]]")},
            {"matrix", Json::parse("[[1,1],[1,2]]")}};
  Run r = run({"verify", "--cert", w.dump()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.json()["verified"] == true);
  w["matrix"] = Json::parse("[[1,0],[0,1]]");
  CHECK(run({"verify", "--cert", w.dump()}).code == cli::kExitFailure);
}

TEST_CASE("steinberg-check and oracle commands") {
  Run s = run({"steinberg-check", "--ring", "GF(5)"});
  REQUIRE(s.code == cli::kExitOk);
  CHECK(s.json()["ok"] == true);
  Run o = run({"oracle", "--ring", "GF(2)"});
  REQUIRE(o.code == cli::kExitOk);
  CHECK(o.json()["classes"].size() == 3);
}

TEST_CASE("output is deterministic") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"gw", "--ring", "GF(2)[x]/(x^2)"},
        std::vector<std::string>{"chain", "--ring", "GF(4)", "--gram", kIdentity4},
        std::vector<std::string>{"steinberg-check", "--ring", "Z/9"}}) {
    Run a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("errors and exit codes") {
  Run bogus = run({"gw", "--bogus-flag"});
  CHECK(bogus.code == cli::kExitUsage);
  Run missing = run({"gw"});
  CHECK(missing.code == cli::kExitUsage);
  Run bad_ring = run({"gw", "--ring", "Z/6"});
  CHECK(bad_ring.code == cli::kExitUsage);
  CHECK(bad_ring.json()["error"]["kind"] == "NotLocal");
  CHECK(bad_ring.err.find("witt-lab:") != std::string::npos);
  Run degenerate = run({"chain", "--ring", "GF(3)", "--gram", "[[1,0],[0,0]]"});
  CHECK(degenerate.code == cli::kExitUsage);
  CHECK(degenerate.json().contains("error"));
  Run budget = run({"oracle", "--ring", "GF(3)", "--iso-budget", "1"});
  CHECK(budget.code == cli::kExitFailure);
  CHECK(budget.json()["error"]["kind"] == "BudgetExceeded");
}
