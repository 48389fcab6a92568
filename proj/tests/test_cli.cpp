#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = streamspec::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == streamspec::cli::kUsage);
  CHECK(run({"bogus"}).code == streamspec::cli::kUsage);
  CHECK(run({"eval", "--no-such-flag"}).code == streamspec::cli::kUsage);
  Result help = run({"--help"});
  CHECK(help.code == streamspec::cli::kOk);
  CHECK(help.out.find("eval") != std::string::npos);
}

TEST_CASE("input errors") {
  Result bad = run({"eval", "--term", "nope("});
  CHECK(bad.code == streamspec::cli::kInput);
  CHECK(bad.err.find("spec error") != std::string::npos);
  CHECK(run({"eval", "--spec", "/no/such/file.spec", "--term", "zeros"}).code == streamspec::cli::kInput);
  CHECK(run({"bohm", "--term", "\\x. (x"}).code == streamspec::cli::kInput);
}

TEST_CASE("eval and compare") {
  Result e = run({"eval", "--term", "zip2(zeros, ones)", "-n", "12"});
  CHECK(e.code == 0);
  CHECK(e.out.find("010101010101") != std::string::npos);

  Result j = run({"eval", "--term", "zip2(zeros, ones)", "-n", "6", "--json"});
  REQUIRE(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["prefix"] == "010101");
  CHECK(doc["bits"].size() == 6);

  Result c = run({"compare", "zip2(zeros,ones)", "blink", "-n", "64"});
  CHECK(c.code == 0);
  CHECK(c.out.find("Equal") != std::string::npos);
  Result d = run({"compare", "zip2(ones,zeros)", "blink", "-n", "8", "--json"});
  CHECK(nlohmann::json::parse(d.out)["result"] == "Diff");
}

TEST_CASE("machines") {
  Result r = run({"tm-run", "--machine", "machines/parity.tm", "--input", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("halted with 1") != std::string::npos);
  Result x = run({"tm-run", "--crosscheck"});
  CHECK(x.code == 0);
  CHECK(x.out.find("0 failures") != std::string::npos);
  Result c = run({"tm-compile", "--machine", "machines/tiny.tm"});
  CHECK(c.code == 0);
  CHECK(c.out.find("sym q0") != std::string::npos);
}

TEST_CASE("model checks and the hidden demo") {
  Result z = run({"model-check", "--lemmas", "zip"});
  CHECK(z.code == 0);
  CHECK(z.out.find("0 failures") != std::string::npos);
  Result h = run({"hidden-demo"});
  CHECK(h.code == 0);
  CHECK(h.out.find("zip2") != std::string::npos);
}

TEST_CASE("lambda commands") {
  Result r = run({"obs-refute", "--m", "gadgets/M.lam", "--n", "gadgets/N(T3).lam", "--kind", "whnf"});
  CHECK(r.code == 0);
  CHECK(r.out.find("☐ I I I") != std::string::npos);
  Result b = run({"bohm", "--term", "\\x y. x", "--with", "\\a b. b", "--depth", "3"});
  CHECK(b.code == 0);
  CHECK(b.out.find("Diff") != std::string::npos);
}

TEST_CASE("reductions") {
  Result g = run({"reduce", "--kind", "wf", "--machine", "machines/tiny.tm", "--golden", "golden/wf_tiny.spec"});
  CHECK(g.code == 0);
  CHECK(g.out.find("matches") != std::string::npos);
  Result p = run({"probe", "--relation", "cycle", "--cycle", "1,2", "-n", "8"});
  CHECK(p.code == 0);
  CHECK(p.out.find("WitnessOfChain") != std::string::npos);
  Result e = run({"probe", "--relation", "empty", "--x", "(0)", "-n", "8"});
  CHECK(e.out.find("ConsistentWithWellFounded") != std::string::npos);
}
