#include <regex>
#include <set>

#include "doctest.h"
#include "moncol/cli.hpp"
#include "moncol/spec.hpp"

using namespace moncol;

namespace {

std::string spec_path(const std::string& name) { return std::string(MONCOL_SPEC_DIR) + "/" + name + ".spec"; }

CommandResult run(const std::string& command, const std::string& spec, std::vector<std::size_t> sizes = {0, 1, 2},
                  std::size_t budget = 8) {
  RunConfig c;
  c.command = command;
  if (!spec.empty()) c.specs = {spec_path(spec)};
  c.sizes = std::move(sizes);
  c.budget = budget;
  return run_command(c);
}

ErrorKind parse_kind(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

std::multiset<std::string> numbers_in(const std::string& text) {
  std::multiset<std::string> out;
  const std::regex digits("[0-9]+");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), digits); it != std::sregex_iterator(); ++it) {
    out.insert(it->str());
  }
  return out;
}

}  // namespace

TEST_CASE("spec parsing") {
  const SpecFile s = parse_spec(
      "moncol 1\n"
      "base set\n"
      "# comment\n"
      "monad E = exception e1 e2\n"
      "monad F = free depth 2\n"
      "  op s 1\n"
      "  op m 2\n"
      "  rule m(x1,x1) -> x1\n"
      "end\n"
      "morphism p : E -> E = identity\n"
      "terminal E\n");
  CHECK(s.version == 1);
  REQUIRE(s.monads.size() == 2);
  CHECK(s.monads[0].args == std::vector<std::string>{"e1", "e2"});
  REQUIRE(s.monads[1].presentation);
  CHECK(s.monads[1].depth == std::optional<std::size_t>(2));
  CHECK(s.monad_index("F") == 1);
  CHECK(s.terminal == std::optional<std::string>("E"));
  const auto monads = build_monads(s, 2);
  CHECK(monads[0].apply(sample_set(1)).size() == 3);
  CHECK(build_arrows(s, monads).size() == 1);
}

TEST_CASE("spec parse errors") {
  CHECK(parse_kind("base set\n") == ErrorKind::ParseError);
  CHECK(parse_kind("moncol 2\nbase set\n") == ErrorKind::ParseError);
  CHECK(parse_kind("moncol 1\nbase set\nmonad E = nonsense\n") == ErrorKind::ParseError);
  CHECK(parse_kind("moncol 1\nbase set\nmonad F = free\n  op s 1\n") == ErrorKind::ParseError);
  CHECK(parse_kind("moncol 1\nbase set\nmonad E = exception e\nmorphism p : E -> G = identity\n") ==
        ErrorKind::ParseError);
  CHECK(parse_kind("moncol 1\nbase set\nfunctors sigma tau\n") == ErrorKind::ParseError);
  try {
    parse_spec("moncol 1\nbase set\nmonad E = nonsense\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("check-laws exit codes") {
  CHECK(run("check-laws", "exception").exit_code == kExitOk);
  const auto broken = run("check-laws", "writer_broken");
  CHECK(broken.exit_code == kExitLawViolation);
  CHECK(broken.payload["result"]["monads"][0].contains("counterexamples"));
  CHECK(run("check-laws", "malformed").exit_code == kExitParseError);
  CHECK(run("check-laws", "missing_file").exit_code == kExitParseError);
}

TEST_CASE("invalid configuration") {
  RunConfig c;
  c.command = "coproduct";
  CHECK(run_command(c).exit_code == kExitParseError);
  c.command = "nonsense";
  CHECK(run_command(c).exit_code == kExitParseError);
  c.command = "counterexample";
  c.budget = 0;
  CHECK(run_command(c).exit_code == kExitParseError);
}

TEST_CASE("coproduct command") {
  const auto sum = run("coproduct", "exception_sum", {0, 1, 2, 3});
  CHECK(sum.exit_code == kExitOk);
  const auto& tables = sum.payload["result"]["tables"];
  REQUIRE(tables.size() == 4);
  for (std::size_t n = 0; n < 4; ++n) {
    CHECK(tables[n]["size"] == n + 3);
    CHECK(tables[n]["level"] <= 2);
  }
  CHECK(run("coproduct", "with_terminal").exit_code == kExitNotSeparated);

  const auto free = run("coproduct", "free_sum", {1});
  CHECK(free.exit_code == kExitBudget);
  CHECK(free.payload["status"] == "truncated");
  const auto& per = free.payload["result"]["per_depth"];
  REQUIRE(per.size() == 4);
  // unary towers over two symbols: 2^(d+1) - 1
  for (std::size_t d = 0; d < 4; ++d) CHECK(per[d]["sizes"][0] == (std::size_t{2} << d) - 1);
  CHECK(free.payload["result"]["per_depth_agreement"]["clean"] == true);

  const auto starved = run("coproduct", "free_sum", {1}, 2);
  CHECK(starved.exit_code == kExitBudget);
  CHECK(starved.payload["result"]["tables"][0]["status"] == "budget-exhausted");
}

TEST_CASE("coequalizer and cointersection commands") {
  const auto merge = run("coequalizer", "exception_merge", {0, 1, 2});
  CHECK(merge.exit_code == kExitOk);
  for (std::size_t n = 0; n < 3; ++n) CHECK(merge.payload["result"]["tables"][n]["size"] == n + 1);
  CHECK(run("coequalizer", "exception_span").exit_code == kExitParseError);
  const auto coint = run("cointersection", "exception_cointersection", {0, 1});
  CHECK(coint.exit_code == kExitOk);
  CHECK(coint.payload["result"]["tables"][1]["size"] == 2);
  CHECK(run("cointersection", "exception_merge").exit_code == kExitParseError);
}

TEST_CASE("colimit paths") {
  const auto coeq = run("coequalizer", "exception_merge");
  for (const auto* spec : {"exception_merge", "exception_merge_terminal"}) {
    const auto colim = run("colimit", spec);
    CHECK(colim.exit_code == kExitOk);
    CHECK(colim.payload["result"]["tables"] == coeq.payload["result"]["tables"]);
  }
  const auto span = run("colimit", "exception_span", {0, 1});
  CHECK(span.exit_code == kExitOk);
  CHECK(span.payload["result"]["path"] == "coproduct then coequalizer");
  // pushout of {e1,e2} and {f1} along d -> e1, d -> f1
  CHECK(span.payload["result"]["tables"][0]["size"] == 2);
  CHECK(span.payload["result"]["tables"][1]["size"] == 3);
}

TEST_CASE("graph request diverges") {
  const auto r = run("coequalizer", "graph_loops", {0, 1}, 3);
  CHECK(r.exit_code == kExitBudget);
  CHECK(r.payload["result"]["growth"] == std::vector<std::size_t>{1, 3, 9, 513});
  CHECK(run("colimit", "graph_loops", {0, 1}, 3).exit_code == kExitBudget);
}

TEST_CASE("counterexample command") {
  const auto r = run("counterexample", "", {0}, 3);
  CHECK(r.exit_code == kExitOk);
  const auto& chains = r.payload["result"]["no_coequalizer"]["chains"];
  CHECK(chains[0]["level"] == 1);
  CHECK(chains[1]["level"] == 1);
  CHECK(chains[2]["vertices"] == std::vector<std::size_t>{1, 3, 9, 513});
  const auto short_run = run("counterexample", "", {0}, 1);
  CHECK(short_run.payload["result"]["no_coequalizer"]["chains"][2]["vertices"] == std::vector<std::size_t>{1, 3});
}

TEST_CASE("text and structured outputs agree") {
  for (const auto& [command, spec] : std::vector<std::pair<std::string, std::string>>{
           {"counterexample", ""}, {"coproduct", "exception_sum"}, {"coequalizer", "exception_merge"}}) {
    const auto r = run(command, spec, {0, 1}, 3);
    CHECK(numbers_in(render(r, OutputFormat::Text)) == numbers_in(render(r, OutputFormat::Structured)));
    const auto again = run(command, spec, {0, 1}, 3);
    CHECK(again.payload == r.payload);
    CHECK(exit_code_of(r.payload) == r.exit_code);
  }
}
