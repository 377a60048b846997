#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hofib/commands.hpp"
#include "hofib/dsl.hpp"
#include "hofib/errors.hpp"
#include "hofib/report.hpp"

using namespace hofib;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ParseError parse_error(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("document parsed");
  return ParseError({}, "");
}

// The first line of a fixture reads "# hofib COMMAND TARGET [--max-dim N]".
struct Invocation {
  std::string command;
  std::string target;
  RunOptions options;
};

Invocation invocation(const std::string& text) {
  std::istringstream line(text.substr(0, text.find('\n')));
  std::string hash, tool;
  Invocation inv;
  line >> hash >> tool >> inv.command >> inv.target;
  REQUIRE(tool == "hofib");
  for (std::string flag; line >> flag;) {
    REQUIRE(flag == "--max-dim");
    line >> inv.options.max_dim;
  }
  inv.options.timing = false;
  return inv;
}

constexpr const char* kCircle = "sset circle { v : dim 0; e : dim 1 faces [v, v]; }";

}  // namespace

TEST_CASE("the circle file has two generators") {
  const Document d = parse(kCircle);
  REQUIRE(d.ssets.size() == 1);
  CHECK(d.ssets[0].space->size() == 2);
  CHECK(validate(*d.ssets[0].space).empty());
}

TEST_CASE("degenerate face expressions") {
  const Document d = parse(R"(
    sset x {
      v : dim 0;
      e : dim 1 faces [v, v];   # a loop
      t : dim 2 faces [e, s0 v, e];
    })");
  const SimplicialSet& x = *d.ssets[0].space;
  const GenId t = *x.find("t");
  const SimplexRef f = x.face(nondegenerate(t), 1);
  CHECK(f.degenerate());
  CHECK(f == x.degeneracy(nondegenerate(*x.find("v")), 0));
}

TEST_CASE("duplicate names are reported at the second declaration") {
  const ParseError e = parse_error("sset a { v : dim 0; }\n\nsset a { w : dim 0; }");
  CHECK(e.pos().line == 3);
  CHECK(e.pos().column == 6);
  CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
}

TEST_CASE("unresolved names carry suggestions") {
  const ParseError e = parse_error("sset x { vertex : dim 0; e : dim 1 faces [vertex, vertx]; }");
  CHECK(e.suggestions() == std::vector<std::string>{"vertex"});
  CHECK(std::string(e.what()).find("did you mean 'vertex'") != std::string::npos);
  const ParseError m = parse_error(std::string(kCircle) + " map f : circle -> circel { }");
  CHECK(m.suggestions() == std::vector<std::string>{"circle"});
  CHECK(suggest("Z2", {"Z3", "idem", "trivial"}) == std::vector<std::string>{"Z3"});
  CHECK(suggest("zzzzzz", {"circle"}).empty());
}

TEST_CASE("syntax errors are positioned") {
  const ParseError a = parse_error("sset x {\n  v : dim 0\n}");
  CHECK(a.pos().line == 3);
  const ParseError b = parse_error("sset x { v : dim 1 faces [v]; }");
  CHECK(b.pos().line == 1);
  const ParseError c = parse_error("sset x { v : dim 0; e : dim 1 faces [v]; }");
  CHECK(std::string(c.what()).find("1:") == 0);
  const ParseError d = parse_error("widget x { }");
  CHECK(d.pos().column == 1);
  const ParseError broken = parse_error(
      "sset x { a : dim 0; b : dim 0; e : dim 1 faces [b, a]; f : dim 1 faces [a, b];"
      " t : dim 2 faces [e, e, f]; }");
  CHECK(broken.pos().line == 1);
}

TEST_CASE("monoids and diagrams") {
  const Document d = parse(R"(
    monoid M { elements 1, e; unit 1; mul { e.e = e; } }
    sset pt { p : dim 0; }
    map id : pt -> pt { p -> p; }
    diagram F over M { F(*) = pt; act(*, *): e -> id; }
  )");
  REQUIRE(d.monoids.size() == 1);
  CHECK(d.monoids[0].monoid.table[1][1] == 1);
  CHECK(validate(d.diagram(d.diagrams[0])).empty());
  const ParseError bad = parse_error("monoid M { elements 0, 1; unit 0; mul { 1.1 = 1; 1.0 = 0; } }");
  CHECK(bad.pos().line == 1);
}

TEST_CASE("reports round-trip through JSON") {
  Report r;
  r.command = "homology dDelta3";
  r.params = {{"target", "dDelta3"}, {"max_dim", "4"}};
  r.valid_up_to = 3;
  r.add_check("well-formed", true);
  r.add_check("weak-fibration", false, {"(e, d1): dp(a) -> dp(e) fails at H_1"});
  r.homology.push_back(HomologyRow{"X", 0, 1, {}});
  r.homology.push_back(HomologyRow{"X", 1, 0, {2, Integer("123456789012345678901234567890")}});
  r.timing_ms = 1.5;
  CHECK(parse_report(emit(r, Format::Json)) == r);
  CHECK_FALSE(r.passed());
  CHECK_THROWS_AS(parse_report("{\"command\": 3}"), PreconditionError);
}

TEST_CASE("empty report") {
  Report r;
  r.command = "validate";
  const std::string json = emit(r, Format::Json);
  CHECK(json.find("\"checks\": []") != std::string::npos);
  CHECK(parse_report(json) == r);
  CHECK(r.passed());
}

TEST_CASE("run is deterministic without timing") {
  const Document doc = parse(kCircle);
  RunOptions options;
  options.timing = false;
  for (const auto& [command, target] : std::vector<std::pair<std::string, std::string>>{
           {"homology", "circle"}, {"homology", "dDelta3"}, {"check-weakfib", "collapse_circle_to_interval"},
           {"subdivide", "RP2"}, {"group-completion", "Z2"}}) {
    CAPTURE(command);
    const std::string a = emit(run(command, target, doc, options), Format::Json);
    const std::string b = emit(run(command, target, doc, options), Format::Json);
    CHECK(a == b);
  }
  const Report d3 = run("homology", "dDelta3", doc, options);
  REQUIRE(d3.homology.size() == 2);
  CHECK(d3.homology[0].degree == 0);
  CHECK(d3.homology[1].degree == 2);
}

TEST_CASE("verdicts and errors") {
  const Document empty{4, {}, {}, {}, {}};
  RunOptions options;
  CHECK(run("check-weakfib", "cover6to3", empty, options).passed());
  const Report collapse = run("check-weakfib", "collapse_circle_to_interval", empty, options);
  CHECK_FALSE(collapse.passed());
  CHECK(collapse.checks[0].witnesses.size() >= 1);
  CHECK_THROWS_AS(run("homology", "circel", empty, options), PreconditionError);
  CHECK_THROWS_AS(run("homologies", "circle", empty, options), PreconditionError);
  for (const std::string& c : command_names()) CHECK_FALSE(c.empty());
  options.ring = Coefficients{2};
  const Report rp2 = run("homology", "RP2", empty, options);
  CHECK(rp2.params.at("coefficients") == "Z2");
}

TEST_CASE("fixtures parse, validate and match their golden reports") {
  int seen = 0;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(HOFIB_FIXTURE_DIR)) {
    if (entry.path().extension() == ".hof") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    CAPTURE(path.filename().string());
    const std::string text = slurp(path);
    const Invocation inv = invocation(text);
    const Document doc = parse(text, inv.options.max_dim);
    for (const auto& s : doc.ssets) CHECK(validate(*s.space).empty());
    for (const auto& m : doc.maps) CHECK(validate(m.map).empty());
    for (const auto& d : doc.diagrams) CHECK(validate(doc.diagram(d)).empty());
    auto golden = path;
    golden.replace_extension(".json");
    REQUIRE(std::filesystem::exists(golden));
    const std::string actual = emit(run(inv.command, inv.target, doc, inv.options), Format::Json);
    CHECK(actual == slurp(golden));
    ++seen;
  }
  CHECK(seen >= 5);
}
