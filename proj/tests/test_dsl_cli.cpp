#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <b0calc/cli.hpp>
#include <b0calc/dsl.hpp>
#include <b0calc/families.hpp>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace b0calc;
using json = nlohmann::json;

namespace {

const char* kHeisenbergText = R"(group H {
  prime 3;
  gens a b c;
  central c;
  order a 3; order b 3; order c 3;
  comm [b, a] = c;
})";

std::filesystem::path scratch_dir() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("b0calc-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    ::setenv("B0CALC_CACHE_DIR", (d / "cache").c_str(), 1);
    return d;
  }();
  return dir;
}

std::filesystem::path write_file(const std::string& name,
                                 const std::string& text) {
  auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path;
}

struct CliResult {
  int status;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  scratch_dir();
  std::vector<const char*> argv{"b0calc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli((int)argv.size(), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("heisenberg text parses to the order-27 group") {
  ParsedGroup pg = parse_dsl(kHeisenbergText);
  CHECK(pg.name == "H");
  CHECK(pg.pres.group_order() == 27);
  CHECK(pg.pres.noncentral == 2);
  CHECK(presentation_hash(pg.pres) == presentation_hash(heisenberg(3)));
}

TEST_CASE("statement order does not matter") {
  ParsedGroup pg = parse_dsl(
      "group H { comm [b, a] = c; order c 3; order b 3; order a 3;\n"
      "  central c; gens a b c; prime 3; }");
  CHECK(presentation_hash(pg.pres) == presentation_hash(heisenberg(3)));
}

TEST_CASE("syntax errors carry the offending position") {
  try {
    parse_dsl("group H { prime 3; gens a b; order a 3; order b 3;\n"
              "  comm [b, q] = 1; }");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("'q'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_dsl("group H { prime 3; gens a; }"), SyntaxError);
  CHECK_THROWS_AS(parse_dsl("group H { gens a; order a 3; }"), SyntaxError);
  CHECK_THROWS_AS(parse_dsl("group H { prime 3; gens a a; order a 3; }"),
                  SyntaxError);
  CHECK_THROWS_AS(parse_dsl("group H { prime 3; gens a; order a 3; "
                            "frobnicate a; }"),
                  SyntaxError);
}

TEST_CASE("values must live in the central block") {
  CHECK_THROWS_AS(
      parse_dsl("group H { prime 3; gens a b c; central c;\n"
                "  order a 3; order b 3; order c 3; comm [b, a] = a; }"),
      NotRefined);
}

TEST_CASE("describe and reparse round-trips the hash") {
  for (int i = 1; i <= 6; ++i) {
    PcPresentation g = series_g(i, 3, 1);
    ParsedGroup back = parse_dsl(describe_dsl(g, "G"));
    CHECK(presentation_hash(back.pres) == presentation_hash(g));
    CHECK(back.pres.group_order() == g.group_order());
  }
  PcPresentation mc = metacyclic_split(3, 2, 3, 2);
  CHECK(presentation_hash(parse_dsl(describe_dsl(mc)).pres) ==
        presentation_hash(mc));
}

TEST_CASE("hashes separate different groups") {
  CHECK(presentation_hash(series_g(3, 3, 1)) !=
        presentation_hash(series_g(6, 3, 1)));
  CHECK(presentation_hash(heisenberg(3)) != presentation_hash(heisenberg(5)));
}

TEST_CASE("family expressions resolve") {
  CHECK(resolve_group("G2(p=3,r=1)").pres.group_order() == 729);
  CHECK(resolve_group("heisenberg(p=5)").pres.group_order() == 125);
  CHECK(resolve_group("mc(p=3,r=1,b=2,a=1)").pres.group_order() == 27);
  GroupSource es = resolve_group("extraspecial(p=3,n=2,kind=p)");
  CHECK(es.pres.group_order() == 243);
  REQUIRE(es.product.has_value());
  CHECK(es.product->p2.group_order() == 27);
  CHECK(resolve_group("c2(p=3,r=1,b=2,a1=1,a2=1)").product.has_value());
  CHECK_THROWS_AS(resolve_group("G7(p=3)"), Error);
  CHECK_THROWS_AS(resolve_group("G1(p=3,q=1)"), Error);
}

TEST_CASE("presentation files resolve, also as cp factors") {
  auto path = write_file("heis.grp", kHeisenbergText);
  CHECK(resolve_group(path.string()).pres.group_order() == 27);

  std::string cp = "cp(" + path.string() + ", c, " + path.string() +
                   ", c, a:a & b:b & c:c)";
  GroupSource gs = resolve_group(cp);
  CHECK(gs.pres.group_order() == 243);
  REQUIRE(gs.product.has_value());
  CHECK(gs.product->k1 == std::vector<std::vector<long long>>{{1}});
}

TEST_CASE("grid expansion") {
  CHECK(expand_grid("G1(p=3,r=1)") ==
        std::vector<std::string>{"G1(p=3,r=1)"});
  CHECK(expand_grid("G{1,2}(p={3,5})") ==
        std::vector<std::string>{"G1(p=3)", "G1(p=5)", "G2(p=3)",
                                 "G2(p=5)"});
  CHECK(expand_grid("G{}(p=3)").empty());
}

TEST_CASE("b0 command reports trivial invariants for the series") {
  CliResult r = cli({"b0", "G2(p=3,r=1)", "--json", "--no-cache"});
  REQUIRE(r.status == 0);
  json rec = json::parse(r.out);
  CHECK(rec["b0"] == json::array());
  CHECK(rec["m"].size() == 5);
  CHECK(rec["order"] == "729");
}

TEST_CASE("b0 on abelian input is empty") {
  auto path = write_file("ab.grp",
                         "group A { prime 3; gens x y; order x 9; "
                         "order y 3; }");
  CliResult r = cli({"b0", path.string(), "--json", "--no-cache"});
  REQUIRE(r.status == 0);
  json rec = json::parse(r.out);
  CHECK(rec["b0"] == json::array());
  CHECK(rec["m"] == json::array({3}));
}

TEST_CASE("oracle-check agrees on heisenberg") {
  CliResult r = cli({"oracle-check", "heisenberg(p=3)", "--json",
                     "--no-cache"});
  REQUIRE(r.status == 0);
  json rec = json::parse(r.out);
  CHECK(rec["oracle"] == "agree");
  CHECK(rec["m"] == rec["oracle_m"]);
}

TEST_CASE("cache hits are byte-identical on the invariants") {
  CliResult fresh = cli({"b0", "G3(p=3,r=1)", "--json"});
  REQUIRE(fresh.status == 0);
  CliResult hit = cli({"b0", "G3(p=3,r=1)", "--json"});
  REQUIRE(hit.status == 0);
  json a = json::parse(fresh.out), b = json::parse(hit.out);
  CHECK(b["cached"] == true);
  CHECK(a["b0"].dump() == b["b0"].dump());
  CHECK(a["m"].dump() == b["m"].dump());
  CliResult rerun = cli({"b0", "G3(p=3,r=1)", "--json", "--no-cache"});
  json c = json::parse(rerun.out);
  CHECK(c["cached"] == false);
  CHECK(a["b0"].dump() == c["b0"].dump());
  CHECK(a["m"].dump() == c["m"].dump());
}

TEST_CASE("seq-check and main1-check on the corollary instance") {
  CliResult seq = cli({"seq-check", "c2(p=3,r=1,b=2,a1=1,a2=1)", "--json",
                       "--no-cache"});
  REQUIRE(seq.status == 0);
  json srec = json::parse(seq.out);
  CHECK(srec["pass"] == true);
  CHECK(srec["lhs"] == json::array());
  CHECK(srec["rhs"] == json::array());

  CliResult m1 = cli({"main1-check", "c2(p=3,r=1,b=2,a1=1,a2=1)", "--json",
                      "--no-cache"});
  REQUIRE(m1.status == 0);
  json mrec = json::parse(m1.out);
  CHECK(mrec["verdict"] == "confirmed");

  CliResult plain = cli({"seq-check", "heisenberg(p=3)", "--no-cache"});
  CHECK(plain.status == 1);
  CHECK(plain.err.find("central-product") != std::string::npos);
}

TEST_CASE("describe emits reparseable text") {
  CliResult r = cli({"describe", "c2(p=3,r=1,b=2,a1=1,a2=1)"});
  REQUIRE(r.status == 0);
  ParsedGroup back = parse_dsl(r.out);
  CHECK(presentation_hash(back.pres) ==
        presentation_hash(resolve_group("c2(p=3,r=1,b=2,a1=1,a2=1)").pres));
}

TEST_CASE("sweep prints one row per cell and survives bad cells") {
  CliResult r = cli({"sweep", "mc(p=3,r=1,b=2,a={1,2})", "G9(p=3)",
                     "--json", "--no-cache", "--jobs", "2"});
  CHECK(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0, errors = 0;
  while (std::getline(lines, line)) {
    ++rows;
    json rec = json::parse(line);
    if (rec.contains("error"))
      ++errors;
    else
      CHECK(rec["b0"] == json::array());
  }
  CHECK(rows == 3);
  CHECK(errors == 1);
}

TEST_CASE("empty sweep grid yields an empty table") {
  CliResult r = cli({"sweep", "G{}(p=3)", "--json", "--no-cache"});
  CHECK(r.status == 0);
  CHECK(r.out.empty());
}

TEST_CASE("command errors exit nonzero") {
  CHECK(cli({"b0", "no-such-file.grp", "--no-cache"}).status == 1);
  CHECK(cli({"b0", "mc(p=3,r=1,b=9,a=1)", "--no-cache"}).status == 1);
}
