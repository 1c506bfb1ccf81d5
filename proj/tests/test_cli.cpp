#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nil2/catalog.hpp"
#include "nil2/report.hpp"

using namespace nil2;

TEST_CASE("parser: pinned presentations") {
  auto np = parse_presentation("group G p=3 n=2 gens x,y rels x^9, y^9, [x,y]^3;");
  CHECK(np.name == "G");
  CHECK(np.pres.v.p == 3);
  CHECK(np.pres.v.n == 2);
  CHECK(np.pres.names == std::vector<std::string>{"x", "y"});
  CHECK(np.pres.relators.size() == 3);
  auto g = FpGroup::build(np.pres);
  CHECK(g->order_u64() == 243);  // cant(3,2)

  auto t = parse_presentation("group T p=3 n=1 gens x rels x^3;");
  CHECK(FpGroup::build(t.pres)->order_u64() == 3);

  auto h = parse_presentation(
      "group H p=3 n=1 gens x,y,z rels x^3,y^3,z^3,[x,y]^3,[x,z],[y,z];");
  CHECK(FpGroup::build(h.pres)->order_u64() == 81);
}

TEST_CASE("parser: comments, nesting, negative exponents") {
  auto np = parse_presentation(
      "# a comment\n"
      "group W p=3 n=2 gens a,b rels (a b)^3, [a,[a,b]], a^-1 b a b^-1;");
  CHECK(np.pres.relators.size() == 3);
  auto g = FpGroup::build(np.pres);
  // [a,[a,b]] evaluates to the identity in class 2
  CHECK(g->is_identity(g->eval(np.pres.relators[1])));
}

TEST_CASE("parser: precise errors") {
  CHECK_THROWS_AS(parse_presentation("group G p=3 n=1 gens x rels y;"), parse_error);
  CHECK_THROWS_AS(parse_presentation("group G p=4 n=1 gens x;"), parse_error);
  CHECK_THROWS_AS(parse_presentation("group G p=2 n=2 gens x;"), parse_error);
  CHECK_NOTHROW(parse_presentation("group G p=2 n=2 gens x;", true));
  try {
    parse_presentation("group G p=3 n=1\ngens x rels !;");
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 2);
    CHECK(e.col > 0);
  }
}

TEST_CASE("round-trip: print-then-parse is the identity on the catalog") {
  for (const auto& ref : paper_catalog_refs()) {
    NamedPresentation np = catalog_lookup(ref);
    std::string printed = print_presentation(np);
    NamedPresentation back = parse_presentation(printed, true);
    CHECK(back.pres.v == np.pres.v);
    CHECK(back.pres.names == np.pres.names);
    CHECK(back.pres.relators == np.pres.relators);
    std::string printed2 = print_presentation(back);
    CHECK(printed == printed2);
  }
  // e4 round-trips too (even exponent)
  auto e4 = catalog_lookup("e4");
  auto back = parse_presentation(print_presentation(e4), true);
  CHECK(back.pres.relators == e4.pres.relators);
}

TEST_CASE("catalog: orders of the built-ins") {
  CHECK(FpGroup::build(catalog_lookup("cant(3,2)").pres)->order_u64() == 243);
  CHECK(FpGroup::build(catalog_lookup("heisenberg(3)").pres)->order_u64() == 27);
  CHECK(FpGroup::build(catalog_lookup("free(2,3,2)").pres)->order_u64() == 729);
  CHECK(FpGroup::build(catalog_lookup("higgins(3)").pres)->order_u64() == 81);
  CHECK(FpGroup::build(catalog_lookup("e4").pres)->order_u64() == 64);
  CHECK(FpGroup::build(catalog_lookup("cyclic(3,2)").pres)->order_u64() == 9);
  CHECK(FpGroup::build(catalog_lookup("abelian(3,2,2,1)").pres)->order_u64() == 27);
  CHECK_THROWS(catalog_lookup("nosuch(1)"));
  CHECK_THROWS(catalog_lookup("cant(4,1)"));
  CHECK(is_catalog_ref("cant(3,2)"));
  CHECK(is_catalog_ref("e4"));
  CHECK_FALSE(is_catalog_ref("group G p=3 n=1 gens x;"));
}

TEST_CASE("words parse against a presentation") {
  auto np = catalog_lookup("free(2,3,2)");
  auto ws = parse_words("a^3, b^3, [a,b]", np.pres);
  CHECK(ws.size() == 3);
  auto g = FpGroup::build(np.pres);
  CHECK(g->eval(ws[0]) == g->pow(g->gen(0), 3));
  CHECK_THROWS_AS(parse_words("c^3", np.pres), parse_error);
}

TEST_CASE("reports: deterministic modulo timings, schema-shaped") {
  auto build_report = [] {
    auto np = catalog_lookup("cant(3,2)");
    auto g = FpGroup::build(np.pres);
    ReportBuilder rb("classify", 1000000, 0);
    rb.add_input(np, *g);
    auto rep = is_absolutely_closed(g, VarietyKind::Bpn, false, 1u << 20);
    rb.add_verdict("absolutely_closed", rep.closed);
    rb.add_certificate(closure_report_json(*g, rep, false));
    return rb.finish(123.0);
  };
  Json a = build_report(), b = build_report();
  a["timings"] = nullptr;
  b["timings"] = nullptr;
  CHECK(a.dump() == b.dump());

  // required schema fields
  Json r = build_report();
  for (const char* field :
       {"command", "version", "seed", "cap", "inputs", "verdicts",
        "certificates", "timings"})
    CHECK(r.contains(field));
  CHECK(r["inputs"].is_array());
  CHECK(r["verdicts"].is_array());
  CHECK(r["verdicts"][0].contains("name"));
  CHECK(r["verdicts"][0].contains("value"));
  CHECK(r["cap"].contains("limit"));
  CHECK(r["cap"].contains("exceeded"));
  CHECK(r["timings"].contains("total_ms"));
}
