#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "tsq/catalog.hpp"

using namespace tsq;

namespace {

// Group order written in the case id, e.g. "D.i/140-cyclic" -> 140.
std::uint64_t order_from_id(std::string const& id) { return std::stoull(id.substr(id.find('/') + 1)); }

TensorConfig quick() {
  TensorConfig c;
  c.nu_check_limit = 200'000;
  return c;
}

}  // namespace

TEST_CASE("catalog expectations are internally consistent") {
  auto const cases = build_catalog();
  CHECK(inconsistent_cases(cases).empty());
  std::set<std::string> ids;
  for (auto const& c : cases) {
    CAPTURE(c.id);
    CHECK(ids.insert(c.id).second);
    CHECK(c.group_order() == order_from_id(c.id));
    CHECK_FALSE(c.expectations.empty());
    CHECK(c.id.rfind(c.theorem, 0) == 0);
  }
}

TEST_CASE("inconsistent expectations are detected") {
  auto cases = build_catalog();
  cases[0].expectations[0].nabla_order += 1;
  CHECK(inconsistent_cases(cases) == std::vector<std::string>{cases[0].id});
}

TEST_CASE("case selection") {
  CHECK(select_cases("all", "").size() == build_catalog().size());
  CHECK(select_cases("A", "").size() == 4);
  CHECK(select_cases("B", "").size() == 5);
  CHECK(select_cases("B.ii", "").size() == 2);
  CHECK(select_cases("C", "").size() == 5);
  CHECK(select_cases("D", "").size() == 3);
  CHECK(select_cases("remark", "").size() == 4);
  CHECK(select_cases("all", "C.iii/75").size() == 1);
  CHECK(select_cases("A", "C.iii/75").empty());
}

TEST_CASE("expected group names and orders") {
  ExpectedGroup e{FiniteAbelianGroup::cyclic(3), "ES(125)"};
  CHECK(e.order() == 375);
  CHECK(e.name() == "Z3 x ES(125)");
  ExpectedGroup q{FiniteAbelianGroup(), "Q8"};
  CHECK(q.name() == "Q8");
  CHECK(q.order() == 8);
}

TEST_CASE("theorem A cases pass") {
  VerifyOptions o;
  o.theorem = "A";
  o.config = quick();
  auto const r = verify(o);
  REQUIRE(r.cases.size() == 4);
  CHECK(r.all_pass());
  for (auto const& c : r.cases) CHECK(c.mismatches().empty());
}

TEST_CASE("runtime clause choice for the order-18 case") {
  auto const c = select_cases("all", "C.iii/18").front();
  auto const o = verify_case(c, quick());
  CHECK(o.verdict == Verdict::pass);
  CHECK(o.branch == "C.iii");
  CHECK(o.expected_structure == "Z2 x ES(27,exp3)");
}

TEST_CASE("runtime clause choice with trivial multiplier") {
  auto const o = verify_case(select_cases("all", "C.ii/147").front(), quick());
  CHECK(o.verdict == Verdict::pass);
  CHECK(o.branch == "C.ii");
  CHECK(o.expected_structure == "(Z7)^2 x Z3");
}

TEST_CASE("a wrong expectation fails with a mismatch") {
  auto c = select_cases("all", "B.iii/12").front();
  c.expectations[0].tensor_square = {FiniteAbelianGroup::cyclic(24), ""};
  auto const o = verify_case(c, quick());
  CHECK(o.verdict == Verdict::fail);
  CHECK_FALSE(o.mismatches().empty());
}

TEST_CASE("a broken constructor is a failed case, not a crash") {
  auto c = select_cases("all", "A/6").front();
  c.descriptor = "metacyclic(7,3,3)";
  auto const o = verify_case(c, quick());
  CHECK(o.verdict == Verdict::fail);
  CHECK(o.error.find("constructor") != std::string::npos);
}

TEST_CASE("tight memory gives a degraded order-only verdict") {
  auto const c = select_cases("all", "D.i/140-noncyclic").front();
  auto cfg = quick();
  cfg.max_table_entries = 100'000;
  auto const o = verify_case(c, cfg);
  CHECK(o.verdict == Verdict::degraded);
  REQUIRE(o.report);
  CHECK(o.report->tensor_square.order == 560);
  CHECK_FALSE(o.report->structure_computed);
  CatalogReport r{{o}};
  CHECK_FALSE(r.all_pass());
  CHECK_FALSE(r.any_fail());
}

TEST_CASE("catalog JSON and markdown") {
  VerifyOptions o;
  o.theorem = "B.iii";
  o.config = quick();
  auto const r = verify(o);
  auto const j = to_json(r);
  CHECK(j.at("summary").at("pass") == 1);
  CHECK(j.at("cases").at(0).at("report").at("tensor_square").at("structure") == "Z3 x Q8");
  CHECK_FALSE(j.at("cases").at(0).contains("seconds"));
  CHECK(nlohmann::json::parse(j.dump()) == j);
  CHECK(to_json(r, true).at("cases").at(0).contains("seconds"));
  auto const md = catalog_markdown(r);
  CHECK(md.find("| B.iii/12 | A4 | 12 |") != std::string::npos);
  CHECK(catalog_listing_markdown(build_catalog()).find("C.iii/75") != std::string::npos);
}

TEST_CASE("workers do not change the report") {
  VerifyOptions o;
  o.theorem = "B";
  o.config = quick();
  auto const one = to_json(verify(o)).dump();
  o.workers = 3;
  CHECK(to_json(verify(o)).dump() == one);
}
