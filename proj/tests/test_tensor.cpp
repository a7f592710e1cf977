#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "tsq/tensor.hpp"

using namespace tsq;

namespace {

TensorSquareReport square(char const* descriptor, TensorConfig cfg = {}) {
  return compute_tensor_square(family_presentation(descriptor), cfg, descriptor);
}

FiniteAbelianGroup ab(std::vector<std::uint64_t> orders) { return FiniteAbelianGroup::from_cyclic_orders(orders); }

CheckResult const* find(std::vector<CheckResult> const& checks, std::string const& name) {
  for (auto const& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

// Every defining relation of the tensor square, on all pairs and triples.
void check_relations_exhaustively(TensorSquareReport const& r) {
  auto const& g = r.group;
  auto const& t = r.tensor_square;
  std::size_t const n = g.order();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      REQUIRE(r.kappa(r.symbol(a, b)) == g.commutator(a, b));
      for (Elem x = 0; x < n; ++x) {
        auto const lhs = r.symbol(g.mul(x, a), b);
        auto const rhs = t.mul(r.symbol(g.conjugate(x, a), g.conjugate(x, b)), r.symbol(x, b));
        REQUIRE(lhs == rhs);
        auto const lhs2 = r.symbol(a, g.mul(x, b));
        auto const rhs2 = t.mul(r.symbol(a, x), r.symbol(g.conjugate(x, a), g.conjugate(x, b)));
        REQUIRE(lhs2 == rhs2);
      }
    }
}

}  // namespace

TEST_CASE("tensor squares of abelian groups are the abelian tensor squares") {
  for (auto const& [d, a] : std::vector<std::pair<char const*, FiniteAbelianGroup>>{
           {"cyclic(1)", ab({})},
           {"cyclic(2)", ab({2})},
           {"cyclic(6)", ab({6})},
           {"direct(cyclic(2),cyclic(2))", ab({2, 2})},
           {"direct(cyclic(3),cyclic(3))", ab({3, 3})},
           {"direct(cyclic(2),cyclic(4))", ab({2, 4})},
       }) {
    CAPTURE(d);
    auto const r = square(d);
    REQUIRE(r.tensor_square.is_abelian());
    CHECK(abelian_invariants(r.tensor_square) == tensor_abelian(a, a));
    CHECK(r.schur_multiplier == exterior_abelian(a));
    CHECK(r.all_checks_pass());
  }
}

TEST_CASE("known tensor squares of small nonabelian groups") {
  auto q8 = square("Q8");
  CHECK(abelian_invariants(q8.tensor_square) == ab({2, 2, 4, 4}));
  CHECK(q8.schur_multiplier.is_trivial());
  auto d8 = square("dihedral(4)");
  CHECK(abelian_invariants(d8.tensor_square) == ab({2, 2, 2, 4}));
  CHECK(d8.schur_multiplier == ab({2}));
  auto s3 = square("dihedral(3)");
  CHECK(is_isomorphic(s3.tensor_square, cyclic_group(6)));
  CHECK(s3.schur_multiplier.is_trivial());
  auto a4 = square("A4");
  CHECK(is_isomorphic(a4.tensor_square, direct_product(cyclic_group(3), quaternion_group())));
  CHECK(a4.schur_multiplier == ab({2}));
  CHECK(a4.tensor_structure.name() == "Z3 x Q8");
  for (auto const* r : {&q8, &d8, &s3, &a4}) CHECK(r->all_checks_pass());
}

TEST_CASE("dihedral groups of order 2m, m even: (Z2)^3 x Z_m") {
  for (std::uint64_t m : {4, 6, 8, 10}) {
    auto const r = square(("dihedral(" + std::to_string(m) + ")").c_str());
    CHECK(abelian_invariants(r.tensor_square) == ab({2, 2, 2, m}));
    CHECK(r.exterior_square.order() == m);
  }
}

TEST_CASE("defining relations hold on every pair and triple") {
  for (auto const* d : {"dihedral(3)", "Q8", "dihedral(4)", "A4", "metacyclic(7,3,2)"}) {
    CAPTURE(d);
    check_relations_exhaustively(square(d));
  }
}

TEST_CASE("symbols generate the tensor square and diagonal symbols generate nabla") {
  auto const r = square("A4");
  std::size_t const n = r.group.order();
  CHECK(subgroup_generated(r.tensor_square, r.symbols).order() == r.tensor_square.order());
  std::vector<Elem> diag;
  for (Elem g = 0; g < n; ++g) diag.push_back(r.symbol(g, g));
  CHECK(subgroup_generated(r.tensor_square, diag).elements == r.nabla.elements);
  std::set<Elem> kernel;
  for (Elem t = 0; t < r.tensor_square.order(); ++t)
    if (r.kappa(t) == 0) kernel.insert(t);
  CHECK(std::vector<Elem>(kernel.begin(), kernel.end()) == r.j2.elements);
  for (Elem j : r.j2.elements)
    for (Elem t = 0; t < r.tensor_square.order(); ++t)
      CHECK(r.tensor_square.mul(j, t) == r.tensor_square.mul(t, j));
}

TEST_CASE("exterior square and multiplier orders") {
  for (auto const* d : {"dihedral(6)", "gendihedral(3,3)", "Q8", "metacyclic(5,4,2)"}) {
    CAPTURE(d);
    auto const r = square(d);
    CHECK(r.exterior_square.order() == r.schur_multiplier.order() * r.derived.order());
    CHECK(r.tensor_square.order() == r.nabla.order() * r.exterior_square.order());
    CHECK(r.nu_order == r.group.order() * r.group.order() * r.tensor_square.order());
  }
}

TEST_CASE("diagram checks are present and pass") {
  auto const r = square("dihedral(6)");
  for (auto const* name : {"diagram_a_nabla_in_j2", "diagram_b_multiplier_abelian", "diagram_c_orders",
                           "diagram_d_exterior", "diagram_e_gamma_onto_nabla", "j2_central"}) {
    CAPTURE(name);
    auto const* c = find(r.checks, name);
    REQUIRE(c);
    CHECK(c->status == CheckStatus::pass);
  }
}

TEST_CASE("order formulas report applicability") {
  auto const q8 = square("Q8");
  CHECK(check_cyclic_complement_formula(q8).status == CheckStatus::not_applicable);
  CHECK(check_odd_abelianization_formula(q8).status == CheckStatus::not_applicable);
  auto const f21 = square("metacyclic(7,3,2)");
  CHECK(check_cyclic_complement_formula(f21).status == CheckStatus::pass);
  CHECK(check_odd_abelianization_formula(f21).status == CheckStatus::pass);
}

TEST_CASE("exponent and divisibility checks") {
  auto const r = square("metacyclic(5,4,2)");
  auto const checks = pi_and_exponent_checks(r, 20);
  auto const* e = find(checks, "exponent");
  REQUIRE(e);
  CHECK(e->status == CheckStatus::pass);
  auto const wrong = pi_and_exponent_checks(r, 10);
  CHECK(find(wrong, "exponent")->status == CheckStatus::fail);
  CHECK(find(checks, "pi_divisibility")->status == CheckStatus::pass);
}

TEST_CASE("direct product cross-check") {
  auto const whole = square("direct(dihedral(3),cyclic(2))");
  auto const a = square("dihedral(3)");
  auto const b = square("cyclic(2)");
  CHECK(direct_product_cross_check(whole, a, b).status == CheckStatus::pass);
  CHECK(direct_product_cross_check(whole, a, a).status == CheckStatus::fail);
}

TEST_CASE("order-only path agrees with the full computation") {
  for (auto const* d : {"dihedral(5)", "A4", "dihedral(6)"}) {
    auto const r = square(d);
    auto const o = order_only_tensor(family_presentation(d));
    CHECK(o.group_order == r.group.order());
    CHECK(o.tensor_order == r.tensor_square.order());
    CHECK(o.index == r.enumeration.final_count);
  }
}

TEST_CASE("resource budgets surface as ResourceLimitError") {
  TensorConfig tight;
  tight.max_table_entries = 100;
  CHECK_THROWS_AS(square("A4", tight), ResourceLimitError);
  TensorConfig few;
  few.enumeration.max_live_cosets = 40;
  CHECK_THROWS_AS(square("A4", few), CosetLimitError);
}

TEST_CASE("nu cross-check is skipped above its limit") {
  TensorConfig cfg;
  cfg.nu_check_limit = 10;
  auto const r = square("A4", cfg);
  CHECK(find(r.checks, "nu_order")->status == CheckStatus::skipped);
  CHECK(r.nu_order == 0);
  CHECK(r.all_checks_pass());
}

TEST_CASE("report JSON round trips") {
  auto const r = square("A4");
  for (bool timing : {false, true}) {
    auto const s = summarize(r, timing);
    nlohmann::json const j = s;
    auto const back = j.get<ReportSummary>();
    CHECK(back == s);
    CHECK(nlohmann::json(back).dump() == j.dump());
    CHECK(nlohmann::json::parse(j.dump()) == j);
    CHECK(j.at("stats").contains("wall_seconds") == timing);
  }
  auto const s = summarize(r);
  nlohmann::json const j = s;
  CHECK(j.at("tensor_square").at("order") == 24);
  CHECK(j.at("tensor_square").at("structure") == "Z3 x Q8");
  CHECK(j.at("schur_multiplier").at("invariant_factors") == std::vector<int>{2});

  auto const o = summarize("A4", family_presentation("A4"), order_only_tensor(family_presentation("A4")));
  nlohmann::json const jo = o;
  CHECK(jo.get<ReportSummary>() == o);
  CHECK_FALSE(o.structure_computed);
  CHECK(jo.at("tensor_square").at("order") == 24);
}

TEST_CASE("markdown report lists objects and checks") {
  auto const md = report_markdown(summarize(square("dihedral(3)")));
  CHECK(md.find("| G (x) G | 6 | Z6 |") != std::string::npos);
  CHECK(md.find("biderivation_left") != std::string::npos);
  CHECK(markdown_cell("|G|") == "\\|G\\|");
}

TEST_CASE("check status names") {
  for (auto s : {CheckStatus::pass, CheckStatus::fail, CheckStatus::not_applicable, CheckStatus::skipped})
    CHECK(check_status_from_string(to_string(s)) == s);
}
