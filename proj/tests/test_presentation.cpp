#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tsq/coset.hpp"
#include "tsq/presentation.hpp"

using namespace tsq;

namespace {

Word g(std::uint32_t i, std::int64_t e = 1) { return Word::generator(i, e); }

// Evaluate a word in a permutation representation, letters left to right
// acting on the right: point . w.
std::uint32_t act(std::vector<std::vector<std::uint32_t>> const& perms, std::uint32_t pt, Word const& w) {
  for (auto const& s : w.syllables()) {
    auto const& p = perms[s.gen];
    std::int64_t e = s.exp;
    if (e > 0) {
      for (; e > 0; --e) pt = p[pt];
    } else {
      for (; e < 0; ++e) {
        std::uint32_t prev = 0;
        while (p[prev] != pt) ++prev;
        pt = prev;
      }
    }
  }
  return pt;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK((g(0) * g(0, -1)).empty());
  CHECK((g(0, 2) * g(0, 3)) == g(0, 5));
  CHECK(Word({{0, 1}, {1, 2}, {1, -2}, {0, 1}}) == g(0, 2));
  CHECK(inverse(g(0) * g(1)) == g(1, -1) * g(0, -1));
  CHECK(power(g(0) * g(1), 2).length() == 4);
  CHECK(power(g(0), -3) == g(0, -3));
}

TEST_CASE("commutator and conjugate use the right-action forms") {
  Word const u = g(0), v = g(1);
  CHECK(commutator(u, v) == g(0, -1) * g(1, -1) * g(0) * g(1));
  CHECK(conjugate(u, v) == g(1, -1) * g(0) * g(1));
  CHECK(substitute(g(0) * g(1), 1, g(0, 2)) == g(0, 3));
  CHECK(map_generators(g(0) * g(1), {g(1), g(0)}) == g(1) * g(0));
}

TEST_CASE("letters as coset-table columns") {
  CHECK((g(1, 2) * g(0, -1)).letters() == std::vector<std::uint32_t>{2, 2, 1});
}

TEST_CASE("presentation parser") {
  auto const p = parse_presentation("a,b | a^3, b^2, (a b)^2");
  CHECK(p.generator_count() == 2);
  REQUIRE(p.relators().size() == 3);
  CHECK(p.relators()[0] == g(0, 3));
  CHECK(p.relators()[2] == g(0) * g(1) * g(0) * g(1));
  auto const q = parse_presentation("x, y | [x, y], x^4 # comment\n, y^-2");
  CHECK(q.relators()[0] == commutator(g(0), g(1)));
  CHECK(q.relators()[2] == g(1, -2));
  CHECK(parse_word(p, "b^-1 a") == g(1, -1) * g(0));
  CHECK(parse_presentation(p.to_string()).relators() == p.relators());
}

TEST_CASE("parser errors carry positions") {
  CHECK_THROWS_AS(parse_presentation("a | a^"), ParseError);
  CHECK_THROWS_AS(parse_presentation("a | b"), ParseError);
  CHECK_THROWS_AS(parse_presentation("a, a | a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("a | (a"), ParseError);
  try {
    parse_presentation("a,b | a^2, c");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 12);
  }
}

TEST_CASE("abelianization from exponent sums") {
  CHECK(presentation_abelianization(parse_presentation("a,b | a^3, b^2, (a b)^2")) == FiniteAbelianGroup::cyclic(2));
  CHECK(presentation_abelianization(parse_presentation("a,b | a^4, b^6, [a,b]")) ==
        FiniteAbelianGroup::from_invariants({2, 12}));
  CHECK_THROWS_AS(presentation_abelianization(parse_presentation("a,b | a^2")), InfiniteQuotientError);
}

TEST_CASE("family descriptors agree with their tables") {
  for (auto const* d : {"cyclic(6)", "dihedral(5)", "metacyclic(5,4,2)", "metacyclic(7,4,-1)", "A4", "Q8",
                        "gendihedral(3,3)", "linear(5,3,0,-1,1,-1)", "a4ext(7,2)", "direct(dihedral(3),cyclic(10))",
                        "metacyclic(35,4,6)"}) {
    CAPTURE(d);
    auto const f = family_group(d);
    auto const reg = regular_representation(f.presentation);
    CHECK(reg.group.order() == f.table.order());
    CHECK(is_isomorphic(reg.group, f.table));
  }
}

TEST_CASE("family descriptor errors") {
  CHECK_THROWS_AS(family_presentation("metacyclic(7,3,3)"), FamilyError);  // 3^3 != 1 mod 7
  CHECK_THROWS_AS(family_presentation("nosuch(3)"), FamilyError);
  CHECK_THROWS_AS(family_presentation("dihedral("), FamilyError);
}

TEST_CASE("nu(G) has two copies and the crossed relators") {
  auto const p = parse_presentation("a,b | a^3, b^2, (a b)^2");
  auto const nu = nu_presentation(p);
  CHECK(nu.base_generators == 2);
  CHECK(nu.presentation.generator_count() == 4);
  CHECK(nu.second_copy_generators() == std::vector<Word>{g(2), g(3)});
  CHECK(nu.to_second_copy(g(0) * g(1, -1)) == g(2) * g(3, -1));
  CHECK(nu.tensor_generators.size() == 4);
  CHECK(tensor_symbol(nu, g(0), g(1)) == g(0) * g(3) * g(0, -1) * g(3, -1));
}

TEST_CASE("nu relators hold in a permutation representation of nu(S3)") {
  auto const nu = nu_presentation(parse_presentation("a,b | a^3, b^2, (a b)^2"));
  auto const e = enumerate(nu.presentation, std::vector<Word>{});
  CHECK(e.table.size() == 216);
  auto const perms = permutation_rep(e.table);
  for (auto const& r : nu.presentation.relators())
    for (std::uint32_t pt = 0; pt < 216; pt += 7) CHECK(act(perms, pt, r) == pt);
}
