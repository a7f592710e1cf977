#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "tsq/coset.hpp"

using namespace tsq;

namespace {

struct Known {
  char const* text;
  std::vector<char const*> subgroup;
  std::size_t index;
};

std::vector<Known> const kKnown = {
    {"a | a^7", {}, 7},
    {"a,b | a^3, b^2, (a b)^2", {}, 6},
    {"a,b | a^3, b^2, (a b)^2", {"b"}, 3},
    {"a,b | a^2, b^3, (a b)^5", {}, 60},
    {"a,b | a^2, b^3, (a b)^5", {"b"}, 20},
    {"a,b | a^2, b^3, (a b)^7, [a,b]^4", {}, 168},
    {"a,b | a^2, b^3, (a b)^7, [a,b]^4", {"b"}, 56},
    {"a,b | a^4, b^2 a^-2, b^-1 a b a", {}, 8},
    {"a,b | a^8, b^2 a^4, b^-1 a b a", {"a^2"}, 4},
    {"r,s,t | r^2, s^2, t^2, (r s)^3, (s t)^3, (r t)^2", {}, 24},
    // Coxeter's <2,3,7> quotient needs coincidences to finish
    {"a,b | a^2, b^3, (a b)^7, [a,b]^8", {}, 10752},
    // trivial group with a long coincidence cascade
    {"x,y | x y x^-1 y^-2, y x y^-1 x^-2", {}, 1},
};

std::vector<Word> words(Presentation const& p, std::vector<char const*> const& texts) {
  std::vector<Word> out;
  for (auto const* t : texts) out.push_back(parse_word(p, t));
  return out;
}

// Order of the group generated by permutations, by orbit closure on tuples.
std::size_t perm_group_order(std::vector<std::vector<std::uint32_t>> const& gens) {
  std::size_t const n = gens.front().size();
  std::vector<std::uint32_t> id(n);
  for (std::uint32_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<std::uint32_t>> seen{id};
  std::vector<std::vector<std::uint32_t>> queue{id};
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (auto const& g : gens) {
      std::vector<std::uint32_t> next(n);
      for (std::uint32_t i = 0; i < n; ++i) next[i] = g[queue[k][i]];
      if (seen.insert(next).second) queue.push_back(next);
    }
  return seen.size();
}

}  // namespace

TEST_CASE("known indices under both strategies") {
  for (auto const& k : kKnown) {
    CAPTURE(k.text);
    auto const p = parse_presentation(k.text);
    auto const h = words(p, k.subgroup);
    for (auto s : {Strategy::hlt, Strategy::felsch}) {
      EnumerationConfig cfg;
      cfg.strategy = s;
      auto const e = enumerate(p, h, cfg);
      CHECK(e.table.size() == k.index);
      CHECK(e.stats.final_count == k.index);
      CHECK(e.stats.peak_live >= k.index);
      CHECK(verify_table(e.table, p, h));
    }
  }
}

TEST_CASE("strategies produce identical standardized tables") {
  for (auto const& k : kKnown) {
    auto const p = parse_presentation(k.text);
    auto const h = words(p, k.subgroup);
    EnumerationConfig hlt, felsch;
    felsch.strategy = Strategy::felsch;
    CHECK(enumerate(p, h, hlt).table == enumerate(p, h, felsch).table);
  }
}

TEST_CASE("lookahead off still enumerates") {
  EnumerationConfig cfg;
  cfg.lookahead = false;
  auto const p = parse_presentation("a,b | a^2, b^3, (a b)^5");
  CHECK(subgroup_index(p, {}, cfg) == 60);
}

TEST_CASE("coset limit raises with statistics") {
  EnumerationConfig cfg;
  cfg.max_live_cosets = 50;
  auto const p = parse_presentation("a,b | a^2, b^3, (a b)^7, [a,b]^4");
  try {
    enumerate(p, {}, cfg);
    FAIL("expected CosetLimitError");
  } catch (CosetLimitError const& e) {
    CHECK(e.stats().total_defined > 0);
  }
  cfg.strategy = Strategy::felsch;
  CHECK_THROWS_AS(enumerate(p, {}, cfg), CosetLimitError);
}

TEST_CASE("tables trace words consistently") {
  auto const p = parse_presentation("a,b | a^3, b^2, (a b)^2");
  auto const t = enumerate(p, {}).table;
  for (auto const& r : p.relators())
    for (std::uint32_t c = 0; c < t.size(); ++c) CHECK(t.trace(c, r) == c);
  Word const w = parse_word(p, "a b a^-1");
  CHECK(t.trace(0, w) == t.trace_letters(0, w.letters()));
  CHECK(t.trace(t.trace(0, w), inverse(w)) == 0);
}

TEST_CASE("verify_table detects a broken table") {
  auto const p = parse_presentation("a | a^3");
  // a 2-cycle pretending to satisfy a^3
  CosetTable bad(1, 2, {1, 1, 0, 0});
  CHECK_FALSE(verify_table(bad, p, {}));
  CHECK(verify_table(enumerate(p, {}).table, p, {}));
}

TEST_CASE("permutation representation generates the group") {
  auto const p = parse_presentation("a,b | a^2, b^3, (a b)^5");
  auto const h = words(p, {"b"});
  auto const perms = permutation_rep(enumerate(p, h).table);
  REQUIRE(perms.size() == 2);
  CHECK(perms[0].size() == 20);
  CHECK(perm_group_order(perms) == 60);
}

TEST_CASE("regular representation") {
  auto const p = parse_presentation("a,b | a^4, b^2 a^-2, b^-1 a b a");
  auto const r = regular_representation(p);
  CHECK(r.group.order() == 8);
  CHECK(is_isomorphic(r.group, quaternion_group()));
  REQUIRE(r.element_words.size() == 8);
  CHECK(r.element_words[0].empty());
  auto const t = enumerate(p, {}).table;
  std::set<std::uint32_t> images;
  for (auto const& w : r.element_words) images.insert(t.trace(0, w));
  CHECK(images.size() == 8);
  CHECK(regular_representation(parse_presentation("a | a")).group.order() == 1);
}

TEST_CASE("strategy names") {
  CHECK(strategy_from_string("felsch") == Strategy::felsch);
  CHECK(to_string(Strategy::hlt) == "hlt");
  CHECK_THROWS(strategy_from_string("bogus"));
}
