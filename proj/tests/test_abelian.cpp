#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "tsq/abelian.hpp"

using namespace tsq;

namespace {

FiniteAbelianGroup ab(std::vector<std::uint64_t> orders) { return FiniteAbelianGroup::from_cyclic_orders(orders); }

// Elements of Z_d1 x ... x Z_dk as mixed-radix tuples.
struct Elements {
  std::vector<std::uint64_t> d;
  std::uint64_t size() const {
    std::uint64_t n = 1;
    for (auto x : d) n *= x;
    return n;
  }
  std::vector<std::uint64_t> tuple(std::uint64_t i) const {
    std::vector<std::uint64_t> t(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
      t[k] = i % d[k];
      i /= d[k];
    }
    return t;
  }
  std::uint64_t index(std::vector<std::uint64_t> const& t) const {
    std::uint64_t i = 0;
    for (std::size_t k = d.size(); k-- > 0;) i = i * d[k] + t[k];
    return i;
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    auto x = tuple(a), y = tuple(b);
    for (std::size_t k = 0; k < d.size(); ++k) x[k] = (x[k] + y[k]) % d[k];
    return index(x);
  }
};

// A (x) B from its universal presentation: one generator per pair (a, b),
// relations for additivity in each slot. Only the final Smith form comes
// from the library.
FiniteAbelianGroup tensor_by_bilinear_presentation(FiniteAbelianGroup const& a, FiniteAbelianGroup const& b) {
  Elements ea{a.invariants()}, eb{b.invariants()};
  std::uint64_t const na = ea.size(), nb = eb.size();
  auto gen = [&](std::uint64_t x, std::uint64_t y) { return x * nb + y; };
  std::vector<std::vector<long long>> rows;
  for (std::uint64_t x = 0; x < na; ++x)
    for (std::uint64_t x2 = 0; x2 < na; ++x2)
      for (std::uint64_t y = 0; y < nb; ++y) {
        std::vector<long long> r(na * nb, 0);
        r[gen(ea.add(x, x2), y)] += 1;
        r[gen(x, y)] -= 1;
        r[gen(x2, y)] -= 1;
        rows.push_back(std::move(r));
      }
  for (std::uint64_t x = 0; x < na; ++x)
    for (std::uint64_t y = 0; y < nb; ++y)
      for (std::uint64_t y2 = 0; y2 < nb; ++y2) {
        std::vector<long long> r(na * nb, 0);
        r[gen(x, eb.add(y, y2))] += 1;
        r[gen(x, y)] -= 1;
        r[gen(x, y2)] -= 1;
        rows.push_back(std::move(r));
      }
  return abelian_from_relations(na * nb, rows);
}

// Number of bilinear maps A x B -> Z_N, counted by brute force over the
// values on generator pairs. Equals |Hom(A (x) B, Z_N)|.
std::uint64_t count_bilinear(std::vector<std::uint64_t> const& a, std::vector<std::uint64_t> const& b,
                             std::uint64_t n) {
  std::uint64_t count = 1;
  for (auto x : a)
    for (auto y : b) {
      std::uint64_t ok = 0;
      for (std::uint64_t v = 0; v < n; ++v) ok += (v * x) % n == 0 && (v * y) % n == 0;
      count *= ok;
    }
  return count;
}

std::uint64_t partitions(unsigned k) {
  std::vector<std::uint64_t> p(k + 1, 0);
  p[0] = 1;
  for (unsigned part = 1; part <= k; ++part)
    for (unsigned s = part; s <= k; ++s) p[s] += p[s - part];
  return p[k];
}

}  // namespace

TEST_CASE("smith normal form satisfies left * M * right = diag") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-9, 9), dim(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    auto s = smith_normal_form(m);
    auto d = s.left * m * s.right;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) CHECK(d(i, j) == (i == j ? s.diagonal[i] : Integer(0)));
    for (std::size_t i = 1; i < s.diagonal.size(); ++i)
      if (s.diagonal[i - 1] != 0) CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);
    CHECK(abs(s.left.determinant()) == 1);
    CHECK(abs(s.right.determinant()) == 1);
  }
}

TEST_CASE("smith normal form of a known matrix") {
  IntegerMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto s = smith_normal_form(m);
  std::vector<Integer> abs_diag;
  for (auto const& d : s.diagonal) abs_diag.push_back(abs(d));
  CHECK(abs_diag == std::vector<Integer>{2, 6, 12});
}

TEST_CASE("invariant factor normalization") {
  CHECK(ab({6, 4}).invariants() == std::vector<std::uint64_t>{2, 12});
  CHECK(ab({1, 1}).is_trivial());
  CHECK(ab({2, 2, 2, 2, 35}).name() == "(Z2)^4 x Z35");
  CHECK(ab({}).name() == "1");
  CHECK(ab({12, 18}).exponent() == 36);
  CHECK_THROWS_AS(FiniteAbelianGroup::from_invariants({4, 2}), std::invalid_argument);
}

TEST_CASE("infinite quotients are rejected") {
  CHECK_THROWS_AS(abelian_from_relations(2, std::vector<std::vector<long long>>{{2, 0}}), InfiniteQuotientError);
  CHECK(abelian_from_relations(2, std::vector<std::vector<long long>>{{2, 0}, {0, 3}}) == ab({6}));
}

TEST_CASE("abelian tensor product agrees with the bilinear presentation") {
  for (std::uint64_t order = 1; order <= 12; ++order)
    for (auto const& a : all_abelian_groups(order))
      for (std::uint64_t order2 = 1; order * order2 <= 24; ++order2)
        for (auto const& b : all_abelian_groups(order2)) {
          CAPTURE(a.name());
          CAPTURE(b.name());
          auto const t = tensor_abelian(a, b);
          CHECK(t == tensor_by_bilinear_presentation(a, b));
          std::uint64_t const n = std::max<std::uint64_t>(1, lcm_u64(a.exponent(), b.exponent()));
          CHECK(t.order() == count_bilinear(a.invariants(), b.invariants(), n));
        }
}

TEST_CASE("exterior square of abelian groups") {
  CHECK(exterior_abelian(ab({6})).is_trivial());
  CHECK(exterior_abelian(ab({2, 2})) == ab({2}));
  CHECK(exterior_abelian(ab({2, 4, 8})) == ab({2, 2, 4}));
}

TEST_CASE("gamma functor matches its universal presentation up to order 32") {
  for (std::uint64_t n = 1; n <= 32; ++n)
    for (auto const& a : all_abelian_groups(n)) {
      CAPTURE(a.name());
      CHECK(gamma_whitehead(a) == gamma_oracle(a));
    }
}

TEST_CASE("gamma of small groups") {
  CHECK(gamma_whitehead(ab({2})) == ab({4}));
  CHECK(gamma_whitehead(ab({3})) == ab({3}));
  CHECK(gamma_whitehead(ab({6})) == ab({12}));
  auto const v = gamma_whitehead(ab({2, 2}));
  CHECK(v.order() == 32);
  CHECK(v.exponent() == 4);
}

TEST_CASE("gamma is multiplicative up to the cross term on pairs of cyclic groups") {
  for (std::uint64_t a = 1; a <= 12; ++a)
    for (std::uint64_t b = 1; b <= 12; ++b) {
      auto const A = ab({a}), B = ab({b});
      CHECK(gamma_whitehead(direct_sum(A, B)).order() ==
            gamma_whitehead(A).order() * gamma_whitehead(B).order() * tensor_abelian(A, B).order());
    }
}

TEST_CASE("all_abelian_groups counts products of partition numbers") {
  for (std::uint64_t n = 1; n <= 200; ++n) {
    std::uint64_t expected = 1;
    for (auto [p, k] : factorize(n)) expected *= partitions(k);
    auto const groups = all_abelian_groups(n);
    CHECK(groups.size() == expected);
    for (auto const& g : groups) CHECK(g.order() == n);
  }
}

TEST_CASE("prime exponent sums") {
  auto s = prime_exponent_sums(ab({9}));
  REQUIRE(s.size() == 1);
  CHECK(s[0].prime == 3);
  CHECK(s[0].d == 0);
  s = prime_exponent_sums(ab({3, 3}));
  REQUIRE(s.size() == 1);
  CHECK(s[0].d == 1);
  s = prime_exponent_sums(ab({3, 9, 27}));
  CHECK(s[0].d == 2 * 1 + 1 * 2);
  s = prime_exponent_sums(ab({2, 2, 5}));
  REQUIRE(s.size() == 2);
  CHECK(s[0].prime == 2);
  CHECK_FALSE(s[0].applicable);
  CHECK(s[1].applicable);
  CHECK(s[1].d == 0);
}

TEST_CASE("number theory helpers") {
  CHECK(gcd_u64(12, 18) == 6);
  CHECK(lcm_u64(4, 6) == 12);
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(factorize(360) == std::map<std::uint64_t, unsigned>{{2, 3}, {3, 2}, {5, 1}});
}
