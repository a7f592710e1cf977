#pragma once

// Integer normal forms and finite abelian group arithmetic.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tsq {

using Integer = boost::multiprecision::cpp_int;

class InfiniteQuotientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense integer matrix with arbitrary-precision entries.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Integer const& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  void append_row(std::span<const long long> row);

  IntegerMatrix operator*(IntegerMatrix const& rhs) const;
  bool operator==(IntegerMatrix const&) const = default;

  /// Exact determinant by fraction-free (Bareiss) elimination.
  Integer determinant() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SmithForm {
  std::vector<Integer> diagonal;  // min(rows, cols) entries, d1 | d2 | ...
  IntegerMatrix left;             // rows x rows, unimodular
  IntegerMatrix right;            // cols x cols, unimodular
};

/// Smith normal form with transforms: left * M * right == diag(diagonal).
/// Pivot is the smallest nonzero absolute value, ties broken row-major.
SmithForm smith_normal_form(IntegerMatrix const& m);

/// Invariant factors as a divisibility chain d1 | d2 | ... | dk, each >= 2.
/// The empty chain is the trivial group.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  /// Checks the chain; throws std::invalid_argument otherwise.
  static FiniteAbelianGroup from_invariants(std::vector<std::uint64_t> factors);
  /// Any list of cyclic orders (1s allowed, 0 rejected), renormalized.
  static FiniteAbelianGroup from_cyclic_orders(std::span<const std::uint64_t> orders);
  static FiniteAbelianGroup cyclic(std::uint64_t n);

  std::vector<std::uint64_t> const& invariants() const noexcept { return factors_; }
  std::uint64_t order() const noexcept;
  std::uint64_t exponent() const noexcept;
  std::size_t rank() const noexcept { return factors_.size(); }
  bool is_trivial() const noexcept { return factors_.empty(); }
  bool is_cyclic() const noexcept { return factors_.size() <= 1; }

  /// prime -> ascending exponents e_1 <= ... <= e_k of the p-primary part.
  std::map<std::uint64_t, std::vector<unsigned>> primary_decomposition() const;

  /// All cyclic summands of prime-power order, ascending.
  std::vector<std::uint64_t> elementary_divisors() const;

  /// Human-readable form such as "Z6", "(Z2)^4 x Z35", "1".
  std::string name() const;

  bool operator==(FiniteAbelianGroup const&) const = default;

 private:
  std::vector<std::uint64_t> factors_;
};

FiniteAbelianGroup direct_sum(FiniteAbelianGroup const& a, FiniteAbelianGroup const& b);

/// Z^n modulo the row lattice of `relations`. Throws InfiniteQuotientError
/// when the quotient is infinite.
FiniteAbelianGroup abelian_from_relations(std::size_t generators,
                                          IntegerMatrix const& relations);

/// Same as above for sparse or very tall relation systems given as int rows.
FiniteAbelianGroup abelian_from_relations(std::size_t generators,
                                          std::vector<std::vector<long long>> const& rows);

/// Abelian tensor product A (x) B.
FiniteAbelianGroup tensor_abelian(FiniteAbelianGroup const& a, FiniteAbelianGroup const& b);

/// Abelian exterior square: sum over i<j of Z_gcd(d_i, d_j).
FiniteAbelianGroup exterior_abelian(FiniteAbelianGroup const& a);

/// Whitehead's quadratic functor by the direct-sum decomposition.
FiniteAbelianGroup gamma_whitehead(FiniteAbelianGroup const& a);

/// Whitehead's quadratic functor from its universal presentation on the
/// symbols gamma(a), a in A. Limited to |A| <= 64.
FiniteAbelianGroup gamma_oracle(FiniteAbelianGroup const& a);

inline constexpr std::uint64_t kGammaOracleMaxOrder = 64;

struct PrimeExponentSum {
  std::uint64_t prime = 0;
  std::uint64_t d = 0;
  bool applicable = true;  // false for p = 2
};

/// For each prime p_i of A: d_i = sum_j (k_i - j) e_ij with ascending
/// exponents e_i1 <= ... <= e_ik. Primes equal to 2 are flagged inapplicable.
std::vector<PrimeExponentSum> prime_exponent_sums(FiniteAbelianGroup const& a);

// Number theory helpers shared across modules.
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
bool is_prime(std::uint64_t n);
std::map<std::uint64_t, unsigned> factorize(std::uint64_t n);

/// Every abelian group of the given order, as invariant-factor chains.
std::vector<FiniteAbelianGroup> all_abelian_groups(std::uint64_t order);

}  // namespace tsq
