#pragma once

// Finite groups as complete multiplication tables.
//
// Elements are dense indices 0..order-1 with the identity at 0. Every
// element set (subgroups, kernels, images) is a sorted index vector.
// Conventions follow the left action: conjugate(g, x) = g x g^-1 and
// commutator(a, b) = a b a^-1 b^-1.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsq/abelian.hpp"

namespace tsq {

using Elem = std::uint32_t;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GroupTable {
 public:
  /// Validates the table (identity, inverses, associativity, generation).
  /// Associativity is checked exhaustively up to order 64 and on 10^4
  /// seeded random triples above.
  GroupTable(std::size_t order, std::vector<Elem> table, std::vector<Elem> generators,
             std::string name = {});
  /// The trivial group.
  GroupTable() : GroupTable(1, {0}, {}) {}

  std::size_t order() const noexcept { return n_; }
  Elem mul(Elem a, Elem b) const noexcept { return table_[std::size_t(a) * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inverse_[a]; }
  std::span<const Elem> row(Elem a) const noexcept {
    return {table_.data() + std::size_t(a) * n_, n_};
  }
  std::vector<Elem> const& generators() const noexcept { return generators_; }
  std::string const& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  Elem pow(Elem a, std::int64_t k) const;
  std::uint64_t element_order(Elem a) const;
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  Elem conjugate(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  bool is_abelian() const;

 private:
  void validate();

  std::size_t n_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<Elem> generators_;
  std::string name_;
};

struct Subgroup {
  std::vector<Elem> elements;  // sorted, contains 0
  bool is_normal = false;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(Elem x) const;
};

/// images[x] is the image of source element x.
struct Homomorphism {
  std::vector<Elem> images;

  Elem operator()(Elem x) const { return images[x]; }
};

struct Fingerprint {
  std::size_t order = 0;
  std::uint64_t exponent = 0;
  std::map<std::uint64_t, std::size_t> order_histogram;
  std::size_t derived_order = 0;
  std::size_t center_order = 0;
  std::optional<FiniteAbelianGroup> abelian_invariants;

  bool operator==(Fingerprint const&) const = default;
};

struct Quotient {
  GroupTable group;
  Homomorphism projection;
};

struct Abelianization {
  FiniteAbelianGroup invariants;
  Quotient quotient;
};

// --- constructors ----------------------------------------------------------

GroupTable cyclic_group(std::size_t n);
GroupTable direct_product(GroupTable const& a, GroupTable const& b);

/// action[h] is the automorphism of N applied by h (left action), so that
/// (n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2).
using Action = std::vector<std::vector<Elem>>;
GroupTable semidirect_product(GroupTable const& normal, GroupTable const& complement,
                              Action const& action);

/// Extends automorphisms given on the generators of H to the whole of H.
Action action_from_generators(GroupTable const& normal, GroupTable const& complement,
                              std::vector<std::vector<Elem>> const& generator_images);

/// Automorphism of N determined by images of N's generators.
std::vector<Elem> automorphism_from_generators(GroupTable const& n, std::span<const Elem> images);

GroupTable dihedral_group(std::size_t n);  // order 2n
GroupTable quaternion_group();
/// Z_d1 x ... x Z_dk for the invariant factors of `a`.
GroupTable abelian_group_table(FiniteAbelianGroup const& a);
GroupTable alternating_group_4();
/// Extraspecial group of order q^3 and exponent q (odd q) or q^2.
/// For q = 2, exponent 4 gives D8; use quaternion_group() for Q8.
GroupTable extraspecial_group(std::uint64_t q, std::uint64_t exponent);

/// Reads the Cayley-table text format: first non-comment line n, then n
/// rows of n indices; '#' lines are comments; identity must be index 0.
GroupTable read_cayley_table(std::istream& in);
void write_cayley_table(std::ostream& out, GroupTable const& g);

// --- subgroups and quotients ----------------------------------------------

Subgroup subgroup_generated(GroupTable const& g, std::span<const Elem> seeds);
Subgroup normal_closure(GroupTable const& g, std::span<const Elem> seeds);
bool is_normal_subset(GroupTable const& g, std::span<const Elem> sorted_elements);
Subgroup derived_subgroup(GroupTable const& g);
Subgroup center(GroupTable const& g);
Subgroup trivial_subgroup();
Subgroup whole_group(GroupTable const& g);
Quotient quotient(GroupTable const& g, Subgroup const& n);
Abelianization abelianization(GroupTable const& g);
std::uint64_t exponent(GroupTable const& g);
std::optional<Subgroup> normal_sylow(GroupTable const& g, std::uint64_t p);

/// The subgroup as a group of its own; element i of the result is
/// h.elements[i] (so the identity stays at 0).
GroupTable subgroup_table(GroupTable const& g, Subgroup const& h, std::string name = {});

/// Invariant factors of an abelian group read off its element orders.
FiniteAbelianGroup abelian_invariants(GroupTable const& g);

/// Greedy generating set preferring elements of large order.
std::vector<Elem> small_generating_set(GroupTable const& g);

// --- homomorphisms --------------------------------------------------------

/// Full check of images[xy] = images[x] images[y] when |source| <= full_limit,
/// otherwise 10^4 seeded random pairs.
bool is_homomorphism(GroupTable const& source, GroupTable const& target, Homomorphism const& h,
                     std::size_t full_limit = 600);
Subgroup kernel(GroupTable const& source, Homomorphism const& h);
std::vector<Elem> image_set(Homomorphism const& h);

// --- complements, isomorphism, recognition ---------------------------------

enum class SearchStatus { found, absent, bound_exceeded };

struct ComplementResult {
  SearchStatus status = SearchStatus::absent;
  std::optional<Subgroup> complement;
};

/// A complement of the normal subgroup N among subgroups generated by at
/// most three elements.
ComplementResult find_complement(GroupTable const& g, Subgroup const& n);
/// A cyclic complement of N, if any element generates one.
std::optional<Subgroup> find_cyclic_complement(GroupTable const& g, Subgroup const& n);

enum class IsoVerdict { isomorphic, not_isomorphic, timeout };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::not_isomorphic;
  std::uint64_t nodes = 0;
  std::vector<Elem> map;  // filled when isomorphic: a -> b
};

inline constexpr std::uint64_t kIsoNodeLimit = 10'000'000;

IsoResult isomorphism(GroupTable const& a, GroupTable const& b,
                      std::uint64_t node_limit = kIsoNodeLimit);
/// Throws GroupError on timeout.
bool is_isomorphic(GroupTable const& a, GroupTable const& b);

Fingerprint fingerprint(GroupTable const& g);

struct Structure {
  enum class Kind { abelian, nonabelian_zoo, unrecognized };
  Kind kind = Kind::unrecognized;
  FiniteAbelianGroup abelian_part;  // whole group when abelian
  std::string nonabelian_factor;    // "Q8", "D8", "ES(27,exp3)", ...
  Fingerprint fp;

  std::string name() const;
};

/// Names G within the zoo: abelian groups, and A x H for abelian A and H
/// one of Q8, D8, or an extraspecial group of order q^3.
Structure recognize_structure(GroupTable const& g);

}  // namespace tsq
