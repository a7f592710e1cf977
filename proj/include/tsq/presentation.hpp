#pragma once

// Free words, finite presentations, the presentation DSL, and the
// double-copy construction nu(G).
//
// Grammar:
//   presentation := genlist "|" relatorlist
//   genlist      := name ("," name)*
//   relatorlist  := word ("," word)*
//   word         := factor+
//   factor       := (name | "(" word ")" | "[" word "," word "]") ("^" integer)?
//   name         := [a-z][a-z0-9_]*      integer := "-"? [0-9]+
// "[u,v]" is u^-1 v^-1 u v; '#' comments run to end of line.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsq/abelian.hpp"
#include "tsq/group.hpp"

namespace tsq {

struct Syllable {
  std::uint32_t gen = 0;
  std::int64_t exp = 0;

  bool operator==(Syllable const&) const = default;
  auto operator<=>(Syllable const&) const = default;
};

/// Freely reduced word: adjacent syllables have distinct generators and no
/// exponent is zero.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables);  // reduces
  static Word generator(std::uint32_t gen, std::int64_t exp = 1);

  std::vector<Syllable> const& syllables() const noexcept { return syl_; }
  bool empty() const noexcept { return syl_.empty(); }
  /// Total number of letters, sum of |exp|.
  std::size_t length() const noexcept;
  std::uint32_t max_generator() const noexcept;

  /// Letters as coset-table columns: 2*gen for gen, 2*gen+1 for gen^-1.
  std::vector<std::uint32_t> letters() const;

  bool operator==(Word const&) const = default;
  auto operator<=>(Word const&) const = default;

 private:
  std::vector<Syllable> syl_;
};

Word operator*(Word const& u, Word const& v);
Word inverse(Word const& w);
Word power(Word const& w, std::int64_t k);
/// Replaces every occurrence of `gen` by `replacement`.
Word substitute(Word const& w, std::uint32_t gen, Word const& replacement);
/// Applies gen -> images[gen] to every generator.
Word map_generators(Word const& w, std::vector<Word> const& images);
/// [u, v] = u^-1 v^-1 u v.
Word commutator(Word const& u, Word const& v);
/// u^v = v^-1 u v.
Word conjugate(Word const& u, Word const& v);

class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  std::vector<std::string> const& generators() const noexcept { return gens_; }
  std::vector<Word> const& relators() const noexcept { return rels_; }
  std::size_t generator_count() const noexcept { return gens_.size(); }

  std::string word_to_string(Word const& w) const;
  std::string to_string() const;

 private:
  std::vector<std::string> gens_;
  std::vector<Word> rels_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& what, std::size_t line, std::size_t column, std::string expected);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  std::string const& expected() const noexcept { return expected_; }

 private:
  std::size_t line_, column_;
  std::string expected_;
};

Presentation parse_presentation(std::string_view text);
/// Parses a word over the generators of `p`.
Word parse_word(Presentation const& p, std::string_view text);

/// nu(G): generators x_1..x_g then their copies x_1^phi..x_g^phi.
struct NuPresentation {
  Presentation presentation;
  std::size_t base_generators = 0;
  /// x_i -> x_i^phi on words over the first copy.
  Word to_second_copy(Word const& w) const;
  std::vector<Word> second_copy_generators() const;
  /// Tensor generators x_i (x) x_j in the left convention,
  /// x_i x_j^phi x_i^-1 (x_j^phi)^-1, ordered (i, j) row-major.
  std::vector<Word> tensor_generators;
};

NuPresentation nu_presentation(Presentation const& p);

/// Left-convention tensor symbol g (x) h = g h^phi g^-1 (h^phi)^-1 in nu(G),
/// for words g, h over the first copy.
Word tensor_symbol(NuPresentation const& nu, Word const& g, Word const& h);

/// Exponent-sum matrix: one row per relator, one column per generator.
IntegerMatrix abelianized_relation_matrix(Presentation const& p);
FiniteAbelianGroup presentation_abelianization(Presentation const& p);

/// A group family: its presentation together with the same group built
/// directly as a multiplication table.
struct FamilyGroup {
  std::string descriptor;
  Presentation presentation;
  GroupTable table;
};

/// Descriptors:
///   cyclic(n) dihedral(n) metacyclic(m,n,r) A4 Q8
///   gendihedral(d1,...,dk)       generalized dihedral of Z_d1 x ... x Z_dk
///   linear(p,n,a,b,c,d)          Z_p^2 : Z_n, t x t^-1 = x^a y^c, t y t^-1 = x^b y^d
///   a4ext(m,r)                   (V4 x Z_m) : Z_3, acting on Z_m by c -> c^r
///   direct(D1,D2)
/// dihedral(n) has order 2n; metacyclic(m,n,r) is Z_m : Z_n with b a b^-1 = a^r.
FamilyGroup family_group(std::string_view descriptor);
Presentation family_presentation(std::string_view descriptor);

class FamilyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace tsq
