#pragma once

// The non-abelian tensor square and the objects around it: the diagonal
// subgroup nabla(G), the exterior square, J2(G) = ker kappa and the Schur
// multiplier M(G) = J2/nabla.
//
// G (x) G is realized as the subgroup T = [G, G^phi] of nu(G). Instead of
// the regular representation of nu(G) (up to |G|^3 |T| elements) the engine
// enumerates the cosets of G^phi, which has index |G| |T|. T meets G^phi
// trivially, so T acts semiregularly there and its orbit through the
// subgroup coset is a regular copy of T.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsq/coset.hpp"
#include "tsq/group.hpp"
#include "tsq/presentation.hpp"

namespace tsq {

enum class CheckStatus { pass, fail, not_applicable, skipped };

std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(std::string const& s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;

  bool operator==(CheckResult const&) const = default;
};

class TensorEngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TensorConfig {
  EnumerationConfig enumeration;
  /// Enumerate nu(G) over the trivial subgroup to cross-check
  /// |nu(G)| = |G|^2 |T| when that count is at most this; 0 disables.
  std::size_t nu_check_limit = 3'000'000;
  /// Entries of the |T| x |T| multiplication table; larger tensor squares
  /// raise ResourceLimitError.
  std::size_t max_table_entries = std::size_t(1) << 28;
  std::uint64_t seed = 0x7e45011;
  std::size_t biderivation_triples = 200;
  std::size_t kappa_pairs = 500;
};

struct TensorSquareReport {
  std::string name;
  Presentation presentation;

  GroupTable group;
  std::vector<Word> element_words;
  Subgroup derived;
  FiniteAbelianGroup abelianization;

  GroupTable tensor_square;
  /// symbols[g * |G| + h] is the element g (x) h of tensor_square.
  std::vector<Elem> symbols;
  Homomorphism kappa;  // tensor_square -> group
  Subgroup nabla;
  Subgroup j2;
  GroupTable exterior_square;
  Homomorphism exterior_projection;  // tensor_square -> exterior_square
  Homomorphism kappa_prime;          // exterior_square -> group
  FiniteAbelianGroup schur_multiplier;

  Structure group_structure;
  Structure tensor_structure;
  Structure exterior_structure;
  Structure nabla_structure;
  Structure j2_structure;

  std::vector<CheckResult> checks;

  EnumerationStats enumeration;  // nu(G) over G^phi
  std::optional<EnumerationStats> nu_enumeration;
  std::uint64_t nu_order = 0;  // 0 when not enumerated
  std::size_t tensor_generators = 0;

  Elem symbol(Elem g, Elem h) const { return symbols[std::size_t(g) * group.order() + h]; }
  bool all_checks_pass() const;
};

/// Builds G from its regular representation and G (x) G from nu(G), then
/// runs every check that needs no outside expectation.
/// Throws ResourceLimitError (CosetLimitError for enumerations) when a
/// configured budget is exceeded and TensorEngineError on internal
/// inconsistency.
TensorSquareReport compute_tensor_square(Presentation const& p, TensorConfig const& config = {},
                                         std::string name = {});

/// Checks (a)-(e) relating nabla, J2, M(G), the exterior square and
/// Gamma(G^ab).
std::vector<CheckResult> diagram_invariants(TensorSquareReport const& r);

/// When G' has a cyclic complement: |G (x) G| = |G| |M(G)| and
/// G (x) G = (G ^ G) x G^ab.
CheckResult check_cyclic_complement_formula(TensorSquareReport const& r);

/// When every prime dividing |G^ab| is odd:
/// |G (x) G| = prod p_i^d_i |G| |M(G)|.
CheckResult check_odd_abelianization_formula(TensorSquareReport const& r);

/// |G^ab (x) G^ab| divides |G (x) G|, with equality and isomorphism for
/// abelian G; (G (x) G)' lies in J2 when G' is abelian; the exponent
/// matches `expected_exponent` when given.
std::vector<CheckResult> pi_and_exponent_checks(TensorSquareReport const& r,
                                                std::optional<std::uint64_t> expected_exponent = {});

/// (A x B) (x) (A x B) = (A (x) A) x (B (x) B) x (A^ab (x) B^ab)^2, with all
/// three tensor squares computed directly.
CheckResult direct_product_cross_check(TensorSquareReport const& whole, TensorSquareReport const& a,
                                       TensorSquareReport const& b);

struct OrderOnlyResult {
  std::uint64_t group_order = 0;
  std::uint64_t index = 0;  // [nu(G) : G^phi]
  std::uint64_t tensor_order = 0;
  EnumerationStats stats;
};

/// |G (x) G| = [nu(G) : G^phi] / |G| without building any tables.
OrderOnlyResult order_only_tensor(Presentation const& p, EnumerationConfig const& config = {});

// --- serialized form ---------------------------------------------------------

struct ObjectSummary {
  std::uint64_t order = 0;
  std::string structure;
  std::optional<std::vector<std::uint64_t>> invariant_factors;  // abelian only

  bool operator==(ObjectSummary const&) const = default;
};

struct ReportSummary {
  std::string name;
  std::uint64_t group_order = 0;
  std::string presentation;
  ObjectSummary group;
  ObjectSummary derived;
  std::vector<std::uint64_t> abelianization;
  ObjectSummary tensor_square;  // structure "not computed" in order-only mode
  std::optional<ObjectSummary> exterior_square;
  std::optional<ObjectSummary> nabla;
  std::optional<ObjectSummary> j2;
  std::optional<std::vector<std::uint64_t>> schur_multiplier;
  bool structure_computed = true;
  std::vector<CheckResult> checks;
  std::map<std::string, std::uint64_t> stats;
  std::optional<double> wall_seconds;

  bool operator==(ReportSummary const&) const = default;
};

ReportSummary summarize(TensorSquareReport const& r, bool with_timing = false);
ReportSummary summarize(std::string const& name, Presentation const& p, OrderOnlyResult const& o,
                        bool with_timing = false);

void to_json(nlohmann::json& j, ObjectSummary const& s);
void from_json(nlohmann::json const& j, ObjectSummary& s);
void to_json(nlohmann::json& j, CheckResult const& c);
void from_json(nlohmann::json const& j, CheckResult& c);
void to_json(nlohmann::json& j, ReportSummary const& s);
void from_json(nlohmann::json const& j, ReportSummary& s);

std::string report_markdown(ReportSummary const& s);
/// Escapes '|' for use inside a markdown table cell.
std::string markdown_cell(std::string const& text);

}  // namespace tsq
