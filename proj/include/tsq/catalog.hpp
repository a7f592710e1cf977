#pragma once

// The verification catalog: one representative group per case of the
// classification by |G| and the shape of G', with the expected tensor
// square, Schur multiplier and orders, plus the runner that checks them.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsq/tensor.hpp"

namespace tsq {

enum class Provenance { stated, derived };

std::string to_string(Provenance p);

/// A group named as abelian part times an optional nonabelian factor:
/// "", "Q8", "D8", "ES(q^3)" (either exponent) or "ES(q^3,exp e)".
struct ExpectedGroup {
  FiniteAbelianGroup abelian;
  std::string nonabelian;

  std::uint64_t order() const;
  std::string name() const;
};

struct Expectation {
  ExpectedGroup tensor_square;
  FiniteAbelianGroup multiplier;
  FiniteAbelianGroup derived;  // G' (abelian in every catalog case)
  std::uint64_t nabla_order = 0;
  std::optional<std::uint64_t> exponent;
  Provenance provenance = Provenance::stated;
};

struct VerificationCase {
  std::string id;       // "B.ii/20"
  std::string theorem;  // "A", "B.ii", "remark", ...
  std::string label;    // "D20"
  std::string descriptor;
  std::string claim;
  /// Two expectations when the clause is chosen by the computed M(G):
  /// the first for M = 0, the second for M nontrivial.
  std::vector<Expectation> expectations;
  bool order_only_acceptable = false;
  /// Factor descriptors for the direct-product cross-check.
  std::optional<std::pair<std::string, std::string>> factors;

  std::uint64_t group_order() const;
};

/// |G (x) G| = |nabla| |M| |G'| for every expectation; returns the ids of
/// inconsistent cases.
std::vector<std::string> inconsistent_cases(std::vector<VerificationCase> const& cases);

std::vector<VerificationCase> build_catalog();

enum class Verdict { pass, fail, degraded };
std::string to_string(Verdict v);

struct CaseOutcome {
  std::string id;
  std::string theorem;
  std::string label;
  std::string descriptor;
  std::string claim;
  Verdict verdict = Verdict::fail;
  std::string branch;  // expectation actually compared, e.g. "C.iii"
  std::string expected_structure;
  std::vector<CheckResult> expectation_checks;
  std::optional<ReportSummary> report;
  std::string error;
  double seconds = 0;  // not serialized unless timing is requested

  std::vector<std::string> mismatches() const;
};

struct CatalogReport {
  std::vector<CaseOutcome> cases;

  bool all_pass() const;
  bool any_fail() const;
};

struct VerifyOptions {
  /// "A", "B", "C", "D", "remark" or "all"; a prefix match on the theorem.
  std::string theorem = "all";
  /// Exact case id; empty for every case of the theorem filter.
  std::string case_id;
  TensorConfig config;
  unsigned workers = 1;
};

/// Cases selected by the filters, in catalog order.
std::vector<VerificationCase> select_cases(std::string const& theorem, std::string const& case_id);

CaseOutcome verify_case(VerificationCase const& c, TensorConfig const& config);
CatalogReport verify(VerifyOptions const& options);

nlohmann::json to_json(CatalogReport const& r, bool with_timing = false);
std::string catalog_markdown(CatalogReport const& r);
std::string catalog_listing_markdown(std::vector<VerificationCase> const& cases);

}  // namespace tsq
