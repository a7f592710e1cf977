#pragma once

// Todd-Coxeter coset enumeration.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsq/group.hpp"
#include "tsq/presentation.hpp"

namespace tsq {

enum class Strategy { hlt, felsch };

std::string to_string(Strategy s);
Strategy strategy_from_string(std::string const& s);

struct EnumerationConfig {
  /// Upper bound on coset rows held at once (live plus not yet compacted).
  std::size_t max_live_cosets = 12'000'000;
  Strategy strategy = Strategy::hlt;
  /// HLT only: scan all relators without defining when the table fills.
  bool lookahead = true;
  /// Compact once this fraction of allocated rows is dead.
  double compaction_threshold = 0.25;
};

struct EnumerationStats {
  std::uint64_t total_defined = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t peak_live = 0;
  std::uint64_t final_count = 0;
  std::uint64_t lookaheads = 0;
  std::uint64_t compactions = 0;
  double wall_seconds = 0.0;
};

/// A configured resource budget was exceeded.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CosetLimitError : public ResourceLimitError {
 public:
  CosetLimitError(std::string const& what, EnumerationStats stats)
      : ResourceLimitError(what), stats_(stats) {}
  EnumerationStats const& stats() const noexcept { return stats_; }

 private:
  EnumerationStats stats_;
};

/// Complete, standardized coset table. Column 2g is generator g and column
/// 2g+1 its inverse; coset 0 is the subgroup.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(std::size_t generators, std::size_t cosets, std::vector<std::uint32_t> entries);

  std::size_t generator_count() const noexcept { return gens_; }
  std::size_t columns() const noexcept { return 2 * gens_; }
  std::size_t size() const noexcept { return cosets_; }
  std::uint32_t at(std::size_t coset, std::size_t column) const noexcept {
    return entries_[coset * 2 * gens_ + column];
  }
  std::vector<std::uint32_t> const& entries() const noexcept { return entries_; }

  std::uint32_t trace(std::uint32_t coset, Word const& w) const;
  std::uint32_t trace_letters(std::uint32_t coset, std::span<const std::uint32_t> letters) const;

  bool operator==(CosetTable const&) const = default;

 private:
  std::size_t gens_ = 0;
  std::size_t cosets_ = 0;
  std::vector<std::uint32_t> entries_;
};

struct Enumeration {
  CosetTable table;
  EnumerationStats stats;
};

/// Enumerates the cosets of the subgroup generated by `subgroup_generators`.
/// Throws CosetLimitError when more than config.max_live_cosets rows would
/// be needed.
Enumeration enumerate(Presentation const& p, std::span<const Word> subgroup_generators,
                      EnumerationConfig const& config = {});

/// Number of cosets of the subgroup.
std::size_t subgroup_index(Presentation const& p, std::span<const Word> subgroup_generators,
                           EnumerationConfig const& config = {});

/// One permutation (as an image array) per generator.
std::vector<std::vector<std::uint32_t>> permutation_rep(CosetTable const& t);

/// True when every relator and every subgroup generator closes up as
/// required; scans every coset when `sample == 0`, else that many cosets.
bool verify_table(CosetTable const& t, Presentation const& p,
                  std::span<const Word> subgroup_generators, std::size_t sample = 0);

struct RegularRepresentation {
  GroupTable group;
  /// A word over the presentation's generators for each element.
  std::vector<Word> element_words;
  EnumerationStats stats;
};

/// The group itself from its action on the cosets of the trivial subgroup.
RegularRepresentation regular_representation(Presentation const& p,
                                              EnumerationConfig const& config = {});

}  // namespace tsq
