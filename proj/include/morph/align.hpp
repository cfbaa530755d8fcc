#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morph {

// One column of an edit alignment; a disengaged side is a gap. No column has
// gaps on both sides.
struct AlignColumn {
  std::optional<char32_t> input;
  std::optional<char32_t> output;

  bool is_match() const { return input && output && *input == *output; }
  bool is_substitution() const { return input && output && *input != *output; }
  bool one_sided() const { return !input || !output; }

  bool operator==(const AlignColumn&) const = default;
};

// A minimum-cost edit alignment under match 0, insertion 1.0, deletion 1.0,
// substitution 1.1. Costs are kept in exact tenths so equal-cost paths
// compare exactly.
struct Alignment {
  std::vector<AlignColumn> columns;
  std::int64_t cost_tenths = 0;

  double cost() const { return static_cast<double>(cost_tenths) / 10.0; }
};

// Aligns lemma and form by the minimum-cost edit path. Both inputs must be
// non-empty (throws std::invalid_argument otherwise). Ties between
// equal-cost paths are broken by preferring match/substitution over deletion
// over insertion at the earliest point of divergence, so the result is a
// pure function of its inputs.
Alignment align(std::u32string_view lemma, std::u32string_view form);

// The alignment decomposed into a prefix zone (the maximal leading run of
// one-sided columns) and the remaining core, which covers stem and suffix.
struct ZoneSplit {
  std::u32string prefix_input;
  std::u32string prefix_output;
  std::u32string core_input;
  std::u32string core_output;
  std::vector<AlignColumn> core_columns;
};

ZoneSplit split_zones(const Alignment& a);

// Which edges of the word changed, read off the alignment geometry:
//  - prefix: the leading one-sided run pairs unequal strings;
//  - suffix: the core ends in one-sided columns, or the last column before
//    that trailing run is a substitution;
//  - stem: some core substitution sits before the region counted as the
//    suffix change.
struct ChangeProfile {
  bool prefix_change = false;
  bool suffix_change = false;
  bool stem_change = false;
};

ChangeProfile classify_changes(const Alignment& a);

}  // namespace morph
