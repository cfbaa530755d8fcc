#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morph/align.hpp"
#include "morph/core.hpp"

namespace morph {

// An end-anchored rewrite: the word suffix `pattern` becomes `replacement`.
// The anchor is positional, not a literal character, so words containing
// '$' behave like any other.
struct SuffixRule {
  std::u32string pattern;
  std::u32string replacement;

  auto operator<=>(const SuffixRule&) const = default;
};

// A start-anchored rewrite of the word prefix.
struct PrefixRule {
  std::u32string pattern;
  std::u32string replacement;

  auto operator<=>(const PrefixRule&) const = default;
};

struct ExtractedRules {
  PrefixRule prefix;
  std::vector<SuffixRule> suffixes;
};

// Reads the rules off a zone split: one prefix rule pairing the two prefix
// zone strings, and one suffix rule per core column i mapping the non-gap
// input symbols of columns i..end to the non-gap output symbols. Insertion
// columns at the tail thus also yield empty-pattern rules that append a
// suffix. An empty core yields the single degenerate whole-word rule.
ExtractedRules extract_rules(const ZoneSplit& z);

// Frequency-counted rules keyed by the exact feature bundle. There is no
// generalization across bundles sharing tags. Built single-writer during
// training; read-only lookups afterwards.
class RuleStore {
 public:
  struct BundleRules {
    std::map<SuffixRule, std::uint64_t> suffix;
    std::map<PrefixRule, std::uint64_t> prefix;
  };

  void add_example(const FeatureBundle& bundle, const ExtractedRules& rules);

  // Raw counted insertion, used when loading a serialized store.
  void add_suffix_rule(const FeatureBundle& bundle, SuffixRule rule, std::uint64_t count);
  void add_prefix_rule(const FeatureBundle& bundle, PrefixRule rule, std::uint64_t count);

  // The stored suffix rule for this bundle whose pattern is a suffix of
  // `word`, preferring longest pattern, then highest count, then the
  // lexicographically least (pattern, replacement). Disengaged when the
  // bundle is absent or nothing matches.
  std::optional<SuffixRule> best_suffix_rule(const FeatureBundle& bundle,
                                             std::u32string_view word) const;

  // The most frequent prefix rule for this bundle (no longest-match
  // preference), ties to the lexicographically least.
  std::optional<PrefixRule> best_prefix_rule(const FeatureBundle& bundle) const;

  bool has_bundle(const FeatureBundle& bundle) const;
  std::uint64_t suffix_count(const FeatureBundle& bundle, const SuffixRule& rule) const;
  std::uint64_t prefix_count(const FeatureBundle& bundle, const PrefixRule& rule) const;

  const std::map<std::string, BundleRules>& entries() const { return by_bundle_; }
  bool empty() const { return by_bundle_.empty(); }

 private:
  std::map<std::string, BundleRules> by_bundle_;
};

}  // namespace morph
