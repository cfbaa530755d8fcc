#include "morph/rules.hpp"

namespace morph {

ExtractedRules extract_rules(const ZoneSplit& z) {
  ExtractedRules out;
  out.prefix = PrefixRule{z.prefix_input, z.prefix_output};

  const std::size_t k = z.core_columns.size();
  if (k == 0) {
    out.suffixes.push_back(SuffixRule{z.core_input, z.core_output});
    return out;
  }
  // Build pattern/replacement tails right to left; index i covers columns
  // i..end.
  std::u32string pattern, replacement;
  std::vector<SuffixRule> reversed_order;
  reversed_order.reserve(k);
  for (std::size_t i = k; i-- > 0;) {
    const AlignColumn& col = z.core_columns[i];
    if (col.input) pattern.insert(pattern.begin(), *col.input);
    if (col.output) replacement.insert(replacement.begin(), *col.output);
    reversed_order.push_back(SuffixRule{pattern, replacement});
  }
  out.suffixes.assign(reversed_order.rbegin(), reversed_order.rend());
  return out;
}

void RuleStore::add_example(const FeatureBundle& bundle, const ExtractedRules& rules) {
  BundleRules& entry = by_bundle_[bundle.key()];
  ++entry.prefix[rules.prefix];
  for (const SuffixRule& rule : rules.suffixes) ++entry.suffix[rule];
}

void RuleStore::add_suffix_rule(const FeatureBundle& bundle, SuffixRule rule,
                                std::uint64_t count) {
  by_bundle_[bundle.key()].suffix[std::move(rule)] += count;
}

void RuleStore::add_prefix_rule(const FeatureBundle& bundle, PrefixRule rule,
                                std::uint64_t count) {
  by_bundle_[bundle.key()].prefix[std::move(rule)] += count;
}

namespace {

bool is_suffix_of(std::u32string_view pattern, std::u32string_view word) {
  return pattern.size() <= word.size() &&
         word.compare(word.size() - pattern.size(), pattern.size(), pattern) == 0;
}

}  // namespace

std::optional<SuffixRule> RuleStore::best_suffix_rule(const FeatureBundle& bundle,
                                                      std::u32string_view word) const {
  auto it = by_bundle_.find(bundle.key());
  if (it == by_bundle_.end()) return std::nullopt;

  const SuffixRule* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [rule, count] : it->second.suffix) {
    if (!is_suffix_of(rule.pattern, word)) continue;
    // Map order is lexicographic, so on (length, count) ties the first seen
    // rule is already the lexicographically least.
    if (best == nullptr || rule.pattern.size() > best->pattern.size() ||
        (rule.pattern.size() == best->pattern.size() && count > best_count)) {
      best = &rule;
      best_count = count;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

std::optional<PrefixRule> RuleStore::best_prefix_rule(const FeatureBundle& bundle) const {
  auto it = by_bundle_.find(bundle.key());
  if (it == by_bundle_.end()) return std::nullopt;

  const PrefixRule* best = nullptr;
  std::uint64_t best_count = 0;
  for (const auto& [rule, count] : it->second.prefix) {
    if (best == nullptr || count > best_count) {
      best = &rule;
      best_count = count;
    }
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

bool RuleStore::has_bundle(const FeatureBundle& bundle) const {
  return by_bundle_.contains(bundle.key());
}

std::uint64_t RuleStore::suffix_count(const FeatureBundle& bundle, const SuffixRule& rule) const {
  auto it = by_bundle_.find(bundle.key());
  if (it == by_bundle_.end()) return 0;
  auto rit = it->second.suffix.find(rule);
  return rit == it->second.suffix.end() ? 0 : rit->second;
}

std::uint64_t RuleStore::prefix_count(const FeatureBundle& bundle, const PrefixRule& rule) const {
  auto it = by_bundle_.find(bundle.key());
  if (it == by_bundle_.end()) return 0;
  auto rit = it->second.prefix.find(rule);
  return rit == it->second.prefix.end() ? 0 : rit->second;
}

}  // namespace morph
