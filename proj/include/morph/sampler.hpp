#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morph/core.hpp"

namespace morph {

// Token counts per inflected-form string. Keys are the exact target strings
// handed to count_tokens; targets absent from the corpus are present with
// count 0.
struct CountTable {
  std::unordered_map<std::string, std::uint64_t> counts;

  std::uint64_t get(const std::string& form) const {
    auto it = counts.find(form);
    return it == counts.end() ? 0 : it->second;
  }
};

// Split sizes and randomness for one sampling run. Draw order is semantic:
// earlier draws land in the smaller (nested) training sets.
struct SplitSpec {
  std::uint64_t seed = 0;
  std::size_t low = 100;
  std::size_t medium = 1000;
  std::size_t high = 10000;
  std::size_t dev = 1000;
  std::size_t test = 1000;
  double keep_probability = 0.2;  // sub-task 2 cell masking

  static SplitSpec task1_defaults() { return SplitSpec{}; }
  static SplitSpec task2_defaults() {
    SplitSpec s;
    s.low = 10;
    s.medium = 50;
    s.high = 200;
    s.dev = 50;
    s.test = 50;
    return s;
  }
};

// Splits text on Unicode whitespace and strips leading/trailing punctuation
// (general category P*) from each token; tokens that strip to nothing are
// dropped. Comparison downstream is case-sensitive.
std::vector<std::string> tokenize(std::string_view text);

// Counts, for every target, how many times its token sequence occurs in the
// corpus token stream. Single-word targets count string-equal tokens;
// multiword targets count sliding-window matches. Ambiguous tokens are
// deliberately double-counted. Throws std::runtime_error on stream failure.
CountTable count_tokens(std::istream& corpus, const std::vector<std::string>& targets);

// Add-1 smoothed unigram distribution: p(i) = (c_i + 1) / (sum_j c_j + N).
// Throws std::invalid_argument on empty input.
std::vector<double> unigram_distribution(std::span<const std::uint64_t> counts);

// Per-item corpus counts: a triple is weighted by its form's count, a
// paradigm by the summed counts of its distinct filled forms.
std::vector<std::uint64_t> triple_counts(std::span<const Triple> triples,
                                         const CountTable& counts);
std::vector<std::uint64_t> paradigm_counts(std::span<const Paradigm> paradigms,
                                           const CountTable& counts);

// Draws n distinct indices, one at a time, each proportional to the
// renormalized remaining probabilities, in draw order. Deterministic for a
// given seed (std::mt19937_64; see README for the exact generator contract).
// Throws std::invalid_argument when n exceeds the number of items.
std::vector<std::size_t> sample_without_replacement(std::span<const double> probabilities,
                                                    std::size_t n, std::uint64_t seed);

struct Task1Splits {
  Dataset low;
  std::optional<Dataset> medium;
  std::optional<Dataset> high;
  Dataset dev;
  Dataset test;
};

struct Task2Splits {
  Dataset low;
  std::optional<Dataset> medium;
  std::optional<Dataset> high;
  Dataset dev_input;   // cells masked
  Dataset dev_gold;    // same paradigms, all forms retained
  Dataset test_input;
  Dataset test_gold;
};

// Draws one ordered sample of high+dev+test items; the nested training sets
// are its prefixes of sizes low/medium/high and the remaining dev+test items
// are shuffled, then split dev first. With fewer items than the full draw,
// dev/test sizes are kept when possible (shrunk equally otherwise, never
// below 1) and the largest training split becomes everything left over;
// medium/high are omitted when they would not exceed the next smaller split.
// Throws std::invalid_argument when not even low + 1 + 1 items exist.
Task1Splits make_task1_splits(std::span<const Triple> triples, const CountTable& counts,
                              const SplitSpec& spec);

// Same scheme over paradigms. Each dev/test paradigm keeps any given cell as
// input with keep_probability, independently per cell; the gold datasets
// retain every form.
Task2Splits make_task2_splits(std::span<const Paradigm> paradigms, const CountTable& counts,
                              const SplitSpec& spec);

}  // namespace morph
