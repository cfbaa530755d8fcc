#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morph/core.hpp"

namespace morph {

struct EvalReport {
  double per_form_accuracy = 0.0;
  double mean_levenshtein = 0.0;
  std::optional<double> full_paradigm_accuracy;
  std::size_t n_items = 0;
};

// Unit-cost edit distance over Unicode scalar values.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein_utf8(std::string_view a, std::string_view b);

// Exact-match accuracy and mean Levenshtein distance over (gold, predicted)
// pairs. Comparison is exact scalar-value equality, no normalization.
EvalReport score_forms(std::span<const std::pair<std::string, std::string>> pairs);

// Pairs the two files positionally, checking that lengths match and that
// item i has the same (lemma, bundle) on both sides; throws
// std::invalid_argument naming the first offending item.
EvalReport score_forms(std::span<const Triple> gold, std::span<const Triple> predicted);

// Scores paradigms cell by cell. When `masked_input` is given, only cells
// that were unfilled in the input are scored (provided cells are trivially
// copyable); otherwise every cell is scored. full_paradigm_accuracy is the
// fraction of paradigms whose every scored cell matches exactly. Shape
// mismatches throw std::invalid_argument naming lemma and bundle.
EvalReport score_paradigms(std::span<const Paradigm> gold, std::span<const Paradigm> predicted,
                           const std::vector<Paradigm>* masked_input = nullptr);

// Unweighted mean of each metric across per-language reports; n_items sums.
EvalReport macro_average(std::span<const EvalReport> reports);

// Fraction of items answered correctly by at least one system. Every
// system's prediction list must align with gold.
double oracle_ensemble(std::span<const std::vector<std::string>> systems,
                       std::span<const std::string> gold);

// Fraction of test triples whose exact bundle key occurred in training.
double oracle_feature_combination(std::span<const Triple> train_triples,
                                  std::span<const Triple> test_triples);

}  // namespace morph
