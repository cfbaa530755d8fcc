#pragma once

#include <span>
#include <string>
#include <string_view>

#include "morph/core.hpp"
#include "morph/rules.hpp"

namespace morph {

// Largely prefixing languages are handled by reversing every string before
// training and generation, which moves the complex edge under the more
// expressive suffix rules.
enum class Orientation { Suffixing, Prefixing };

std::string_view orientation_name(Orientation o);
Orientation orientation_from_name(std::string_view name);

struct Model {
  RuleStore store;
  Orientation orientation = Orientation::Suffixing;
};

// Classifies the training data by counting triples whose alignment shows a
// prefix change versus a suffix change (on unreversed strings). Prefixing
// only on a strict majority of prefix changes; ties are suffixing. Throws
// std::invalid_argument on empty input.
Orientation detect_orientation(std::span<const Triple> triples);

// Aligns every triple (reversed when the detected orientation is
// prefixing), splits zones, extracts rules, and counts them under the
// triple's exact bundle. Deterministic.
Model train(std::span<const Triple> triples);

// Same, with the orientation pinned instead of detected.
Model train(std::span<const Triple> triples, Orientation orientation);

// Generates the inflected form for (lemma, bundle). A bundle with no stored
// rules copies the lemma. Otherwise the best matching suffix rule is applied
// (or skipped when none matches), then the most frequent prefix rule if its
// pattern is a prefix of the intermediate word. Throws std::invalid_argument
// on an empty lemma.
std::string inflect(const Model& model, std::string_view lemma, const FeatureBundle& bundle);

// Model dump: a `#orientation` header line, then one rule per line
// (`bundle_key TAB S|P TAB pattern TAB replacement TAB count`), sorted.
std::string serialize_model(const Model& model);
Model parse_model(std::string_view text);

}  // namespace morph
