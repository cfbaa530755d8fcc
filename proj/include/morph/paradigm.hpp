#pragma once

#include <span>
#include <vector>

#include "morph/core.hpp"
#include "morph/inflector.hpp"

namespace morph {

// Fills every unfilled cell with inflect(model, lemma, cell.bundle),
// independently per cell; filled cells pass through unchanged.
Paradigm complete(const Model& model, const Paradigm& p);

// Flattens fully filled paradigms to triples. Throws std::invalid_argument
// on an unfilled cell, naming the lemma and bundle.
std::vector<Triple> flatten_paradigms(std::span<const Paradigm> paradigms);

// Trains the inflection model on the flattened cells.
Model train_from_paradigms(std::span<const Paradigm> paradigms);

}  // namespace morph
