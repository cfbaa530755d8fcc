#include "morph/paradigm.hpp"

#include <stdexcept>

namespace morph {

Paradigm complete(const Model& model, const Paradigm& p) {
  Paradigm out = p;
  for (Paradigm::Cell& cell : out.cells) {
    if (!cell.form) cell.form = inflect(model, out.lemma, cell.bundle);
  }
  return out;
}

std::vector<Triple> flatten_paradigms(std::span<const Paradigm> paradigms) {
  std::vector<Triple> out;
  for (const Paradigm& p : paradigms) {
    for (const Paradigm::Cell& cell : p.cells) {
      if (!cell.form) {
        throw std::invalid_argument("unfilled training cell: " + p.lemma + " / " +
                                    cell.bundle.key());
      }
      out.push_back(Triple{p.lemma, cell.bundle, *cell.form});
    }
  }
  return out;
}

Model train_from_paradigms(std::span<const Paradigm> paradigms) {
  return train(flatten_paradigms(paradigms));
}

}  // namespace morph
