#include "morph/eval.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "morph/utf8.hpp"

namespace morph {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({sub, row[j] + 1, row[j - 1] + 1});
    }
  }
  return row[m];
}

std::size_t levenshtein_utf8(std::string_view a, std::string_view b) {
  return levenshtein(decode_utf8(a), decode_utf8(b));
}

EvalReport score_forms(std::span<const std::pair<std::string, std::string>> pairs) {
  EvalReport r;
  r.n_items = pairs.size();
  if (pairs.empty()) return r;
  std::size_t exact = 0;
  std::size_t total_distance = 0;
  for (const auto& [gold, predicted] : pairs) {
    if (gold == predicted) {
      ++exact;
    } else {
      total_distance += levenshtein_utf8(gold, predicted);
    }
  }
  r.per_form_accuracy = static_cast<double>(exact) / static_cast<double>(pairs.size());
  r.mean_levenshtein = static_cast<double>(total_distance) / static_cast<double>(pairs.size());
  return r;
}

EvalReport score_forms(std::span<const Triple> gold, std::span<const Triple> predicted) {
  if (gold.size() != predicted.size()) {
    throw std::invalid_argument("gold has " + std::to_string(gold.size()) +
                                " items but predictions have " + std::to_string(predicted.size()));
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].lemma != predicted[i].lemma || gold[i].bundle != predicted[i].bundle) {
      throw std::invalid_argument("item " + std::to_string(i + 1) + " mismatch: gold (" +
                                  gold[i].lemma + ", " + gold[i].bundle.key() +
                                  ") vs predicted (" + predicted[i].lemma + ", " +
                                  predicted[i].bundle.key() + ")");
    }
    pairs.emplace_back(gold[i].form, predicted[i].form);
  }
  return score_forms(pairs);
}

EvalReport score_paradigms(std::span<const Paradigm> gold, std::span<const Paradigm> predicted,
                           const std::vector<Paradigm>* masked_input) {
  if (gold.size() != predicted.size() ||
      (masked_input != nullptr && masked_input->size() != gold.size())) {
    throw std::invalid_argument("paradigm counts differ between files");
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t paradigms_scored = 0;
  std::size_t paradigms_correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Paradigm& g = gold[i];
    const Paradigm& p = predicted[i];
    const Paradigm* mask = masked_input ? &(*masked_input)[i] : nullptr;
    if (g.lemma != p.lemma || g.cells.size() != p.cells.size() ||
        (mask && (mask->lemma != g.lemma || mask->cells.size() != g.cells.size()))) {
      throw std::invalid_argument("paradigm shape mismatch for lemma '" + g.lemma + "'");
    }
    bool all_correct = true;
    for (std::size_t j = 0; j < g.cells.size(); ++j) {
      if (g.cells[j].bundle != p.cells[j].bundle ||
          (mask && mask->cells[j].bundle != g.cells[j].bundle)) {
        throw std::invalid_argument("cell mismatch for lemma '" + g.lemma + "': gold bundle " +
                                    g.cells[j].bundle.key());
      }
      if (mask && mask->cells[j].form) continue;  // provided as input, not scored
      if (!g.cells[j].form || !p.cells[j].form) {
        throw std::invalid_argument("unfilled scored cell for lemma '" + g.lemma + "', bundle " +
                                    g.cells[j].bundle.key());
      }
      pairs.emplace_back(*g.cells[j].form, *p.cells[j].form);
      if (*g.cells[j].form != *p.cells[j].form) all_correct = false;
    }
    ++paradigms_scored;
    if (all_correct) ++paradigms_correct;
  }
  EvalReport r = score_forms(pairs);
  r.full_paradigm_accuracy =
      paradigms_scored == 0
          ? 0.0
          : static_cast<double>(paradigms_correct) / static_cast<double>(paradigms_scored);
  return r;
}

EvalReport macro_average(std::span<const EvalReport> reports) {
  if (reports.empty()) throw std::invalid_argument("macro_average over no reports");
  EvalReport out;
  double full_sum = 0.0;
  std::size_t full_n = 0;
  for (const EvalReport& r : reports) {
    out.per_form_accuracy += r.per_form_accuracy;
    out.mean_levenshtein += r.mean_levenshtein;
    out.n_items += r.n_items;
    if (r.full_paradigm_accuracy) {
      full_sum += *r.full_paradigm_accuracy;
      ++full_n;
    }
  }
  const double n = static_cast<double>(reports.size());
  out.per_form_accuracy /= n;
  out.mean_levenshtein /= n;
  if (full_n > 0) out.full_paradigm_accuracy = full_sum / static_cast<double>(full_n);
  return out;
}

double oracle_ensemble(std::span<const std::vector<std::string>> systems,
                       std::span<const std::string> gold) {
  if (systems.empty()) throw std::invalid_argument("oracle needs at least one system");
  for (std::size_t s = 0; s < systems.size(); ++s) {
    if (systems[s].size() != gold.size()) {
      throw std::invalid_argument("system " + std::to_string(s + 1) + " has " +
                                  std::to_string(systems[s].size()) + " predictions for " +
                                  std::to_string(gold.size()) + " gold items");
    }
  }
  if (gold.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (const auto& system : systems) {
      if (system[i] == gold[i]) {
        ++correct;
        break;
      }
    }
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

double oracle_feature_combination(std::span<const Triple> train_triples,
                                  std::span<const Triple> test_triples) {
  std::set<std::string> seen;
  for (const Triple& t : train_triples) seen.insert(t.bundle.key());
  if (test_triples.empty()) return 0.0;
  std::size_t covered = 0;
  for (const Triple& t : test_triples) {
    if (seen.contains(t.bundle.key())) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(test_triples.size());
}

}  // namespace morph
