#include "morph/align.hpp"

#include <stdexcept>

namespace morph {

namespace {

constexpr std::int64_t kInsert = 10;
constexpr std::int64_t kDelete = 10;
constexpr std::int64_t kSubstitute = 11;

std::int64_t pair_cost(char32_t a, char32_t b) { return a == b ? 0 : kSubstitute; }

}  // namespace

Alignment align(std::u32string_view lemma, std::u32string_view form) {
  if (lemma.empty() || form.empty()) {
    throw std::invalid_argument("align requires non-empty strings");
  }
  const std::size_t n = lemma.size();
  const std::size_t m = form.size();

  // suffix[i][j] = minimum cost of aligning lemma[i..) with form[j..).
  // Filling the table from the string ends lets the walk below pick the
  // preferred operation at the leftmost point of any tie.
  std::vector<std::int64_t> suffix((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return suffix[i * (m + 1) + j]; };

  at(n, m) = 0;
  for (std::size_t j = m; j-- > 0;) at(n, j) = at(n, j + 1) + kInsert;
  for (std::size_t i = n; i-- > 0;) {
    at(i, m) = at(i + 1, m) + kDelete;
    for (std::size_t j = m; j-- > 0;) {
      std::int64_t best = at(i + 1, j + 1) + pair_cost(lemma[i], form[j]);
      best = std::min(best, at(i + 1, j) + kDelete);
      best = std::min(best, at(i, j + 1) + kInsert);
      at(i, j) = best;
    }
  }

  Alignment result;
  result.cost_tenths = at(0, 0);
  result.columns.reserve(n + m);

  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    const std::int64_t here = at(i, j);
    if (i < n && j < m && at(i + 1, j + 1) + pair_cost(lemma[i], form[j]) == here) {
      result.columns.push_back(AlignColumn{lemma[i], form[j]});
      ++i;
      ++j;
    } else if (i < n && at(i + 1, j) + kDelete == here) {
      result.columns.push_back(AlignColumn{lemma[i], std::nullopt});
      ++i;
    } else {
      result.columns.push_back(AlignColumn{std::nullopt, form[j]});
      ++j;
    }
  }
  return result;
}

ZoneSplit split_zones(const Alignment& a) {
  ZoneSplit z;
  std::size_t core_begin = 0;
  while (core_begin < a.columns.size() && a.columns[core_begin].one_sided()) ++core_begin;
  for (std::size_t k = 0; k < core_begin; ++k) {
    if (a.columns[k].input) z.prefix_input.push_back(*a.columns[k].input);
    if (a.columns[k].output) z.prefix_output.push_back(*a.columns[k].output);
  }
  for (std::size_t k = core_begin; k < a.columns.size(); ++k) {
    const AlignColumn& col = a.columns[k];
    if (col.input) z.core_input.push_back(*col.input);
    if (col.output) z.core_output.push_back(*col.output);
    z.core_columns.push_back(col);
  }
  return z;
}

ChangeProfile classify_changes(const Alignment& a) {
  ZoneSplit z = split_zones(a);
  ChangeProfile p;
  p.prefix_change = z.prefix_input != z.prefix_output;

  // Trailing run of one-sided columns within the core.
  std::size_t core_end = z.core_columns.size();
  while (core_end > 0 && z.core_columns[core_end - 1].one_sided()) --core_end;
  const bool has_trailing_gaps = core_end < z.core_columns.size();
  const bool last_is_sub = core_end > 0 && z.core_columns[core_end - 1].is_substitution();
  p.suffix_change = has_trailing_gaps || last_is_sub;

  for (std::size_t k = 0; k + 1 < core_end; ++k) {
    if (z.core_columns[k].is_substitution()) {
      p.stem_change = true;
      break;
    }
  }
  return p;
}

}  // namespace morph
