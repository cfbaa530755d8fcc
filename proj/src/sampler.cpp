#include "morph/sampler.hpp"

#include <deque>
#include <random>
#include <set>
#include <stdexcept>

#include "morph/unicode_tables.hpp"
#include "morph/utf8.hpp"

namespace morph {

namespace {

// All randomness in this module flows through this wrapper around
// std::mt19937_64 so the exact draw sequence is reproducible everywhere the
// standard generator is. The call order (sample, then shuffle, then coin
// flips) is part of the split-file contract; see the README.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), rejection-sampled so every value is equally
  // likely. bound must be >= 1.
  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t min = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t x = gen_();
    while (x < min) x = gen_();
    return x % bound;
  }

  bool coin(double p) { return next_unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[bounded(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

// One weighted draw: total and running sums accumulate over the remaining
// items in index order, and the first index whose running sum exceeds
// u * total is selected. This exact arithmetic order is what makes draws
// reproducible.
std::size_t draw_one(std::span<const double> weight, const std::vector<bool>& taken,
                     std::size_t remaining, SplitRng& rng) {
  double total = 0.0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    if (!taken[i]) total += weight[i];
  }
  if (!(total > 0.0)) {
    // No probability mass left (possible only with zero-probability items):
    // fall back to a uniform pick among the remaining indices.
    std::uint64_t k = rng.bounded(remaining);
    for (std::size_t i = 0; i < weight.size(); ++i) {
      if (!taken[i] && k-- == 0) return i;
    }
  }
  const double target = rng.next_unit() * total;
  double acc = 0.0;
  std::size_t last = weight.size();
  for (std::size_t i = 0; i < weight.size(); ++i) {
    if (taken[i]) continue;
    acc += weight[i];
    last = i;
    if (acc > target) return i;
  }
  return last;  // rounding pushed target to the very end
}

std::vector<std::size_t> sample_indices(std::span<const double> probabilities, std::size_t n,
                                        SplitRng& rng) {
  if (n > probabilities.size()) {
    throw std::invalid_argument("cannot draw " + std::to_string(n) + " of " +
                                std::to_string(probabilities.size()) + " items");
  }
  std::vector<bool> taken(probabilities.size(), false);
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = draw_one(probabilities, taken, probabilities.size() - k, rng);
    taken[i] = true;
    out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  const std::u32string decoded = decode_utf8(text);
  std::size_t i = 0;
  while (i < decoded.size()) {
    while (i < decoded.size() && is_whitespace(decoded[i])) ++i;
    std::size_t start = i;
    while (i < decoded.size() && !is_whitespace(decoded[i])) ++i;
    std::size_t end = i;
    while (start < end && is_punctuation(decoded[start])) ++start;
    while (end > start && is_punctuation(decoded[end - 1])) --end;
    if (start < end) {
      out.push_back(encode_utf8(std::u32string_view(decoded).substr(start, end - start)));
    }
  }
  return out;
}

CountTable count_tokens(std::istream& corpus, const std::vector<std::string>& targets) {
  // Count per distinct token sequence, then fan out to the target strings
  // (distinct targets may tokenize identically).
  std::unordered_map<std::string, std::uint64_t> single_counts;
  std::vector<std::vector<std::string>> multi_seqs;
  std::unordered_map<std::string, std::vector<std::size_t>> multi_by_last;
  std::vector<std::uint64_t> multi_counts;
  std::size_t max_len = 1;

  std::vector<std::vector<std::string>> target_seqs;
  target_seqs.reserve(targets.size());
  for (const std::string& t : targets) {
    std::vector<std::string> seq = tokenize(t);
    if (seq.size() == 1) {
      single_counts.emplace(seq[0], 0);
    } else if (seq.size() > 1) {
      max_len = std::max(max_len, seq.size());
      std::string last = seq.back();
      bool known = false;
      for (std::size_t idx : multi_by_last[last]) {
        if (multi_seqs[idx] == seq) {
          known = true;
          break;
        }
      }
      if (!known) {
        multi_by_last[last].push_back(multi_seqs.size());
        multi_seqs.push_back(seq);
        multi_counts.push_back(0);
      }
    }
    target_seqs.push_back(std::move(seq));
  }

  std::deque<std::string> window;
  std::string line;
  while (std::getline(corpus, line)) {
    for (std::string& token : tokenize(line)) {
      if (auto it = single_counts.find(token); it != single_counts.end()) ++it->second;
      window.push_back(std::move(token));
      if (window.size() > max_len) window.pop_front();
      if (auto it = multi_by_last.find(window.back()); it != multi_by_last.end()) {
        for (std::size_t idx : it->second) {
          const auto& seq = multi_seqs[idx];
          if (seq.size() > window.size()) continue;
          bool match = true;
          for (std::size_t k = 0; k < seq.size(); ++k) {
            if (window[window.size() - seq.size() + k] != seq[k]) {
              match = false;
              break;
            }
          }
          if (match) ++multi_counts[idx];
        }
      }
    }
  }
  if (corpus.bad()) throw std::runtime_error("error reading corpus stream");

  CountTable table;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto& seq = target_seqs[t];
    std::uint64_t c = 0;
    if (seq.size() == 1) {
      c = single_counts[seq[0]];
    } else if (seq.size() > 1) {
      for (std::size_t idx : multi_by_last[seq.back()]) {
        if (multi_seqs[idx] == seq) {
          c = multi_counts[idx];
          break;
        }
      }
    }
    table.counts.emplace(targets[t], c);
  }
  return table;
}

std::vector<double> unigram_distribution(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw std::invalid_argument("unigram distribution over no items");
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts) sum += c;
  const double denom = static_cast<double>(sum) + static_cast<double>(counts.size());
  std::vector<double> p;
  p.reserve(counts.size());
  for (std::uint64_t c : counts) p.push_back((static_cast<double>(c) + 1.0) / denom);
  return p;
}

std::vector<std::uint64_t> triple_counts(std::span<const Triple> triples,
                                         const CountTable& counts) {
  std::vector<std::uint64_t> out;
  out.reserve(triples.size());
  for (const Triple& t : triples) out.push_back(counts.get(t.form));
  return out;
}

std::vector<std::uint64_t> paradigm_counts(std::span<const Paradigm> paradigms,
                                           const CountTable& counts) {
  std::vector<std::uint64_t> out;
  out.reserve(paradigms.size());
  for (const Paradigm& p : paradigms) {
    std::set<std::string_view> forms;
    for (const Paradigm::Cell& cell : p.cells) {
      if (cell.form) forms.insert(*cell.form);
    }
    std::uint64_t sum = 0;
    for (std::string_view f : forms) sum += counts.get(std::string(f));
    out.push_back(sum);
  }
  return out;
}

std::vector<std::size_t> sample_without_replacement(std::span<const double> probabilities,
                                                    std::size_t n, std::uint64_t seed) {
  SplitRng rng(seed);
  return sample_indices(probabilities, n, rng);
}

namespace {

struct SplitPlan {
  std::size_t dev = 0;
  std::size_t test = 0;
  std::size_t low = 0;
  std::size_t medium = 0;  // 0 = omitted
  std::size_t high = 0;    // 0 = omitted
  std::size_t draw = 0;    // total items drawn
};

// Decides the realized split sizes. Dev/test keep their requested sizes when
// possible and shrink equally otherwise; the largest training split absorbs
// everything left over, and medium/high are dropped when they would not
// exceed the next smaller split.
SplitPlan plan_splits(std::size_t n, const SplitSpec& spec) {
  if (spec.low > spec.medium || spec.medium > spec.high) {
    throw std::invalid_argument("split sizes must satisfy low <= medium <= high");
  }
  SplitPlan plan;
  const std::size_t dev_min = spec.dev > 0 ? 1 : 0;
  const std::size_t test_min = spec.test > 0 ? 1 : 0;
  if (n < spec.low + dev_min + test_min) {
    throw std::invalid_argument("need at least " +
                                std::to_string(spec.low + dev_min + test_min) + " items, have " +
                                std::to_string(n));
  }
  if (n >= spec.low + spec.dev + spec.test) {
    plan.dev = spec.dev;
    plan.test = spec.test;
  } else {
    const std::size_t half = (n - spec.low) / 2;
    plan.dev = std::min(spec.dev, half);
    plan.test = std::min(spec.test, half);
  }
  const std::size_t avail = std::min(n - plan.dev - plan.test, spec.high);
  plan.low = std::min(spec.low, avail);
  const std::size_t medium = std::min(spec.medium, avail);
  if (medium > plan.low) plan.medium = medium;
  if (avail > medium) plan.high = avail;
  plan.draw = avail + plan.dev + plan.test;
  return plan;
}

template <typename Item>
std::vector<Item> pick(std::span<const Item> items, std::span<const std::size_t> indices) {
  std::vector<Item> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(items[i]);
  return out;
}

}  // namespace

Task1Splits make_task1_splits(std::span<const Triple> triples, const CountTable& counts,
                              const SplitSpec& spec) {
  const SplitPlan plan = plan_splits(triples.size(), spec);
  const std::vector<double> probs =
      unigram_distribution(triple_counts(triples, counts));

  SplitRng rng(spec.seed);
  std::vector<std::size_t> sample = sample_indices(probs, plan.draw, rng);

  const std::size_t train_n = plan.draw - plan.dev - plan.test;
  std::vector<std::size_t> tail(sample.begin() + static_cast<std::ptrdiff_t>(train_n),
                                sample.end());
  rng.shuffle(tail);

  auto subset = [&](std::size_t from, std::size_t count, Condition c,
                    const std::vector<std::size_t>& src) {
    return Dataset{c, pick(triples, std::span(src).subspan(from, count))};
  };

  Task1Splits out{
      .low = subset(0, plan.low, Condition::Low, sample),
      .medium = std::nullopt,
      .high = std::nullopt,
      .dev = subset(0, plan.dev, Condition::Dev, tail),
      .test = subset(plan.dev, plan.test, Condition::Test, tail),
  };
  if (plan.medium > 0) out.medium = subset(0, plan.medium, Condition::Medium, sample);
  if (plan.high > 0) out.high = subset(0, plan.high, Condition::High, sample);
  return out;
}

Task2Splits make_task2_splits(std::span<const Paradigm> paradigms, const CountTable& counts,
                              const SplitSpec& spec) {
  const SplitPlan plan = plan_splits(paradigms.size(), spec);
  const std::vector<double> probs =
      unigram_distribution(paradigm_counts(paradigms, counts));

  SplitRng rng(spec.seed);
  std::vector<std::size_t> sample = sample_indices(probs, plan.draw, rng);

  const std::size_t train_n = plan.draw - plan.dev - plan.test;
  std::vector<std::size_t> tail(sample.begin() + static_cast<std::ptrdiff_t>(train_n),
                                sample.end());
  rng.shuffle(tail);

  std::vector<Paradigm> dev_gold =
      pick(paradigms, std::span(tail).subspan(0, plan.dev));
  std::vector<Paradigm> test_gold =
      pick(paradigms, std::span(tail).subspan(plan.dev, plan.test));

  // Coin flips run in output order: all dev paradigms, then all test
  // paradigms, cells in paradigm order.
  auto mask = [&](const std::vector<Paradigm>& gold) {
    std::vector<Paradigm> masked = gold;
    for (Paradigm& p : masked) {
      for (Paradigm::Cell& cell : p.cells) {
        if (!rng.coin(spec.keep_probability)) cell.form.reset();
      }
    }
    return masked;
  };
  std::vector<Paradigm> dev_input = mask(dev_gold);
  std::vector<Paradigm> test_input = mask(test_gold);

  auto subset = [&](std::size_t from, std::size_t count, Condition c) {
    return Dataset{c, pick(paradigms, std::span(sample).subspan(from, count))};
  };

  Task2Splits out{
      .low = subset(0, plan.low, Condition::Low),
      .medium = std::nullopt,
      .high = std::nullopt,
      .dev_input = Dataset{Condition::Dev, std::move(dev_input)},
      .dev_gold = Dataset{Condition::Dev, std::move(dev_gold)},
      .test_input = Dataset{Condition::Test, std::move(test_input)},
      .test_gold = Dataset{Condition::Test, std::move(test_gold)},
  };
  if (plan.medium > 0) out.medium = subset(0, plan.medium, Condition::Medium);
  if (plan.high > 0) out.high = subset(0, plan.high, Condition::High);
  return out;
}

}  // namespace morph
