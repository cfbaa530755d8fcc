#include "morph/inflector.hpp"

#include <charconv>
#include <stdexcept>

#include "morph/align.hpp"
#include "morph/utf8.hpp"

namespace morph {

std::string_view orientation_name(Orientation o) {
  return o == Orientation::Suffixing ? "suffixing" : "prefixing";
}

Orientation orientation_from_name(std::string_view name) {
  if (name == "suffixing") return Orientation::Suffixing;
  if (name == "prefixing") return Orientation::Prefixing;
  throw std::invalid_argument("unknown orientation: " + std::string(name));
}

Orientation detect_orientation(std::span<const Triple> triples) {
  if (triples.empty()) {
    throw std::invalid_argument("cannot detect orientation from no triples");
  }
  std::size_t prefix_changes = 0;
  std::size_t suffix_changes = 0;
  for (const Triple& t : triples) {
    ChangeProfile p = classify_changes(align(decode_utf8(t.lemma), decode_utf8(t.form)));
    if (p.prefix_change) ++prefix_changes;
    if (p.suffix_change) ++suffix_changes;
  }
  return prefix_changes > suffix_changes ? Orientation::Prefixing : Orientation::Suffixing;
}

Model train(std::span<const Triple> triples, Orientation orientation) {
  Model model;
  model.orientation = orientation;
  for (const Triple& t : triples) {
    std::u32string lemma = decode_utf8(t.lemma);
    std::u32string form = decode_utf8(t.form);
    if (orientation == Orientation::Prefixing) {
      lemma = reversed(lemma);
      form = reversed(form);
    }
    model.store.add_example(t.bundle, extract_rules(split_zones(align(lemma, form))));
  }
  return model;
}

Model train(std::span<const Triple> triples) {
  return train(triples, detect_orientation(triples));
}

std::string inflect(const Model& model, std::string_view lemma, const FeatureBundle& bundle) {
  if (lemma.empty()) throw std::invalid_argument("cannot inflect an empty lemma");

  std::u32string word = decode_utf8(lemma);
  if (model.orientation == Orientation::Prefixing) word = reversed(word);

  if (model.store.has_bundle(bundle)) {
    if (auto rule = model.store.best_suffix_rule(bundle, word)) {
      word.resize(word.size() - rule->pattern.size());
      word += rule->replacement;
    }
    if (auto rule = model.store.best_prefix_rule(bundle)) {
      if (word.compare(0, rule->pattern.size(), rule->pattern) == 0) {
        word = rule->replacement + word.substr(rule->pattern.size());
      }
    }
  }

  if (model.orientation == Orientation::Prefixing) word = reversed(word);
  return encode_utf8(word);
}

namespace {

void append_rule_line(std::string& out, const std::string& bundle_key, char kind,
                      std::u32string_view pattern, std::u32string_view replacement,
                      std::uint64_t count) {
  out += bundle_key;
  out += '\t';
  out += kind;
  out += '\t';
  out += encode_utf8(pattern);
  out += '\t';
  out += encode_utf8(replacement);
  out += '\t';
  out += std::to_string(count);
  out += '\n';
}

}  // namespace

std::string serialize_model(const Model& model) {
  std::string out = "#orientation\t";
  out += orientation_name(model.orientation);
  out += '\n';
  for (const auto& [key, entry] : model.store.entries()) {
    for (const auto& [rule, count] : entry.prefix) {
      append_rule_line(out, key, 'P', rule.pattern, rule.replacement, count);
    }
    for (const auto& [rule, count] : entry.suffix) {
      append_rule_line(out, key, 'S', rule.pattern, rule.replacement, count);
    }
  }
  return out;
}

Model parse_model(std::string_view text) {
  Model model;
  bool saw_header = false;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t fstart = 0;
    while (true) {
      std::size_t tab = line.find('\t', fstart);
      if (tab == std::string_view::npos) {
        fields.push_back(line.substr(fstart));
        break;
      }
      fields.push_back(line.substr(fstart, tab - fstart));
      fstart = tab + 1;
    }

    if (!saw_header) {
      if (fields.size() != 2 || fields[0] != "#orientation") {
        throw ParseError(lineno, std::string(line), "expected '#orientation' header");
      }
      model.orientation = orientation_from_name(fields[1]);
      saw_header = true;
      continue;
    }
    if (fields.size() != 5) {
      throw ParseError(lineno, std::string(line),
                       "expected 5 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(lineno, std::string(line), "empty bundle key");
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(), count);
    if (ec != std::errc() || ptr != fields[4].data() + fields[4].size() || count == 0) {
      throw ParseError(lineno, std::string(line), "bad rule count");
    }

    FeatureBundle bundle = FeatureBundle::from_key(fields[0]);
    std::u32string pattern = decode_utf8(fields[2]);
    std::u32string replacement = decode_utf8(fields[3]);
    if (fields[1] == "P") {
      model.store.add_prefix_rule(bundle, PrefixRule{std::move(pattern), std::move(replacement)},
                                  count);
    } else if (fields[1] == "S") {
      model.store.add_suffix_rule(bundle, SuffixRule{std::move(pattern), std::move(replacement)},
                                  count);
    } else {
      throw ParseError(lineno, std::string(line), "rule kind must be S or P");
    }
  }
  if (!saw_header) throw ParseError(1, "", "empty model file");
  return model;
}

}  // namespace morph
