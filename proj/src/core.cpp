#include "morph/core.hpp"

#include <algorithm>
#include <set>

#include "morph/utf8.hpp"

namespace morph {

namespace {

bool clean_field(std::string_view s) {
  return !s.empty() && s.find('\t') == std::string_view::npos &&
         s.find('\n') == std::string_view::npos;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Yields (line_number, line) pairs, stripping one trailing '\r' per line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    if (start == text.size()) {
      break;
    }
    std::size_t end = text.find('\n', start);
    std::string_view line;
    if (end == std::string_view::npos) {
      line = text.substr(start);
      start = text.size() + 1;
    } else {
      line = text.substr(start, end - start);
      start = end + 1;
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    try {
      decode_utf8(line);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, std::string(line), e.what());
    }
    fn(lineno, line);
  }
}

FeatureBundle parse_bundle_field(std::size_t lineno, std::string_view line, std::string_view field) {
  try {
    return FeatureBundle::from_key(field);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, std::string(line), e.what());
  }
}

}  // namespace

FeatureBundle::FeatureBundle(std::vector<std::string> tags) : tags_(std::move(tags)) {
  if (tags_.empty()) throw std::invalid_argument("feature bundle has no tags");
  for (const std::string& tag : tags_) {
    if (tag.empty()) throw std::invalid_argument("empty tag in feature bundle");
    if (tag.find_first_of(";\t\n") != std::string::npos) {
      throw std::invalid_argument("tag contains ';', tab, or newline: " + tag);
    }
  }
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (i > 0) key_ += ';';
    key_ += tags_[i];
  }
}

FeatureBundle FeatureBundle::from_key(std::string_view key) {
  std::vector<std::string> tags;
  for (std::string_view part : split(key, ';')) tags.emplace_back(part);
  return FeatureBundle(std::move(tags));
}

std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::Low: return "low";
    case Condition::Medium: return "medium";
    case Condition::High: return "high";
    case Condition::Dev: return "dev";
    case Condition::Test: return "test";
  }
  return "?";
}

std::size_t Dataset::size() const {
  return std::visit([](const auto& v) { return v.size(); }, items);
}

std::vector<Triple> parse_triples(std::string_view text, ColumnOrder order) {
  std::vector<Triple> out;
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    if (line.empty()) return;
    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(lineno, std::string(line),
                       "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    std::string_view lemma = fields[0];
    std::string_view form = order == ColumnOrder::LemmaFormTags ? fields[1] : fields[2];
    std::string_view tags = order == ColumnOrder::LemmaFormTags ? fields[2] : fields[1];
    if (lemma.empty() || form.empty() || tags.empty()) {
      throw ParseError(lineno, std::string(line), "empty field");
    }
    out.push_back(Triple{std::string(lemma), parse_bundle_field(lineno, line, tags),
                         std::string(form)});
  });
  return out;
}

std::string serialize_triples(const std::vector<Triple>& triples, ColumnOrder order) {
  std::string out;
  for (const Triple& t : triples) {
    if (!clean_field(t.lemma) || !clean_field(t.form)) {
      throw std::invalid_argument("triple field empty or contains tab/newline: " + t.lemma);
    }
    out += t.lemma;
    out += '\t';
    if (order == ColumnOrder::LemmaFormTags) {
      out += t.form;
      out += '\t';
      out += t.bundle.key();
    } else {
      out += t.bundle.key();
      out += '\t';
      out += t.form;
    }
    out += '\n';
  }
  return out;
}

std::vector<Paradigm> parse_paradigms(std::string_view text) {
  std::vector<Paradigm> out;
  Paradigm current;
  std::set<std::string> seen_keys;

  auto flush = [&] {
    if (!current.cells.empty()) {
      out.push_back(std::move(current));
      current = Paradigm{};
      seen_keys.clear();
    }
  };

  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    if (line.empty()) {
      flush();
      return;
    }
    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(lineno, std::string(line),
                       "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    }
    std::string_view lemma = fields[0];
    std::string_view form = fields[1];
    std::string_view tags = fields[2];
    if (lemma.empty() || tags.empty()) {
      throw ParseError(lineno, std::string(line), "empty field");
    }
    if (!current.cells.empty() && lemma != current.lemma) flush();
    FeatureBundle bundle = parse_bundle_field(lineno, line, tags);
    if (!seen_keys.insert(bundle.key()).second) {
      throw ParseError(lineno, std::string(line),
                       "duplicate feature bundle in paradigm for '" + std::string(lemma) +
                           "': " + bundle.key());
    }
    current.lemma = std::string(lemma);
    current.cells.push_back(Paradigm::Cell{
        std::move(bundle),
        form.empty() ? std::nullopt : std::optional<std::string>(std::string(form))});
  });
  flush();
  return out;
}

std::string serialize_paradigms(const std::vector<Paradigm>& paradigms) {
  std::string out;
  bool first = true;
  for (const Paradigm& p : paradigms) {
    if (!first) out += '\n';
    first = false;
    if (!clean_field(p.lemma)) {
      throw std::invalid_argument("paradigm lemma empty or contains tab/newline");
    }
    if (p.cells.empty()) throw std::invalid_argument("paradigm without cells: " + p.lemma);
    for (const Paradigm::Cell& cell : p.cells) {
      if (cell.form && !clean_field(*cell.form)) {
        throw std::invalid_argument("cell form empty or contains tab/newline: " + p.lemma);
      }
      out += p.lemma;
      out += '\t';
      if (cell.form) out += *cell.form;
      out += '\t';
      out += cell.bundle.key();
      out += '\n';
    }
  }
  return out;
}

std::vector<std::pair<std::string, FeatureBundle>> parse_queries(std::string_view text) {
  std::vector<std::pair<std::string, FeatureBundle>> out;
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    if (line.empty()) return;
    auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(lineno, std::string(line),
                       "expected 2 tab-separated fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(lineno, std::string(line), "empty field");
    }
    out.emplace_back(std::string(fields[0]), parse_bundle_field(lineno, line, fields[1]));
  });
  return out;
}

}  // namespace morph
