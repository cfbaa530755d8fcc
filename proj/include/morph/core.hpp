#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace morph {

// Raised by the TSV readers. Carries the 1-based line number and the
// offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string content, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line),
        content_(std::move(content)) {}

  std::size_t line() const { return line_; }
  const std::string& content() const { return content_; }

 private:
  std::size_t line_;
  std::string content_;
};

// An ordered bundle of morphosyntactic tags, e.g. {"V", "PST"}. Tag order is
// significant; the semicolon-joined key is the exact-match identity used
// everywhere (no decomposition into individual tags).
class FeatureBundle {
 public:
  // Validates: at least one tag; tags non-empty and free of ';', tab, newline.
  explicit FeatureBundle(std::vector<std::string> tags);

  // Parses a semicolon-joined key such as "V;PST".
  static FeatureBundle from_key(std::string_view key);

  const std::vector<std::string>& tags() const { return tags_; }
  const std::string& key() const { return key_; }

  bool operator==(const FeatureBundle& o) const { return key_ == o.key_; }
  std::strong_ordering operator<=>(const FeatureBundle& o) const { return key_ <=> o.key_; }

 private:
  std::vector<std::string> tags_;
  std::string key_;
};

// One (lemma, feature bundle, inflected form) record. Lemma and form are
// UTF-8 and may contain spaces (multiword forms); tab and newline are
// forbidden inside fields.
struct Triple {
  std::string lemma;
  FeatureBundle bundle;
  std::string form;

  bool operator==(const Triple&) const = default;
};

// A lemma with its (bundle, form) cells; a missing form is an unfilled cell.
// Bundles within one paradigm are pairwise distinct.
struct Paradigm {
  struct Cell {
    FeatureBundle bundle;
    std::optional<std::string> form;

    bool operator==(const Cell&) const = default;
  };

  std::string lemma;
  std::vector<Cell> cells;

  bool operator==(const Paradigm&) const = default;
};

enum class Condition { Low, Medium, High, Dev, Test };

std::string_view condition_name(Condition c);

// A homogeneous collection of records for one split: triples for the
// inflection task, paradigms for paradigm completion.
struct Dataset {
  Condition condition;
  std::variant<std::vector<Triple>, std::vector<Paradigm>> items;

  const std::vector<Triple>& triples() const { return std::get<std::vector<Triple>>(items); }
  const std::vector<Paradigm>& paradigms() const {
    return std::get<std::vector<Paradigm>>(items);
  }
  std::size_t size() const;
};

// Field layout of a triple TSV line. LemmaFormTags matches the released
// shared-task files and is the default everywhere.
enum class ColumnOrder { LemmaFormTags, LemmaTagsForm };

// Reads a triple per non-blank line. Each line must have exactly 3
// tab-separated non-empty fields. Throws ParseError.
std::vector<Triple> parse_triples(std::string_view text,
                                  ColumnOrder order = ColumnOrder::LemmaFormTags);

// Inverse of parse_triples: one line per triple, trailing newline, no BOM.
// Throws std::invalid_argument on records that violate the field invariants.
std::string serialize_triples(const std::vector<Triple>& triples,
                              ColumnOrder order = ColumnOrder::LemmaFormTags);

// Reads paradigms from triple-format lines in (lemma, form, tags) order,
// where an empty form field marks an unfilled cell. Consecutive lines with
// the same lemma form one paradigm; a blank line or a lemma change starts a
// new one. Throws ParseError (duplicate bundle in a paradigm, malformed line).
std::vector<Paradigm> parse_paradigms(std::string_view text);

// One line per cell, a blank line between paradigms.
std::string serialize_paradigms(const std::vector<Paradigm>& paradigms);

// Reads 2-column query lines: lemma TAB tags. Throws ParseError.
std::vector<std::pair<std::string, FeatureBundle>> parse_queries(std::string_view text);

}  // namespace morph
