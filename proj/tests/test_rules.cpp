#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "morph/align.hpp"
#include "morph/rules.hpp"
#include "oracles.hpp"

using namespace morph;

namespace {

FeatureBundle fb(const char* key) { return FeatureBundle::from_key(key); }

ExtractedRules extract(std::u32string_view lemma, std::u32string_view form) {
  return extract_rules(split_zones(align(lemma, form)));
}

std::set<std::pair<std::u32string, std::u32string>> suffix_set(const ExtractedRules& r) {
  std::set<std::pair<std::u32string, std::u32string>> out;
  for (const SuffixRule& s : r.suffixes) out.emplace(s.pattern, s.replacement);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("rules");

TEST_CASE("the schielen example yields its eight suffix rules and one prefix rule") {
  ExtractedRules r = extract(U"schielen", U"geschielt");
  CHECK(r.prefix.pattern == U"");
  CHECK(r.prefix.replacement == U"ge");

  const std::set<std::pair<std::u32string, std::u32string>> expected = {
      {U"n", U""},           {U"en", U"t"},           {U"len", U"lt"},
      {U"elen", U"elt"},     {U"ielen", U"ielt"},     {U"hielen", U"hielt"},
      {U"chielen", U"chielt"}, {U"schielen", U"schielt"},
  };
  CHECK(r.suffixes.size() == 8);
  CHECK(suffix_set(r) == expected);
}

TEST_CASE("identity pair yields identity rules") {
  ExtractedRules r = extract(U"a", U"a");
  CHECK(r.prefix == PrefixRule{U"", U""});
  REQUIRE(r.suffixes.size() == 1);
  CHECK(r.suffixes[0] == SuffixRule{U"a", U"a"});
}

TEST_CASE("a trailing insertion yields an insertion-only rule") {
  ExtractedRules r = extract(U"ab", U"abz");
  auto rules = suffix_set(r);
  CHECK(rules.contains({U"b", U"bz"}));
  CHECK(rules.contains({U"ab", U"abz"}));
  CHECK(rules.contains({U"", U"z"}));
  CHECK(r.suffixes.size() == 3);
}

TEST_CASE("one suffix rule per core column, each applicable to its own example") {
  std::mt19937 gen(11);
  for (int iter = 0; iter < 500; ++iter) {
    std::u32string lemma = oracles::random_string(gen, 1, 7, U"abcd");
    std::u32string form = oracles::random_string(gen, 1, 7, U"abcd");
    ZoneSplit z = split_zones(align(lemma, form));
    ExtractedRules r = extract_rules(z);
    CHECK(r.suffixes.size() == std::max<std::size_t>(z.core_columns.size(), 1));
    // Applicability on the training word itself.
    CHECK(lemma.starts_with(r.prefix.pattern));
    for (const SuffixRule& s : r.suffixes) {
      CHECK(lemma.ends_with(s.pattern));
    }
  }
}

TEST_CASE("add_example counts per exact bundle") {
  RuleStore store;
  ExtractedRules schielen = extract(U"schielen", U"geschielt");
  store.add_example(fb("V;V.PTCP;PST"), schielen);
  CHECK(store.suffix_count(fb("V;V.PTCP;PST"), SuffixRule{U"n", U""}) == 1);
  CHECK(store.prefix_count(fb("V;V.PTCP;PST"), PrefixRule{U"", U"ge"}) == 1);

  SUBCASE("adding twice doubles every count") {
    store.add_example(fb("V;V.PTCP;PST"), schielen);
    for (const SuffixRule& s : schielen.suffixes) {
      CHECK(store.suffix_count(fb("V;V.PTCP;PST"), s) == 2);
    }
    CHECK(store.prefix_count(fb("V;V.PTCP;PST"), PrefixRule{U"", U"ge"}) == 2);
  }

  SUBCASE("two lemmas sharing a rule accumulate its count") {
    store.add_example(fb("V;V.PTCP;PST"), extract(U"kaufen", U"gekauft"));
    CHECK(store.suffix_count(fb("V;V.PTCP;PST"), SuffixRule{U"en", U"t"}) == 2);
  }

  SUBCASE("no bleed across bundles") {
    store.add_example(fb("V;PST"), schielen);
    CHECK(store.suffix_count(fb("V;PST"), SuffixRule{U"n", U""}) == 1);
    CHECK(store.suffix_count(fb("V;V.PTCP;PST"), SuffixRule{U"n", U""}) == 1);
    CHECK(!store.has_bundle(fb("PST;V")));
  }
}

TEST_CASE("best_suffix_rule prefers the longest matching pattern") {
  RuleStore store;
  store.add_example(fb("V;V.PTCP;PST"), extract(U"schielen", U"geschielt"));
  auto rule = store.best_suffix_rule(fb("V;V.PTCP;PST"), U"kaufen");
  REQUIRE(rule.has_value());
  CHECK(*rule == SuffixRule{U"en", U"t"});
}

TEST_CASE("best_suffix_rule is empty for an unseen bundle or no match") {
  RuleStore store;
  store.add_example(fb("V"), extract(U"ab", U"ab"));
  CHECK(!store.best_suffix_rule(fb("N"), U"ab").has_value());
  CHECK(!store.best_suffix_rule(fb("V"), U"xyz").has_value());
}

TEST_CASE("equal-length suffix ties go to the more frequent rule") {
  RuleStore store;
  FeatureBundle b = fb("V");
  store.add_suffix_rule(b, SuffixRule{U"en", U"t"}, 3);
  store.add_suffix_rule(b, SuffixRule{U"en", U"n"}, 1);
  auto rule = store.best_suffix_rule(b, U"kaufen");
  REQUIRE(rule.has_value());
  CHECK(*rule == SuffixRule{U"en", U"t"});

  SUBCASE("full ties fall back to lexicographic order") {
    store.add_suffix_rule(b, SuffixRule{U"en", U"n"}, 2);  // now 3 vs 3
    auto tied = store.best_suffix_rule(b, U"kaufen");
    REQUIRE(tied.has_value());
    CHECK(*tied == SuffixRule{U"en", U"n"});
  }
}

TEST_CASE("longest match beats frequency") {
  RuleStore store;
  FeatureBundle b = fb("V");
  store.add_suffix_rule(b, SuffixRule{U"n", U"x"}, 100);
  store.add_suffix_rule(b, SuffixRule{U"en", U"t"}, 1);
  auto rule = store.best_suffix_rule(b, U"kaufen");
  REQUIRE(rule.has_value());
  CHECK(rule->pattern == U"en");
}

TEST_CASE("best_prefix_rule is chosen by frequency alone") {
  RuleStore store;
  FeatureBundle b = fb("V;V.PTCP;PST");
  store.add_example(b, extract(U"schielen", U"geschielt"));
  auto rule = store.best_prefix_rule(b);
  REQUIRE(rule.has_value());
  CHECK(*rule == PrefixRule{U"", U"ge"});
  CHECK(!store.best_prefix_rule(fb("N")).has_value());

  SUBCASE("higher count wins regardless of pattern") {
    store.add_prefix_rule(b, PrefixRule{U"", U"ge"}, 1);  // total 2
    store.add_prefix_rule(b, PrefixRule{U"", U""}, 5);
    auto best = store.best_prefix_rule(b);
    REQUIRE(best.has_value());
    CHECK(*best == PrefixRule{U"", U""});
  }
}

TEST_CASE("best match is at least as long as any other applicable rule") {
  std::mt19937 gen(12);
  FeatureBundle b = fb("V");
  RuleStore store;
  for (int i = 0; i < 50; ++i) {
    store.add_example(b, extract(oracles::random_string(gen, 1, 6, U"ab"),
                                 oracles::random_string(gen, 1, 6, U"ab")));
  }
  for (int i = 0; i < 200; ++i) {
    std::u32string word = oracles::random_string(gen, 1, 6, U"ab");
    auto best = store.best_suffix_rule(b, word);
    for (const auto& [rule, count] : store.entries().at("V").suffix) {
      if (word.ends_with(rule.pattern)) {
        REQUIRE(best.has_value());
        CHECK(best->pattern.size() >= rule.pattern.size());
      }
    }
  }
}

TEST_SUITE_END();
