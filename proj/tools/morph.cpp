// morph — batch CLI for the rule-based inflection toolkit: training,
// generation, paradigm completion, dataset sampling, and scoring. Every
// command is a deterministic function of its flags and input files; all
// randomness comes from --seed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morph/align.hpp"
#include "morph/core.hpp"
#include "morph/eval.hpp"
#include "morph/inflector.hpp"
#include "morph/paradigm.hpp"
#include "morph/sampler.hpp"
#include "morph/utf8.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CliError : std::runtime_error {
  CliError(std::string code_, const std::string& what) : std::runtime_error(what), code(std::move(code_)) {}
  std::string code;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("io", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw CliError("io", "cannot read " + path.string());
  return std::move(buf).str();
}

// Writes via a temp file and renames into place so failures never leave a
// partial output behind.
void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  try {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError("io", "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw CliError("io", "cannot write " + tmp.string());
    out.close();
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

morph::ColumnOrder parse_order(const std::string& name) {
  if (name == "lemma-form-tags") return morph::ColumnOrder::LemmaFormTags;
  if (name == "lemma-tags-form") return morph::ColumnOrder::LemmaTagsForm;
  throw CliError("usage", "unknown column order: " + name);
}

struct Options {
  std::string column_order = "lemma-form-tags";
  std::uint64_t seed = 0;

  std::string input;
  std::string output;
  std::string model;
  std::string corpus;
  std::string gold;
  std::vector<std::string> pred;
  std::string masked_input;
  std::string train_file;
  std::string test_file;
  std::string out_dir;
  int task = 1;
  std::string sizes;
  double keep_prob = -1.0;
};

int cmd_train(const Options& opt) {
  auto triples = morph::parse_triples(read_file(opt.input), parse_order(opt.column_order));
  if (triples.empty()) throw CliError("data", "no training triples in " + opt.input);
  morph::Model model = morph::train(triples);
  write_file_atomic(opt.model, morph::serialize_model(model));
  std::cout << "triples=" << triples.size()
            << " orientation=" << morph::orientation_name(model.orientation) << "\n";
  return 0;
}

int cmd_inflect(const Options& opt) {
  morph::Model model = morph::parse_model(read_file(opt.model));
  auto queries = morph::parse_queries(read_file(opt.input));
  std::vector<morph::Triple> out;
  out.reserve(queries.size());
  for (auto& [lemma, bundle] : queries) {
    std::string form = morph::inflect(model, lemma, bundle);
    out.push_back(morph::Triple{std::move(lemma), std::move(bundle), std::move(form)});
  }
  std::string text = morph::serialize_triples(out, parse_order(opt.column_order));
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(opt.output, text);
    std::cout << "predictions=" << out.size() << "\n";
  }
  return 0;
}

int cmd_complete(const Options& opt) {
  morph::Model model = morph::parse_model(read_file(opt.model));
  auto paradigms = morph::parse_paradigms(read_file(opt.input));
  for (morph::Paradigm& p : paradigms) p = morph::complete(model, p);
  std::string text = morph::serialize_paradigms(paradigms);
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(opt.output, text);
    std::cout << "paradigms=" << paradigms.size() << "\n";
  }
  return 0;
}

morph::SplitSpec make_spec(const Options& opt) {
  morph::SplitSpec spec =
      opt.task == 1 ? morph::SplitSpec::task1_defaults() : morph::SplitSpec::task2_defaults();
  spec.seed = opt.seed;
  if (opt.keep_prob >= 0.0) spec.keep_probability = opt.keep_prob;
  if (!opt.sizes.empty()) {
    std::vector<std::size_t> v;
    std::stringstream ss(opt.sizes);
    std::string part;
    while (std::getline(ss, part, ',')) v.push_back(std::stoull(part));
    if (v.size() != 5) throw CliError("usage", "--sizes wants 5 comma-separated values");
    spec.low = v[0];
    spec.medium = v[1];
    spec.high = v[2];
    spec.dev = v[3];
    spec.test = v[4];
  }
  return spec;
}

morph::CountTable load_counts(const Options& opt, const std::vector<std::string>& targets) {
  if (opt.corpus.empty()) return morph::CountTable{};
  std::ifstream in(opt.corpus, std::ios::binary);
  if (!in) throw CliError("io", "cannot open " + opt.corpus);
  return morph::count_tokens(in, targets);
}

void report_split(const fs::path& dir, std::string_view name, const std::string& text) {
  fs::path path = dir / name;
  write_file_atomic(path, text);
  std::cout << name << "=" << path.string() << "\n";
}

int cmd_sample(const Options& opt) {
  morph::SplitSpec spec = make_spec(opt);
  fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  const morph::ColumnOrder order = parse_order(opt.column_order);

  if (opt.task == 1) {
    auto triples = morph::parse_triples(read_file(opt.input), order);
    std::vector<std::string> targets;
    targets.reserve(triples.size());
    for (const auto& t : triples) targets.push_back(t.form);
    morph::CountTable counts = load_counts(opt, targets);
    morph::Task1Splits splits = morph::make_task1_splits(triples, counts, spec);

    report_split(dir, "train-low.tsv", morph::serialize_triples(splits.low.triples(), order));
    if (splits.medium) {
      report_split(dir, "train-medium.tsv",
                   morph::serialize_triples(splits.medium->triples(), order));
    }
    if (splits.high) {
      report_split(dir, "train-high.tsv", morph::serialize_triples(splits.high->triples(), order));
    }
    report_split(dir, "dev.tsv", morph::serialize_triples(splits.dev.triples(), order));
    report_split(dir, "test.tsv", morph::serialize_triples(splits.test.triples(), order));
  } else {
    auto paradigms = morph::parse_paradigms(read_file(opt.input));
    std::vector<std::string> targets;
    for (const auto& p : paradigms) {
      for (const auto& cell : p.cells) {
        if (cell.form) targets.push_back(*cell.form);
      }
    }
    morph::CountTable counts = load_counts(opt, targets);
    morph::Task2Splits splits = morph::make_task2_splits(paradigms, counts, spec);

    report_split(dir, "train-low.tsv", morph::serialize_paradigms(splits.low.paradigms()));
    if (splits.medium) {
      report_split(dir, "train-medium.tsv",
                   morph::serialize_paradigms(splits.medium->paradigms()));
    }
    if (splits.high) {
      report_split(dir, "train-high.tsv", morph::serialize_paradigms(splits.high->paradigms()));
    }
    report_split(dir, "dev-input.tsv", morph::serialize_paradigms(splits.dev_input.paradigms()));
    report_split(dir, "dev-gold.tsv", morph::serialize_paradigms(splits.dev_gold.paradigms()));
    report_split(dir, "test-input.tsv",
                 morph::serialize_paradigms(splits.test_input.paradigms()));
    report_split(dir, "test-gold.tsv", morph::serialize_paradigms(splits.test_gold.paradigms()));
  }
  std::cout << "seed=" << spec.seed << "\n";
  return 0;
}

void print_report(const morph::EvalReport& report) {
  std::cout << "items scored: " << report.n_items << "\n";
  std::cout << "exact-match accuracy: " << fmt4(report.per_form_accuracy) << "\n";
  std::cout << "mean levenshtein distance: " << fmt4(report.mean_levenshtein) << "\n";
  if (report.full_paradigm_accuracy) {
    std::cout << "full-paradigm accuracy: " << fmt4(*report.full_paradigm_accuracy) << "\n";
  }
  std::cout << "accuracy=" << fmt4(report.per_form_accuracy)
            << " lev=" << fmt4(report.mean_levenshtein);
  if (report.full_paradigm_accuracy) {
    std::cout << " paradigm=" << fmt4(*report.full_paradigm_accuracy);
  }
  std::cout << " n=" << report.n_items << "\n";
}

int cmd_evaluate(const Options& opt) {
  const morph::ColumnOrder order = parse_order(opt.column_order);
  if (opt.pred.size() != 1) throw CliError("usage", "evaluate wants exactly one --pred file");
  morph::EvalReport report;
  if (opt.task == 1) {
    auto gold = morph::parse_triples(read_file(opt.gold), order);
    auto pred = morph::parse_triples(read_file(opt.pred[0]), order);
    report = morph::score_forms(gold, pred);
  } else {
    auto gold = morph::parse_paradigms(read_file(opt.gold));
    auto pred = morph::parse_paradigms(read_file(opt.pred[0]));
    if (!opt.masked_input.empty()) {
      auto masked = morph::parse_paradigms(read_file(opt.masked_input));
      report = morph::score_paradigms(gold, pred, &masked);
    } else {
      report = morph::score_paradigms(gold, pred);
    }
  }
  print_report(report);
  return 0;
}

int cmd_oracle_ensemble(const Options& opt) {
  const morph::ColumnOrder order = parse_order(opt.column_order);
  auto gold = morph::parse_triples(read_file(opt.gold), order);
  std::vector<std::string> gold_forms;
  gold_forms.reserve(gold.size());
  for (const auto& t : gold) gold_forms.push_back(t.form);

  std::vector<std::vector<std::string>> systems;
  for (const std::string& file : opt.pred) {
    auto pred = morph::parse_triples(read_file(file), order);
    if (pred.size() != gold.size()) {
      throw CliError("data", file + ": " + std::to_string(pred.size()) + " predictions for " +
                                 std::to_string(gold.size()) + " gold items");
    }
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (pred[i].lemma != gold[i].lemma || pred[i].bundle != gold[i].bundle) {
        throw CliError("data", file + " item " + std::to_string(i + 1) +
                                   " does not align with gold (" + gold[i].lemma + ", " +
                                   gold[i].bundle.key() + ")");
      }
    }
    std::vector<std::string> forms;
    forms.reserve(pred.size());
    for (auto& t : pred) forms.push_back(std::move(t.form));
    systems.push_back(std::move(forms));
  }
  double acc = morph::oracle_ensemble(systems, gold_forms);
  std::cout << "oracle_e=" << fmt4(acc) << " systems=" << systems.size() << " n=" << gold.size()
            << "\n";
  return 0;
}

int cmd_oracle_fc(const Options& opt) {
  const morph::ColumnOrder order = parse_order(opt.column_order);
  auto train = morph::parse_triples(read_file(opt.train_file), order);
  auto test = morph::parse_triples(read_file(opt.test_file), order);
  double acc = morph::oracle_feature_combination(train, test);
  std::cout << "oracle_fc=" << fmt4(acc) << " n=" << test.size() << "\n";
  return 0;
}

int cmd_stats(const Options& opt) {
  auto triples = morph::parse_triples(read_file(opt.input), parse_order(opt.column_order));
  if (triples.empty()) throw CliError("data", "no triples in " + opt.input);
  std::size_t pr = 0, su = 0, ap = 0;
  for (const auto& t : triples) {
    morph::ChangeProfile p = morph::classify_changes(
        morph::align(morph::decode_utf8(t.lemma), morph::decode_utf8(t.form)));
    pr += p.prefix_change;
    su += p.suffix_change;
    ap += p.stem_change;
  }
  const double n = static_cast<double>(triples.size());
  std::cout << "n=" << triples.size() << " pr=" << fmt2(100.0 * static_cast<double>(pr) / n)
            << " su=" << fmt2(100.0 * static_cast<double>(su) / n)
            << " ap=" << fmt2(100.0 * static_cast<double>(ap) / n) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"rule-based morphological inflection toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--column-order", opt.column_order, "triple TSV field order")
      ->check(CLI::IsMember({"lemma-form-tags", "lemma-tags-form"}))
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for all randomness")->capture_default_str();

  CLI::App* train = app.add_subcommand("train", "learn inflection rules from a triple TSV");
  train->add_option("--input", opt.input, "training triples")->required();
  train->add_option("--model-out", opt.model, "model dump to write")->required();

  CLI::App* inflect = app.add_subcommand("inflect", "generate forms for lemma/tags queries");
  inflect->add_option("--model", opt.model, "model dump")->required();
  inflect->add_option("--input", opt.input, "2-column query TSV (lemma TAB tags)")->required();
  inflect->add_option("--output", opt.output, "prediction TSV (default: stdout)");

  CLI::App* complete = app.add_subcommand("complete", "fill unfilled paradigm cells");
  complete->add_option("--model", opt.model, "model dump")->required();
  complete->add_option("--input", opt.input, "paradigm TSV with empty form fields")->required();
  complete->add_option("--output", opt.output, "completed paradigm TSV (default: stdout)");

  CLI::App* sample = app.add_subcommand("sample", "draw frequency-weighted train/dev/test splits");
  sample->add_option("--task", opt.task, "1 = triples, 2 = paradigms")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  sample->add_option("--input", opt.input, "full triple/paradigm TSV")->required();
  sample->add_option("--corpus", opt.corpus, "plain-text corpus for token counts");
  sample->add_option("--out-dir", opt.out_dir, "directory for the split files")->required();
  sample->add_option("--sizes", opt.sizes, "low,medium,high,dev,test (default per task)");
  sample->add_option("--keep-prob", opt.keep_prob, "cell keep probability (task 2)");

  CLI::App* evaluate = app.add_subcommand("evaluate", "score predictions against gold");
  evaluate->add_option("--task", opt.task, "1 = triples, 2 = paradigms")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  evaluate->add_option("--gold", opt.gold, "gold TSV")->required();
  evaluate->add_option("--pred", opt.pred, "prediction TSV")->required();
  evaluate->add_option("--input", opt.masked_input,
                       "masked input TSV (task 2: score only cells unfilled here)");

  CLI::App* oracle = app.add_subcommand("oracle", "upper-bound analyses");
  oracle->require_subcommand(1);
  CLI::App* oracle_e = oracle->add_subcommand("ensemble", "correct if any system is correct");
  oracle_e->add_option("--gold", opt.gold, "gold TSV")->required();
  oracle_e->add_option("--pred", opt.pred, "prediction TSVs (repeatable)")->required();
  CLI::App* oracle_fc =
      oracle->add_subcommand("fc", "correct iff the test bundle occurred in training");
  oracle_fc->add_option("--train", opt.train_file, "training triples")->required();
  oracle_fc->add_option("--test", opt.test_file, "test triples")->required();

  CLI::App* stats = app.add_subcommand("stats", "prefix/suffix/stem change percentages");
  stats->add_option("--input", opt.input, "triple TSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return cmd_train(opt);
    if (inflect->parsed()) return cmd_inflect(opt);
    if (complete->parsed()) return cmd_complete(opt);
    if (sample->parsed()) return cmd_sample(opt);
    if (evaluate->parsed()) return cmd_evaluate(opt);
    if (oracle->parsed()) {
      if (oracle_e->parsed()) return cmd_oracle_ensemble(opt);
      return cmd_oracle_fc(opt);
    }
    if (stats->parsed()) return cmd_stats(opt);
  } catch (const CliError& e) {
    std::cerr << "morph: error[" << e.code << "] " << e.what() << "\n";
    return 1;
  } catch (const morph::ParseError& e) {
    std::cerr << "morph: error[parse] " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "morph: error[data] " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "morph: error[io] " << e.what() << "\n";
    return 1;
  }
  return 0;
}
