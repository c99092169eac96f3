#include "ddp_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ddp/convert.hpp"
#include "ddp/corpus_io.hpp"
#include "ddp/error.hpp"
#include "ddp/eval.hpp"
#include "ddp/parallel.hpp"
#include "ddp/parser_model.hpp"
#include "ddp/rst.hpp"
#include "ddp/stats.hpp"
#include "ddp/text.hpp"

namespace ddp::cli {

namespace {

namespace fs = std::filesystem;

// A data problem, already formatted for the user.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bad flag value found after parsing.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string located(const std::string& path, const DataError& e) {
  if (e.line() > 0) return path + ":" + std::to_string(e.line()) + ": " + e.what();
  return path + ": " + e.what();
}

template <class Reader>
auto read_path(const std::string& path, Reader reader) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(path + ": cannot open for reading");
  try {
    return reader(in);
  } catch (const DataError& e) {
    throw Failure(located(path, e));
  }
}

std::vector<DepDocument> read_corpus(const std::string& path) {
  return read_path(path, [](std::istream& in) { return read_dep_corpus(in); });
}

// Output files are staged in memory and written together at the end, so a
// failing command leaves no partial output behind.
class Outputs {
 public:
  void add(const std::string& path, std::string content) { files_.emplace_back(path, std::move(content)); }

  void commit() {
    std::vector<std::string> written;
    for (const auto& [path, content] : files_) {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
      if (out) out.close();
      written.push_back(path);
      if (!out) {
        std::error_code ec;
        for (const auto& w : written) fs::remove(w, ec);
        throw Failure(path + ": cannot write");
      }
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

template <class Writer, class T>
std::string serialize(Writer writer, const T& value) {
  std::ostringstream out;
  writer(out, value);
  return out.str();
}

const CLI::Validator kOutputPath(
    [](std::string& p) -> std::string {
      const fs::path parent = fs::path(p).parent_path();
      if (!parent.empty() && !fs::is_directory(parent)) return "directory does not exist: " + parent.string();
      if (fs::is_directory(p)) return "output path is a directory: " + p;
      return {};
    },
    "OUTPUT");

LabelView label_view_of(const std::string& s) {
  auto v = parse_label_view(s);
  if (!v) throw Usage("--labels must be 'original' or 'unified'");
  return *v;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("DDP_SEED"); env && *env) {
    std::uint64_t v = 0;
    const std::string s(env);
    std::size_t used = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.front() == '-') throw Usage("DDP_SEED is not a non-negative integer: " + s);
    return v;
  }
  return 1;
}

struct Options {
  std::string in, out, edus, rules, review, overrides, splits, mapping, scheme = "HIT";
  std::string train, dev, parser = "graph-eisner", labels = "original", non_projective = "lift";
  std::string model, log, gold, pred, a, b, prefix, corrections, confusion;
  int jobs = 1, epochs = 10, n_train = 0, n_dev = 0, n_test = 0;
  double margin = 1.0;
  std::uint64_t seed = 1;
  bool strict = false, count_root = false, exclude_root = false, macro = false, summary = false;
  bool allow_multi_root = false;
};

int cmd_convert_rst(const Options& o) {
  auto trees = read_path(o.in, [](std::istream& in) { return read_rst_trees(in); });
  std::vector<DepDocument> docs;
  try {
    docs = parallel_map(trees, o.jobs, [](const RstDocument& t) { return rst_to_dep(t.doc_id, t.tree); });
  } catch (const DataError& e) {
    throw Failure(located(o.in, e));
  }
  Outputs files;
  files.add(o.out, format_dep_corpus(docs));
  files.commit();
  return kExitOk;
}

int cmd_convert_pdtb(const Options& o) {
  auto records = read_path(o.in, [](std::istream& in) { return read_pdtb_records(in); });
  auto edu_docs = read_path(o.edus, [](std::istream& in) { return read_edu_corpus(in); });
  auto rules = read_path(o.rules, [](std::istream& in) { return read_marker_rules(in); });
  PdtbConversionOptions options;
  if (!o.overrides.empty()) {
    options.head_overrides = read_path(o.overrides, [](std::istream& in) { return read_head_overrides(in); });
  }

  std::map<std::string, std::vector<PdtbRelationRecord>> by_doc;
  for (auto& r : records) by_doc[r.doc_id].push_back(std::move(r));
  for (const auto& [id, _] : by_doc) {
    bool found = false;
    for (const auto& d : edu_docs) found |= d.doc_id == id;
    if (!found) throw Failure(o.in + ": records for unknown document " + id);
  }

  std::vector<PdtbConversion> converted;
  try {
    converted = parallel_map(edu_docs, o.jobs, [&](const DepDocument& d) {
      static const std::vector<PdtbRelationRecord> kNone;
      auto it = by_doc.find(d.doc_id);
      const auto& recs = it == by_doc.end() ? kNone : it->second;
      return pdtb_to_dep(d.doc_id, d.edus, recs, rules, options);
    });
  } catch (const DataError& e) {
    throw Failure(located(o.in, e));
  }
  std::vector<DepDocument> docs;
  std::vector<ReviewItem> review;
  for (auto& c : converted) {
    docs.push_back(std::move(c.doc));
    for (auto& item : c.review) review.push_back(std::move(item));
  }
  Outputs files;
  files.add(o.out, format_dep_corpus(docs));
  files.add(o.review, serialize(write_review_queue, review));
  files.commit();
  return kExitOk;
}

int cmd_split_apply(const Options& o) {
  auto docs = read_corpus(o.in);
  auto splits = read_path(o.splits, [](std::istream& in) { return read_edu_splits(in); });
  for (const auto& s : splits) {
    bool found = false;
    for (const auto& d : docs) found |= d.doc_id == s.doc_id;
    if (!found) throw Failure(o.splits + ": split for unknown document " + s.doc_id);
  }
  try {
    for (auto& d : docs) d = apply_edu_splits(d, splits);
  } catch (const DataError& e) {
    throw Failure(located(o.splits, e));
  }
  Outputs files;
  files.add(o.out, format_dep_corpus(docs));
  files.commit();
  return kExitOk;
}

int cmd_map(const Options& o, std::ostream& err) {
  auto scheme = parse_scheme(o.scheme);
  if (!scheme) throw Usage("--scheme must be one of HIT, SU, SCI, UNIFIED");
  auto docs = read_corpus(o.in);
  RelationMapping mapping = o.mapping.empty()
                                ? default_mapping()
                                : read_path(o.mapping, [](std::istream& in) { return read_relation_mapping(in); });
  MappingResult result;
  try {
    result = map_relations(docs, mapping, *scheme, o.strict);
  } catch (const DataError& e) {
    throw Failure(located(o.in, e));
  }
  if (result.misses > 0) {
    err << "ddp: " << result.misses << " edges left unmapped; labels without a mapping: "
        << text::join(result.missing_labels, ", ") << '\n';
  }
  Outputs files;
  files.add(o.out, format_dep_corpus(result.docs));
  files.commit();
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const LabelView view = label_view_of(o.labels);
  auto docs = read_corpus(o.in);
  out << format_stats(corpus_stats(docs, StatsOptions{view, o.count_root}));
  return kExitOk;
}

int cmd_split(const Options& o, std::uint64_t seed) {
  auto docs = read_corpus(o.in);
  CorpusSplit parts;
  try {
    parts = split_corpus(docs, o.n_train, o.n_dev, o.n_test, seed);
  } catch (const DataError& e) {
    throw Failure(located(o.in, e));
  }
  Outputs files;
  files.add(o.prefix + ".train.ddep", format_dep_corpus(parts.train));
  files.add(o.prefix + ".dev.ddep", format_dep_corpus(parts.dev));
  files.add(o.prefix + ".test.ddep", format_dep_corpus(parts.test));
  files.commit();
  return kExitOk;
}

int cmd_train(const Options& o, std::uint64_t seed, std::ostream& out) {
  TrainConfig config;
  auto kind = parse_parser_kind(o.parser);
  if (!kind) throw Usage("--parser must be one of graph-eisner, graph-mst, transition, two-stage");
  config.kind = *kind;
  config.view = label_view_of(o.labels);
  config.epochs = o.epochs;
  config.seed = seed;
  config.margin = o.margin;
  if (o.non_projective == "lift") {
    config.non_projective = NonProjective::lift;
  } else if (o.non_projective == "skip") {
    config.non_projective = NonProjective::skip;
  } else {
    throw Usage("--non-projective must be 'lift' or 'skip'");
  }
  if (o.epochs < 0) throw Usage("--epochs must not be negative");

  auto train = read_corpus(o.train);
  std::optional<std::vector<DepDocument>> dev;
  if (!o.dev.empty()) dev = read_corpus(o.dev);

  std::string log = format_log_header();
  ParserModel model;
  try {
    model = train_parser(train, config, dev ? &*dev : nullptr,
                         [&](const TrainLogRow& row) { log += format_log_row(row); });
  } catch (const DataError& e) {
    throw Failure(located(o.train, e));
  }
  Outputs files;
  files.add(o.model, serialize(save_model, model));
  if (o.log.empty()) {
    files.commit();
    out << log;
  } else {
    files.add(o.log, log);
    files.commit();
  }
  return kExitOk;
}

int cmd_parse(const Options& o) {
  auto model = read_path(o.model, [](std::istream& in) { return load_model(in); });
  auto docs = read_path(o.in, [](std::istream& in) { return read_edu_corpus(in); });
  std::vector<DepDocument> parsed;
  try {
    parsed = parse_corpus(model, docs, o.jobs);
  } catch (const DataError& e) {
    throw Failure(located(o.in, e));
  }
  Outputs files;
  files.add(o.out, format_dep_corpus(parsed));
  files.commit();
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const LabelView view = label_view_of(o.labels);
  auto gold = read_corpus(o.gold);
  auto pred = read_corpus(o.pred);
  EvalResult r;
  try {
    r = score(gold, pred, EvalOptions{view, o.exclude_root, o.macro});
  } catch (const DataError& e) {
    throw Failure(located(o.pred, e));
  }
  out << (o.summary ? format_eval_summary(r, view) : format_eval_tsv(r, view));
  if (!o.confusion.empty()) {
    Outputs files;
    files.add(o.confusion, format_confusion_tsv(r));
    files.commit();
  }
  return kExitOk;
}

int cmd_agree(const Options& o, std::ostream& out) {
  const LabelView view = label_view_of(o.labels);
  auto a = read_corpus(o.a);
  auto b = read_corpus(o.b);
  Agreement ag;
  try {
    ag = agreement(a, b, view);
  } catch (const DataError& e) {
    throw Failure(located(o.b, e));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "UAS\t%.4f\nLAS\t%.4f\n", ag.uas, ag.las);
  out << buf;
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  auto docs = read_corpus(o.in);
  ValidationPolicy policy;
  policy.single_root_child = !o.allow_multi_root;
  std::size_t total = 0;
  for (const auto& d : docs) {
    for (const auto& v : validate_tree(d, policy)) {
      out << d.doc_id << '\t' << v.edu << '\t' << to_string(v.kind) << '\t' << v.message << '\n';
      ++total;
    }
  }
  out << total << (total == 1 ? " violation\n" : " violations\n");
  return total == 0 ? kExitOk : kExitData;
}

int cmd_fix(const Options& o) {
  auto docs = read_corpus(o.in);
  auto corrections = read_path(o.corrections, [](std::istream& in) { return read_corrections(in); });
  for (const auto& c : corrections) {
    bool found = false;
    for (const auto& d : docs) found |= d.doc_id == c.doc_id;
    if (!found) throw Failure(o.corrections + ": correction for unknown document " + c.doc_id);
  }
  try {
    for (auto& d : docs) d = apply_corrections(d, corrections);
  } catch (const DataError& e) {
    throw Failure(located(o.corrections, e));
  }
  Outputs files;
  files.add(o.out, format_dep_corpus(docs));
  files.commit();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discourse dependency toolkit", "ddp"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto in_file = [&](CLI::App* sub, const std::string& flag, std::string& target, const std::string& help) {
    return sub->add_option(flag, target, help)->required()->check(CLI::ExistingFile);
  };
  auto out_file = [&](CLI::App* sub, const std::string& flag, std::string& target, const std::string& help) {
    return sub->add_option(flag, target, help)->required()->check(kOutputPath);
  };
  auto jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  };

  auto* convert = app.add_subcommand("convert", "Convert annotations to dependency trees");
  convert->require_subcommand(1);
  auto* rst = convert->add_subcommand("rst", "Constituency trees (.rsx) to .ddep");
  in_file(rst, "--in", o.in, "Input trees");
  out_file(rst, "--out", o.out, "Output corpus");
  jobs(rst);
  rst->callback([&] { action = [&] { return cmd_convert_rst(o); }; });

  auto* pdtb = convert->add_subcommand("pdtb", "Relation records (.pdr) to .ddep");
  in_file(pdtb, "--in", o.in, "Relation records");
  in_file(pdtb, "--edus", o.edus, "EDU corpus");
  in_file(pdtb, "--rules", o.rules, "Discourse marker rules");
  out_file(pdtb, "--out", o.out, "Output corpus");
  out_file(pdtb, "--review", o.review, "Review queue");
  pdtb->add_option("--overrides", o.overrides, "Head-direction overrides")->check(CLI::ExistingFile);
  jobs(pdtb);
  pdtb->callback([&] { action = [&] { return cmd_convert_pdtb(o); }; });

  auto* split_apply = app.add_subcommand("split-apply", "Subdivide EDUs");
  in_file(split_apply, "--in", o.in, "Input corpus");
  in_file(split_apply, "--splits", o.splits, "EDU split records");
  out_file(split_apply, "--out", o.out, "Output corpus");
  split_apply->callback([&] { action = [&] { return cmd_split_apply(o); }; });

  auto* map = app.add_subcommand("map", "Fill unified relation labels");
  in_file(map, "--in", o.in, "Input corpus");
  map->add_option("--scheme", o.scheme, "Source scheme (HIT, SU, SCI, UNIFIED)")->required();
  map->add_option("--mapping", o.mapping, "Mapping table (default: built-in)")->check(CLI::ExistingFile);
  out_file(map, "--out", o.out, "Output corpus");
  map->add_flag("--strict", o.strict, "Fail on labels without a mapping");
  map->callback([&] { action = [&] { return cmd_map(o, err); }; });

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  in_file(stats, "--in", o.in, "Input corpus");
  stats->add_option("--labels", o.labels, "original or unified");
  stats->add_flag("--count-root", o.count_root, "Count root attachments as relations");
  stats->callback([&] { action = [&] { return cmd_stats(o, out); }; });

  auto* split = app.add_subcommand("split", "Seeded train/dev/test split");
  in_file(split, "--in", o.in, "Input corpus");
  split->add_option("--train", o.n_train, "Training documents")->required();
  split->add_option("--dev", o.n_dev, "Development documents")->required();
  split->add_option("--test", o.n_test, "Test documents")->required();
  auto* split_seed = split->add_option("--seed", o.seed, "Random seed (default: $DDP_SEED or 1)");
  split->add_option("--prefix", o.prefix, "Writes PREFIX.{train,dev,test}.ddep")->required()->check(kOutputPath);
  split->callback([&] { action = [&] { return cmd_split(o, resolve_seed(split_seed, o.seed)); }; });

  auto* train = app.add_subcommand("train", "Train a parser");
  in_file(train, "--train", o.train, "Training corpus");
  train->add_option("--dev", o.dev, "Development corpus for the log")->check(CLI::ExistingFile);
  train->add_option("--parser", o.parser, "graph-eisner, graph-mst, transition or two-stage");
  train->add_option("--labels", o.labels, "original or unified");
  train->add_option("--epochs", o.epochs, "Training epochs");
  train->add_option("--margin", o.margin, "Classifier margin");
  train->add_option("--non-projective", o.non_projective, "lift or skip");
  auto* train_seed = train->add_option("--seed", o.seed, "Random seed (default: $DDP_SEED or 1)");
  out_file(train, "--model", o.model, "Model file");
  train->add_option("--log", o.log, "Training log (default: standard output)")->check(kOutputPath);
  train->callback([&] { action = [&] { return cmd_train(o, resolve_seed(train_seed, o.seed), out); }; });

  auto* parse = app.add_subcommand("parse", "Parse EDU sequences");
  in_file(parse, "--model", o.model, "Model file");
  in_file(parse, "--in", o.in, "Input corpus (edges are ignored)");
  out_file(parse, "--out", o.out, "Output corpus");
  jobs(parse);
  parse->callback([&] { action = [&] { return cmd_parse(o); }; });

  auto* eval = app.add_subcommand("eval", "Attachment scores");
  in_file(eval, "--gold", o.gold, "Gold corpus");
  in_file(eval, "--pred", o.pred, "Predicted corpus");
  eval->add_option("--labels", o.labels, "original or unified");
  eval->add_flag("--exclude-root", o.exclude_root, "Skip EDUs attached to the root");
  eval->add_flag("--macro", o.macro, "Average over documents");
  eval->add_flag("--summary", o.summary, "Human-readable block instead of TSV");
  eval->add_option("--confusion", o.confusion, "Write the label confusion table")->check(kOutputPath);
  eval->callback([&] { action = [&] { return cmd_eval(o, out); }; });

  auto* agree = app.add_subcommand("agree", "Agreement between two annotations");
  in_file(agree, "--a", o.a, "First annotation");
  in_file(agree, "--b", o.b, "Second annotation");
  agree->add_option("--labels", o.labels, "original or unified");
  agree->callback([&] { action = [&] { return cmd_agree(o, out); }; });

  auto* validate = app.add_subcommand("validate", "Check tree invariants");
  validate->add_option("file", o.in, "Corpus")->required()->check(CLI::ExistingFile);
  validate->add_flag("--allow-multi-root", o.allow_multi_root, "Permit several EDUs under the root");
  validate->callback([&] { action = [&] { return cmd_validate(o, out); }; });

  auto* fix = app.add_subcommand("fix", "Apply manual corrections");
  in_file(fix, "--in", o.in, "Input corpus");
  in_file(fix, "--corrections", o.corrections, "Corrections file");
  out_file(fix, "--out", o.out, "Output corpus");
  fix->callback([&] { action = [&] { return cmd_fix(o); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const Usage& e) {
    err << "ddp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Failure& e) {
    err << "ddp: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    err << "ddp: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace ddp::cli
