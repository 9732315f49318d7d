#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orchard/error.hpp"
#include "orchard/evaluator.hpp"
#include "orchard/fuzz.hpp"
#include "orchard/generator.hpp"
#include "orchard/scorer.hpp"
#include "orchard/text_format.hpp"

namespace {

using orchard::Errc;
using orchard::raise;

// "3:6", "3,5,7" or "4" -> equally weighted depth mix.
std::vector<orchard::DepthMix> parse_depths(const std::string& text) {
  std::vector<orchard::DepthMix> mix;
  auto add = [&mix](const std::string& field) {
    std::size_t used = 0;
    int value = std::stoi(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    mix.push_back({value, 1.0});
  };
  try {
    if (auto colon = text.find(':'); colon != std::string::npos) {
      int lo = std::stoi(text.substr(0, colon));
      int hi = std::stoi(text.substr(colon + 1));
      if (lo > hi) throw std::invalid_argument(text);
      for (int d = lo; d <= hi; ++d) mix.push_back({d, 1.0});
    } else {
      std::size_t start = 0;
      while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
          add(text.substr(start));
          break;
        }
        add(text.substr(start, comma - start));
        start = comma + 1;
      }
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--depths", "expected <lo:hi> or a comma-separated list, got '" +
                                               text + "'");
  }
  return mix;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::UnreadableFile, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

constexpr const char* kSeedSchemeHelp =
    "Seeds derive as split_seed = splitmix64(seed ^ fnv1a64(split_name)) and "
    "shard_seed = splitmix64(split_seed + 0x9E3779B97F4A7C15 * (shard_index + 1)); "
    "shards are fixed blocks of 8192 lines, so any split or shard can be "
    "regenerated in isolation and output never depends on --jobs.";

struct GenerateArgs {
  std::string variant;
  std::string difficulty;
  double copy_prob = -1.0;
  bool preset_paper = false;
  double scale = 1.0;
  std::string depths;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::string out;
  unsigned jobs = 0;
};

int run_generate(const GenerateArgs& args) {
  orchard::DatasetSpec spec;
  spec.family = *orchard::family_from_name(args.variant);
  if (!args.difficulty.empty()) {
    spec.copy_prob = *orchard::copy_prob_for_difficulty(args.difficulty);
    spec.difficulty = args.difficulty;
  } else {
    spec.copy_prob = args.copy_prob;
    spec.difficulty = "custom";
  }
  spec.seed = args.seed;
  if (args.preset_paper) {
    spec.splits = orchard::preset_paper_splits(args.scale);
  } else {
    spec.splits.push_back({"custom", args.count, parse_depths(args.depths)});
  }
  orchard::Manifest manifest = orchard::build_dataset(spec, args.out, args.jobs);
  std::cout << manifest.to_json() << '\n';
  return 0;
}

int run_eval(const std::string& line, const std::string& file, bool strict) {
  auto mode = strict ? orchard::ParseMode::Strict : orchard::ParseMode::Lenient;
  std::vector<std::string> inputs;
  if (!line.empty() || file.empty()) inputs.push_back(line);
  if (!file.empty()) inputs = read_lines(file);
  for (const std::string& input : inputs) {
    orchard::SequencePair pair = orchard::parse_pair_line(input, mode);
    orchard::Answer answer = orchard::eval_pair(pair);
    std::cout << answer.first << ' ' << answer.second << '\n';
  }
  return 0;
}

int run_parse(const std::string& file, bool check, bool lenient) {
  auto mode = lenient ? orchard::ParseMode::Lenient : orchard::ParseMode::Strict;
  std::vector<std::string> lines = read_lines(file);
  std::uint64_t bad = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (check) {
      try {
        orchard::parse_pair_line(lines[i], mode);
      } catch (const orchard::Error& e) {
        ++bad;
        std::cout << (i + 1) << '\t' << e.what() << '\n';
      }
    } else {
      std::cout << orchard::serialize(orchard::parse_pair_line(lines[i], mode)) << '\n';
    }
  }
  if (check) {
    std::cout << "checked " << lines.size() << " lines: " << bad << " invalid\n";
    if (bad > 0) {
      std::cerr << "parse check failed for " << bad << " of " << lines.size() << " lines\n";
      return 1;
    }
  }
  return 0;
}

int run_score(const std::string& refs, const std::string& preds, const std::string& meta,
              const std::string& report_path) {
  orchard::ScoreReport report = orchard::score(refs, preds, meta);
  std::string tsv = orchard::report_tsv(report);
  std::cout << tsv;
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) raise(Errc::IoError, "cannot open '" + report_path + "' for writing");
    out << tsv;
  }
  if (report.malformed_predictions > 0) {
    std::cerr << "malformed prediction lines scored as wrong: " << report.malformed_predictions
              << '\n';
  }
  return 0;
}

int run_stats(const std::string& src, const std::string& meta) {
  std::cout << orchard::stats(src, meta).to_json() << '\n';
  return 0;
}

int run_fuzz_cmd(std::uint64_t n, std::uint64_t seed) {
  orchard::FuzzOptions opts;
  opts.n = n;
  opts.seed = seed;
  orchard::FuzzReport report = orchard::run_fuzz(opts);
  std::cout << "executed: " << report.executed << '\n';
  std::cout << "violations: " << (report.violation ? 1 : 0) << '\n';
  if (report.violation) {
    std::cout << "check: " << report.violation->check << '\n';
    std::cout << "detail: " << report.violation->detail << '\n';
    std::cout << "reproducer: " << report.violation->reproducer << '\n';
    std::cerr << "fuzz violation found (" << report.violation->check << ")\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orchard: generate, evaluate and score paired expression-tree sequences"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", std::string("Write dataset splits (<split>.src/.tgt/.meta + manifest.json). ") +
                      kSeedSchemeHelp);
  generate->add_option("--variant", gen.variant, "Operator family")
      ->required()
      ->check(CLI::IsMember({"fl", "mm"}));
  auto* opt_difficulty =
      generate->add_option("--difficulty", gen.difficulty, "easy (c=0), med (c=0.5), hard (c=1)")
          ->check(CLI::IsMember({"easy", "med", "hard"}));
  auto* opt_copy_prob =
      generate->add_option("--copy-prob", gen.copy_prob, "COPY probability c in [0,1]")
          ->check(CLI::Range(0.0, 1.0));
  opt_difficulty->excludes(opt_copy_prob);
  opt_copy_prob->excludes(opt_difficulty);
  std::string preset_name;
  auto* opt_preset =
      generate->add_option("--preset", preset_name,
                           "Named layout; 'paper' = train 500k (depths 3:6), valid 50k, "
                           "ten 50k test bins (depths 3..12)")
          ->check(CLI::IsMember({"paper"}));
  auto* opt_scale =
      generate->add_option("--scale", gen.scale, "Multiply preset split sizes (e.g. 0.01 for CI)")
          ->needs(opt_preset);
  auto* opt_depths =
      generate->add_option("--depths", gen.depths, "Tree depths, <lo:hi> or comma list")
          ->excludes(opt_preset);
  auto* opt_count = generate->add_option("--count", gen.count, "Lines for the custom split")
                        ->excludes(opt_preset);
  generate->add_option("--seed", gen.seed, "Master seed (default 0)");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--jobs", gen.jobs, "Worker threads (default: hardware concurrency)");

  std::string eval_line, eval_file;
  bool eval_strict = false;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate sequence pairs to their two-digit answers");
  auto* opt_line = eval->add_option("--line", eval_line, "One sequence pair");
  auto* opt_file = eval->add_option("--file", eval_file, "File with one pair per line");
  opt_line->excludes(opt_file);
  opt_file->excludes(opt_line);
  eval->add_flag("--strict", eval_strict, "Reject the bare '[ COPY n ]' second sentence");

  std::string parse_file;
  bool parse_check = false, parse_lenient = false;
  CLI::App* parse = app.add_subcommand("parse", "Parse pairs; canonicalize or check a corpus");
  parse->add_option("--file", parse_file, "File with one pair per line")->required();
  parse->add_flag("--check", parse_check, "Report invalid lines instead of reprinting");
  parse->add_flag("--lenient", parse_lenient, "Accept the bare '[ COPY n ]' second sentence");

  std::string score_refs, score_preds, score_meta, score_report;
  CLI::App* score = app.add_subcommand("score", "Per-depth accuracy of predictions vs references");
  score->add_option("--refs", score_refs, "Reference .tgt file")->required();
  score->add_option("--preds", score_preds, "Predictions, same line format as .tgt")->required();
  score->add_option("--meta", score_meta, "Split .meta file")->required();
  score->add_option("--report", score_report, "Also write the TSV report here");

  std::string stats_src, stats_meta;
  CLI::App* stats = app.add_subcommand("stats", "Token-level corpus summary as JSON");
  stats->add_option("--src", stats_src, "Split .src file")->required();
  stats->add_option("--meta", stats_meta, "Split .meta file")->required();

  std::uint64_t fuzz_n = 100000, fuzz_seed = 0;
  CLI::App* fuzz = app.add_subcommand(
      "fuzz", "Random pairs over all six variants, depths 2-13: round-trip, "
              "validation and dual-evaluator agreement");
  fuzz->add_option("--n", fuzz_n, "Number of pairs (default 100000)");
  fuzz->add_option("--seed", fuzz_seed, "Seed (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (generate->parsed()) {
      gen.preset_paper = preset_name == "paper";
      if (gen.difficulty.empty() && gen.copy_prob < 0.0) {
        std::cerr << "generate requires --difficulty or --copy-prob\n";
        return 2;
      }
      if (!gen.preset_paper && (opt_count->count() == 0 || opt_depths->count() == 0)) {
        std::cerr << "generate requires --count and --depths unless --preset paper is given\n";
        return 2;
      }
      return run_generate(gen);
    }
    if (eval->parsed()) {
      if (opt_line->count() == 0 && opt_file->count() == 0) {
        std::cerr << "eval requires --line or --file\n";
        return 2;
      }
      return run_eval(eval_line, eval_file, eval_strict);
    }
    if (parse->parsed()) return run_parse(parse_file, parse_check, parse_lenient);
    if (score->parsed()) return run_score(score_refs, score_preds, score_meta, score_report);
    if (stats->parsed()) return run_stats(stats_src, stats_meta);
    if (fuzz->parsed()) return run_fuzz_cmd(fuzz_n, fuzz_seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const orchard::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
