#include "orchard/scorer.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "orchard/error.hpp"
#include "orchard/text_format.hpp"

namespace orchard {

namespace {

std::ifstream open_or_raise(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::UnreadableFile, "cannot open '" + path.string() + "'");
  return in;
}

// getline with CRLF tolerance.
bool next_line(std::ifstream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string> whitespace_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream stream(line);
  std::string field;
  while (stream >> field) fields.push_back(std::move(field));
  return fields;
}

bool is_digit_token(const std::string& s) {
  return s.size() == 1 && s[0] >= '0' && s[0] <= '9';
}

// "6 2" -> the two digit tokens; nullopt when the line is not exactly that.
std::optional<std::pair<std::string, std::string>> parse_target(const std::string& line) {
  auto fields = whitespace_fields(line);
  if (fields.size() != 2 || !is_digit_token(fields[0]) || !is_digit_token(fields[1])) {
    return std::nullopt;
  }
  return std::make_pair(std::move(fields[0]), std::move(fields[1]));
}

int parse_meta_depth(const std::string& line, std::uint64_t lineno,
                     const std::filesystem::path& path) {
  // Meta columns: line, depth, first-tree nodes, COPY count, answer digits.
  std::size_t tab1 = line.find('\t');
  std::size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
  if (tab1 == std::string::npos || tab2 == std::string::npos) {
    raise(Errc::MalformedLine,
          path.string() + ":" + std::to_string(lineno) + ": expected tab-separated metadata");
  }
  try {
    return std::stoi(line.substr(tab1 + 1, tab2 - tab1 - 1));
  } catch (const std::exception&) {
    raise(Errc::MalformedLine,
          path.string() + ":" + std::to_string(lineno) + ": depth column is not an integer");
  }
}

struct Tally {
  std::uint64_t n = 0, first = 0, second = 0, both = 0;
};

BinReport to_report(int depth, const Tally& t) {
  BinReport r;
  r.depth = depth;
  r.n = t.n;
  if (t.n > 0) {
    r.acc_first = static_cast<double>(t.first) / static_cast<double>(t.n);
    r.acc_second = static_cast<double>(t.second) / static_cast<double>(t.n);
    r.acc_both = static_cast<double>(t.both) / static_cast<double>(t.n);
  }
  return r;
}

}  // namespace

ScoreReport score(const std::filesystem::path& refs_path,
                  const std::filesystem::path& preds_path,
                  const std::filesystem::path& meta_path) {
  std::ifstream refs = open_or_raise(refs_path);
  std::ifstream preds = open_or_raise(preds_path);
  std::ifstream meta = open_or_raise(meta_path);

  std::map<int, Tally> bins;
  Tally total;
  std::uint64_t malformed = 0;
  std::uint64_t lineno = 0;

  std::string ref_line, pred_line, meta_line;
  for (;;) {
    bool have_ref = next_line(refs, ref_line);
    bool have_pred = next_line(preds, pred_line);
    bool have_meta = next_line(meta, meta_line);
    if (have_ref != have_pred || have_ref != have_meta) {
      raise(Errc::LineCountMismatch,
            "files end at different line counts (around line " + std::to_string(lineno + 1) + ")");
    }
    if (!have_ref) break;
    ++lineno;

    auto ref = parse_target(ref_line);
    if (!ref) {
      raise(Errc::MalformedLine, refs_path.string() + ":" + std::to_string(lineno) +
                                     ": reference is not two digit tokens");
    }
    int depth = parse_meta_depth(meta_line, lineno, meta_path);

    bool first_ok = false, second_ok = false;
    if (auto pred = parse_target(pred_line)) {
      first_ok = pred->first == ref->first;
      second_ok = pred->second == ref->second;
    } else {
      ++malformed;  // scores as wrong on both trees
    }

    for (Tally* t : {&bins[depth], &total}) {
      ++t->n;
      t->first += first_ok ? 1 : 0;
      t->second += second_ok ? 1 : 0;
      t->both += (first_ok && second_ok) ? 1 : 0;
    }
  }

  ScoreReport report;
  report.lines = lineno;
  report.malformed_predictions = malformed;
  for (const auto& [depth, tally] : bins) {
    report.bins.push_back(to_report(depth, tally));
  }
  report.aggregate = to_report(0, total);

  for (const BinReport& bin : report.bins) {
    if (bin.acc_both > std::min(bin.acc_first, bin.acc_second)) {
      throw std::logic_error("scorer invariant broken: acc_both > min(acc_first, acc_second)");
    }
  }
  return report;
}

namespace {

void append_row(std::string& out, const std::string& depth_label, const BinReport& r) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "\t%llu\t%.6f\t%.6f\t%.6f\n",
                static_cast<unsigned long long>(r.n), r.acc_first, r.acc_second, r.acc_both);
  out += depth_label;
  out += buf;
}

}  // namespace

std::string report_tsv(const ScoreReport& report) {
  std::string out = "depth\tn\tacc_first\tacc_second\tacc_both\n";
  for (const BinReport& bin : report.bins) {
    append_row(out, std::to_string(bin.depth), bin);
  }
  append_row(out, "all", report.aggregate);
  return out;
}

CorpusSummary stats(const std::filesystem::path& src_path,
                    const std::filesystem::path& meta_path) {
  std::ifstream src = open_or_raise(src_path);
  std::ifstream meta = open_or_raise(meta_path);

  struct DepthAcc {
    std::uint64_t n = 0, tokens = 0, tokens_min = 0, tokens_max = 0, copies = 0;
  };
  std::map<int, DepthAcc> per_depth;
  std::map<std::string, std::uint64_t> operator_counts;
  std::set<std::string> vocabulary;
  std::uint64_t lineno = 0;

  std::string src_line, meta_line;
  for (;;) {
    bool have_src = next_line(src, src_line);
    bool have_meta = next_line(meta, meta_line);
    if (have_src != have_meta) {
      raise(Errc::LineCountMismatch,
            "source and metadata end at different line counts (around line " +
                std::to_string(lineno + 1) + ")");
    }
    if (!have_src) break;
    ++lineno;

    std::vector<Token> tokens;
    try {
      tokens = tokenize(src_line);
    } catch (const Error& e) {
      raise(Errc::MalformedLine,
            src_path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    int depth = parse_meta_depth(meta_line, lineno, meta_path);

    std::uint64_t copies = 0;
    for (const Token& token : tokens) {
      vocabulary.insert(std::string(lexeme(token)));
      if (token.kind == Token::Kind::OpWord) {
        ++operator_counts[std::string(operator_word(token.op))];
        if (token.op == OperatorKind::Copy) ++copies;
      }
    }

    DepthAcc& acc = per_depth[depth];
    std::uint64_t len = tokens.size();
    if (acc.n == 0) {
      acc.tokens_min = len;
      acc.tokens_max = len;
    } else {
      acc.tokens_min = std::min(acc.tokens_min, len);
      acc.tokens_max = std::max(acc.tokens_max, len);
    }
    ++acc.n;
    acc.tokens += len;
    acc.copies += copies;
  }

  CorpusSummary summary;
  summary.lines = lineno;
  for (const auto& [depth, acc] : per_depth) {
    DepthStats ds;
    ds.depth = depth;
    ds.n = acc.n;
    ds.tokens_mean = static_cast<double>(acc.tokens) / static_cast<double>(acc.n);
    ds.tokens_min = acc.tokens_min;
    ds.tokens_max = acc.tokens_max;
    ds.copy_mean = static_cast<double>(acc.copies) / static_cast<double>(acc.n);
    ds.copy_total = acc.copies;
    summary.per_depth.push_back(ds);
  }
  summary.operator_counts = operator_counts;
  summary.vocabulary.assign(vocabulary.begin(), vocabulary.end());
  return summary;
}

std::string CorpusSummary::to_json() const {
  nlohmann::json j;
  j["lines"] = lines;
  j["per_depth"] = nlohmann::json::array();
  for (const DepthStats& ds : per_depth) {
    j["per_depth"].push_back({{"depth", ds.depth},
                              {"n", ds.n},
                              {"tokens_mean", ds.tokens_mean},
                              {"tokens_min", ds.tokens_min},
                              {"tokens_max", ds.tokens_max},
                              {"copy_mean", ds.copy_mean},
                              {"copy_total", ds.copy_total}});
  }
  j["operators"] = operator_counts;
  j["vocabulary"] = vocabulary;
  return j.dump(2);
}

}  // namespace orchard
