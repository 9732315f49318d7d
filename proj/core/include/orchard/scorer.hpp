#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace orchard {

// Accuracy triple for one depth bin: exact match on the first digit, the
// second digit, and both.
struct BinReport {
  int depth = 0;
  std::uint64_t n = 0;
  double acc_first = 0.0;
  double acc_second = 0.0;
  double acc_both = 0.0;
};

struct ScoreReport {
  std::vector<BinReport> bins;  // ascending depth
  BinReport aggregate;          // over all lines; depth is meaningless here
  std::uint64_t lines = 0;
  std::uint64_t malformed_predictions = 0;
};

// Line-by-line exact match of predictions against references, binned by the
// depth column of the metadata file. Prediction lines that are not two
// digit tokens score as wrong on both trees and are counted. Reference or
// metadata lines that fail to parse are errors.
ScoreReport score(const std::filesystem::path& refs_path,
                  const std::filesystem::path& preds_path,
                  const std::filesystem::path& meta_path);

// Tab-separated table: header, one row per depth bin, and a final "all"
// aggregate row.
std::string report_tsv(const ScoreReport& report);

struct DepthStats {
  int depth = 0;
  std::uint64_t n = 0;
  double tokens_mean = 0.0;
  std::uint64_t tokens_min = 0;
  std::uint64_t tokens_max = 0;
  double copy_mean = 0.0;
  std::uint64_t copy_total = 0;
};

struct CorpusSummary {
  std::uint64_t lines = 0;
  std::vector<DepthStats> per_depth;                      // ascending depth
  std::map<std::string, std::uint64_t> operator_counts;   // word -> occurrences
  std::vector<std::string> vocabulary;                    // sorted distinct lexemes

  std::string to_json() const;
};

// Token-level census of a source file: per-depth length distribution, COPY
// counts, operator frequencies, and the distinct vocabulary.
CorpusSummary stats(const std::filesystem::path& src_path,
                    const std::filesystem::path& meta_path);

}  // namespace orchard
