#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orchard/ast.hpp"
#include "orchard/random.hpp"

namespace orchard {

// The two operator families. A corpus uses one family throughout, plus COPY
// in second trees when the difficulty allows it.
enum class Family { FirstLast, MinMax };

std::string_view family_name(Family family);  // "fl" / "mm"
std::optional<Family> family_from_name(std::string_view name);
std::array<OperatorKind, 2> family_operators(Family family);

// Difficulty presets: easy -> c = 0, med -> c = 0.5, hard -> c = 1.
std::optional<double> copy_prob_for_difficulty(std::string_view name);

struct GenConfig {
  Family family = Family::FirstLast;
  double copy_prob = 0.0;  // c, probability a second-tree terminal slot is COPY
  int depth = 3;           // exact target depth, >= 2
  double branch_prob = 0.5;
  std::uint64_t seed = 0;
  std::uint64_t count = 1;
};

struct TreeParams {
  int depth = 2;
  Family family = Family::FirstLast;
  double copy_prob = 0.0;
  double branch_prob = 0.5;
  // Node count of the referenced tree; present iff copy_prob > 0.
  std::optional<std::size_t> ref_node_count;
};

// Terminal-slot decisions made while sampling, for distribution checks.
struct SampleStats {
  std::size_t terminal_slots = 0;
  std::size_t copy_slots = 0;
};

// Binary construction: every operator node has a left and a right child
// slot, and the operand lists of the returned tree are the flattened slot
// contents (so arities range over 2..4). One uniformly chosen slot per
// level stays on a forced-branch spine until the remaining budget reaches
// 2, which pins the depth at exactly params.depth; every other slot
// branches with branch_prob while the budget allows. A terminal slot
// becomes a COPY reference with probability copy_prob, otherwise one or
// two digits (fair coin), each uniform over 0-9.
ExprTree sample_tree(const TreeParams& params, rng::Engine& engine, SampleStats* stats = nullptr);

// first: COPY-free tree of cfg.depth; second: same depth, COPY slots drawn
// with cfg.copy_prob against the first tree's node count; answer filled in.
SequencePair sample_pair(const GenConfig& cfg, rng::Engine& engine,
                         SampleStats* second_stats = nullptr);

struct DepthMix {
  int depth = 3;
  double weight = 1.0;
};

struct SplitSpec {
  std::string name;
  std::uint64_t count = 0;
  std::vector<DepthMix> depths;
};

// Exact per-depth quotas for a split (largest-remainder rounding of the
// weights), in the order the depths were listed.
std::vector<std::pair<int, std::uint64_t>> depth_quotas(const SplitSpec& split);

// Per-line depth assignment: round-robin over the listed depths, skipping
// ones whose quota is exhausted. Equal weights interleave the depths
// cyclically, which keeps any prefix of the split close to the target mix.
std::vector<int> depth_schedule(const SplitSpec& split);

// The published layout: train 500k over depths 3-6 in equal proportions,
// valid 50k over the same mix, and one 50k test bin per depth in 3..12.
// scale multiplies every count (minimum 1 line per split).
std::vector<SplitSpec> preset_paper_splits(double scale = 1.0);

struct DatasetSpec {
  Family family = Family::FirstLast;
  double copy_prob = 0.0;
  std::string difficulty = "custom";  // "easy" | "med" | "hard" | "custom"
  double branch_prob = 0.5;
  std::uint64_t seed = 0;
  std::vector<SplitSpec> splits;
};

struct FileEntry {
  std::string name;  // file name within the output directory
  std::uint64_t lines = 0;
  std::uint64_t bytes = 0;
  std::string fnv1a64;  // hex content checksum
};

struct SplitResult {
  std::string name;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;  // derived split seed, for regenerating in isolation
  std::vector<std::pair<int, std::uint64_t>> depth_counts;
  FileEntry src, tgt, meta;
};

struct Manifest {
  Family family = Family::FirstLast;
  double copy_prob = 0.0;
  std::string difficulty;
  double branch_prob = 0.5;
  std::uint64_t seed = 0;
  std::uint64_t shard_size = 0;
  std::vector<SplitResult> splits;

  std::string to_json() const;  // deterministic, no timestamps
};

// Lines per generation shard. Fixed so that output bytes depend only on the
// dataset spec, never on the worker count.
constexpr std::uint64_t kShardSize = 8192;

// Writes <split>.src / <split>.tgt / <split>.meta per split plus
// manifest.json, generating shards concurrently on `jobs` threads
// (0 = hardware concurrency). Output is byte-deterministic in the spec.
Manifest build_dataset(const DatasetSpec& spec, const std::filesystem::path& out_dir,
                       unsigned jobs = 0);

}  // namespace orchard
