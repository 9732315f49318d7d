#include "orchard/generator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "orchard/error.hpp"
#include "orchard/evaluator.hpp"
#include "orchard/text_format.hpp"

namespace orchard {

std::string_view family_name(Family family) {
  return family == Family::FirstLast ? "fl" : "mm";
}

std::optional<Family> family_from_name(std::string_view name) {
  if (name == "fl") return Family::FirstLast;
  if (name == "mm") return Family::MinMax;
  return std::nullopt;
}

std::array<OperatorKind, 2> family_operators(Family family) {
  if (family == Family::FirstLast) return {OperatorKind::First, OperatorKind::Last};
  return {OperatorKind::Min, OperatorKind::Max};
}

std::optional<double> copy_prob_for_difficulty(std::string_view name) {
  if (name == "easy") return 0.0;
  if (name == "med") return 0.5;
  if (name == "hard") return 1.0;
  return std::nullopt;
}

namespace {

void check_tree_params(const TreeParams& p) {
  if (p.depth < 2) {
    raise(Errc::InvalidDepth, "target depth " + std::to_string(p.depth) + " < 2");
  }
  if (p.copy_prob < 0.0 || p.copy_prob > 1.0) {
    raise(Errc::InvalidSpec, "copy_prob outside [0, 1]");
  }
  if (p.branch_prob < 0.0 || p.branch_prob > 1.0) {
    raise(Errc::InvalidSpec, "branch_prob outside [0, 1]");
  }
  if (p.copy_prob > 0.0 && !p.ref_node_count.has_value()) {
    raise(Errc::MissingRefCount, "copy_prob > 0 requires ref_node_count");
  }
  if (p.ref_node_count.has_value() && *p.ref_node_count == 0) {
    raise(Errc::InvalidSpec, "ref_node_count must be positive");
  }
}

struct TreeSampler {
  const TreeParams& p;
  rng::Engine& engine;
  SampleStats* stats;

  OperatorKind pick_op() {
    return family_operators(p.family)[rng::uniform_index(engine, 2)];
  }

  void terminal_slot(std::vector<Node>& operands) {
    if (stats != nullptr) ++stats->terminal_slots;
    if (p.copy_prob > 0.0 && rng::bernoulli(engine, p.copy_prob)) {
      if (stats != nullptr) ++stats->copy_slots;
      operands.push_back(make_copy(rng::uniform_index(engine, *p.ref_node_count)));
      return;
    }
    std::size_t digits = 1 + rng::uniform_index(engine, 2);
    for (std::size_t i = 0; i < digits; ++i) {
      operands.push_back(make_digit(rng::uniform_digit(engine)));
    }
  }

  // budget = levels still available including this node's own level.
  Node op_subtree(int budget, bool on_spine) {
    OperatorKind op = pick_op();
    int spine_slot = (on_spine && budget > 2) ? static_cast<int>(rng::uniform_index(engine, 2)) : -1;
    std::vector<Node> operands;
    for (int slot = 0; slot < 2; ++slot) {
      if (slot == spine_slot) {
        operands.push_back(op_subtree(budget - 1, true));
      } else if (budget >= 3 && rng::bernoulli(engine, p.branch_prob)) {
        operands.push_back(op_subtree(budget - 1, false));
      } else {
        terminal_slot(operands);
      }
    }
    return make_op(op, std::move(operands));
  }
};

}  // namespace

ExprTree sample_tree(const TreeParams& params, rng::Engine& engine, SampleStats* stats) {
  check_tree_params(params);
  TreeSampler sampler{params, engine, stats};
  return ExprTree{sampler.op_subtree(params.depth, /*on_spine=*/true)};
}

SequencePair sample_pair(const GenConfig& cfg, rng::Engine& engine, SampleStats* second_stats) {
  TreeParams first_params{cfg.depth, cfg.family, 0.0, cfg.branch_prob, std::nullopt};
  ExprTree first = sample_tree(first_params, engine);

  TreeParams second_params{cfg.depth, cfg.family, cfg.copy_prob, cfg.branch_prob,
                           cfg.copy_prob > 0.0 ? std::optional(node_count(first)) : std::nullopt};
  ExprTree second = sample_tree(second_params, engine, second_stats);

  SequencePair pair{std::move(first), std::move(second), std::nullopt};
  pair.answer = eval_pair(pair);
  return pair;
}

std::vector<std::pair<int, std::uint64_t>> depth_quotas(const SplitSpec& split) {
  if (split.depths.empty()) raise(Errc::InvalidSpec, "split '" + split.name + "' lists no depths");
  if (split.count == 0) raise(Errc::InvalidSpec, "split '" + split.name + "' has count 0");
  double total_weight = 0.0;
  for (const DepthMix& mix : split.depths) {
    if (mix.weight <= 0.0) raise(Errc::InvalidSpec, "non-positive depth weight");
    if (mix.depth < 2) raise(Errc::InvalidSpec, "split depth " + std::to_string(mix.depth) + " < 2");
    total_weight += mix.weight;
  }

  // Largest-remainder rounding keeps the quotas exact in total.
  std::vector<std::pair<int, std::uint64_t>> quotas;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < split.depths.size(); ++i) {
    double exact = static_cast<double>(split.count) * split.depths[i].weight / total_weight;
    auto base = static_cast<std::uint64_t>(exact);
    quotas.emplace_back(split.depths[i].depth, base);
    remainders.emplace_back(exact - static_cast<double>(base), i);
    assigned += base;
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < split.count; ++k, ++assigned) {
    ++quotas[remainders[k % remainders.size()].second].second;
  }
  return quotas;
}

std::vector<int> depth_schedule(const SplitSpec& split) {
  auto quotas = depth_quotas(split);
  std::vector<int> schedule;
  schedule.reserve(split.count);
  while (schedule.size() < split.count) {
    for (auto& [depth, remaining] : quotas) {
      if (remaining > 0) {
        schedule.push_back(depth);
        --remaining;
      }
    }
  }
  return schedule;
}

std::vector<SplitSpec> preset_paper_splits(double scale) {
  if (scale <= 0.0) raise(Errc::InvalidSpec, "scale must be positive");
  auto scaled = [scale](std::uint64_t n) {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(n * scale)));
  };
  std::vector<DepthMix> train_mix{{3}, {4}, {5}, {6}};
  std::vector<SplitSpec> splits;
  splits.push_back({"train", scaled(500000), train_mix});
  splits.push_back({"valid", scaled(50000), train_mix});
  for (int d = 3; d <= 12; ++d) {
    splits.push_back({"test_d" + std::to_string(d), scaled(50000), {{d}}});
  }
  return splits;
}

namespace {

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

struct ShardText {
  std::string src, tgt, meta;
};

void generate_shard(const DatasetSpec& spec, const SplitSpec& split,
                    const std::vector<int>& schedule, std::uint64_t split_seed,
                    std::uint64_t shard, ShardText& out) {
  rng::Engine engine(rng::derive_shard_seed(split_seed, shard));
  const std::uint64_t begin = shard * kShardSize;
  const std::uint64_t end = std::min<std::uint64_t>(split.count, begin + kShardSize);
  out.src.reserve((end - begin) * 160);
  out.tgt.reserve((end - begin) * 4);
  out.meta.reserve((end - begin) * 24);
  for (std::uint64_t i = begin; i < end; ++i) {
    GenConfig cfg{spec.family, spec.copy_prob, schedule[i], spec.branch_prob, 0, 1};
    SequencePair pair = sample_pair(cfg, engine);
    const Answer& answer = *pair.answer;

    out.src += serialize(pair);
    out.src += '\n';

    out.tgt += static_cast<char>('0' + answer.first);
    out.tgt += ' ';
    out.tgt += static_cast<char>('0' + answer.second);
    out.tgt += '\n';

    out.meta += std::to_string(i + 1);
    out.meta += '\t';
    out.meta += std::to_string(schedule[i]);
    out.meta += '\t';
    out.meta += std::to_string(node_count(pair.first));
    out.meta += '\t';
    out.meta += std::to_string(copy_leaf_count(pair.second));
    out.meta += '\t';
    out.meta += static_cast<char>('0' + answer.first);
    out.meta += '\t';
    out.meta += static_cast<char>('0' + answer.second);
    out.meta += '\n';
  }
}

class ChecksummedFile {
public:
  ChecksummedFile(const std::filesystem::path& path, std::string name)
      : name_(std::move(name)), out_(path, std::ios::binary) {
    if (!out_) raise(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  }

  void append(const std::string& chunk) {
    out_.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
    if (!out_) raise(Errc::IoError, "write failed for '" + name_ + "'");
    bytes_ += chunk.size();
    state_ = rng::fnv1a64(chunk, state_);
  }

  FileEntry close(std::uint64_t lines) {
    out_.close();
    if (!out_) raise(Errc::IoError, "close failed for '" + name_ + "'");
    return FileEntry{name_, lines, bytes_, hex64(state_)};
  }

private:
  std::string name_;
  std::ofstream out_;
  std::uint64_t bytes_ = 0;
  std::uint64_t state_ = 0xCBF29CE484222325ull;
};

void check_dataset_spec(const DatasetSpec& spec) {
  if (spec.copy_prob < 0.0 || spec.copy_prob > 1.0) {
    raise(Errc::InvalidSpec, "copy_prob outside [0, 1]");
  }
  if (spec.branch_prob < 0.0 || spec.branch_prob > 1.0) {
    raise(Errc::InvalidSpec, "branch_prob outside [0, 1]");
  }
  if (spec.splits.empty()) raise(Errc::InvalidSpec, "no splits");
  for (const SplitSpec& split : spec.splits) {
    if (split.name.empty() || split.name.find('/') != std::string::npos ||
        split.name.find('\\') != std::string::npos) {
      raise(Errc::InvalidSpec, "bad split name '" + split.name + "'");
    }
    for (const SplitSpec& other : spec.splits) {
      if (&other != &split && other.name == split.name) {
        raise(Errc::InvalidSpec, "duplicate split name '" + split.name + "'");
      }
    }
    depth_quotas(split);  // validates count, depths, weights
  }
}

}  // namespace

Manifest build_dataset(const DatasetSpec& spec, const std::filesystem::path& out_dir,
                       unsigned jobs) {
  check_dataset_spec(spec);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) raise(Errc::IoError, "cannot create '" + out_dir.string() + "': " + ec.message());

  Manifest manifest{spec.family, spec.copy_prob, spec.difficulty,
                    spec.branch_prob, spec.seed, kShardSize, {}};

  unsigned workers = jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());

  for (const SplitSpec& split : spec.splits) {
    const std::uint64_t split_seed = rng::derive_split_seed(spec.seed, split.name);
    const std::vector<int> schedule = depth_schedule(split);
    const std::uint64_t shard_count = (split.count + kShardSize - 1) / kShardSize;

    std::vector<ShardText> shards(shard_count);
    std::atomic<std::uint64_t> next_shard{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
      for (;;) {
        std::uint64_t shard = next_shard.fetch_add(1);
        if (shard >= shard_count) return;
        try {
          generate_shard(spec, split, schedule, split_seed, shard, shards[shard]);
        } catch (...) {
          std::scoped_lock lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };

    std::vector<std::thread> pool;
    unsigned n = std::min<std::uint64_t>(workers, shard_count);
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    ChecksummedFile src(out_dir / (split.name + ".src"), split.name + ".src");
    ChecksummedFile tgt(out_dir / (split.name + ".tgt"), split.name + ".tgt");
    ChecksummedFile meta(out_dir / (split.name + ".meta"), split.name + ".meta");
    for (const ShardText& shard : shards) {
      src.append(shard.src);
      tgt.append(shard.tgt);
      meta.append(shard.meta);
    }

    SplitResult result;
    result.name = split.name;
    result.count = split.count;
    result.seed = split_seed;
    result.depth_counts = depth_quotas(split);
    result.src = src.close(split.count);
    result.tgt = tgt.close(split.count);
    result.meta = meta.close(split.count);
    manifest.splits.push_back(std::move(result));
  }

  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot open manifest.json for writing");
  out << manifest.to_json() << '\n';
  if (!out) raise(Errc::IoError, "write failed for manifest.json");
  return manifest;
}

std::string Manifest::to_json() const {
  nlohmann::json j;
  j["format"] = "orchard-dataset-v1";
  j["family"] = std::string(family_name(family));
  j["difficulty"] = difficulty;
  j["copy_prob"] = copy_prob;
  j["branch_prob"] = branch_prob;
  j["seed"] = seed;
  j["shard_size"] = shard_size;
  j["seed_scheme"] =
      "split_seed = splitmix64(seed ^ fnv1a64(split_name)); "
      "shard_seed = splitmix64(split_seed + 0x9E3779B97F4A7C15 * (shard_index + 1)); "
      "shards are fixed blocks of shard_size lines";
  j["splits"] = nlohmann::json::array();
  for (const SplitResult& split : splits) {
    nlohmann::json s;
    s["name"] = split.name;
    s["count"] = split.count;
    s["seed"] = split.seed;
    s["depth_counts"] = nlohmann::json::array();
    for (auto [depth, count] : split.depth_counts) {
      s["depth_counts"].push_back({{"depth", depth}, {"count", count}});
    }
    for (const FileEntry* f : {&split.src, &split.tgt, &split.meta}) {
      nlohmann::json e;
      e["name"] = f->name;
      e["lines"] = f->lines;
      e["bytes"] = f->bytes;
      e["fnv1a64"] = f->fnv1a64;
      s["files"].push_back(e);
    }
    j["splits"].push_back(std::move(s));
  }
  return j.dump(2);
}

}  // namespace orchard
