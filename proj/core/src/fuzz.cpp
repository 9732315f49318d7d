#include "orchard/fuzz.hpp"

#include <utility>
#include <vector>

#include "orchard/error.hpp"
#include "orchard/evaluator.hpp"
#include "orchard/generator.hpp"
#include "orchard/text_format.hpp"

namespace orchard {

namespace {

struct Variant {
  Family family;
  double copy_prob;
};

constexpr Variant kVariants[6] = {
    {Family::FirstLast, 0.0}, {Family::FirstLast, 0.5}, {Family::FirstLast, 1.0},
    {Family::MinMax, 0.0},    {Family::MinMax, 0.5},    {Family::MinMax, 1.0},
};

// Returns the failed check, or nullopt when the pair passes.
std::optional<FuzzViolation> run_checks(const SequencePair& pair, const FuzzChecks& checks,
                                        const EvalFn& eval_override) {
  if (checks.validate) {
    auto violations = validate(pair);
    if (!violations.empty()) {
      std::string detail;
      for (const Violation& v : violations) {
        if (!detail.empty()) detail += "; ";
        detail += std::string(violation_name(v.kind)) + ": " + v.detail;
      }
      return FuzzViolation{"validate", "", detail};
    }
  }
  if (checks.round_trip) {
    try {
      SequencePair reparsed = parse_pair_line(serialize(pair));
      if (!structurally_equal(reparsed, pair)) {
        return FuzzViolation{"round-trip", "", "reparsed pair differs structurally"};
      }
    } catch (const Error& e) {
      return FuzzViolation{"round-trip", "", std::string("reparse failed: ") + e.what()};
    }
  }
  if (checks.differential) {
    Answer a = eval_override ? eval_override(pair) : eval_pair(pair);
    Answer b = oracle_eval_pair(pair);
    if (!(a == b)) {
      return FuzzViolation{"differential",
                           "",
                           "eval (" + std::to_string(a.first) + ", " + std::to_string(a.second) +
                               ") vs oracle (" + std::to_string(b.first) + ", " +
                               std::to_string(b.second) + ")"};
    }
  }
  return std::nullopt;
}

std::vector<Node*> collect_nodes(Node& root) {
  std::vector<Node*> out{&root};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i]->is_op()) {
      for (Node& child : out[i]->as_op().operands) out.push_back(&child);
    }
  }
  return out;
}

// Greedy structural shrink: keep a mutation only while the same check still
// fails. Tries, in order, dropping operands, collapsing subtrees to a
// digit, and zeroing COPY indexes, over both trees until no mutation
// applies.
SequencePair shrink(SequencePair pair, const std::string& check, const FuzzChecks& checks,
                    const EvalFn& eval_override) {
  FuzzChecks only = checks;
  only.validate = checks.validate && check == "validate";
  only.round_trip = checks.round_trip && check == "round-trip";
  only.differential = checks.differential && check == "differential";

  auto still_fails = [&](const SequencePair& candidate) {
    try {
      auto violation = run_checks(candidate, only, eval_override);
      return violation.has_value() && violation->check == check;
    } catch (const Error&) {
      return false;  // mutation broke an unrelated precondition; discard
    }
  };

  // collect_nodes positions are stable between a tree and its deep copy, so
  // mutations are applied to the copy at the matching position.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int which = 0; which < 2 && !changed; ++which) {
      ExprTree& tree = which == 0 ? pair.second : pair.first;
      std::vector<Node*> nodes = collect_nodes(tree.root);
      for (std::size_t pos = 0; pos < nodes.size() && !changed; ++pos) {
        Node* node = nodes[pos];
        if (node->is_op() && node->as_op().operands.size() > 1) {
          for (std::size_t k = 0; k < node->as_op().operands.size() && !changed; ++k) {
            SequencePair candidate = pair;
            ExprTree& ctree = which == 0 ? candidate.second : candidate.first;
            Node* cnode = collect_nodes(ctree.root)[pos];
            cnode->as_op().operands.erase(cnode->as_op().operands.begin() +
                                          static_cast<std::ptrdiff_t>(k));
            if (still_fails(candidate)) {
              pair = std::move(candidate);
              changed = true;
            }
          }
        } else if (node->is_op() && pos != 0) {
          SequencePair candidate = pair;
          ExprTree& ctree = which == 0 ? candidate.second : candidate.first;
          *collect_nodes(ctree.root)[pos] = make_digit(0);
          if (still_fails(candidate)) {
            pair = std::move(candidate);
            changed = true;
          }
        } else if (node->is_copy() && node->as_copy().index != 0) {
          SequencePair candidate = pair;
          ExprTree& ctree = which == 0 ? candidate.second : candidate.first;
          *collect_nodes(ctree.root)[pos] = make_copy(0);
          if (still_fails(candidate)) {
            pair = std::move(candidate);
            changed = true;
          }
        }
      }
    }
  }
  pair.answer.reset();
  return pair;
}

}  // namespace

FuzzReport run_fuzz(const FuzzOptions& opts, EvalFn eval_override) {
  if (opts.min_depth < 2 || opts.max_depth < opts.min_depth) {
    raise(Errc::InvalidSpec, "fuzz depth range must satisfy 2 <= min <= max");
  }
  rng::Engine engine(rng::splitmix64(opts.seed));
  FuzzReport report;
  for (std::uint64_t i = 0; i < opts.n; ++i) {
    const Variant& variant = kVariants[i % 6];
    int depth = opts.min_depth +
                static_cast<int>(rng::uniform_index(
                    engine, static_cast<std::size_t>(opts.max_depth - opts.min_depth + 1)));
    GenConfig cfg{variant.family, variant.copy_prob, depth, 0.5, 0, 1};
    SequencePair pair = sample_pair(cfg, engine);
    ++report.executed;
    if (auto violation = run_checks(pair, opts.checks, eval_override)) {
      SequencePair reduced = shrink(std::move(pair), violation->check, opts.checks, eval_override);
      violation->reproducer = serialize(reduced);
      if (auto after = run_checks(reduced, opts.checks, eval_override)) {
        violation->detail = after->detail;
      }
      report.violation = std::move(violation);
      return report;
    }
  }
  return report;
}

}  // namespace orchard
