#pragma once

#include <span>
#include <vector>

#include "orchard/ast.hpp"

namespace orchard {

// Resolved value of every node of the first tree, aligned with its
// level_order positions. This is the COPY lookup table.
struct LevelValueTable {
  std::vector<int> values;
};

// Value a branching operator selects over already-resolved operand values.
int apply_operator(OperatorKind op, std::span<const int> operand_values);

// DigitLeaf -> its value; OpNode -> apply_operator over the operand values,
// in operand order; CopyLeaf -> table lookup. The table must be present
// whenever the node may contain COPY references (second trees).
int eval_node(const Node& node, const LevelValueTable* table = nullptr);

// One bottom-up pass over the level-order positions of a COPY-free tree;
// values[0] is the root value.
LevelValueTable build_table(const ExprTree& first);

// (first root value, second root value resolved against the first tree's
// table). Expects a pair for which validate reported no violations.
Answer eval_pair(const SequencePair& pair);

// Independent reference implementation with the same contract: direct
// recursion, no table, re-walking the first tree for every COPY. Kept
// deliberately separate from eval_pair for differential testing.
Answer oracle_eval_pair(const SequencePair& pair);

}  // namespace orchard
