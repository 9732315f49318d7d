#include "orchard/evaluator.hpp"

#include <algorithm>
#include <deque>

#include "orchard/error.hpp"

namespace orchard {

int apply_operator(OperatorKind op, std::span<const int> operand_values) {
  if (operand_values.empty()) raise(Errc::EmptyOperandList, "operator applied to no values");
  switch (op) {
    case OperatorKind::First: return operand_values.front();
    case OperatorKind::Last: return operand_values.back();
    case OperatorKind::Min: return *std::min_element(operand_values.begin(), operand_values.end());
    case OperatorKind::Max: return *std::max_element(operand_values.begin(), operand_values.end());
    case OperatorKind::Copy: break;
  }
  raise(Errc::UnexpectedToken, "COPY is not a branching operator");
}

int eval_node(const Node& node, const LevelValueTable* table) {
  if (node.is_digit()) return node.as_digit().value;
  if (node.is_copy()) {
    if (table == nullptr) {
      raise(Errc::MissingTable, "COPY reference evaluated without a first-tree table");
    }
    std::size_t index = node.as_copy().index;
    if (index >= table->values.size()) {
      raise(Errc::IndexOutOfRange, "COPY index " + std::to_string(index) +
                                       " >= table size " + std::to_string(table->values.size()));
    }
    return table->values[index];
  }
  const OpNode& op = node.as_op();
  std::vector<int> values;
  values.reserve(op.operands.size());
  for (const Node& child : op.operands) values.push_back(eval_node(child, table));
  return apply_operator(op.op, values);
}

LevelValueTable build_table(const ExprTree& first) {
  // Level-order enumeration with child position ranges. Children of the
  // node at position i are pushed consecutively, so they always sit at
  // higher positions than i and a reverse sweep resolves bottom-up.
  std::vector<const Node*> order;
  std::vector<std::pair<std::size_t, std::size_t>> child_range;  // (first child, count)
  std::deque<const Node*> queue{&first.root};
  std::size_t next_position = 1;
  while (!queue.empty()) {
    const Node* node = queue.front();
    queue.pop_front();
    order.push_back(node);
    if (node->is_op()) {
      const auto& operands = node->as_op().operands;
      child_range.emplace_back(next_position, operands.size());
      next_position += operands.size();
      for (const Node& child : operands) queue.push_back(&child);
    } else {
      child_range.emplace_back(0, 0);
    }
  }

  LevelValueTable table;
  table.values.assign(order.size(), 0);
  for (std::size_t i = order.size(); i-- > 0;) {
    const Node* node = order[i];
    if (node->is_digit()) {
      table.values[i] = node->as_digit().value;
    } else if (node->is_copy()) {
      raise(Errc::CopyInFirstTree, "build_table requires a COPY-free tree");
    } else {
      auto [first_child, count] = child_range[i];
      table.values[i] = apply_operator(
          node->as_op().op, std::span<const int>(table.values).subspan(first_child, count));
    }
  }
  return table;
}

Answer eval_pair(const SequencePair& pair) {
  LevelValueTable table = build_table(pair.first);
  return Answer{table.values.at(0), eval_node(pair.second.root, &table)};
}

// ---------------------------------------------------------------------------
// Reference implementation. Shares nothing with the table path above beyond
// the node types: its own breadth-first walk, its own operator selection,
// and it resolves FIRST/LAST without touching the unselected operands.

namespace {

const Node* oracle_nth_level_order(const ExprTree& tree, std::size_t n) {
  std::deque<const Node*> queue{&tree.root};
  std::size_t seen = 0;
  while (!queue.empty()) {
    const Node* node = queue.front();
    queue.pop_front();
    if (seen == n) return node;
    ++seen;
    if (node->is_op()) {
      for (const Node& child : node->as_op().operands) queue.push_back(&child);
    }
  }
  raise(Errc::IndexOutOfRange, "COPY index " + std::to_string(n) +
                                   " >= first-tree node count " + std::to_string(seen));
}

int oracle_eval(const Node& node, const ExprTree* first) {
  if (node.is_digit()) return node.as_digit().value;
  if (node.is_copy()) {
    if (first == nullptr) {
      raise(Errc::MissingTable, "COPY reference evaluated without a first tree");
    }
    return oracle_eval(*oracle_nth_level_order(*first, node.as_copy().index), first);
  }
  const OpNode& op = node.as_op();
  if (op.operands.empty()) raise(Errc::EmptyOperandList, "operator node with no operands");
  switch (op.op) {
    case OperatorKind::First: return oracle_eval(op.operands.front(), first);
    case OperatorKind::Last: return oracle_eval(op.operands.back(), first);
    case OperatorKind::Min: {
      int best = oracle_eval(op.operands.front(), first);
      for (std::size_t i = 1; i < op.operands.size(); ++i) {
        best = std::min(best, oracle_eval(op.operands[i], first));
      }
      return best;
    }
    case OperatorKind::Max: {
      int best = oracle_eval(op.operands.front(), first);
      for (std::size_t i = 1; i < op.operands.size(); ++i) {
        best = std::max(best, oracle_eval(op.operands[i], first));
      }
      return best;
    }
    case OperatorKind::Copy: break;
  }
  raise(Errc::UnexpectedToken, "COPY is not a branching operator");
}

}  // namespace

Answer oracle_eval_pair(const SequencePair& pair) {
  return Answer{oracle_eval(pair.first.root, nullptr),
                oracle_eval(pair.second.root, &pair.first)};
}

}  // namespace orchard
