#include "orchard/ast.hpp"

#include <algorithm>
#include <deque>

namespace orchard {

OperatorCategory category(OperatorKind op) {
  switch (op) {
    case OperatorKind::First:
    case OperatorKind::Last:
      return OperatorCategory::Positional;
    case OperatorKind::Min:
    case OperatorKind::Max:
      return OperatorCategory::Comparative;
    case OperatorKind::Copy:
      return OperatorCategory::Relational;
  }
  return OperatorCategory::Relational;  // unreachable
}

std::string_view operator_word(OperatorKind op) {
  switch (op) {
    case OperatorKind::First: return "FIRST";
    case OperatorKind::Last: return "LAST";
    case OperatorKind::Min: return "MIN";
    case OperatorKind::Max: return "MAX";
    case OperatorKind::Copy: return "COPY";
  }
  return "";
}

std::optional<OperatorKind> operator_from_word(std::string_view word) {
  if (word == "FIRST") return OperatorKind::First;
  if (word == "LAST") return OperatorKind::Last;
  if (word == "MIN") return OperatorKind::Min;
  if (word == "MAX") return OperatorKind::Max;
  if (word == "COPY") return OperatorKind::Copy;
  return std::nullopt;
}

Node make_digit(int value) { return Node{DigitLeaf{value}}; }

Node make_copy(std::size_t index) { return Node{CopyLeaf{index}}; }

Node make_op(OperatorKind op, std::vector<Node> operands) {
  return Node{OpNode{op, std::move(operands)}};
}

bool structurally_equal(const SequencePair& a, const SequencePair& b) {
  return a.first == b.first && a.second == b.second;
}

std::vector<const Node*> level_order(const ExprTree& tree) {
  std::vector<const Node*> out;
  std::deque<const Node*> queue{&tree.root};
  while (!queue.empty()) {
    const Node* node = queue.front();
    queue.pop_front();
    out.push_back(node);
    if (node->is_op()) {
      for (const Node& child : node->as_op().operands) queue.push_back(&child);
    }
  }
  return out;
}

namespace {

std::size_t count_nodes(const Node& node) {
  std::size_t n = 1;
  if (node.is_op()) {
    for (const Node& child : node.as_op().operands) n += count_nodes(child);
  }
  return n;
}

std::size_t count_copies(const Node& node) {
  if (node.is_copy()) return 1;
  std::size_t n = 0;
  if (node.is_op()) {
    for (const Node& child : node.as_op().operands) n += count_copies(child);
  }
  return n;
}

}  // namespace

std::size_t node_count(const ExprTree& tree) { return count_nodes(tree.root); }

std::size_t copy_leaf_count(const ExprTree& tree) { return count_copies(tree.root); }

int depth(const Node& node) {
  if (!node.is_op()) return 1;
  int deepest = 0;
  for (const Node& child : node.as_op().operands) {
    deepest = std::max(deepest, depth(child));
  }
  return 1 + deepest;
}

int depth(const ExprTree& tree) { return depth(tree.root); }

std::string_view violation_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::CopyInFirstTree: return "CopyInFirstTree";
    case Violation::Kind::CopyIndexOutOfRange: return "CopyIndexOutOfRange";
    case Violation::Kind::DigitOutOfRange: return "DigitOutOfRange";
    case Violation::Kind::EmptyOperandList: return "EmptyOperandList";
    case Violation::Kind::NonOperatorRoot: return "NonOperatorRoot";
  }
  return "";
}

namespace {

void check_node(const Node& node, bool first_tree, std::size_t first_count,
                std::vector<Violation>& out) {
  if (node.is_digit()) {
    int v = node.as_digit().value;
    if (v < 0 || v > 9) {
      out.push_back({Violation::Kind::DigitOutOfRange,
                     "digit " + std::to_string(v) + " outside [0, 9]"});
    }
    return;
  }
  if (node.is_copy()) {
    if (first_tree) {
      out.push_back({Violation::Kind::CopyInFirstTree,
                     "COPY reference inside the first tree"});
    } else if (node.as_copy().index >= first_count) {
      out.push_back({Violation::Kind::CopyIndexOutOfRange,
                     "COPY index " + std::to_string(node.as_copy().index) +
                         " >= first-tree node count " + std::to_string(first_count)});
    }
    return;
  }
  const OpNode& op = node.as_op();
  if (op.operands.empty()) {
    out.push_back({Violation::Kind::EmptyOperandList,
                   std::string(operator_word(op.op)) + " node with no operands"});
  }
  for (const Node& child : op.operands) {
    check_node(child, first_tree, first_count, out);
  }
}

}  // namespace

std::vector<Violation> validate(const SequencePair& pair, ValidationMode mode) {
  std::vector<Violation> out;
  const std::size_t first_count = node_count(pair.first);

  if (!pair.first.root.is_op()) {
    out.push_back({Violation::Kind::NonOperatorRoot, "first tree root is not an operator node"});
  }
  check_node(pair.first.root, /*first_tree=*/true, first_count, out);

  // The lenient shorthand is a second sentence that is exactly one COPY
  // reference; everything else still needs an operator root.
  const bool copy_root_ok =
      mode == ValidationMode::Lenient && pair.second.root.is_copy();
  if (!pair.second.root.is_op() && !copy_root_ok) {
    out.push_back({Violation::Kind::NonOperatorRoot, "second tree root is not an operator node"});
  }
  check_node(pair.second.root, /*first_tree=*/false, first_count, out);

  return out;
}

bool is_valid(const SequencePair& pair, ValidationMode mode) {
  return validate(pair, mode).empty();
}

}  // namespace orchard
