#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace orchard {

// The five operators of the language. COPY never branches; it appears only
// as a leaf of the second tree.
enum class OperatorKind { First, Last, Min, Max, Copy };

// FIRST/LAST select by position, MIN/MAX compare values, COPY references
// the other tree.
enum class OperatorCategory { Positional, Comparative, Relational };

OperatorCategory category(OperatorKind op);

// Surface word, e.g. "FIRST".
std::string_view operator_word(OperatorKind op);
std::optional<OperatorKind> operator_from_word(std::string_view word);

struct Node;

// Single digit 0-9.
struct DigitLeaf {
  int value = 0;
  bool operator==(const DigitLeaf&) const = default;
};

// Reference to the n-th node of the first tree in level order, root = 0.
struct CopyLeaf {
  std::size_t index = 0;
  bool operator==(const CopyLeaf&) const = default;
};

// Branching operator with an ordered, non-empty operand list. Operand lists
// are stored flat (n-ary) regardless of how the tree was produced.
struct OpNode {
  OperatorKind op = OperatorKind::First;
  std::vector<Node> operands;
  bool operator==(const OpNode&) const = default;
};

struct Node {
  std::variant<DigitLeaf, CopyLeaf, OpNode> data;

  bool is_digit() const { return std::holds_alternative<DigitLeaf>(data); }
  bool is_copy() const { return std::holds_alternative<CopyLeaf>(data); }
  bool is_op() const { return std::holds_alternative<OpNode>(data); }

  const DigitLeaf& as_digit() const { return std::get<DigitLeaf>(data); }
  const CopyLeaf& as_copy() const { return std::get<CopyLeaf>(data); }
  const OpNode& as_op() const { return std::get<OpNode>(data); }
  OpNode& as_op() { return std::get<OpNode>(data); }

  bool operator==(const Node&) const = default;
};

Node make_digit(int value);
Node make_copy(std::size_t index);
Node make_op(OperatorKind op, std::vector<Node> operands);

// A bracketed sentence. A well-formed tree is rooted at an operator node;
// the parser's lenient mode additionally produces a bare CopyLeaf root for
// the shorthand second sentence "[ COPY n ]".
struct ExprTree {
  Node root;
  bool operator==(const ExprTree&) const = default;
};

// Root values of the two trees; the target of a sequence.
struct Answer {
  int first = 0;
  int second = 0;
  bool operator==(const Answer&) const = default;
};

// Two sentences delimited by 'X'. The first tree is COPY-free; the second
// may reference it. A stored answer is never trusted by consumers, they
// recompute it.
struct SequencePair {
  ExprTree first;
  ExprTree second;
  std::optional<Answer> answer;
  bool operator==(const SequencePair&) const = default;
};

// Tree equality only, ignoring any stored answer.
bool structurally_equal(const SequencePair& a, const SequencePair& b);

// Breadth-first enumeration, root at position 0, left-to-right within each
// level. Positions are the COPY index space. Pointers stay valid as long as
// the tree is alive and unmodified.
std::vector<const Node*> level_order(const ExprTree& tree);

std::size_t node_count(const ExprTree& tree);
std::size_t copy_leaf_count(const ExprTree& tree);

// Node levels on the longest root-to-leaf path, root counted as level 1;
// every leaf occupies a level, so a well-formed tree has depth >= 2.
int depth(const Node& node);
int depth(const ExprTree& tree);

enum class ValidationMode { Strict, Lenient };

struct Violation {
  enum class Kind {
    CopyInFirstTree,
    CopyIndexOutOfRange,
    DigitOutOfRange,
    EmptyOperandList,
    NonOperatorRoot,
  };
  Kind kind;
  std::string detail;
};

std::string_view violation_name(Violation::Kind kind);

// Collects every structural violation of the pair; an empty result means
// valid. Violations are data, not failures. Lenient mode also accepts a
// second tree that is a single in-range COPY reference.
std::vector<Violation> validate(const SequencePair& pair,
                                ValidationMode mode = ValidationMode::Strict);

bool is_valid(const SequencePair& pair, ValidationMode mode = ValidationMode::Strict);

}  // namespace orchard
