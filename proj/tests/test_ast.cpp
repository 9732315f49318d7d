#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "orchard/ast.hpp"
#include "orchard/generator.hpp"
#include "helpers.hpp"

using namespace orchard;

namespace {

ExprTree flat_tree(OperatorKind op, std::initializer_list<int> digits) {
  std::vector<Node> operands;
  for (int d : digits) operands.push_back(make_digit(d));
  return ExprTree{make_op(op, std::move(operands))};
}

// [FIRST [LAST 7 3 ] 2 0 9 ]
ExprTree nested_example() {
  return ExprTree{make_op(
      OperatorKind::First,
      {make_op(OperatorKind::Last, {make_digit(7), make_digit(3)}), make_digit(2), make_digit(0),
       make_digit(9)})};
}

// Independent of level_order: bucket nodes by level recursively, then
// concatenate the levels.
void bucket_by_level(const Node& node, std::size_t level,
                     std::vector<std::vector<const Node*>>& levels) {
  if (levels.size() <= level) levels.resize(level + 1);
  levels[level].push_back(&node);
  if (node.is_op()) {
    for (const Node& child : node.as_op().operands) bucket_by_level(child, level + 1, levels);
  }
}

std::vector<const Node*> level_order_by_buckets(const ExprTree& tree) {
  std::vector<std::vector<const Node*>> levels;
  bucket_by_level(tree.root, 0, levels);
  std::vector<const Node*> out;
  for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
  return out;
}

ExprTree random_tree(rng::Engine& engine, int depth, Family family) {
  return sample_tree(TreeParams{depth, family, 0.0, 0.5, std::nullopt}, engine);
}

}  // namespace

TEST_SUITE("ast") {

TEST_CASE("operator words and categories") {
  CHECK(category(OperatorKind::First) == OperatorCategory::Positional);
  CHECK(category(OperatorKind::Last) == OperatorCategory::Positional);
  CHECK(category(OperatorKind::Min) == OperatorCategory::Comparative);
  CHECK(category(OperatorKind::Max) == OperatorCategory::Comparative);
  CHECK(category(OperatorKind::Copy) == OperatorCategory::Relational);

  for (OperatorKind op : {OperatorKind::First, OperatorKind::Last, OperatorKind::Min,
                          OperatorKind::Max, OperatorKind::Copy}) {
    CHECK(operator_from_word(operator_word(op)) == op);
  }
  CHECK_FALSE(operator_from_word("six").has_value());
  CHECK_FALSE(operator_from_word("first").has_value());
}

TEST_CASE("level order of a flat tree puts digit 2 at position 1") {
  ExprTree tree = flat_tree(OperatorKind::Max, {2, 6, 0, 1});
  auto order = level_order(tree);
  REQUIRE(order.size() == 5);
  CHECK(order[0] == &tree.root);
  CHECK(order[0]->as_op().op == OperatorKind::Max);
  CHECK(order[1]->as_digit().value == 2);
  CHECK(order[2]->as_digit().value == 6);
  CHECK(order[3]->as_digit().value == 0);
  CHECK(order[4]->as_digit().value == 1);
}

TEST_CASE("level order of the smallest tree") {
  ExprTree tree = flat_tree(OperatorKind::First, {5});
  auto order = level_order(tree);
  REQUIRE(order.size() == 2);
  CHECK(order[0]->is_op());
  CHECK(order[1]->as_digit().value == 5);
}

TEST_CASE("level order of a nested tree") {
  ExprTree tree = nested_example();
  auto order = level_order(tree);
  REQUIRE(order.size() == 7);
  CHECK(order[0]->as_op().op == OperatorKind::First);
  CHECK(order[1]->as_op().op == OperatorKind::Last);
  CHECK(order[2]->as_digit().value == 2);
  CHECK(order[3]->as_digit().value == 0);
  CHECK(order[4]->as_digit().value == 9);
  CHECK(order[5]->as_digit().value == 7);
  CHECK(order[6]->as_digit().value == 3);

  CHECK(level_order_by_buckets(tree) == order);
}

TEST_CASE("level order is a permutation of all nodes") {
  rng::Engine engine(11);
  for (int i = 0; i < 200; ++i) {
    int depth = 2 + static_cast<int>(rng::uniform_index(engine, 7));
    Family family = i % 2 == 0 ? Family::FirstLast : Family::MinMax;
    ExprTree tree = random_tree(engine, depth, family);

    auto order = level_order(tree);
    CHECK(order.size() == node_count(tree));
    CHECK(order[0] == &tree.root);
    std::set<const Node*> distinct(order.begin(), order.end());
    CHECK(distinct.size() == order.size());
    CHECK(level_order_by_buckets(tree) == order);
  }
}

TEST_CASE("depth of flat and nested trees") {
  CHECK(depth(flat_tree(OperatorKind::First, {2, 6, 0, 1})) == 2);
  CHECK(depth(nested_example()) == 3);
  CHECK(depth(*level_order(nested_example())[0]) == 3);
  CHECK(depth(make_digit(7)) == 1);
  CHECK(depth(make_copy(4)) == 1);
}

TEST_CASE("replacing a digit leaf with a subtree never decreases depth") {
  rng::Engine engine(23);
  auto collect_digit_slots = [](Node& node, auto&& self, std::vector<Node*>& out) -> void {
    if (node.is_digit()) {
      out.push_back(&node);
      return;
    }
    if (node.is_op()) {
      for (Node& child : node.as_op().operands) self(child, self, out);
    }
  };
  for (int i = 0; i < 200; ++i) {
    ExprTree tree = random_tree(engine, 2 + static_cast<int>(rng::uniform_index(engine, 5)),
                                Family::MinMax);
    int before = depth(tree);
    std::vector<Node*> digits;
    collect_digit_slots(tree.root, collect_digit_slots, digits);
    REQUIRE(!digits.empty());
    Node* slot = digits[rng::uniform_index(engine, digits.size())];
    *slot = make_op(OperatorKind::Min, {make_digit(1), make_digit(2)});
    CHECK(depth(tree) >= before);
  }
}

TEST_CASE("validate accepts the reference pair in lenient mode") {
  SequencePair pair{flat_tree(OperatorKind::Max, {2, 6, 0, 1}), ExprTree{make_copy(1)},
                    std::nullopt};
  CHECK(validate(pair, ValidationMode::Lenient).empty());

  // Strict mode insists on an operator-rooted second sentence.
  auto strict = validate(pair);
  REQUIRE(strict.size() == 1);
  CHECK(strict[0].kind == Violation::Kind::NonOperatorRoot);
}

TEST_CASE("validate flags an out-of-range COPY index") {
  SequencePair pair{flat_tree(OperatorKind::Max, {2, 6, 0, 1}), ExprTree{make_copy(9)},
                    std::nullopt};
  auto violations = validate(pair, ValidationMode::Lenient);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == Violation::Kind::CopyIndexOutOfRange);
  CHECK(violations[0].detail.find("9") != std::string::npos);
  CHECK(violations[0].detail.find("5") != std::string::npos);
}

TEST_CASE("validate flags COPY inside the first tree") {
  SequencePair pair{ExprTree{make_op(OperatorKind::Max, {make_copy(0), make_digit(1)})},
                    flat_tree(OperatorKind::First, {3}), std::nullopt};
  auto violations = validate(pair);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == Violation::Kind::CopyInFirstTree);
}

TEST_CASE("validate flags digit range and empty operand lists") {
  SequencePair pair{ExprTree{make_op(OperatorKind::Min, {make_digit(12)})},
                    ExprTree{make_op(OperatorKind::Min, {})}, std::nullopt};
  auto violations = validate(pair);
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].kind == Violation::Kind::DigitOutOfRange);
  CHECK(violations[1].kind == Violation::Kind::EmptyOperandList);
}

TEST_CASE("validate passes every sampled pair") {
  rng::Engine engine(37);
  for (int i = 0; i < 500; ++i) {
    GenConfig cfg{i % 2 == 0 ? Family::FirstLast : Family::MinMax,
                  (i % 3) * 0.5, 2 + static_cast<int>(rng::uniform_index(engine, 8)), 0.5, 0, 1};
    SequencePair pair = sample_pair(cfg, engine);
    CHECK(is_valid(pair));
  }
}

}  // TEST_SUITE
