#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "orchard/error.hpp"
#include "orchard/generator.hpp"
#include "orchard/text_format.hpp"
#include "helpers.hpp"

using namespace orchard;
using testutil::error_code_of;
using testutil::error_message_of;

TEST_SUITE("text_format") {

TEST_CASE("tokenize a canonical sentence") {
  auto tokens = tokenize("[ FIRST 2 6 0 1 ]");
  std::vector<Token> expected{
      Token::lbracket(),      Token::opword(OperatorKind::First),
      Token::digit_token(2),  Token::digit_token(6),
      Token::digit_token(0),  Token::digit_token(1),
      Token::rbracket(),
  };
  CHECK(tokens == expected);
  CHECK(detokenize(tokens) == "[ FIRST 2 6 0 1 ]");
}

TEST_CASE("tokenize rejects empty and whitespace-only input") {
  CHECK(error_code_of([] { tokenize(""); }) == Errc::EmptyInput);
  CHECK(error_code_of([] { tokenize("   \t "); }) == Errc::EmptyInput);
}

TEST_CASE("tokenize rejects out-of-vocabulary lexemes with their position") {
  std::string message = error_message_of([] { tokenize("[ FIRST 2 six ]"); });
  CHECK(message.find("UnknownToken") != std::string::npos);
  CHECK(message.find("'six'") != std::string::npos);
  CHECK(message.find("position 3") != std::string::npos);

  CHECK(error_code_of([] { tokenize("[ FIRST 23 ]"); }) == Errc::UnknownToken);
  CHECK(error_code_of([] { tokenize("[ first 2 ]"); }) == Errc::UnknownToken);
}

TEST_CASE("brackets are self-delimiting") {
  // Published examples squeeze the bracket against the operator word.
  CHECK(tokenize("[FIRST 2 6 0 1 ]") == tokenize("[ FIRST 2 6 0 1 ]"));
  CHECK(tokenize("[FIRST [LAST 7 3 ] 2 0 9 ]") == tokenize("[ FIRST [ LAST 7 3 ] 2 0 9 ]"));
  CHECK(tokenize("[MIN 1 2]") == tokenize("[ MIN 1 2 ]"));
}

TEST_CASE("parse the bare COPY shorthand only in lenient mode") {
  std::string line = "[ MAX 2 6 0 1 ] X [ COPY 1 ]";
  SequencePair pair = parse_pair_line(line, ParseMode::Lenient);
  CHECK(pair.first.root.as_op().op == OperatorKind::Max);
  REQUIRE(pair.second.root.is_copy());
  CHECK(pair.second.root.as_copy().index == 1);
  CHECK(!pair.answer.has_value());

  CHECK(error_code_of([&] { parse_pair_line(line); }) == Errc::UnexpectedToken);

  // An operator-rooted wrapper is fine in strict mode.
  SequencePair wrapped = parse_pair_line("[ MAX 2 6 0 1 ] X [ FIRST [ COPY 1 ] ]");
  CHECK(wrapped.second.root.as_op().operands[0].is_copy());
}

TEST_CASE("parse a nested pair into the expected trees") {
  SequencePair pair = parse_pair_line("[ FIRST [ LAST 7 3 ] 2 0 9 ] X [ FIRST 1 ]");
  ExprTree first{make_op(
      OperatorKind::First,
      {make_op(OperatorKind::Last, {make_digit(7), make_digit(3)}), make_digit(2), make_digit(0),
       make_digit(9)})};
  ExprTree second{make_op(OperatorKind::First, {make_digit(1)})};
  CHECK(pair.first == first);
  CHECK(pair.second == second);
  CHECK(serialize(pair) == "[ FIRST [ LAST 7 3 ] 2 0 9 ] X [ FIRST 1 ]");
}

TEST_CASE("parse errors") {
  auto code = [](const char* line) {
    return error_code_of([line] { parse_pair_line(line, ParseMode::Lenient); });
  };
  CHECK(code("[ FIRST 2 ] [ LAST 3 ]") == Errc::MissingDelimiter);
  CHECK(code("[ FIRST 2 ] X [ LAST 3 ] X [ MIN 4 ]") == Errc::MissingDelimiter);
  CHECK(code("[ FIRST 2") == Errc::UnbalancedBrackets);
  CHECK(code("[ FIRST 2 ] ] X [ LAST 3 ]") == Errc::UnbalancedBrackets);
  CHECK(code("[ FIRST ] X [ LAST 3 ]") == Errc::EmptyOperandList);
  CHECK(code("[ FIRST 1 ] X [ MIN [ COPY ] ]") == Errc::CopyArity);
  CHECK(code("[ FIRST 1 ] X [ MIN [ COPY [ FIRST 1 ] ] ]") == Errc::CopyArity);
  CHECK(code("[ FIRST [ COPY 0 ] ] X [ LAST 3 ]") == Errc::CopyInFirstTree);
  CHECK(code("[ COPY 0 ] X [ LAST 3 ]") == Errc::CopyInFirstTree);
  CHECK(code("[ FIRST 1 ] X [ MIN [ COPY 7 ] ]") == Errc::IndexOutOfRange);
  CHECK(code("[ FIRST X 1 ] X [ LAST 3 ]") == Errc::UnexpectedToken);
  CHECK(code("[ FIRST LAST 3 ] X [ LAST 3 ]") == Errc::UnexpectedToken);
  CHECK(code("[ FIRST 1 ] X [ LAST 3 ] 4") == Errc::UnexpectedToken);
  CHECK(code("5 X [ LAST 3 ]") == Errc::UnexpectedToken);
}

TEST_CASE("COPY index digits concatenate left to right") {
  SequencePair pair = parse_pair_line(
      "[ MIN [ MIN 1 2 ] [ MIN 3 4 ] [ MIN 5 6 ] [ MIN 7 8 ] ] X [ MAX [ COPY 1 2 ] ]");
  CHECK(pair.second.root.as_op().operands[0].as_copy().index == 12);

  // Leading zeros are accepted on input but never produced.
  SequencePair zero = parse_pair_line("[ MIN 1 2 ] X [ MAX [ COPY 0 2 ] ]");
  CHECK(zero.second.root.as_op().operands[0].as_copy().index == 2);
  CHECK(serialize(zero) == "[ MIN 1 2 ] X [ MAX [ COPY 2 ] ]");
}

TEST_CASE("serialize uses canonical single-space form") {
  SequencePair pair{ExprTree{make_op(OperatorKind::Min, {make_digit(2), make_digit(6),
                                                         make_digit(0), make_digit(1)})},
                    ExprTree{make_op(OperatorKind::Max, {make_copy(3), make_digit(5)})},
                    std::nullopt};
  CHECK(serialize(pair) == "[ MIN 2 6 0 1 ] X [ MAX [ COPY 3 ] 5 ]");

  SequencePair wide{pair.first, ExprTree{make_op(OperatorKind::Max, {make_copy(12)})},
                    std::nullopt};
  CHECK(serialize(wide) == "[ MIN 2 6 0 1 ] X [ MAX [ COPY 1 2 ] ]");
}

TEST_CASE("serialize then parse is the identity on sampled pairs") {
  rng::Engine engine(101);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    GenConfig cfg{i % 2 == 0 ? Family::FirstLast : Family::MinMax,
                  (i % 3) * 0.5, 2 + static_cast<int>(rng::uniform_index(engine, 7)), 0.5, 0, 1};
    SequencePair pair = sample_pair(cfg, engine);
    std::string line = serialize(pair);
    SequencePair reparsed = parse_pair_line(line);
    if (!structurally_equal(reparsed, pair)) {
      CAPTURE(line);
      REQUIRE(structurally_equal(reparsed, pair));
    }
    // Canonical text is a fixed point.
    if (serialize(reparsed) != line) {
      CAPTURE(line);
      REQUIRE(serialize(reparsed) == line);
    }
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("serialization is injective on distinct pairs") {
  rng::Engine engine(202);
  std::map<std::string, SequencePair> seen;
  for (int i = 0; i < 5000; ++i) {
    GenConfig cfg{Family::MinMax, 0.5, 2 + static_cast<int>(rng::uniform_index(engine, 5)),
                  0.5, 0, 1};
    SequencePair pair = sample_pair(cfg, engine);
    auto [it, inserted] = seen.emplace(serialize(pair), pair);
    if (!inserted) {
      // Equal strings must mean equal pairs.
      CHECK(structurally_equal(it->second, pair));
    }
  }
}

TEST_CASE("token vocabulary of a corpus is closed") {
  rng::Engine engine(303);
  std::set<std::string> lexemes;
  for (int i = 0; i < 500; ++i) {
    GenConfig cfg{Family::FirstLast, 1.0, 2 + static_cast<int>(rng::uniform_index(engine, 6)),
                  0.5, 0, 1};
    SequencePair pair = sample_pair(cfg, engine);
    for (const Token& token : pair_tokens(pair)) lexemes.insert(std::string(lexeme(token)));
  }
  std::set<std::string> allowed{"[", "]", "X", "FIRST", "LAST", "COPY",
                                "0", "1", "2", "3", "4", "5", "6", "7", "8", "9"};
  for (const std::string& word : lexemes) CHECK(allowed.count(word) == 1);
}

}  // TEST_SUITE
