#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orchard/ast.hpp"

namespace orchard {

// One lexeme of the surface syntax. The vocabulary is closed: "[", "]",
// the five operator words, the ten digits, and the sentence delimiter "X".
struct Token {
  enum class Kind { LBracket, RBracket, OpWord, Digit, Delim };

  Kind kind = Kind::LBracket;
  OperatorKind op = OperatorKind::First;  // set when kind == OpWord
  int digit = 0;                          // set when kind == Digit

  static Token lbracket() { return {Kind::LBracket, {}, 0}; }
  static Token rbracket() { return {Kind::RBracket, {}, 0}; }
  static Token opword(OperatorKind op) { return {Kind::OpWord, op, 0}; }
  static Token digit_token(int d) { return {Kind::Digit, {}, d}; }
  static Token delim() { return {Kind::Delim, {}, 0}; }

  bool operator==(const Token&) const = default;
};

std::string_view lexeme(const Token& token);

// Whitespace-separated lexemes over the closed vocabulary. Brackets are
// self-delimiting, so compact forms like "[FIRST" and "3]" tokenize too.
// Throws UnknownToken for out-of-vocabulary lexemes (position = token
// ordinal) and EmptyInput for whitespace-only text.
std::vector<Token> tokenize(std::string_view text);

// Tokens joined by single spaces; the canonical surface form.
std::string detokenize(std::span<const Token> tokens);

// Strict mode requires both sentences to be operator-rooted. Lenient mode
// additionally accepts "[ COPY n ]" as an entire second sentence, an
// operatorless reference evaluating directly to the referenced value.
enum class ParseMode { Strict, Lenient };

// Builds both trees of a "first X second" token sequence. Digit tokens
// between COPY and "]" are concatenated left-to-right into one decimal
// index. The result passes validate for the matching mode; the stored
// answer is left absent.
SequencePair parse_pair(std::span<const Token> tokens, ParseMode mode = ParseMode::Strict);
SequencePair parse_pair_line(std::string_view line, ParseMode mode = ParseMode::Strict);

std::vector<Token> tree_tokens(const ExprTree& tree);
std::vector<Token> pair_tokens(const SequencePair& pair);

// Canonical text: single spaces between all tokens, including before "]".
// COPY indexes above 9 render as one digit token per decimal digit.
std::string serialize(const ExprTree& tree);
std::string serialize(const SequencePair& pair);

}  // namespace orchard
