#include "orchard/text_format.hpp"

#include <cctype>
#include <cstdint>

#include "orchard/error.hpp"

namespace orchard {

namespace {

constexpr std::string_view kDigitLexemes[10] = {"0", "1", "2", "3", "4",
                                                "5", "6", "7", "8", "9"};

// COPY indexes are parsed into uint64 before the range check against the
// first tree; anything this large can never be in range.
constexpr std::uint64_t kAbsurdIndex = 1'000'000'000'000ull;

}  // namespace

std::string_view lexeme(const Token& token) {
  switch (token.kind) {
    case Token::Kind::LBracket: return "[";
    case Token::Kind::RBracket: return "]";
    case Token::Kind::Delim: return "X";
    case Token::Kind::OpWord: return operator_word(token.op);
    case Token::Kind::Digit: return kDigitLexemes[token.digit];
  }
  return "";
}

namespace {

Token classify(std::string_view word, std::size_t position) {
  if (word.size() == 1) {
    char c = word[0];
    if (c >= '0' && c <= '9') return Token::digit_token(c - '0');
    if (c == 'X') return Token::delim();
  }
  if (auto op = operator_from_word(word)) return Token::opword(*op);
  raise(Errc::UnknownToken, "unknown token '" + std::string(word) + "' at position " +
                                std::to_string(position));
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) {
      out.push_back(classify(word, out.size()));
      word.clear();
    }
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '[') {
      flush();
      out.push_back(Token::lbracket());
    } else if (c == ']') {
      flush();
      out.push_back(Token::rbracket());
    } else {
      word.push_back(c);
    }
  }
  flush();
  if (out.empty()) raise(Errc::EmptyInput, "input is empty or whitespace-only");
  return out;
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += lexeme(tokens[i]);
  }
  return out;
}

namespace {

class Parser {
public:
  Parser(std::span<const Token> tokens, bool first_tree) : toks_(tokens), first_tree_(first_tree) {}

  // Parses the whole span as one sentence; allow_copy_root admits the
  // lenient "[ COPY n ]" shorthand.
  ExprTree sentence(bool allow_copy_root) {
    if (at_end()) raise(Errc::UnexpectedToken, where() + "expected a bracketed sentence");
    if (peek().kind != Token::Kind::LBracket) {
      raise(Errc::UnexpectedToken, where() + "sentence must start with '['");
    }
    Node root = bracketed(allow_copy_root);
    if (!at_end()) {
      if (peek().kind == Token::Kind::RBracket) {
        raise(Errc::UnbalancedBrackets, where() + "extra ']' after sentence");
      }
      raise(Errc::UnexpectedToken, where() + "trailing tokens after sentence");
    }
    return ExprTree{std::move(root)};
  }

private:
  bool at_end() const { return pos_ == toks_.size(); }

  const Token& peek() const { return toks_[pos_]; }

  Token take() { return toks_[pos_++]; }

  std::string where() const {
    return (first_tree_ ? std::string("first sentence") : std::string("second sentence")) +
           ", token " + std::to_string(pos_) + ": ";
  }

  // Consumes "[ OPWORD ... ]". copy_ok permits a COPY group here.
  Node bracketed(bool copy_ok) {
    take();  // '['
    if (at_end()) raise(Errc::UnbalancedBrackets, where() + "missing ']'");
    if (peek().kind != Token::Kind::OpWord) {
      raise(Errc::UnexpectedToken, where() + "expected an operator word after '['");
    }
    OperatorKind op = take().op;
    if (op == OperatorKind::Copy) {
      if (first_tree_) raise(Errc::CopyInFirstTree, where() + "COPY inside the first sentence");
      if (!copy_ok) {
        raise(Errc::UnexpectedToken,
              where() + "bare COPY sentence is only accepted in lenient mode");
      }
      return copy_group();
    }
    return operator_group(op);
  }

  Node copy_group() {
    std::uint64_t index = 0;
    std::size_t digits = 0;
    while (!at_end() && peek().kind == Token::Kind::Digit) {
      index = index * 10 + static_cast<std::uint64_t>(take().digit);
      ++digits;
      if (index >= kAbsurdIndex) {
        raise(Errc::IndexOutOfRange, where() + "COPY index exceeds any possible node count");
      }
    }
    if (digits == 0) raise(Errc::CopyArity, where() + "COPY needs at least one digit token");
    if (at_end()) raise(Errc::UnbalancedBrackets, where() + "missing ']'");
    if (peek().kind != Token::Kind::RBracket) {
      raise(Errc::CopyArity, where() + "COPY takes digit tokens only, found '" +
                                 std::string(lexeme(peek())) + "'");
    }
    take();  // ']'
    return make_copy(static_cast<std::size_t>(index));
  }

  Node operator_group(OperatorKind op) {
    std::vector<Node> operands;
    while (true) {
      if (at_end()) raise(Errc::UnbalancedBrackets, where() + "missing ']'");
      const Token& t = peek();
      if (t.kind == Token::Kind::RBracket) {
        take();
        break;
      }
      if (t.kind == Token::Kind::Digit) {
        operands.push_back(make_digit(take().digit));
      } else if (t.kind == Token::Kind::LBracket) {
        operands.push_back(bracketed(/*copy_ok=*/true));
      } else if (t.kind == Token::Kind::Delim) {
        raise(Errc::UnexpectedToken, where() + "'X' inside a sentence");
      } else {
        raise(Errc::UnexpectedToken, where() + "operator word without an opening '['");
      }
    }
    if (operands.empty()) {
      raise(Errc::EmptyOperandList,
            where() + std::string(operator_word(op)) + " node with no operands");
    }
    return make_op(op, std::move(operands));
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
  bool first_tree_;
};

void check_copy_indexes(const Node& node, std::size_t first_count) {
  if (node.is_copy()) {
    if (node.as_copy().index >= first_count) {
      raise(Errc::IndexOutOfRange,
            "COPY index " + std::to_string(node.as_copy().index) +
                " >= first-tree node count " + std::to_string(first_count));
    }
    return;
  }
  if (node.is_op()) {
    for (const Node& child : node.as_op().operands) check_copy_indexes(child, first_count);
  }
}

}  // namespace

SequencePair parse_pair(std::span<const Token> tokens, ParseMode mode) {
  if (tokens.empty()) raise(Errc::EmptyInput, "no tokens");

  // Bracket balance first: an unclosed sentence should report as such even
  // when the delimiter is also missing. Then exactly one 'X' must separate
  // the sentences at bracket depth zero.
  std::size_t delim_at = 0, delims = 0;
  int bracket_depth = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    switch (tokens[i].kind) {
      case Token::Kind::LBracket: ++bracket_depth; break;
      case Token::Kind::RBracket:
        if (--bracket_depth < 0) raise(Errc::UnbalancedBrackets, "']' without matching '['");
        break;
      case Token::Kind::Delim:
        if (bracket_depth == 0) {
          delim_at = i;
          ++delims;
        }
        break;
      default: break;
    }
  }
  if (bracket_depth != 0) {
    raise(Errc::UnbalancedBrackets,
          std::to_string(bracket_depth) + " unclosed '[' at end of input");
  }
  if (delims != 1) {
    raise(Errc::MissingDelimiter, "found " + std::to_string(delims) +
                                      " top-level 'X' delimiters, expected exactly 1");
  }

  ExprTree first = Parser(tokens.subspan(0, delim_at), /*first_tree=*/true)
                       .sentence(/*allow_copy_root=*/false);
  ExprTree second = Parser(tokens.subspan(delim_at + 1), /*first_tree=*/false)
                        .sentence(/*allow_copy_root=*/mode == ParseMode::Lenient);

  check_copy_indexes(second.root, node_count(first));
  return SequencePair{std::move(first), std::move(second), std::nullopt};
}

SequencePair parse_pair_line(std::string_view line, ParseMode mode) {
  return parse_pair(tokenize(line), mode);
}

namespace {

void append_node_tokens(const Node& node, std::vector<Token>& out) {
  if (node.is_digit()) {
    out.push_back(Token::digit_token(node.as_digit().value));
    return;
  }
  if (node.is_copy()) {
    out.push_back(Token::lbracket());
    out.push_back(Token::opword(OperatorKind::Copy));
    for (char c : std::to_string(node.as_copy().index)) {
      out.push_back(Token::digit_token(c - '0'));
    }
    out.push_back(Token::rbracket());
    return;
  }
  const OpNode& op = node.as_op();
  out.push_back(Token::lbracket());
  out.push_back(Token::opword(op.op));
  for (const Node& child : op.operands) append_node_tokens(child, out);
  out.push_back(Token::rbracket());
}

}  // namespace

std::vector<Token> tree_tokens(const ExprTree& tree) {
  std::vector<Token> out;
  append_node_tokens(tree.root, out);
  return out;
}

std::vector<Token> pair_tokens(const SequencePair& pair) {
  std::vector<Token> out = tree_tokens(pair.first);
  out.push_back(Token::delim());
  append_node_tokens(pair.second.root, out);
  return out;
}

std::string serialize(const ExprTree& tree) { return detokenize(tree_tokens(tree)); }

std::string serialize(const SequencePair& pair) { return detokenize(pair_tokens(pair)); }

}  // namespace orchard
