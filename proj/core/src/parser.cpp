#include "sheafwb/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "sheafwb/error.hpp"

namespace sheafwb {
namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Equal, Not, And, Or, Implies, Forall, Exists, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

bool ident_byte(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

std::vector<Token> lex(std::string_view s) {
  static const std::pair<std::string_view, Tok> kUnicode[] = {
      {"\xC2\xAC", Tok::Not},          {"\xE2\x88\xA7", Tok::And},    {"\xE2\x88\xA8", Tok::Or},
      {"\xE2\x86\x92", Tok::Implies},  {"\xE2\x88\x80", Tok::Forall}, {"\xE2\x88\x83", Tok::Exists},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    const std::size_t col = i + 1;
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& [spelling, kind] : kUnicode) {
      if (s.substr(i, spelling.size()) == spelling) {
        out.push_back({kind, std::string(spelling), col});
        i += spelling.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", col}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", col}); ++i; continue;
      case ',': out.push_back({Tok::Comma, ",", col}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", col}); ++i; continue;
      case '=': out.push_back({Tok::Equal, "=", col}); ++i; continue;
      case '~': out.push_back({Tok::Not, "~", col}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", col}); ++i; continue;
      case '|': out.push_back({Tok::Or, "|", col}); ++i; continue;
      default: break;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Implies, "->", col});
      i += 2;
      continue;
    }
    if (ident_byte(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_byte(static_cast<unsigned char>(s[j]))) {
        bool op = false;
        for (const auto& entry : kUnicode) {
          if (s.substr(j, entry.first.size()) == entry.first) op = true;
        }
        if (op) break;
        ++j;
      }
      std::string word(s.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "forall") kind = Tok::Forall;
      if (word == "exists") kind = Tok::Exists;
      out.push_back({kind, std::move(word), col});
      i = j;
      continue;
    }
    throw ParseError(std::string("lexical error: unexpected character '") + s[i] + "'", 1, col);
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Signature sig, bool permissive)
      : tokens_(std::move(tokens)), sig_(std::move(sig)), permissive_(permissive) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

  const Signature& signature() const { return sig_; }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, peek().column); }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + what + ", found '" +
           (peek().kind == Tok::End ? std::string("end of input") : peek().text) + "'");
    }
    take();
  }

  Formula formula() {
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) return quantifier();
    return implication();
  }

  Formula quantifier() {
    const bool universal = take().kind == Tok::Forall;
    if (peek().kind != Tok::Ident) fail("expected a variable after quantifier");
    std::string var = take().text;
    if (sig_.declares(var)) fail("cannot bind symbol '" + var + "'");
    expect(Tok::Dot, "'.'");
    Formula body = formula();
    return universal ? Formula::forall(std::move(var), std::move(body))
                     : Formula::exists(std::move(var), std::move(body));
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      take();
      return Formula::implies(std::move(lhs), formula_or_implication());
    }
    return lhs;
  }

  // Right operand of `->` may itself start with a quantifier.
  Formula formula_or_implication() {
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) return quantifier();
    return implication();
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      take();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not:
        take();
        return Formula::negation(unary());
      case Tok::Forall:
      case Tok::Exists:
        return quantifier();
      case Tok::LParen: {
        take();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        return atom();
      default:
        fail(peek().kind == Tok::End ? "unexpected end of input"
                                     : "unexpected '" + peek().text + "'");
    }
  }

  std::vector<Term> arguments() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    args.push_back(term());
    while (peek().kind == Tok::Comma) {
      take();
      args.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  void check_arity(const std::string& kind, const std::string& name, std::size_t want,
                   std::size_t got, std::size_t column) const {
    if (want != got) {
      throw ParseError("arity mismatch: " + kind + " '" + name + "' expects " +
                           std::to_string(want) + " argument(s), got " + std::to_string(got),
                       1, column);
    }
  }

  Formula atom() {
    const Token head = peek();
    if (peek(1).kind == Tok::LParen) {
      const bool is_relation = sig_.relation_arity(head.text).has_value();
      const bool is_function = sig_.function_arity(head.text).has_value();
      if (is_relation || (permissive_ && !is_function)) {
        take();
        std::vector<Term> args = arguments();
        if (permissive_ && !is_relation && peek().kind == Tok::Equal) {
          declare_function(head, args.size());
          Term lhs = Term::apply(head.text, std::move(args));
          take();
          return Formula::equal(std::move(lhs), term());
        }
        if (permissive_ && !is_relation) declare_relation(head, args.size());
        check_arity("relation", head.text, *sig_.relation_arity(head.text), args.size(),
                    head.column);
        return Formula::relation(head.text, std::move(args));
      }
      if (!is_function) {
        throw ParseError("unknown symbol '" + head.text + "'", 1, head.column);
      }
    }
    Term lhs = term();
    expect(Tok::Equal, "'=' or a relation atom");
    return Formula::equal(std::move(lhs), term());
  }

  void declare_relation(const Token& head, std::size_t arity) {
    if (sig_.declares(head.text)) {
      throw ParseError("symbol '" + head.text + "' used as relation and as something else", 1,
                       head.column);
    }
    sig_.add_relation(head.text, arity);
  }

  void declare_function(const Token& head, std::size_t arity) {
    if (sig_.declares(head.text)) {
      throw ParseError("symbol '" + head.text + "' used as function and as something else", 1,
                       head.column);
    }
    sig_.add_function(head.text, arity);
  }

  Term term() {
    if (peek().kind != Tok::Ident) fail("expected a term");
    const Token head = take();
    if (peek().kind == Tok::LParen) {
      auto arity = sig_.function_arity(head.text);
      if (!arity && permissive_ && !sig_.declares(head.text)) {
        std::vector<Term> args = arguments();
        declare_function(head, args.size());
        return Term::apply(head.text, std::move(args));
      }
      if (!arity) {
        if (sig_.relation_arity(head.text)) {
          throw ParseError("relation '" + head.text + "' used as a term", 1, head.column);
        }
        throw ParseError("unknown symbol '" + head.text + "'", 1, head.column);
      }
      std::vector<Term> args = arguments();
      check_arity("function", head.text, *arity, args.size(), head.column);
      return Term::apply(head.text, std::move(args));
    }
    if (sig_.is_constant(head.text)) return Term::constant(head.text);
    if (sig_.declares(head.text)) {
      throw ParseError("symbol '" + head.text + "' used without arguments", 1, head.column);
    }
    return Term::variable(head.text);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Signature sig_;
  bool permissive_;
};

ParsedFormula finish(Parser& parser) {
  Formula f = rename_apart(parser.parse());
  auto free = free_variables(f);
  return ParsedFormula{std::move(f), std::move(free), parser.signature()};
}

}  // namespace

ParsedFormula parse_formula(std::string_view text, const Signature& sig) {
  Parser parser(lex(text), sig, false);
  return finish(parser);
}

ParsedFormula parse_formula_permissive(std::string_view text) {
  Parser parser(lex(text), Signature{}, true);
  return finish(parser);
}

}  // namespace sheafwb
