#include "germ/ipl/parse.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace germ::ipl {

namespace {

enum class TokKind {
  Ident,
  Nat,
  KwIf,
  KwElse,
  KwWhile,
  KwThrow,
  KwSkip,
  KwTrue,
  KwFalse,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semi,
  Assign,   // =
  EqEq,     // ==
  Plus,
  Minus,
  OrOr,
  AndAnd,
  End,
};

struct Token {
  TokKind kind;
  std::string text;
  std::uint64_t nat = 0;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      SourcePos pos{line_, col_};
      if (at_end()) {
        out.push_back({TokKind::End, "", 0, pos});
        return out;
      }
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::uint64_t value = 0;
        std::string text;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
          value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
          text += advance();
        }
        out.push_back({TokKind::Nat, text, value, pos});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (!at_end() &&
               (std::isalnum(static_cast<unsigned char>(peek())) ||
                peek() == '_')) {
          word += advance();
        }
        out.push_back({keyword_kind(word), word, 0, pos});
        continue;
      }
      switch (c) {
        case '(': advance(); out.push_back({TokKind::LParen, "(", 0, pos}); break;
        case ')': advance(); out.push_back({TokKind::RParen, ")", 0, pos}); break;
        case '{': advance(); out.push_back({TokKind::LBrace, "{", 0, pos}); break;
        case '}': advance(); out.push_back({TokKind::RBrace, "}", 0, pos}); break;
        case ';': advance(); out.push_back({TokKind::Semi, ";", 0, pos}); break;
        case '+': advance(); out.push_back({TokKind::Plus, "+", 0, pos}); break;
        case '-': advance(); out.push_back({TokKind::Minus, "-", 0, pos}); break;
        case '=':
          advance();
          if (!at_end() && peek() == '=') {
            advance();
            out.push_back({TokKind::EqEq, "==", 0, pos});
          } else {
            out.push_back({TokKind::Assign, "=", 0, pos});
          }
          break;
        case '|':
          advance();
          if (at_end() || peek() != '|') {
            throw SyntaxError(pos, "expected '||'");
          }
          advance();
          out.push_back({TokKind::OrOr, "||", 0, pos});
          break;
        case '&':
          advance();
          if (at_end() || peek() != '&') {
            throw SyntaxError(pos, "expected '&&'");
          }
          advance();
          out.push_back({TokKind::AndAnd, "&&", 0, pos});
          break;
        default:
          throw SyntaxError(pos, std::string("unexpected character '") + c +
                                     "'");
      }
    }
  }

 private:
  static TokKind keyword_kind(const std::string& word) {
    if (word == "if") return TokKind::KwIf;
    if (word == "else") return TokKind::KwElse;
    if (word == "while") return TokKind::KwWhile;
    if (word == "throw") return TokKind::KwThrow;
    if (word == "skip") return TokKind::KwSkip;
    if (word == "true") return TokKind::KwTrue;
    if (word == "false") return TokKind::KwFalse;
    return TokKind::Ident;
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, ParseOptions opts)
      : tokens_(std::move(tokens)), opts_(opts) {}

  StmtPtr program() {
    StmtPtr tree = stmt_list(TokKind::End);
    expect(TokKind::End, "end of input");
    return tree;
  }

 private:
  const Token& cur() const { return tokens_[idx_]; }
  const Token& advance() { return tokens_[idx_++]; }
  bool match(TokKind kind) {
    if (cur().kind != kind) return false;
    ++idx_;
    return true;
  }
  const Token& expect(TokKind kind, const std::string& what) {
    if (cur().kind != kind) {
      throw SyntaxError(cur().pos, "expected " + what);
    }
    return tokens_[idx_++];
  }

  static StmtPtr make_skip(SourcePos pos) {
    return std::make_shared<Stmt>(Stmt{Stmt::Skip{}, pos});
  }

  // Right-associated Seq chain; empty list is Skip, a single statement
  // stands alone.
  StmtPtr stmt_list(TokKind terminator) {
    SourcePos pos = cur().pos;
    std::vector<StmtPtr> stmts;
    while (cur().kind != terminator && cur().kind != TokKind::End) {
      stmts.push_back(statement());
    }
    if (stmts.empty()) return make_skip(pos);
    StmtPtr tail = stmts.back();
    for (auto it = stmts.rbegin() + 1; it != stmts.rend(); ++it) {
      tail = std::make_shared<Stmt>(Stmt{Stmt::Seq{*it, tail}, (*it)->pos});
    }
    return tail;
  }

  StmtPtr block() {
    expect(TokKind::LBrace, "'{'");
    StmtPtr body = stmt_list(TokKind::RBrace);
    expect(TokKind::RBrace, "'}'");
    return body;
  }

  StmtPtr statement() {
    SourcePos pos = cur().pos;
    switch (cur().kind) {
      case TokKind::KwIf: {
        advance();
        expect(TokKind::LParen, "'('");
        ExprPtr cond = expression();
        expect(TokKind::RParen, "')'");
        StmtPtr then_branch = block();
        StmtPtr else_branch = make_skip(pos);
        if (match(TokKind::KwElse)) else_branch = block();
        return std::make_shared<Stmt>(
            Stmt{Stmt::If{cond, then_branch, else_branch}, pos});
      }
      case TokKind::KwWhile: {
        if (!opts_.allow_while) {
          throw SyntaxError(pos, "'while' is disabled in strict mode");
        }
        advance();
        expect(TokKind::LParen, "'('");
        ExprPtr cond = expression();
        expect(TokKind::RParen, "')'");
        StmtPtr body = block();
        return std::make_shared<Stmt>(Stmt{Stmt::While{cond, body}, pos});
      }
      case TokKind::KwThrow: {
        advance();
        expect(TokKind::Semi, "';'");
        return std::make_shared<Stmt>(Stmt{Stmt::Throw{}, pos});
      }
      case TokKind::KwSkip: {
        advance();
        expect(TokKind::Semi, "';'");
        return make_skip(pos);
      }
      case TokKind::Ident: {
        std::string name = advance().text;
        expect(TokKind::Assign, "'='");
        ExprPtr value = expression();
        expect(TokKind::Semi, "';'");
        ExprPtr target =
            std::make_shared<Expr>(Expr{Expr::Ident{std::move(name)}, pos});
        return std::make_shared<Stmt>(Stmt{Stmt::Assign{target, value}, pos});
      }
      default:
        throw SyntaxError(pos, "expected a statement");
    }
  }

  // expr := or ; or := and ("||" and)* ; and := eq ("&&" eq)* ;
  // eq := add ("==" add)? ; add := atom (("+"|"-") atom)*
  ExprPtr expression() { return or_expr(); }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (cur().kind == TokKind::OrOr) {
      SourcePos pos = advance().pos;
      ExprPtr rhs = and_expr();
      lhs = std::make_shared<Expr>(
          Expr{Expr::Binary{BinOp::Or, lhs, rhs}, pos});
    }
    return lhs;
  }

  ExprPtr and_expr() {
    ExprPtr lhs = eq_expr();
    while (cur().kind == TokKind::AndAnd) {
      SourcePos pos = advance().pos;
      ExprPtr rhs = eq_expr();
      lhs = std::make_shared<Expr>(
          Expr{Expr::Binary{BinOp::And, lhs, rhs}, pos});
    }
    return lhs;
  }

  ExprPtr eq_expr() {
    ExprPtr lhs = add_expr();
    if (cur().kind == TokKind::EqEq) {
      SourcePos pos = advance().pos;
      ExprPtr rhs = add_expr();
      return std::make_shared<Expr>(
          Expr{Expr::Binary{BinOp::Eq, lhs, rhs}, pos});
    }
    return lhs;
  }

  ExprPtr add_expr() {
    ExprPtr lhs = atom();
    while (cur().kind == TokKind::Plus || cur().kind == TokKind::Minus) {
      BinOp op = cur().kind == TokKind::Plus ? BinOp::Plus : BinOp::Minus;
      SourcePos pos = advance().pos;
      ExprPtr rhs = atom();
      lhs = std::make_shared<Expr>(Expr{Expr::Binary{op, lhs, rhs}, pos});
    }
    return lhs;
  }

  ExprPtr atom() {
    SourcePos pos = cur().pos;
    switch (cur().kind) {
      case TokKind::Nat: {
        std::uint64_t value = advance().nat;
        return std::make_shared<Expr>(Expr{Expr::NatLit{value}, pos});
      }
      case TokKind::KwTrue:
        advance();
        return std::make_shared<Expr>(Expr{Expr::BoolLit{true}, pos});
      case TokKind::KwFalse:
        advance();
        return std::make_shared<Expr>(Expr{Expr::BoolLit{false}, pos});
      case TokKind::Ident: {
        std::string name = advance().text;
        return std::make_shared<Expr>(
            Expr{Expr::Ident{std::move(name)}, pos});
      }
      case TokKind::LParen: {
        advance();
        ExprPtr inner = expression();
        expect(TokKind::RParen, "')'");
        return inner;
      }
      default:
        throw SyntaxError(pos, "expected an expression");
    }
  }

  std::vector<Token> tokens_;
  ParseOptions opts_;
  std::size_t idx_ = 0;
};

}  // namespace

StmtPtr parse_program(const std::string& source, ParseOptions opts) {
  Lexer lexer(source);
  Parser parser(lexer.run(), opts);
  return parser.program();
}

}  // namespace germ::ipl
