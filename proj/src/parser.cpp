#include "versal/parser.hpp"

#include <cctype>
#include <cstring>
#include <vector>

#include "versal/errors.hpp"

namespace versal {

namespace {

struct Token {
  enum Kind { Ident, Integer, Symbol, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
      continue;
    }
    int tl = line;
    int tc = col;
    if (std::isalpha(c) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      out.push_back(Token{Token::Ident, text.substr(i, j - i), tl, tc});
      col += static_cast<int>(j - i);
      i = j;
    } else if (std::isdigit(c)) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      out.push_back(Token{Token::Integer, text.substr(i, j - i), tl, tc});
      col += static_cast<int>(j - i);
      i = j;
    } else if (std::strchr(":;,+-*^()=/", text[i]) != nullptr) {
      out.push_back(Token{Token::Symbol, std::string(1, text[i]), tl, tc});
      ++col;
      ++i;
    } else {
      throw SyntaxError("unexpected character '" + std::string(1, text[i]) +
                            "'",
                        tl, tc);
    }
  }
  out.push_back(Token{Token::End, "", line, col});
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool atEnd() const { return peek().kind == Token::End; }
  bool atSymbol(char c) const {
    return peek().kind == Token::Symbol && peek().text[0] == c;
  }
  Token next() {
    Token t = toks_[pos_];
    if (t.kind != Token::End) ++pos_;
    return t;
  }
  void expectSymbol(char c) {
    if (!atSymbol(c))
      throw SyntaxError(std::string("expected '") + c + "'", peek().line,
                        peek().col);
    next();
  }
  Token expectIdent(const std::string& what) {
    if (peek().kind != Token::Ident)
      throw SyntaxError("expected " + what, peek().line, peek().col);
    return next();
  }
  Token expectInteger(const std::string& what) {
    if (peek().kind != Token::Integer)
      throw SyntaxError("expected " + what, peek().line, peek().col);
    return next();
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

int smallInt(const Token& t) {
  if (t.text.size() > 9)
    throw SyntaxError("number out of range", t.line, t.col);
  return std::stoi(t.text);
}

Poly parseExpr(TokenStream& ts, const GeneratorSet& gens);

Poly parseFactor(TokenStream& ts, const GeneratorSet& gens) {
  const Token& t = ts.peek();
  if (t.kind == Token::Integer) {
    Token num = ts.next();
    Rational value(num.text);
    if (ts.atSymbol('/')) {
      ts.next();
      Token den = ts.expectInteger("an integer denominator");
      Rational d(den.text);
      if (d == 0) throw SyntaxError("zero denominator", den.line, den.col);
      value /= d;
    }
    return Poly::constant(value);
  }
  if (t.kind == Token::Ident) {
    Token name = ts.next();
    int id = gens.find(name.text);
    if (id < 0) throw SemanticError("unknown variable '" + name.text + "'");
    int exp = 1;
    if (ts.atSymbol('^')) {
      ts.next();
      exp = smallInt(ts.expectInteger("an exponent"));
    }
    return power(gens, Poly::fromMonomial(Monomial::var(id)), exp);
  }
  if (t.kind == Token::Symbol && t.text[0] == '(') {
    ts.next();
    Poly inner = parseExpr(ts, gens);
    ts.expectSymbol(')');
    if (ts.atSymbol('^')) {
      ts.next();
      return power(gens, inner, smallInt(ts.expectInteger("an exponent")));
    }
    return inner;
  }
  throw SyntaxError("expected a coefficient, variable or '('", t.line, t.col);
}

Poly parseTerm(TokenStream& ts, const GeneratorSet& gens) {
  Poly p = parseFactor(ts, gens);
  while (ts.atSymbol('*')) {
    ts.next();
    p = mul(gens, p, parseFactor(ts, gens));
  }
  return p;
}

Poly parseExpr(TokenStream& ts, const GeneratorSet& gens) {
  bool negate = false;
  if (ts.atSymbol('-')) {
    ts.next();
    negate = true;
  } else if (ts.atSymbol('+')) {
    ts.next();
  }
  Poly p = parseTerm(ts, gens);
  if (negate) p = -p;
  while (ts.atSymbol('+') || ts.atSymbol('-')) {
    bool minus = ts.next().text[0] == '-';
    Poly q = parseTerm(ts, gens);
    p = minus ? p - q : p + q;
  }
  return p;
}

void expectKeyword(TokenStream& ts, const std::string& kw) {
  const Token& t = ts.peek();
  if (t.kind != Token::Ident || t.text != kw)
    throw SyntaxError("expected '" + kw + "'", t.line, t.col);
  ts.next();
}

bool isKeyword(const std::string& s) {
  return s == "ring" || s == "ideal" || s == "options";
}

// Names like e1, r2, q10 or u3_1 are minted during resolvent construction.
bool collidesWithGeneratedNames(const std::string& s) {
  if (s.size() < 2) return false;
  char c = s[0];
  return (c == 'e' || c == 'r' || c == 'q' || c == 'u') &&
         std::isdigit(static_cast<unsigned char>(s[1]));
}

}  // namespace

ParsedInput parseInput(const std::string& text) {
  TokenStream ts(tokenize(text));
  ParsedInput out;

  expectKeyword(ts, "ring");
  if (ts.atSymbol(';')) throw SemanticError("ring section declares no variables");
  while (!ts.atSymbol(';') && !ts.atEnd()) {
    Token name = ts.expectIdent("a variable name");
    if (isKeyword(name.text))
      throw SemanticError("'" + name.text + "' is a keyword");
    if (collidesWithGeneratedNames(name.text))
      throw SemanticError("variable name '" + name.text +
                          "' collides with generated resolvent names");
    ts.expectSymbol(':');
    int weight = smallInt(ts.expectInteger("a weight"));
    try {
      out.ideal.vars.add(name.text, 0, weight, 0);
    } catch (const std::invalid_argument& e) {
      throw SemanticError(e.what());
    }
  }
  ts.expectSymbol(';');

  expectKeyword(ts, "ideal");
  if (ts.atSymbol(';') || ts.atEnd())
    throw SemanticError("ideal section lists no generators");
  out.ideal.relations.push_back(parseExpr(ts, out.ideal.vars));
  while (ts.atSymbol(',')) {
    ts.next();
    out.ideal.relations.push_back(parseExpr(ts, out.ideal.vars));
  }
  if (ts.atEnd()) return out;
  ts.expectSymbol(';');
  if (ts.atEnd()) return out;

  expectKeyword(ts, "options");
  while (!ts.atSymbol(';') && !ts.atEnd()) {
    Token key = ts.expectIdent("an option name");
    ts.expectSymbol('=');
    int value = smallInt(ts.expectInteger("an option value"));
    std::optional<int>* slot = nullptr;
    if (key.text == "depth")
      slot = &out.depth;
    else if (key.text == "order")
      slot = &out.order;
    else if (key.text == "weights")
      slot = &out.weightBound;
    else
      throw SemanticError("unknown option '" + key.text + "'");
    if (slot->has_value())
      throw SemanticError("option '" + key.text + "' given twice");
    *slot = value;
  }
  if (ts.atSymbol(';')) ts.next();
  if (!ts.atEnd())
    throw SyntaxError("unexpected trailing input", ts.peek().line,
                      ts.peek().col);
  return out;
}

Poly parsePoly(const GeneratorSet& gens, const std::string& text) {
  TokenStream ts(tokenize(text));
  Poly p = parseExpr(ts, gens);
  if (!ts.atEnd())
    throw SyntaxError("unexpected trailing input", ts.peek().line,
                      ts.peek().col);
  return p;
}

}  // namespace versal
