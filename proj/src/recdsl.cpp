#include "logbal/recdsl.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace logbal {

namespace {

enum class Tok { integer, ident, lbracket, rbracket, lparen, rparen, plus, minus, star, slash, caret, equals, semicolon, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset, line, column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t{Tok::end, "", pos_, line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        t.kind = Tok::integer;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        t.kind = Tok::ident;
      } else {
        switch (c) {
          case '[': t.kind = Tok::lbracket; break;
          case ']': t.kind = Tok::rbracket; break;
          case '(': t.kind = Tok::lparen; break;
          case ')': t.kind = Tok::rparen; break;
          case '+': t.kind = Tok::plus; break;
          case '-': t.kind = Tok::minus; break;
          case '*': t.kind = Tok::star; break;
          case '/': t.kind = Tok::slash; break;
          case '^': t.kind = Tok::caret; break;
          case '=': t.kind = Tok::equals; break;
          case ';': t.kind = Tok::semicolon; break;
          default:
            throw ParseError(pos_, line_, col_, std::string("unexpected character '") + c + "'");
        }
        advance();
      }
      t.text = std::string(src_.substr(t.offset, pos_ - t.offset));
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

// A product of factors: a coefficient times at most one reference a[n-k].
struct Product {
  RationalFunction coeff{1};
  int lag = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Recurrence parse() {
    parse_lhs();
    std::map<int, RationalFunction> by_lag;
    std::optional<RationalFunction> nonhomog;

    bool negate = accept(Tok::minus);
    for (;;) {
      const Token& start = peek();
      Product p = product();
      if (negate) p.coeff = -p.coeff;
      if (p.lag == 0) {
        if (nonhomog) fail(start, "more than one term without a[n-k]; group the inhomogeneous part in parentheses");
        nonhomog = p.coeff;
      } else {
        if (by_lag.contains(p.lag)) fail(start, "duplicate lag a[n-" + std::to_string(p.lag) + "]");
        by_lag.emplace(p.lag, p.coeff);
      }
      if (accept(Tok::plus)) {
        negate = false;
      } else if (accept(Tok::minus)) {
        negate = true;
      } else {
        break;
      }
    }
    if (by_lag.empty()) fail(peek(), "rule has no a[n-k] term", "a[n-k]");

    const int order = by_lag.rbegin()->first;
    std::vector<RationalFunction> coeffs(static_cast<std::size_t>(order));
    for (auto& [lag, c] : by_lag) coeffs[static_cast<std::size_t>(lag - 1)] = c;

    std::map<Index, std::pair<Rational, Token>> inits;
    if (peek().kind != Tok::semicolon) fail(peek(), "unexpected token " + describe(peek()), "';' or an operator");
    while (accept(Tok::semicolon)) {
      if (peek().kind == Tok::end) break;
      const Token& at = peek();
      auto [index, value] = initial();
      if (inits.contains(index)) fail(at, "duplicate initial value a[" + std::to_string(index) + "]");
      inits.emplace(index, std::make_pair(value, at));
    }
    if (peek().kind != Tok::end) fail(peek(), "unexpected token " + describe(peek()), "';' or end of input");
    if (inits.empty()) fail(peek(), "missing initial values", "a[k]=value");

    const Index offset = inits.begin()->first;
    std::vector<Rational> initials;
    for (Index k = offset; k < offset + order; ++k) {
      auto it = inits.find(k);
      if (it == inits.end()) fail(peek(), "missing initial value a[" + std::to_string(k) + "]");
      initials.push_back(it->second.first);
    }
    for (auto& [k, v] : inits)
      if (k >= offset + order)
        fail(v.second, "initial value a[" + std::to_string(k) + "] beyond the order-" +
                           std::to_string(order) + " range starting at a[" + std::to_string(offset) + "]");

    return make_recurrence(std::move(coeffs), std::move(initials), offset, std::move(nonhomog));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& peek(std::size_t ahead) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(peek(), "unexpected " + describe(peek()), what);
    return toks_[pos_++];
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg, const std::string& expected = {}) const {
    throw ParseError(t.offset, t.line, t.column, msg, expected);
  }

  void expect_a() {
    if (peek().kind != Tok::ident || peek().text != "a") fail(peek(), "unexpected " + describe(peek()), "'a'");
    ++pos_;
  }

  void parse_lhs() {
    expect_a();
    expect(Tok::lbracket, "'['");
    if (peek().kind != Tok::ident || peek().text != "n") fail(peek(), "unexpected " + describe(peek()), "'n'");
    ++pos_;
    expect(Tok::rbracket, "']'");
    expect(Tok::equals, "'='");
  }

  std::pair<Index, Rational> initial() {
    expect_a();
    expect(Tok::lbracket, "'['");
    const Token& idx = expect(Tok::integer, "an integer index");
    expect(Tok::rbracket, "']'");
    expect(Tok::equals, "'='");
    bool neg = accept(Tok::minus);
    const Token& num = expect(Tok::integer, "an integer or fraction");
    std::string lit = num.text;
    if (accept(Tok::slash)) {
      const Token& den = expect(Tok::integer, "a denominator");
      if (Integer(den.text) == 0) fail(den, "zero denominator in initial value");
      lit += "/" + den.text;
    }
    Rational v = Rational::parse(lit);
    Integer index(idx.text);
    if (!index.fits_slong_p()) fail(idx, "index too large");
    return {index.get_si(), neg ? -v : v};
  }

  bool at_reference() const {
    return peek().kind == Tok::ident && peek().text == "a" && peek(1).kind == Tok::lbracket;
  }

  int reference() {
    expect_a();
    expect(Tok::lbracket, "'['");
    if (peek().kind != Tok::ident || peek().text != "n") fail(peek(), "unexpected " + describe(peek()), "'n'");
    ++pos_;
    expect(Tok::minus, "'-'");
    const Token& k = expect(Tok::integer, "a lag between 1 and 3");
    Integer lag(k.text);
    if (lag < 1 || lag > 3) fail(k, "lag must be between 1 and 3 (order is capped at 3)");
    expect(Tok::rbracket, "']'");
    return static_cast<int>(lag.get_si());
  }

  // product := factor { ("*" | "/") factor }, with at most one reference, never a divisor.
  Product product() {
    Product p;
    bool first = true;
    for (;;) {
      bool divide = false;
      if (!first) {
        if (accept(Tok::star)) {
        } else if (accept(Tok::slash)) {
          divide = true;
        } else {
          break;
        }
      }
      first = false;
      const Token& at = peek();
      if (at_reference()) {
        if (divide) fail(at, "a[n-k] cannot appear in a denominator");
        if (p.lag != 0) fail(at, "a term may contain only one a[n-k]");
        p.lag = reference();
        continue;
      }
      RationalFunction f = unary();
      if (divide) {
        if (f.is_zero()) fail(at, "division by an identically zero expression");
        p.coeff /= f;
      } else {
        p.coeff *= f;
      }
    }
    return p;
  }

  // Coefficient-only expressions, used inside parentheses.
  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      if (accept(Tok::plus)) {
        acc += term();
      } else if (accept(Tok::minus)) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (accept(Tok::star)) {
        acc *= unary();
      } else if (peek().kind == Tok::slash) {
        const Token& at = toks_[++pos_];
        RationalFunction d = unary();
        if (d.is_zero()) fail(at, "division by an identically zero expression");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (accept(Tok::minus)) return -unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (accept(Tok::caret)) {
      const Token& e = expect(Tok::integer, "a nonnegative integer exponent");
      Integer k(e.text);
      if (k > 64) fail(e, "exponent too large");
      base = base.pow(static_cast<unsigned>(k.get_ui()));
    }
    return base;
  }

  RationalFunction primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::integer:
        ++pos_;
        return RationalFunction(Rational(Integer(t.text)));
      case Tok::ident:
        if (t.text == "n") {
          ++pos_;
          return RationalFunction::variable();
        }
        if (t.text == "a") fail(t, "a[n-k] is not allowed inside a coefficient expression");
        fail(t, "unknown identifier '" + t.text + "'", "'n', an integer or '('");
      case Tok::lparen: {
        ++pos_;
        RationalFunction inner = expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      default:
        fail(t, "unexpected " + describe(t), "'n', an integer, '(' or a[n-k]");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string coeff_text(const RationalFunction& f) {
  if (f.denominator() == Polynomial::constant(1)) return "(" + f.numerator().to_string() + ")";
  return "((" + f.numerator().to_string() + ")/(" + f.denominator().to_string() + "))";
}

}  // namespace

Recurrence parse_recurrence(std::string_view text) {
  return Parser(Lexer(text).run()).parse();
}

std::string format_recurrence(const Recurrence& rec) {
  std::ostringstream os;
  os << "a[n] = ";
  for (int lag = 1; lag <= rec.order(); ++lag) {
    if (lag > 1) os << " + ";
    os << coeff_text(rec.coeff(lag)) << "*a[n-" << lag << "]";
  }
  if (rec.nonhomog) os << " + " << coeff_text(*rec.nonhomog);
  for (int k = 0; k < rec.order(); ++k)
    os << "; a[" << rec.offset + k << "]=" << rec.initials[static_cast<std::size_t>(k)].to_string();
  return os.str();
}

}  // namespace logbal
