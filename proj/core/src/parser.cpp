#include "nuframe/parser.hpp"

#include <cctype>
#include <string>

#include "nuframe/errors.hpp"

namespace nuframe {

namespace {

// Keeps a hostile "((((((...": the node limit alone does not bound nesting.
constexpr int kMaxDepth = 2000;

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : text_(text), options_(options) {}

  FreqExpr run() {
    FreqExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg, at);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  FreqExpr checked(FreqExpr e, std::size_t at) {
    if (e.node_count() > options_.max_nodes) {
      throw Error(ErrorCode::NodeLimitExceeded,
                  "expression exceeds " + std::to_string(options_.max_nodes) + " nodes", at);
    }
    return e;
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) p.fail("nesting too deep");
    }
    ~DepthGuard() { --p.depth_; }
  };

  FreqExpr expr() {
    DepthGuard guard(*this);
    const std::size_t start = pos_;
    std::vector<FreqExpr> terms;
    terms.push_back(term());
    for (;;) {
      if (peek('+')) {
        ++pos_;
        terms.push_back(term());
      } else if (peek('-')) {
        ++pos_;
        terms.push_back(fx::negate(term()));
      } else {
        break;
      }
    }
    return checked(fx::sum(std::move(terms)), start);
  }

  FreqExpr term() {
    const std::size_t start = pos_;
    std::vector<FreqExpr> factors;
    factors.push_back(factor());
    while (peek('*')) {
      ++pos_;
      factors.push_back(factor());
    }
    return checked(fx::product(std::move(factors)), start);
  }

  bool at_digit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  // integer, integer '/' positive-integer, or decimal. Whitespace may
  // surround the '/'.
  Rational rational_literal(bool negative) {
    skip_ws();
    const std::size_t start = pos_;
    if (!at_digit()) fail("expected number");
    std::string lit = negative ? "-" : "";
    while (at_digit()) lit += text_[pos_++];
    if (pos_ < text_.size() && text_[pos_] == '.') {
      lit += text_[pos_++];
      if (!at_digit()) fail("expected digit after '.'");
      while (at_digit()) lit += text_[pos_++];
    } else {
      const std::size_t save = pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        if (!at_digit()) fail("expected positive integer denominator");
        const std::size_t den_start = pos_;
        std::string den;
        while (at_digit()) den += text_[pos_++];
        if (den.find_first_not_of('0') == std::string::npos) {
          fail_at(den_start, "denominator must be positive");
        }
        lit += '/';
        lit += den;
      } else {
        pos_ = save;
      }
    }
    try {
      return Rational::parse(lit);
    } catch (const Error& e) {
      fail_at(start, "numeric literal out of range");
    }
  }

  Rational signed_rational() {
    bool negative = false;
    if (peek('-')) {
      negative = true;
      ++pos_;
    }
    return rational_literal(negative);
  }

  FreqExpr factor() {
    DepthGuard guard(*this);
    skip_ws();
    if (pos_ >= text_.size()) fail("expected expression before end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return fx::constant(rational_literal(false));
    }
    if (c == '-') {
      ++pos_;
      skip_ws();
      if (at_digit()) return fx::constant(rational_literal(true));
      return fx::negate(factor());
    }
    if (c == '(') {
      ++pos_;
      FreqExpr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      std::string ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ident += text_[pos_++];
      }
      if (ident == "g") return fx::var();
      if (ident == "i") return fx::imaginary_unit();
      if (ident == "chi") return indicator(start);
      FreqExpr (*make)(FreqExpr) = nullptr;
      if (ident == "sin") make = fx::sin;
      else if (ident == "cos") make = fx::cos;
      else if (ident == "sinc") make = fx::sinc;
      else if (ident == "sqrt") make = fx::sqrt;
      else if (ident == "abs2") make = fx::abs2;
      else if (ident == "conj") make = fx::conj;
      if (make == nullptr) {
        throw Error(ErrorCode::UnknownIdentifier, "'" + ident + "'", start);
      }
      expect('(');
      FreqExpr arg = expr();
      expect(')');
      return make(std::move(arg));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  FreqExpr indicator(std::size_t start) {
    bool lo_closed = false;
    if (peek('[')) {
      lo_closed = true;
    } else if (!peek('(')) {
      fail("expected '(' or '[' after chi");
    }
    ++pos_;
    const Rational lo = signed_rational();
    expect(',');
    const Rational hi = signed_rational();
    bool hi_closed = false;
    if (peek(']')) {
      hi_closed = true;
    } else if (!peek(')')) {
      fail("expected ')' or ']' closing chi");
    }
    ++pos_;
    if (!(lo < hi)) {
      throw Error(ErrorCode::BadIndicatorBounds,
                  "chi needs lo < hi, got " + lo.str() + ", " + hi.str(), start);
    }
    return fx::chi(lo, hi, lo_closed, hi_closed);
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

FreqExpr parse_expr(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).run();
}

}  // namespace nuframe
