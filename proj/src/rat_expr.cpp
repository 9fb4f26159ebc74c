#include "ratg/rat_expr.hpp"

#include <cctype>

namespace ratg {

RatExprPtr RatExpr::make_empty() {
  static const RatExprPtr empty = std::make_shared<RatExpr>();
  return empty;
}

RatExprPtr RatExpr::singleton(Word word) {
  auto e = std::make_shared<RatExpr>();
  e->kind = Kind::singleton;
  e->word = std::move(word);
  return e;
}

RatExprPtr RatExpr::unite(RatExprPtr a, RatExprPtr b) {
  auto e = std::make_shared<RatExpr>();
  e->kind = Kind::union_of;
  e->left = std::move(a);
  e->right = std::move(b);
  return e;
}

RatExprPtr RatExpr::concat(RatExprPtr a, RatExprPtr b) {
  auto e = std::make_shared<RatExpr>();
  e->kind = Kind::concat;
  e->left = std::move(a);
  e->right = std::move(b);
  return e;
}

RatExprPtr RatExpr::star(RatExprPtr a) {
  auto e = std::make_shared<RatExpr>();
  e->kind = Kind::star;
  e->left = std::move(a);
  return e;
}

namespace {

constexpr std::string_view kEmptySet = "\xE2\x88\x85";  // U+2205

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RatExprPtr parse() {
    auto e = parse_union();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(text_.substr(pos_, 1)) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("rational expression: " + msg + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool at_atom() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '1' ||
           text_.substr(pos_).starts_with(kEmptySet);
  }

  RatExprPtr parse_union() {
    auto e = parse_concat();
    while (peek('|')) {
      ++pos_;
      e = RatExpr::unite(e, parse_concat());
    }
    return e;
  }

  RatExprPtr parse_concat() {
    auto e = parse_factor();
    while (true) {
      if (peek('.')) {
        ++pos_;
        e = RatExpr::concat(e, parse_factor());
      } else if (at_atom()) {
        e = RatExpr::concat(e, parse_factor());
      } else {
        return e;
      }
    }
  }

  Integer parse_int() {
    skip();
    const bool paren = pos_ < text_.size() && text_[pos_] == '(';
    if (paren) ++pos_;
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer exponent");
    Integer v;
    try {
      v = Integer::parse(text_.substr(start, pos_ - start));
    } catch (const std::invalid_argument&) {
      fail("malformed integer exponent");
    }
    if (paren) {
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("unclosed exponent");
      ++pos_;
    }
    return v;
  }

  RatExprPtr parse_factor() {
    auto e = parse_atom();
    while (true) {
      if (peek('*')) {
        ++pos_;
        e = RatExpr::star(e);
      } else if (peek('^')) {
        ++pos_;
        const Integer n = parse_int();
        if (n == Integer(-1)) {
          e = inverse(e);
        } else if (n.sign() >= 0 && n <= Integer(64)) {
          RatExprPtr acc = RatExpr::singleton({});
          for (Integer i = 0; i < n; i += 1) acc = i.is_zero() ? e : RatExpr::concat(acc, e);
          e = acc;
        } else {
          fail("unsupported exponent " + n.str() + " on a subexpression");
        }
      } else {
        return e;
      }
    }
  }

  RatExprPtr parse_atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_.substr(pos_).starts_with(kEmptySet)) {
      pos_ += kEmptySet.size();
      return RatExpr::make_empty();
    }
    if (text_[pos_] == '(') {
      ++pos_;
      auto e = parse_union();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return e;
    }
    if (text_.substr(pos_).starts_with("EMPTY") &&
        (pos_ + 5 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 5])))) {
      pos_ += 5;
      return RatExpr::make_empty();
    }
    Word word;
    bool any = false;
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == '1' && (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
        ++pos_;
        any = true;
        continue;
      }
      if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) break;
      if (text_.substr(pos_).starts_with("EMPTY")) break;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      Letter letter{std::string(text_.substr(start, pos_ - start)), 1};
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        letter.exponent = parse_int();
      }
      any = true;
      if (!letter.exponent.is_zero()) word.push_back(std::move(letter));
    }
    if (!any) fail("expected a word, '(' or the empty set");
    return RatExpr::singleton(std::move(word));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(RatExpr::Kind k) {
  switch (k) {
    case RatExpr::Kind::union_of: return 0;
    case RatExpr::Kind::concat: return 1;
    default: return 2;
  }
}

std::string render_at(const RatExprPtr& e, int context) {
  std::string s;
  switch (e->kind) {
    case RatExpr::Kind::empty: return "\xE2\x88\x85";
    case RatExpr::Kind::singleton:
      s = render_word(e->word);
      if (context >= 2 && (e->word.size() > 1 || (e->word.size() == 1 && !e->word.front().exponent.is_one()))) {
        return "(" + s + ")";
      }
      return s;
    case RatExpr::Kind::union_of: s = render_at(e->left, 0) + " | " + render_at(e->right, 0); break;
    case RatExpr::Kind::concat: s = render_at(e->left, 1) + " . " + render_at(e->right, 1); break;
    case RatExpr::Kind::star: s = render_at(e->left, 2) + "*"; break;
  }
  return precedence(e->kind) < context ? "(" + s + ")" : s;
}

}  // namespace

RatExprPtr parse_rat_expr(std::string_view text) { return Parser(text).parse(); }

std::string render(const RatExprPtr& e) { return render_at(e, 0); }

RatExprPtr inverse(const RatExprPtr& e) {
  switch (e->kind) {
    case RatExpr::Kind::empty: return e;
    case RatExpr::Kind::singleton: return RatExpr::singleton(inverse_word(e->word));
    case RatExpr::Kind::union_of: return RatExpr::unite(inverse(e->left), inverse(e->right));
    case RatExpr::Kind::concat: return RatExpr::concat(inverse(e->right), inverse(e->left));
    case RatExpr::Kind::star: return RatExpr::star(inverse(e->left));
  }
  return e;
}

}  // namespace ratg
