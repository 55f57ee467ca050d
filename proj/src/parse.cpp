#include "pfarc/parse.hpp"

#include <cctype>
#include <stdexcept>

#include "pfarc/pfaffian.hpp"

namespace pfarc {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : s_(text) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ == s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool accept_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(s_.substr(start, pos_ - start));
  }
  int small_int() {
    const std::string d = digits();
    if (d.size() > 6) fail("number too large");
    return std::stoi(d);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<int> row_list(Cursor& c) {
  std::vector<int> rows;
  if (c.peek() == '|') return rows;
  do {
    rows.push_back(c.small_int());
  } while (c.accept(','));
  return rows;
}

class ExprParser {
 public:
  ExprParser(std::string_view text, int p) : c_(text), p_(p), alpha_(Alphabet::x_ring(p)) {}

  Poly parse() {
    Poly r = expr();
    if (!c_.done()) c_.fail("unexpected trailing input");
    return r;
  }

 private:
  Poly expr() {
    Poly r(alpha_);
    bool negate = false;
    if (c_.accept('-')) {
      negate = true;
    } else {
      c_.accept('+');
    }
    r = negate ? -term() : term();
    while (true) {
      if (c_.accept('+')) {
        r += term();
      } else if (c_.accept('-')) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  Poly term() {
    Poly r = factor();
    while (c_.accept('*')) r *= factor();
    return r;
  }

  Poly factor() {
    Poly r = atom();
    if (c_.accept('^')) r = r.pow(static_cast<unsigned>(c_.small_int()));
    return r;
  }

  Poly atom() {
    const char ch = c_.peek();
    if (ch == '(') {
      c_.expect('(');
      Poly r = expr();
      c_.expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return Poly::constant(alpha_, BigInt(c_.digits()));
    if (c_.accept_word("x^")) {
      const int k = c_.small_int();
      c_.expect('_');
      c_.expect('{');
      const int u = c_.small_int();
      c_.expect(',');
      const int v = c_.small_int();
      c_.expect('}');
      return x_var(p_, u, v, k);
    }
    int n = 0;
    if (c_.accept_word("d^")) {
      n = c_.small_int();
    }
    if (c_.accept('|')) {
      std::vector<int> rows = row_list(c_);
      c_.expect('|');
      if (rows.size() % 2 != 0) c_.fail("odd number of rows");
      for (int r : rows) {
        if (r < 1 || r > p_) c_.fail("row outside 1..p");
      }
      return jseq_value(p_, rows, n);
    }
    c_.fail("expected a factor");
  }

  Cursor c_;
  int p_;
  Alphabet alpha_;
};

}  // namespace

std::vector<int> parse_int_list(std::string_view text) {
  Cursor c(text);
  std::vector<int> out;
  if (c.done()) return out;
  do {
    out.push_back(c.small_int());
  } while (c.accept(','));
  if (!c.done()) c.fail("unexpected trailing input");
  return out;
}

JSeq parse_jseq(std::string_view text) {
  Cursor c(text);
  int n = 0;
  if (c.accept_word("d^")) n = c.small_int();
  c.expect('|');
  std::vector<int> rows = row_list(c);
  c.expect('|');
  if (!c.done()) c.fail("unexpected trailing input");
  return JSeq(std::move(rows), n);
}

ESeq parse_eseq(std::string_view text) {
  Cursor c(text);
  c.expect('|');
  std::vector<EPair> pairs;
  if (c.peek() != '|') {
    do {
      c.expect('(');
      EPair pr;
      pr.u = c.small_int();
      c.expect(',');
      pr.k = c.small_int();
      c.expect(')');
      pairs.push_back(pr);
    } while (c.accept(','));
  }
  c.expect('|');
  if (!c.done()) c.fail("unexpected trailing input");
  return ESeq(std::move(pairs));
}

Poly parse_expr(std::string_view text, int p) { return ExprParser(text, p).parse(); }

}  // namespace pfarc
