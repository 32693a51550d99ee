#include "core/parser.hpp"

#include <cctype>

namespace qtc {

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, uint32_t p) : text_(text), p_(p) { skip_ws(); }

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void advance() {
    ++pos_;
    skip_ws();
  }

  [[noreturn]] void die(const std::string& msg) const {
    fail(errc::parse, msg + " at position " + std::to_string(pos_ + 1));
  }

  uint32_t coeff_mod_p() {
    uint32_t v = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = (uint64_t(v) * 10 + uint32_t(peek() - '0')) % p_;
      advance();
    }
    return v;
  }

  int64_t exponent_digits() {
    constexpr int64_t kMax = 1'000'000'000;
    int64_t v = 0;
    bool any = false;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > kMax) die("exponent too large");
      any = true;
      advance();
    }
    if (!any) die("expected digits");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  uint32_t p_;
  size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_poly(std::string_view text, PrimeModulus p) {
  Cursor cur(text, p.value());
  LaurentPoly out(p);
  if (cur.done()) cur.die("empty polynomial");

  bool negative = false;
  if (cur.peek() == '+' || cur.peek() == '-') {
    negative = cur.peek() == '-';
    cur.advance();
  }
  for (;;) {
    // one term
    uint32_t coeff = 1;
    bool saw_coeff = false;
    bool saw_factor = false;
    Exponent exps{0, 0};

    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      coeff = cur.coeff_mod_p();
      saw_coeff = true;
      if (cur.peek() == '*') {
        cur.advance();
        if (cur.peek() != 'x' && cur.peek() != 'y') cur.die("expected variable after '*'");
      }
    }
    while (cur.peek() == 'x' || cur.peek() == 'y') {
      char var = cur.peek();
      cur.advance();
      int64_t e = 1;
      if (cur.peek() == '^') {
        cur.advance();
        bool eneg = false;
        if (cur.peek() == '-') {
          eneg = true;
          cur.advance();
        }
        e = cur.exponent_digits();
        if (eneg) e = -e;
      }
      if (var == 'x')
        exps.x += e;
      else
        exps.y += e;
      saw_factor = true;
      if (cur.peek() == '*') {
        cur.advance();
        if (cur.peek() != 'x' && cur.peek() != 'y') cur.die("expected variable after '*'");
      }
    }
    if (!saw_coeff && !saw_factor) cur.die("expected term");

    int64_t signed_coeff = negative ? -int64_t(coeff) : int64_t(coeff);
    out.add_term(exps, signed_coeff);

    if (cur.done()) break;
    if (cur.peek() == '+') {
      negative = false;
    } else if (cur.peek() == '-') {
      negative = true;
    } else {
      cur.die("expected '+' or '-'");
    }
    cur.advance();
    if (cur.done()) cur.die("dangling sign");
  }
  return out;
}

}  // namespace qtc
