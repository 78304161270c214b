#include <cctype>
#include <limits>

#include "irrtest/error.hpp"
#include "irrtest/polynomial.hpp"

namespace irrtest::poly {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ff::Field& field, std::size_t num_vars)
      : text_(text), field_(field), num_vars_(num_vars) {}

  Polynomial parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    Polynomial result = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message, ErrorKind kind = ErrorKind::SyntaxError) const {
    throw ParseError(kind, pos_, message);
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial result = term();
    if (negate) result = -result;
    for (;;) {
      if (accept('+')) {
        result = result + term();
      } else if (accept('-')) {
        result = result - term();
      } else {
        return result;
      }
    }
  }

  Polynomial term() {
    Polynomial result = factor();
    while (accept('*')) result = result * factor();
    return result;
  }

  std::uint64_t exponent() {
    if (!accept('^')) return 1;
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) fail("exponent too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected exponent");
    return value;
  }

  Polynomial factor() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner.pow(exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return integer();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Polynomial integer() {
    // Reduce digit by digit so arbitrarily long literals never overflow.
    const auto p = static_cast<unsigned __int128>(field_.characteristic());
    unsigned __int128 residue = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      residue = (residue * 10 + static_cast<unsigned>(text_[pos_] - '0')) % p;
      ++pos_;
    }
    return Polynomial::constant(field_, num_vars_, ff::Element{static_cast<std::uint64_t>(residue)});
  }

  Polynomial identifier() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    if (name == "g") {
      if (field_.degree() == 1) {
        pos_ = start;
        fail("'g' is only defined over extension fields", ErrorKind::UnknownVariable);
      }
      const ff::Element root = field_.adjoined_root();
      return Polynomial::constant(field_, num_vars_, field_.pow(root, exponent()));
    }

    bool is_var = name.size() >= 2 && name[0] == 'x' && name[1] != '0';
    std::uint64_t index = 0;
    for (std::size_t i = 1; is_var && i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) {
        is_var = false;
      } else if (index > 1'000'000'000) {
        is_var = false;
      } else {
        index = index * 10 + static_cast<std::uint64_t>(name[i] - '0');
      }
    }
    if (!is_var) {
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'", ErrorKind::UnknownVariable);
    }
    if (index > num_vars_) {
      pos_ = start;
      fail("variable '" + std::string(name) + "' outside x1..x" + std::to_string(num_vars_),
           ErrorKind::ArityMismatch);
    }
    const auto power = static_cast<std::uint32_t>(exponent());
    Polynomial::TermMap terms;
    terms.emplace(Monomial::variable(num_vars_, index - 1, power), field_.one());
    return Polynomial(field_, num_vars_, std::move(terms));
  }

  std::string_view text_;
  const ff::Field& field_;
  std::size_t num_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, const ff::Field& field, std::size_t num_vars) {
  return Parser(text, field, num_vars).parse();
}

}  // namespace irrtest::poly
