#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irrtest/field.hpp"
#include "irrtest/random.hpp"

namespace irrtest::poly {

/// Exponent vector (e_1, ..., e_n) of x1^e_1 * ... * xn^e_n.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) {}

  static Monomial one(std::size_t num_vars) { return Monomial(std::vector<std::uint32_t>(num_vars, 0)); }
  /// x_{index+1}^power; index is 0-based.
  static Monomial variable(std::size_t num_vars, std::size_t index, std::uint32_t power = 1);

  std::size_t num_vars() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const { return exps_; }
  std::uint64_t total_degree() const;

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order, greatest first: higher total degree first,
/// ties broken lexicographically with x1 > x2 > ... > xn.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over F_q in a fixed number of variables.
/// Immutable once built; no stored coefficient is ever zero.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, ff::Element, GradedLexGreater>;

  Polynomial(ff::Field field, std::size_t num_vars);
  /// Drops zero coefficients. Throws ArityMismatch on a monomial of the
  /// wrong length.
  Polynomial(ff::Field field, std::size_t num_vars, TermMap terms);

  static Polynomial constant(const ff::Field& field, std::size_t num_vars, ff::Element value);
  /// x_{index+1}; index is 0-based.
  static Polynomial variable(const ff::Field& field, std::size_t num_vars, std::size_t index);

  const ff::Field& field() const { return field_; }
  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Largest total degree of a stored term; -1 for the zero polynomial.
  int total_degree() const;

  /// Direct term-by-term evaluation with per-variable power caching.
  /// Throws ArityMismatch unless point.size() == num_vars().
  ff::Element evaluate(std::span<const ff::Element> point) const;

  Polynomial pow(std::uint64_t exponent) const;
  Polynomial scaled(ff::Element factor) const;

  /// Canonical text in graded-lex order; parse_poly inverts it.
  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  struct PlanTerm {
    ff::Element coeff;
    std::uint32_t begin;
    std::uint32_t end;
  };

  void check_compatible(const Polynomial& other) const;
  void compile();

  ff::Field field_;
  std::size_t num_vars_;
  TermMap terms_;

  // Evaluation plan: power table layout plus, per term, the slice of
  // factor_index_ naming which cached powers to multiply together.
  std::vector<std::uint32_t> power_offset_;
  std::vector<std::uint32_t> max_exponent_;
  std::vector<std::uint32_t> factor_index_;
  std::vector<PlanTerm> plan_;
  std::size_t power_table_size_ = 0;
};

inline Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
inline Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }
inline int total_degree(const Polynomial& f) { return f.total_degree(); }
inline ff::Element evaluate(const Polynomial& f, std::span<const ff::Element> point) {
  return f.evaluate(point);
}

/// Grammar (whitespace insignificant):
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | integer | var ['^' integer] | 'g' ['^' integer]
///           | '(' expr ')' ['^' integer]
///   var    := 'x' positive-integer
/// Integers are reduced mod p. 'g' names the adjoined root of an extension
/// field and is rejected over prime fields.
/// Errors: SyntaxError (with position), UnknownVariable, ArityMismatch.
Polynomial parse_poly(std::string_view text, const ff::Field& field, std::size_t num_vars);

inline std::string format_poly(const Polynomial& f) { return f.to_string(); }

/// All monomials of total degree <= degree in num_vars variables, ordered by
/// total degree ascending and then lexicographically descending.
std::vector<Monomial> monomials_up_to(std::size_t num_vars, unsigned degree);

/// Every monomial of total degree <= degree gets an independent uniform
/// coefficient drawn from `stream` in monomials_up_to order.
Polynomial random_dense_poly(const ff::Field& field, std::size_t num_vars, unsigned degree,
                             RandomStream& stream);

}  // namespace irrtest::poly
