#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "irrtest/field.hpp"
#include "irrtest/polynomial.hpp"
#include "irrtest/random.hpp"

namespace irrtest::fixtures {

/// Polynomial with integer coefficients, for building one fixture and
/// reducing it modulo several primes.
class IntegerPolynomial {
 public:
  using TermMap = std::map<poly::Monomial, std::int64_t, poly::GradedLexGreater>;

  explicit IntegerPolynomial(std::size_t num_vars = 0, TermMap terms = {});

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  int total_degree() const;

  /// Image in F_q[x1..xn] under Z -> F_p -> F_q.
  poly::Polynomial reduce(const ff::Field& field) const;
  std::string to_string() const;

  IntegerPolynomial scaled(std::int64_t factor) const;
  friend IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b);
  friend bool operator==(const IntegerPolynomial&, const IntegerPolynomial&) = default;

 private:
  std::size_t num_vars_;
  TermMap terms_;
};

/// Every monomial of total degree <= degree gets a coefficient uniform in
/// [lo, hi]; redrawn until some top-degree coefficient is nonzero.
IntegerPolynomial random_integer_poly(std::size_t num_vars, unsigned degree, std::int64_t lo, std::int64_t hi,
                                      RandomStream& stream);

/// f = f1*f2 + 7*f3 in Z[x1..x4], deg f1 = deg f2 = 5, deg f3 = 10,
/// coefficients in [-9, 9]. Modulo 7 it is the product f1*f2.
struct ProductTrap {
  std::uint64_t seed = 0;
  IntegerPolynomial f1, f2, f3, f;
};

ProductTrap make_product_trap_fixture(std::uint64_t seed);

}  // namespace irrtest::fixtures
