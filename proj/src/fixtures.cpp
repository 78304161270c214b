#include "irrtest/fixtures.hpp"

#include <sstream>

#include "irrtest/error.hpp"

namespace irrtest::fixtures {

IntegerPolynomial::IntegerPolynomial(std::size_t num_vars, TermMap terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& term) { return term.second == 0; });
  for (const auto& [mono, coeff] : terms_) {
    if (mono.num_vars() != num_vars_) throw Error(ErrorKind::ArityMismatch, "monomial has the wrong arity");
  }
}

int IntegerPolynomial::total_degree() const {
  int degree = -1;
  for (const auto& [mono, coeff] : terms_) degree = std::max(degree, static_cast<int>(mono.total_degree()));
  return degree;
}

poly::Polynomial IntegerPolynomial::reduce(const ff::Field& field) const {
  poly::Polynomial::TermMap reduced;
  for (const auto& [mono, coeff] : terms_) reduced.emplace(mono, field.from_integer(coeff));
  return poly::Polynomial(field, num_vars_, std::move(reduced));
}

std::string IntegerPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    const std::int64_t magnitude = coeff < 0 ? -coeff : coeff;
    if (first) {
      if (coeff < 0) out << '-';
    } else {
      out << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (magnitude != 1 || mono.total_degree() == 0) {
      out << magnitude;
      wrote = true;
    }
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (mono[i] == 0) continue;
      if (wrote) out << '*';
      out << 'x' << i + 1;
      if (mono[i] > 1) out << '^' << mono[i];
      wrote = true;
    }
  }
  return out.str();
}

IntegerPolynomial IntegerPolynomial::scaled(std::int64_t factor) const {
  TermMap out;
  for (const auto& [mono, coeff] : terms_) out.emplace(mono, coeff * factor);
  return IntegerPolynomial(num_vars_, std::move(out));
}

IntegerPolynomial operator+(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw Error(ErrorKind::ArityMismatch, "integer polynomials differ in arity");
  auto terms = a.terms_;
  for (const auto& [mono, coeff] : b.terms_) terms[mono] += coeff;
  return IntegerPolynomial(a.num_vars_, std::move(terms));
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw Error(ErrorKind::ArityMismatch, "integer polynomials differ in arity");
  IntegerPolynomial::TermMap terms;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) terms[ma * mb] += ca * cb;
  }
  return IntegerPolynomial(a.num_vars_, std::move(terms));
}

IntegerPolynomial random_integer_poly(std::size_t num_vars, unsigned degree, std::int64_t lo, std::int64_t hi,
                                      RandomStream& stream) {
  if (lo > hi) throw Error(ErrorKind::RangeError, "empty coefficient range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  const auto monomials = poly::monomials_up_to(num_vars, degree);
  while (true) {
    IntegerPolynomial::TermMap terms;
    for (const auto& mono : monomials) {
      terms.emplace(mono, lo + static_cast<std::int64_t>(stream.uniform_below(span)));
    }
    IntegerPolynomial f(num_vars, std::move(terms));
    if (f.total_degree() == static_cast<int>(degree)) return f;
  }
}

ProductTrap make_product_trap_fixture(std::uint64_t seed) {
  RandomStream stream(seed);
  ProductTrap trap;
  trap.seed = seed;
  trap.f1 = random_integer_poly(4, 5, -9, 9, stream);
  trap.f2 = random_integer_poly(4, 5, -9, 9, stream);
  trap.f3 = random_integer_poly(4, 10, -9, 9, stream);
  trap.f = trap.f1 * trap.f2 + trap.f3.scaled(7);
  return trap;
}

}  // namespace irrtest::fixtures
