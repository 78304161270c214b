#include <doctest.h>

#include <algorithm>

#include "irrtest/error.hpp"
#include "irrtest/polynomial.hpp"

using irrtest::Error;
using irrtest::ErrorKind;
using irrtest::ParseError;
using irrtest::RandomStream;
using irrtest::ff::Element;
using irrtest::ff::Field;
using irrtest::poly::Polynomial;
using irrtest::poly::parse_poly;

namespace {

// Independent evaluator: coefficient times field.pow per variable, no caching.
Element naive_evaluate(const Polynomial& f, const std::vector<Element>& x) {
  const Field& field = f.field();
  Element sum = field.zero();
  for (const auto& [mono, coeff] : f.terms()) {
    Element value = coeff;
    for (std::size_t v = 0; v < x.size(); ++v) value = field.mul(value, field.pow(x[v], mono[v]));
    sum = field.add(sum, value);
  }
  return sum;
}

std::vector<std::vector<Element>> all_points(const Field& field, std::size_t n) {
  std::vector<std::vector<Element>> out{{}};
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::vector<Element>> next;
    for (const auto& prefix : out) {
      for (const Element a : field.elements()) {
        auto point = prefix;
        point.push_back(a);
        next.push_back(std::move(point));
      }
    }
    out = std::move(next);
  }
  return out;
}

bool no_zero_coefficients(const Polynomial& f) {
  return std::none_of(f.terms().begin(), f.terms().end(),
                      [&](const auto& term) { return f.field().is_zero(term.second); });
}

}  // namespace

TEST_CASE("parse_poly examples") {
  const Field f5 = Field::prime(5);
  CHECK(parse_poly("0", f5, 2).is_zero());

  const Field f7 = Field::prime(7);
  const Polynomial f = parse_poly("x1*x2 + 3*x1^2 - 1", f7, 2);
  CHECK(f.num_terms() == 3);
  std::vector<std::uint64_t> coeffs;
  for (const auto& [mono, c] : f.terms()) coeffs.push_back(c.code());
  std::sort(coeffs.begin(), coeffs.end());
  CHECK(coeffs == std::vector<std::uint64_t>{1, 3, 6});
  CHECK(f.to_string() == "3*x1^2 + x1*x2 + 6");

  const Field f2 = Field::prime(2);
  CHECK(parse_poly("x1 + x1", f2, 1).is_zero());
  CHECK(parse_poly("-1", f7, 1) == Polynomial::constant(f7, 1, Element{6}));
  // 123456789012345678901234567890 = 0 mod 7 and = 7 mod 11 (computed offline).
  CHECK(parse_poly("  123456789012345678901234567890 ", f7, 1).is_zero());
  CHECK(parse_poly("123456789012345678901234567890", Field::prime(11), 1) ==
        Polynomial::constant(Field::prime(11), 1, Element{7}));
  CHECK(parse_poly("(x1 + 1)^2", f2, 1) == parse_poly("x1^2 + 1", f2, 1));
  CHECK(parse_poly("x1*-x2", f7, 2) == parse_poly("6*x1*x2", f7, 2));
}

TEST_CASE("parse_poly errors") {
  const Field f7 = Field::prime(7);
  auto error_of = [&](std::string_view text, std::size_t n) {
    try {
      parse_poly(text, f7, n);
    } catch (const ParseError& e) {
      return std::pair{e.kind(), e.position()};
    }
    FAIL("expected ParseError for " << text);
    return std::pair{ErrorKind::InvalidArgument, std::size_t{0}};
  };
  CHECK(error_of("x1 + * x2", 2) == std::pair{ErrorKind::SyntaxError, std::size_t{5}});
  CHECK(error_of("", 2).first == ErrorKind::SyntaxError);
  CHECK(error_of("x1 x2", 2) == std::pair{ErrorKind::SyntaxError, std::size_t{3}});
  CHECK(error_of("2x1", 2).first == ErrorKind::SyntaxError);
  CHECK(error_of("(x1 + 1", 2).first == ErrorKind::SyntaxError);
  CHECK(error_of("x1^", 2).first == ErrorKind::SyntaxError);
  CHECK(error_of("y1 + 1", 2) == std::pair{ErrorKind::UnknownVariable, std::size_t{0}});
  CHECK(error_of("x0", 2).first == ErrorKind::UnknownVariable);
  CHECK(error_of("g + 1", 2).first == ErrorKind::UnknownVariable);
  CHECK(error_of("1 + x3", 2) == std::pair{ErrorKind::ArityMismatch, std::size_t{4}});
}

TEST_CASE("format/parse round trip") {
  const std::vector<Field> fields{Field::prime(2), Field::prime(7), Field::prime(101), Field::extension(3, 2),
                                  Field::extension(2, 4)};
  RandomStream rng(99);
  for (const Field& field : fields) {
    for (unsigned n = 1; n <= 4; ++n) {
      for (unsigned d = 0; d <= 4; ++d) {
        const Polynomial f = irrtest::poly::random_dense_poly(field, n, d, rng);
        CAPTURE(f.to_string());
        CHECK(parse_poly(f.to_string(), field, n) == f);
      }
    }
  }
}

TEST_CASE("evaluate") {
  const Field f2 = Field::prime(2);
  const Polynomial zero(f2, 3);
  CHECK(zero.evaluate(std::vector<Element>{Element{1}, Element{0}, Element{1}}) == f2.zero());
  const Polynomial f = parse_poly("x1*x2 + 1", f2, 2);
  CHECK(f.evaluate(std::vector<Element>{Element{1}, Element{1}}) == f2.zero());
  CHECK_THROWS_AS(f.evaluate(std::vector<Element>{Element{1}}), Error);

  // Random degree-5 polynomial over F_7 in 3 variables vs the naive evaluator
  // at all 343 points.
  const Field f7 = Field::prime(7);
  RandomStream rng(5);
  const Polynomial g = irrtest::poly::random_dense_poly(f7, 3, 5, rng);
  const auto points = all_points(f7, 3);
  REQUIRE(points.size() == 343);
  for (const auto& x : points) CHECK(g.evaluate(x) == naive_evaluate(g, x));

  const Field f9 = Field::extension(3, 2);
  const Polynomial h = irrtest::poly::random_dense_poly(f9, 2, 6, rng);
  for (const auto& x : all_points(f9, 2)) CHECK(h.evaluate(x) == naive_evaluate(h, x));
}

TEST_CASE("add and mul") {
  const Field f2 = Field::prime(2);
  RandomStream rng(17);
  const Polynomial f = irrtest::poly::random_dense_poly(Field::prime(5), 2, 3, rng);
  CHECK(f + Polynomial(f.field(), 2) == f);
  CHECK(f * Polynomial::constant(f.field(), 2, f.field().one()) == f);

  const Polynomial x1p1 = parse_poly("x1 + 1", f2, 1);
  CHECK(x1p1 * x1p1 == parse_poly("x1^2 + 1", f2, 1));

  const Field f3 = Field::prime(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial a = irrtest::poly::random_dense_poly(f3, 2, 3, rng);
    const Polynomial b = irrtest::poly::random_dense_poly(f3, 2, 3, rng);
    const Polynomial sum = a + b, prod = a * b, diff = a - b;
    CHECK(no_zero_coefficients(sum));
    CHECK(no_zero_coefficients(prod));
    CHECK(no_zero_coefficients(diff));
    for (const auto& x : all_points(f3, 2)) {
      CHECK(sum.evaluate(x) == f3.add(a.evaluate(x), b.evaluate(x)));
      CHECK(prod.evaluate(x) == f3.mul(a.evaluate(x), b.evaluate(x)));
      CHECK(diff.evaluate(x) == f3.sub(a.evaluate(x), b.evaluate(x)));
    }
  }

  CHECK_THROWS_AS(parse_poly("x1", f2, 1) + parse_poly("x1", f3, 1), Error);
  try {
    (void)(parse_poly("x1", f2, 1) * parse_poly("x1", f2, 2));
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArityMismatch);
  }
  try {
    (void)(parse_poly("x1", f2, 1) * parse_poly("x1", f3, 1));
    FAIL("expected FieldMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FieldMismatch);
  }
}

TEST_CASE("random_dense_poly") {
  const Field f11 = Field::prime(11);
  RandomStream a(3), b(3);
  const Polynomial c = irrtest::poly::random_dense_poly(f11, 4, 0, a);
  CHECK(c.total_degree() <= 0);
  CHECK(c.num_terms() <= 1);

  CHECK(irrtest::poly::monomials_up_to(4, 5).size() == 126);
  RandomStream s1(11), s2(11);
  const Polynomial f = irrtest::poly::random_dense_poly(f11, 4, 5, s1);
  const Polynomial g = irrtest::poly::random_dense_poly(f11, 4, 5, s2);
  CHECK(f.num_terms() <= 126);
  CHECK(f == g);

  // Constants are uniform: over 1100 draws each residue shows up.
  std::vector<int> hits(11, 0);
  RandomStream s3(8);
  for (int i = 0; i < 1100; ++i) {
    const Polynomial k = irrtest::poly::random_dense_poly(f11, 1, 0, s3);
    ++hits[k.is_zero() ? 0 : k.terms().begin()->second.code()];
  }
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h > 50; }));
}

TEST_CASE("total_degree") {
  const Field f7 = Field::prime(7);
  CHECK(Polynomial(f7, 2).total_degree() == -1);
  CHECK(parse_poly("x1^2*x2 + x2", f7, 2).total_degree() == 3);

  // Over F_101 the top homogeneous parts multiply without cancellation; the
  // product of the leading graded-lex terms is checked to be nonzero.
  const Field f101 = Field::prime(101);
  RandomStream rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial f = irrtest::poly::random_dense_poly(f101, 3, 3, rng);
    const Polynomial g = irrtest::poly::random_dense_poly(f101, 3, 4, rng);
    if (f.total_degree() != 3 || g.total_degree() != 4) continue;
    const auto& lf = *f.terms().begin();
    const auto& lg = *g.terms().begin();
    REQUIRE(!f101.is_zero(f101.mul(lf.second, lg.second)));
    CHECK((f * g).total_degree() == 7);
  }
}
