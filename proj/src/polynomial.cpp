#include "irrtest/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "irrtest/error.hpp"

namespace irrtest::poly {

Monomial Monomial::variable(std::size_t num_vars, std::size_t index, std::uint32_t power) {
  if (index >= num_vars) {
    throw Error(ErrorKind::ArityMismatch, "variable x" + std::to_string(index + 1) + " outside x1..x" +
                                              std::to_string(num_vars));
  }
  std::vector<std::uint32_t> exps(num_vars, 0);
  exps[index] = power;
  return Monomial(std::move(exps));
}

std::uint64_t Monomial::total_degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.exps_.size() != exps_.size()) {
    throw Error(ErrorKind::ArityMismatch, "monomials in different numbers of variables");
  }
  std::vector<std::uint32_t> exps(exps_);
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] += other.exps_[i];
  return Monomial(std::move(exps));
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.total_degree();
  const auto db = b.total_degree();
  if (da != db) return da > db;
  const auto ea = a.exponents();
  const auto eb = b.exponents();
  return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
}

Polynomial::Polynomial(ff::Field field, std::size_t num_vars)
    : field_(std::move(field)), num_vars_(num_vars) {
  compile();
}

Polynomial::Polynomial(ff::Field field, std::size_t num_vars, TermMap terms)
    : field_(std::move(field)), num_vars_(num_vars), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.num_vars() != num_vars_) {
      throw Error(ErrorKind::ArityMismatch, "monomial length " + std::to_string(it->first.num_vars()) +
                                                " != " + std::to_string(num_vars_));
    }
    it = field_.is_zero(it->second) ? terms_.erase(it) : std::next(it);
  }
  compile();
}

Polynomial Polynomial::constant(const ff::Field& field, std::size_t num_vars, ff::Element value) {
  TermMap terms;
  terms.emplace(Monomial::one(num_vars), value);
  return Polynomial(field, num_vars, std::move(terms));
}

Polynomial Polynomial::variable(const ff::Field& field, std::size_t num_vars, std::size_t index) {
  TermMap terms;
  terms.emplace(Monomial::variable(num_vars, index), field.one());
  return Polynomial(field, num_vars, std::move(terms));
}

void Polynomial::compile() {
  max_exponent_.assign(num_vars_, 0);
  for (const auto& [mono, coeff] : terms_) {
    for (std::size_t v = 0; v < num_vars_; ++v) max_exponent_[v] = std::max(max_exponent_[v], mono[v]);
  }
  power_offset_.assign(num_vars_, 0);
  std::size_t offset = 0;
  for (std::size_t v = 0; v < num_vars_; ++v) {
    power_offset_[v] = static_cast<std::uint32_t>(offset);
    offset += max_exponent_[v] + 1;
  }
  power_table_size_ = offset;

  plan_.clear();
  factor_index_.clear();
  plan_.reserve(terms_.size());
  for (const auto& [mono, coeff] : terms_) {
    const auto begin = static_cast<std::uint32_t>(factor_index_.size());
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (mono[v] != 0) factor_index_.push_back(power_offset_[v] + mono[v]);
    }
    plan_.push_back({coeff, begin, static_cast<std::uint32_t>(factor_index_.size())});
  }
}

int Polynomial::total_degree() const {
  // Terms are stored highest graded-lex first, so the first has top degree.
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.total_degree());
}

ff::Element Polynomial::evaluate(std::span<const ff::Element> point) const {
  if (point.size() != num_vars_) {
    throw Error(ErrorKind::ArityMismatch, "point has " + std::to_string(point.size()) +
                                              " coordinates, polynomial has " + std::to_string(num_vars_) +
                                              " variables");
  }
  thread_local std::vector<ff::Element> powers;
  if (powers.size() < power_table_size_) powers.resize(power_table_size_);
  for (std::size_t v = 0; v < num_vars_; ++v) {
    ff::Element* row = powers.data() + power_offset_[v];
    row[0] = field_.one();
    for (std::uint32_t e = 1; e <= max_exponent_[v]; ++e) row[e] = field_.mul(row[e - 1], point[v]);
  }
  ff::Element sum = field_.zero();
  for (const auto& term : plan_) {
    ff::Element value = term.coeff;
    for (std::uint32_t i = term.begin; i < term.end; ++i) value = field_.mul(value, powers[factor_index_[i]]);
    sum = field_.add(sum, value);
  }
  return sum;
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (!(field_ == other.field_)) {
    throw Error(ErrorKind::FieldMismatch, "F_" + field_.spec().to_string() + " vs F_" + other.field_.spec().to_string());
  }
  if (num_vars_ != other.num_vars_) {
    throw Error(ErrorKind::ArityMismatch, std::to_string(num_vars_) + " vs " + std::to_string(other.num_vars_) +
                                              " variables");
  }
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial::TermMap terms = a.terms_;
  for (const auto& [mono, coeff] : b.terms_) {
    auto [it, inserted] = terms.try_emplace(mono, coeff);
    if (!inserted) it->second = a.field_.add(it->second, coeff);
  }
  return Polynomial(a.field_, a.num_vars_, std::move(terms));
}

Polynomial operator-(const Polynomial& a) {
  Polynomial::TermMap terms;
  for (const auto& [mono, coeff] : a.terms_) terms.emplace(mono, a.field_.neg(coeff));
  return Polynomial(a.field_, a.num_vars_, std::move(terms));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial::TermMap terms;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const ff::Element c = a.field_.mul(ca, cb);
      auto [it, inserted] = terms.try_emplace(ma * mb, c);
      if (!inserted) it->second = a.field_.add(it->second, c);
    }
  }
  return Polynomial(a.field_, a.num_vars_, std::move(terms));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.field_ == b.field_ && a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(std::uint64_t exponent) const {
  Polynomial result = constant(field_, num_vars_, field_.one());
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::scaled(ff::Element factor) const {
  TermMap terms;
  for (const auto& [mono, coeff] : terms_) terms.emplace(mono, field_.mul(coeff, factor));
  return Polynomial(field_, num_vars_, std::move(terms));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    if (!first) out += " + ";
    first = false;
    std::string factors;
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (mono[v] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "x" + std::to_string(v + 1);
      if (mono[v] > 1) factors += "^" + std::to_string(mono[v]);
    }
    if (factors.empty()) {
      out += field_.format(coeff);
    } else if (coeff == field_.one()) {
      out += factors;
    } else {
      out += field_.format(coeff) + "*" + factors;
    }
  }
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t num_vars, unsigned degree) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> exps(num_vars, 0);
  // For each total degree t, emit exponent vectors summing to t in
  // lexicographically descending order.
  for (unsigned t = 0; t <= degree; ++t) {
    auto fill = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
      if (var + 1 == num_vars) {
        exps[var] = remaining;
        out.emplace_back(exps);
        return;
      }
      for (unsigned e = remaining + 1; e-- > 0;) {
        exps[var] = e;
        self(self, var + 1, remaining - e);
      }
    };
    if (num_vars == 0) {
      if (t == 0) out.emplace_back(exps);
      continue;
    }
    fill(fill, 0, t);
  }
  return out;
}

Polynomial random_dense_poly(const ff::Field& field, std::size_t num_vars, unsigned degree,
                             RandomStream& stream) {
  Polynomial::TermMap terms;
  for (auto& mono : monomials_up_to(num_vars, degree)) {
    const ff::Element c = field.random(stream);
    if (!field.is_zero(c)) terms.emplace(std::move(mono), c);
  }
  return Polynomial(field, num_vars, std::move(terms));
}

}  // namespace irrtest::poly
