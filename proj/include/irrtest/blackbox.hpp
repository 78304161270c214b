#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "irrtest/field.hpp"
#include "irrtest/polynomial.hpp"

namespace irrtest::bb {

using Point = std::span<const ff::Element>;
using Oracle = std::function<bool(Point)>;

/// A zero-test oracle on A^n(F_q). The oracle must be a pure function of the
/// point and safe to call from several threads at once.
class BlackBox {
 public:
  BlackBox(ff::Field field, std::size_t arity, Oracle oracle, std::string label);

  const ff::Field& field() const { return field_; }
  std::size_t arity() const { return arity_; }
  const std::string& label() const { return label_; }

  /// ArityMismatch when the point has the wrong length.
  bool is_zero_at(Point x) const;
  /// Skips the length check; for hot loops that already guarantee it.
  bool is_zero_unchecked(Point x) const { return oracle_(x); }

  BlackBox relabeled(std::string label) const {
    BlackBox copy = *this;
    copy.label_ = std::move(label);
    return copy;
  }

 private:
  ff::Field field_;
  std::size_t arity_;
  Oracle oracle_;
  std::string label_;
};

BlackBox from_poly(poly::Polynomial f);
BlackBox constant_bb(const ff::Field& field, std::size_t arity, bool zero);

/// Zero set is V(f) ∪ V(g), i.e. the oracle of the product f*g.
BlackBox product_bb(const BlackBox& f, const BlackBox& g);
/// Zero set is the intersection of all members. EmptyList for no members.
BlackBox intersection_bb(const std::vector<BlackBox>& members);
/// Pulls `target` (arity m) back along the polynomial map A^n -> A^m.
BlackBox substitute_bb(const BlackBox& target, std::vector<poly::Polynomial> map);

/// r x c matrix of polynomials with r <= c, stored row-major.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<poly::Polynomial> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const ff::Field& field() const { return entries_.front().field(); }
  std::size_t num_vars() const { return entries_.front().num_vars(); }
  const poly::Polynomial& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<poly::Polynomial>& entries() const { return entries_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<poly::Polynomial> entries_;
};

/// Reads "rows cols nvars fieldspec" followed by rows*cols polynomial lines.
/// A matrix with more rows than columns is transposed on load.
PolyMatrix parse_matrix(std::istream& in);
PolyMatrix parse_matrix_file(const std::string& path);

/// The r x c matrix whose entries are r*c distinct variables x1..x_{rc}.
PolyMatrix generic_matrix(const ff::Field& field, std::size_t rows, std::size_t cols);

/// Linear 3 x 5 matrix over A^5 whose maximal minors cut out a degree 10
/// curve in P^4. Shipped transposed so rows <= cols; x1..x5 play the role of
/// the projective coordinates x0..x4.
PolyMatrix curve_c_matrix(const ff::Field& field);

/// Rank of a rows x cols matrix (row-major, modified in place).
std::size_t matrix_rank(const ff::Field& field, std::span<ff::Element> entries, std::size_t rows,
                        std::size_t cols);

/// Zero exactly where the evaluated matrix has rank < rows.
BlackBox det_rank_bb(const PolyMatrix& m);

/// Monomials x^a y^b z^c of degree d, lexicographic with x > y > z:
/// x^d, x^{d-1}y, x^{d-1}z, x^{d-2}y^2, ... , z^d. Point coordinates of the
/// singular-curve oracle are coefficients in this order.
std::vector<std::array<unsigned, 3>> ternary_monomials(unsigned degree);

inline constexpr std::uint64_t kDefaultSingularWorkCap = std::uint64_t{1} << 24;

/// Zero at the coefficient vector of f iff V(f) has a singular point over
/// some F_{q^e} with e <= ext_bound (default (d-1)^2, which makes the test
/// exact). UnsupportedSize when q^(3 ext_bound) exceeds work_cap.
BlackBox singular_curve_bb(unsigned degree, const ff::Field& field, std::optional<unsigned> ext_bound = std::nullopt,
                           std::uint64_t work_cap = kDefaultSingularWorkCap);

}  // namespace irrtest::bb
