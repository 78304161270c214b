#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irrtest/random.hpp"

namespace irrtest::ff {

/// An element of F_q, q = p^k, stored as its canonical code
///   c_0 + c_1 p + ... + c_{k-1} p^{k-1}
/// where c_0 + c_1 g + ... is its coordinate vector in the polynomial basis
/// (g the class of x modulo the defining polynomial). For prime fields the
/// code is the residue itself. Codes are canonical, so equality is structural.
class Element {
 public:
  constexpr Element() = default;
  constexpr explicit Element(std::uint64_t code) : code_(code) {}

  constexpr std::uint64_t code() const { return code_; }

  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;

 private:
  std::uint64_t code_ = 0;
};

/// Parameters of F_{p^k}. `modulus` lists the coefficients of the monic
/// defining polynomial low-to-high (length k+1) and is empty when k == 1.
struct FieldSpec {
  std::uint64_t p = 2;
  unsigned k = 1;
  std::vector<std::uint64_t> modulus;

  /// "p" for prime fields, "p^k" (shipped or searched modulus) or
  /// "p^k:c0,c1,...,ck" with an explicit modulus.
  static FieldSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Ben-Or irreducibility test for a monic polynomial over F_p (low-to-high).
bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic);

/// Shipped, verified moduli for p <= 7, 2 <= k <= 4.
std::optional<std::vector<std::uint64_t>> default_modulus(std::uint64_t p, unsigned k);

/// The shipped modulus when there is one, otherwise the first monic
/// irreducible of degree k in increasing order of its tail code.
std::vector<std::uint64_t> find_irreducible(std::uint64_t p, unsigned k);

namespace detail {
struct FieldData;
}

/// Immutable arithmetic context for F_q. Copies share state and are safe to
/// use from several threads at once.
class Field {
 public:
  /// Validates the spec: NonPrimeCharacteristic, ReducibleModulus,
  /// OrderOverflow (q > 2^63). A k > 1 spec without a modulus gets
  /// find_irreducible(p, k).
  explicit Field(const FieldSpec& spec);

  static Field prime(std::uint64_t p);
  static Field extension(std::uint64_t p, unsigned k);
  /// F_q for a prime power q, with the default modulus when q is not prime.
  /// NonPrimeCharacteristic when q is not a prime power.
  static Field of_order(std::uint64_t q);

  const FieldSpec& spec() const;
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint64_t order() const { return q_; }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }
  bool is_zero(Element a) const { return a.code() == 0; }
  bool contains(Element a) const { return a.code() < q_; }

  /// Image of an integer under Z -> F_p -> F_q.
  Element from_integer(std::int64_t value) const;
  Element from_coefficients(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coefficients(Element a) const;

  /// The class of x modulo the defining polynomial (k > 1 only).
  Element adjoined_root() const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  /// Throws DivisionByZero for a == 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  /// All q elements in increasing code order, i.e. lexicographic on the
  /// coefficient vector read from c_{k-1} down to c_0. Starts with 0.
  std::vector<Element> elements() const;
  Element random(RandomStream& stream) const { return Element{stream.uniform_below(q_)}; }

  /// Residue for prime fields; "(c0 + c1*g + ...)" style for extensions.
  std::string format(Element a) const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  Element add_ext(Element a, Element b) const;
  Element sub_ext(Element a, Element b) const;
  Element mul_ext(Element a, Element b) const;

  std::uint64_t p_ = 0;
  unsigned k_ = 1;
  std::uint64_t q_ = 0;
  std::shared_ptr<const detail::FieldData> data_;
};

/// Returns the table image[c] = embedding of Element{c} of `small` into
/// `large`, for c in [0, small.order()). Requires F_small to be a subfield
/// of F_large (same characteristic, degree dividing). Throws
/// InvalidArgument otherwise.
std::vector<Element> embedding_table(const Field& small, const Field& large);

// Prime-field fast paths are inline; extension arithmetic lives in field.cpp.

inline Element Field::add(Element a, Element b) const {
  if (k_ == 1) {
    std::uint64_t s = a.code() + b.code();
    if (s >= p_) s -= p_;
    return Element{s};
  }
  return add_ext(a, b);
}

inline Element Field::sub(Element a, Element b) const {
  if (k_ == 1) {
    return Element{a.code() >= b.code() ? a.code() - b.code() : a.code() + (p_ - b.code())};
  }
  return sub_ext(a, b);
}

inline Element Field::neg(Element a) const { return sub(zero(), a); }

inline Element Field::mul(Element a, Element b) const {
  if (k_ == 1) {
    if (p_ <= 0xFFFFFFFFull) return Element{(a.code() * b.code()) % p_};
    return Element{static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a.code()) * b.code()) % p_)};
  }
  return mul_ext(a, b);
}

}  // namespace irrtest::ff
