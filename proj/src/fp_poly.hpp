#pragma once

// Dense univariate polynomials over F_p (coefficients low-to-high), used for
// modulus validation and for extension arithmetic above the table limit.

#include <cstdint>
#include <span>
#include <vector>

namespace irrtest::ff::detail {

using FpPoly = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

void trim(FpPoly& a);
FpPoly poly_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
/// Remainder of a modulo a nonzero divisor.
FpPoly poly_rem(FpPoly a, const FpPoly& divisor, std::uint64_t p);
FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p);
FpPoly poly_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint64_t p);
FpPoly poly_gcd(FpPoly a, FpPoly b, std::uint64_t p);

}  // namespace irrtest::ff::detail
