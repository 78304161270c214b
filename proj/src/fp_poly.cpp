#include "fp_poly.hpp"

#include <utility>

namespace irrtest::ff::detail {

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on signed 128-bit to stay exact for p close to 2^63.
  __int128 old_r = static_cast<__int128>(a % p), r = p;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quotient = old_r / r;
    old_r -= quotient * r;
    std::swap(old_r, r);
    old_s -= quotient * s;
    std::swap(old_s, s);
  }
  __int128 result = old_s % static_cast<__int128>(p);
  if (result < 0) result += p;
  return static_cast<std::uint64_t>(result);
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly poly_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], p), p);
    }
  }
  trim(out);
  return out;
}

FpPoly poly_rem(FpPoly a, const FpPoly& divisor, std::uint64_t p) {
  trim(a);
  const std::size_t dd = divisor.size() - 1;
  const std::uint64_t lead_inv = invmod(divisor.back(), p);
  while (a.size() > dd) {
    const std::uint64_t factor = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) {
      a[shift + i] = submod(a[shift + i], mulmod(factor, divisor[i], p), p);
    }
    trim(a);
  }
  return a;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p) {
  return poly_rem(poly_mul(a, b, p), m, p);
}

FpPoly poly_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::uint64_t p) {
  FpPoly result = poly_rem(FpPoly{1}, m, p);
  base = poly_rem(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_rem(std::move(a), b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace irrtest::ff::detail
