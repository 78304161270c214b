#include "irrtest/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "fp_poly.hpp"
#include "irrtest/error.hpp"

namespace irrtest::ff {

namespace detail {

struct FieldData {
  FieldSpec spec;
  FpPoly modulus;                      // monic, low-to-high (k > 1 only)
  std::vector<std::uint64_t> weight;   // weight[i] = p^i
  // Discrete log / antilog tables for k > 1 and q <= kTableLimit.
  // exp has length 2(q-1) so log a + log b never needs a reduction.
  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;
};

}  // namespace detail

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 63;
constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

using detail::FpPoly;

std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  s = trim_ws(s);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "malformed " + std::string(what) + " '" + std::string(s) + "' in field spec");
  }
  return value;
}

FpPoly decode(std::uint64_t code, std::uint64_t p, unsigned k) {
  FpPoly out(k, 0);
  for (unsigned i = 0; i < k; ++i) {
    out[i] = code % p;
    code /= p;
  }
  detail::trim(out);
  return out;
}

std::uint64_t encode(const FpPoly& digits, const std::vector<std::uint64_t>& weight) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) code += digits[i] * weight[i];
  return code;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

const std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::uint64_t>>& shipped_moduli() {
  static const std::map<std::pair<std::uint64_t, unsigned>, std::vector<std::uint64_t>> table = {
      {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 2}, {1, 0, 1}},    {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 1, 0, 0, 1}},
      {{5, 2}, {2, 0, 1}},    {{5, 3}, {1, 1, 0, 1}},    {{5, 4}, {2, 0, 0, 0, 1}},
      {{7, 2}, {1, 0, 1}},    {{7, 3}, {2, 0, 0, 1}},    {{7, 4}, {1, 0, 0, 1, 1}},
  };
  return table;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> monic) {
  FpPoly m(monic.begin(), monic.end());
  detail::trim(m);
  if (m.size() < 2 || m.back() != 1) return false;
  const std::size_t k = m.size() - 1;
  if (k == 1) return true;
  // Ben-Or: m is irreducible iff gcd(x^{p^i} - x, m) = 1 for i <= k/2.
  const FpPoly x{0, 1};
  FpPoly h = x;
  for (std::size_t i = 1; i <= k / 2; ++i) {
    h = detail::poly_powmod(h, p, m, p);
    FpPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = detail::submod(diff[1], 1, p);
    detail::trim(diff);
    if (diff.empty()) return false;
    if (detail::poly_gcd(diff, m, p).size() > 1) return false;
  }
  return true;
}

std::optional<std::vector<std::uint64_t>> default_modulus(std::uint64_t p, unsigned k) {
  const auto& table = shipped_moduli();
  const auto it = table.find({p, k});
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> find_irreducible(std::uint64_t p, unsigned k) {
  if (auto shipped = default_modulus(p, k)) return *shipped;
  if (!is_prime(p)) throw Error(ErrorKind::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (k < 1) throw Error(ErrorKind::RangeError, "extension degree must be >= 1");
  std::vector<std::uint64_t> candidate(k + 1, 0);
  candidate[k] = 1;
  if (k == 1) return candidate;
  // Increment the tail c_0..c_{k-1} as a base-p counter; a density of about
  // 1/k irreducibles keeps this short.
  for (;;) {
    if (candidate[0] != 0 && is_irreducible(p, candidate)) return candidate;
    unsigned i = 0;
    while (i < k && ++candidate[i] == p) candidate[i++] = 0;
    if (i == k) break;
  }
  throw Error(ErrorKind::ReducibleModulus, "no irreducible polynomial found");
}

FieldSpec FieldSpec::parse(std::string_view text) {
  text = trim_ws(text);
  FieldSpec spec;
  std::string_view head = text;
  std::string_view tail;
  bool has_modulus = false;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    tail = text.substr(colon + 1);
    has_modulus = true;
  }
  if (const auto caret = head.find('^'); caret != std::string_view::npos) {
    spec.p = parse_u64(head.substr(0, caret), "characteristic");
    const std::uint64_t k = parse_u64(head.substr(caret + 1), "extension degree");
    if (k < 1 || k > 64) throw Error(ErrorKind::RangeError, "extension degree out of range");
    spec.k = static_cast<unsigned>(k);
  } else {
    spec.p = parse_u64(head, "characteristic");
  }
  if (has_modulus) {
    std::string_view rest = tail;
    while (true) {
      const auto comma = rest.find(',');
      spec.modulus.push_back(parse_u64(rest.substr(0, comma), "modulus coefficient"));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  return spec;
}

std::string FieldSpec::to_string() const {
  std::ostringstream out;
  out << p;
  if (k > 1) {
    out << '^' << k;
    if (!modulus.empty()) {
      out << ':';
      for (std::size_t i = 0; i < modulus.size(); ++i) out << (i ? "," : "") << modulus[i];
    }
  }
  return out.str();
}

Field::Field(const FieldSpec& spec_in) {
  FieldSpec spec = spec_in;
  if (!is_prime(spec.p)) {
    throw Error(ErrorKind::NonPrimeCharacteristic, std::to_string(spec.p) + " is not prime");
  }
  if (spec.k < 1) throw Error(ErrorKind::RangeError, "extension degree must be >= 1");

  std::uint64_t q = 1;
  for (unsigned i = 0; i < spec.k; ++i) {
    if (q > kMaxOrder / spec.p) {
      throw Error(ErrorKind::OrderOverflow, "field order " + std::to_string(spec.p) + "^" +
                                                std::to_string(spec.k) + " exceeds 2^63");
    }
    q *= spec.p;
  }

  auto data = std::make_shared<detail::FieldData>();
  if (spec.k == 1) {
    if (!spec.modulus.empty()) {
      throw Error(ErrorKind::InvalidArgument, "prime field spec must not carry a modulus");
    }
  } else {
    if (spec.modulus.empty()) spec.modulus = find_irreducible(spec.p, spec.k);
    if (spec.modulus.size() != spec.k + 1 || spec.modulus.back() != 1) {
      throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree " + std::to_string(spec.k));
    }
    for (const auto c : spec.modulus) {
      if (c >= spec.p) throw Error(ErrorKind::InvalidArgument, "modulus coefficient not reduced mod p");
    }
    if (!is_irreducible(spec.p, spec.modulus)) {
      throw Error(ErrorKind::ReducibleModulus, spec.to_string() + " has a reducible modulus");
    }
    data->modulus.assign(spec.modulus.begin(), spec.modulus.end());
  }
  data->weight.resize(spec.k);
  for (unsigned i = 0; i < spec.k; ++i) data->weight[i] = i == 0 ? 1 : data->weight[i - 1] * spec.p;

  p_ = spec.p;
  k_ = spec.k;
  q_ = q;
  data->spec = std::move(spec);
  data_ = data;

  if (k_ > 1 && q_ <= kTableLimit) {
    // Find a generator of the multiplicative group using the slow path,
    // then tabulate its powers.
    const auto factors = prime_factors(q_ - 1);
    std::uint64_t generator = 0;
    for (std::uint64_t g = 2; g < q_ && generator == 0; ++g) {
      const bool primitive = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t r) {
        return pow(Element{g}, (q_ - 1) / r) != one();
      });
      if (primitive) generator = g;
    }
    const std::size_t group = q_ - 1;
    data->exp.resize(2 * group);
    data->log.assign(q_, 0);
    const FpPoly g_poly = decode(generator, p_, k_);
    FpPoly current{1};
    for (std::size_t i = 0; i < group; ++i) {
      const auto code = static_cast<std::uint32_t>(encode(current, data->weight));
      data->exp[i] = code;
      data->exp[i + group] = code;
      data->log[code] = static_cast<std::uint32_t>(i);
      current = detail::poly_mulmod(current, g_poly, data->modulus, p_);
    }
  }
}

Field Field::prime(std::uint64_t p) { return Field(FieldSpec{p, 1, {}}); }

Field Field::extension(std::uint64_t p, unsigned k) {
  if (k == 1) return prime(p);
  return Field(FieldSpec{p, k, {}});
}

Field Field::of_order(std::uint64_t q) {
  if (is_prime(q)) return prime(q);
  for (unsigned k = 2; k < 64 && (std::uint64_t{1} << k) <= q; ++k) {
    // Integer k-th root, corrected for floating-point error.
    auto root = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(q), 1.0 / k)));
    for (std::uint64_t r = root > 1 ? root - 1 : 1; r <= root + 1; ++r) {
      unsigned __int128 power = 1;
      for (unsigned i = 0; i < k && power <= q; ++i) power *= r;
      if (power == q && is_prime(r)) return extension(r, k);
    }
  }
  throw Error(ErrorKind::NonPrimeCharacteristic, std::to_string(q) + " is not a prime power");
}

const FieldSpec& Field::spec() const { return data_->spec; }

bool operator==(const Field& a, const Field& b) {
  return a.data_ == b.data_ || a.data_->spec == b.data_->spec;
}

Element Field::from_integer(std::int64_t value) const {
  const auto p = static_cast<__int128>(p_);
  __int128 r = static_cast<__int128>(value) % p;
  if (r < 0) r += p;
  return Element{static_cast<std::uint64_t>(r)};
}

Element Field::from_coefficients(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > k_) {
    throw Error(ErrorKind::InvalidArgument, "too many coefficients for F_" + std::to_string(q_));
  }
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) code += (coeffs[i] % p_) * data_->weight[i];
  return Element{code};
}

std::vector<std::uint64_t> Field::coefficients(Element a) const {
  std::vector<std::uint64_t> out(k_, 0);
  std::uint64_t code = a.code();
  for (unsigned i = 0; i < k_; ++i) {
    out[i] = k_ == 1 ? code : code % p_;
    code = k_ == 1 ? 0 : code / p_;
  }
  return out;
}

Element Field::adjoined_root() const {
  if (k_ == 1) throw Error(ErrorKind::InvalidArgument, "prime fields have no adjoined root");
  return Element{p_};
}

Element Field::add_ext(Element a, Element b) const {
  if (p_ == 2) return Element{a.code() ^ b.code()};
  std::uint64_t x = a.code(), y = b.code(), code = 0;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t digit = x % p_ + y % p_;
    if (digit >= p_) digit -= p_;
    code += digit * data_->weight[i];
    x /= p_;
    y /= p_;
  }
  return Element{code};
}

Element Field::sub_ext(Element a, Element b) const {
  if (p_ == 2) return Element{a.code() ^ b.code()};
  std::uint64_t x = a.code(), y = b.code(), code = 0;
  for (unsigned i = 0; i < k_; ++i) {
    code += detail::submod(x % p_, y % p_, p_) * data_->weight[i];
    x /= p_;
    y /= p_;
  }
  return Element{code};
}

Element Field::mul_ext(Element a, Element b) const {
  if (a.code() == 0 || b.code() == 0) return zero();
  const auto& d = *data_;
  if (!d.exp.empty()) return Element{d.exp[d.log[a.code()] + d.log[b.code()]]};
  const FpPoly product = detail::poly_mulmod(decode(a.code(), p_, k_), decode(b.code(), p_, k_), d.modulus, p_);
  return Element{encode(product, d.weight)};
}

Element Field::inv(Element a) const {
  if (a.code() == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (k_ == 1) return Element{detail::invmod(a.code(), p_)};
  const auto& d = *data_;
  if (!d.exp.empty()) return Element{d.exp[(q_ - 1) - d.log[a.code()]]};
  return pow(a, q_ - 2);
}

Element Field::pow(Element a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.code() == 0) return zero();
  if (k_ == 1) return Element{detail::powmod(a.code(), e, p_)};
  const auto& d = *data_;
  if (!d.exp.empty()) {
    const std::uint64_t group = q_ - 1;
    const auto exponent = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(d.log[a.code()]) * (e % group)) % group);
    return Element{d.exp[exponent]};
  }
  Element result = one();
  Element base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<Element> Field::elements() const {
  std::vector<Element> out;
  out.reserve(q_);
  for (std::uint64_t c = 0; c < q_; ++c) out.emplace_back(c);
  return out;
}

std::string Field::format(Element a) const {
  if (k_ == 1 || a.code() < p_) return std::to_string(a.code());
  const auto coeffs = coefficients(a);
  std::vector<std::string> terms;
  for (unsigned i = 0; i < k_; ++i) {
    if (coeffs[i] == 0) continue;
    std::string term;
    if (i == 0) {
      term = std::to_string(coeffs[i]);
    } else {
      if (coeffs[i] != 1) term = std::to_string(coeffs[i]) + "*";
      term += "g";
      if (i > 1) term += "^" + std::to_string(i);
    }
    terms.push_back(std::move(term));
  }
  if (terms.size() == 1) return terms.front();
  std::string out = "(";
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " + " : "") + terms[i];
  return out + ")";
}

std::vector<Element> embedding_table(const Field& small, const Field& large) {
  if (small.characteristic() != large.characteristic() || large.degree() % small.degree() != 0) {
    throw Error(ErrorKind::InvalidArgument, "F_" + std::to_string(small.order()) +
                                                " is not a subfield of F_" + std::to_string(large.order()));
  }
  std::vector<Element> image(small.order());
  if (small.degree() == 1) {
    for (std::uint64_t c = 0; c < small.order(); ++c) image[c] = Element{c};
    return image;
  }
  constexpr std::uint64_t kSearchLimit = std::uint64_t{1} << 26;
  if (large.order() > kSearchLimit) {
    throw Error(ErrorKind::UnsupportedSize, "embedding search over F_" + std::to_string(large.order()));
  }
  // Find a root of the small field's modulus inside the large field.
  const auto& modulus = small.spec().modulus;
  std::optional<Element> root;
  for (std::uint64_t c = 0; c < large.order() && !root; ++c) {
    Element value = large.zero();
    for (auto it = modulus.rbegin(); it != modulus.rend(); ++it) {
      value = large.add(large.mul(value, Element{c}), large.from_integer(static_cast<std::int64_t>(*it)));
    }
    if (large.is_zero(value)) root = Element{c};
  }
  for (std::uint64_t c = 0; c < small.order(); ++c) {
    const auto coeffs = small.coefficients(Element{c});
    Element value = large.zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      value = large.add(large.mul(value, *root), large.from_integer(static_cast<std::int64_t>(*it)));
    }
    image[c] = value;
  }
  return image;
}

}  // namespace irrtest::ff
