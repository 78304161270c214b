#include <limits>

#include "irrtest/error.hpp"
#include "irrtest/stats.hpp"

namespace irrtest::stats {

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= base;
  }
  return result;
}

struct TableShape {
  std::uint64_t slots;
  std::uint64_t alphabet;
};

TableShape shape_of(std::uint64_t q, std::uint64_t points, const FunctionSpaceKind& kind) {
  if (std::holds_alternative<kind::Product>(kind)) return {2 * points, q};
  if (const auto* sub = std::get_if<kind::Substitution>(&kind)) return {points, saturating_pow(q, sub->m)};
  return {points, q};
}

}  // namespace

std::uint64_t brute_force_items(std::uint64_t q, std::size_t n, const FunctionSpaceKind& kind) {
  const std::uint64_t points = saturating_pow(q, n);
  if (points > 64) return std::numeric_limits<std::uint64_t>::max();
  const TableShape shape = shape_of(q, points, kind);
  return saturating_pow(shape.alphabet, shape.slots);
}

std::vector<Rational> brute_force_distribution(const ff::Field& field, std::size_t n, const FunctionSpaceKind& kind,
                                               std::uint64_t max_items) {
  const std::uint64_t q = field.order();
  if (n < 1) throw Error(ErrorKind::RangeError, "n must be >= 1");
  const std::uint64_t items = brute_force_items(q, n, kind);
  if (items > max_items) {
    throw Error(ErrorKind::TooLarge, "enumeration needs more than " + std::to_string(max_items) + " value tables");
  }
  const std::uint64_t points = saturating_pow(q, n);
  const TableShape shape = shape_of(q, points, kind);

  // Membership masks for the subset-based kinds.
  std::vector<char> on_x;
  if (const auto* inter = std::get_if<kind::Intersection>(&kind)) {
    on_x.assign(points, 0);
    for (const auto idx : inter->points) {
      if (idx >= points) throw Error(ErrorKind::RangeError, "X contains a point outside A^n");
      on_x[idx] = 1;
    }
  } else if (const auto* sub = std::get_if<kind::Substitution>(&kind)) {
    if (sub->m < 1) throw Error(ErrorKind::RangeError, "m must be >= 1");
    on_x.assign(shape.alphabet, 0);
    for (const auto idx : sub->points) {
      if (idx >= shape.alphabet) throw Error(ErrorKind::RangeError, "X contains a point outside A^m");
      on_x[idx] = 1;
    }
  }

  std::vector<std::uint64_t> counts(points + 1, 0);
  std::vector<std::uint64_t> table(shape.slots, 0);
  for (std::uint64_t item = 0; item < items; ++item) {
    std::uint64_t zeros = 0;
    if (std::holds_alternative<kind::Single>(kind)) {
      for (std::uint64_t x = 0; x < points; ++x) zeros += field.is_zero(ff::Element{table[x]});
    } else if (std::holds_alternative<kind::Product>(kind)) {
      for (std::uint64_t x = 0; x < points; ++x) {
        zeros += field.is_zero(field.mul(ff::Element{table[x]}, ff::Element{table[points + x]}));
      }
    } else if (std::holds_alternative<kind::Intersection>(kind)) {
      for (std::uint64_t x = 0; x < points; ++x) zeros += on_x[x] && field.is_zero(ff::Element{table[x]});
    } else {
      for (std::uint64_t x = 0; x < points; ++x) zeros += on_x[table[x]] != 0;
    }
    ++counts[zeros];

    for (std::uint64_t slot = 0; slot < shape.slots; ++slot) {
      if (++table[slot] < shape.alphabet) break;
      table[slot] = 0;
    }
  }

  std::vector<Rational> pmf;
  pmf.reserve(counts.size());
  for (const auto c : counts) pmf.emplace_back(Rational(c) / Rational(items));
  return pmf;
}

}  // namespace irrtest::stats
