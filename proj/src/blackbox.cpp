#include "irrtest/blackbox.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "irrtest/error.hpp"

namespace irrtest::bb {

using ff::Element;
using ff::Field;
using poly::Polynomial;

namespace {

void check_same_space(const BlackBox& a, const BlackBox& b) {
  if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "oracles live over different fields");
  if (a.arity() != b.arity()) throw Error(ErrorKind::ArityMismatch, "oracles have different arities");
}

}  // namespace

BlackBox::BlackBox(Field field, std::size_t arity, Oracle oracle, std::string label)
    : field_(std::move(field)), arity_(arity), oracle_(std::move(oracle)), label_(std::move(label)) {}

bool BlackBox::is_zero_at(Point x) const {
  if (x.size() != arity_) {
    throw Error(ErrorKind::ArityMismatch,
                "point has " + std::to_string(x.size()) + " coordinates, oracle expects " + std::to_string(arity_));
  }
  return oracle_(x);
}

BlackBox from_poly(Polynomial f) {
  auto shared = std::make_shared<const Polynomial>(std::move(f));
  const Field field = shared->field();
  const std::size_t n = shared->num_vars();
  std::string label = shared->to_string();
  return BlackBox(field, n, [shared](Point x) { return shared->evaluate(x) == Element{0}; }, std::move(label));
}

BlackBox constant_bb(const Field& field, std::size_t arity, bool zero) {
  return BlackBox(field, arity, [zero](Point) { return zero; }, zero ? "0" : "1");
}

BlackBox product_bb(const BlackBox& f, const BlackBox& g) {
  check_same_space(f, g);
  return BlackBox(
      f.field(), f.arity(), [f, g](Point x) { return f.is_zero_unchecked(x) || g.is_zero_unchecked(x); },
      "(" + f.label() + ")*(" + g.label() + ")");
}

BlackBox intersection_bb(const std::vector<BlackBox>& members) {
  if (members.empty()) throw Error(ErrorKind::EmptyList, "intersection of no oracles");
  std::string label = "V(" + members.front().label();
  for (std::size_t i = 1; i < members.size(); ++i) {
    check_same_space(members.front(), members[i]);
    label += ", " + members[i].label();
  }
  label += ")";
  return BlackBox(
      members.front().field(), members.front().arity(),
      [members](Point x) {
        for (const auto& m : members) {
          if (!m.is_zero_unchecked(x)) return false;
        }
        return true;
      },
      std::move(label));
}

BlackBox substitute_bb(const BlackBox& target, std::vector<Polynomial> map) {
  if (map.size() != target.arity()) {
    throw Error(ErrorKind::ArityMismatch, "map has " + std::to_string(map.size()) + " components, target arity is " +
                                              std::to_string(target.arity()));
  }
  if (map.empty()) throw Error(ErrorKind::EmptyList, "substitution map has no components");
  const std::size_t n = map.front().num_vars();
  for (const auto& component : map) {
    if (!(component.field() == target.field())) throw Error(ErrorKind::FieldMismatch, "map and target fields differ");
    if (component.num_vars() != n) throw Error(ErrorKind::ArityMismatch, "map components have different arities");
  }
  auto shared = std::make_shared<const std::vector<Polynomial>>(std::move(map));
  return BlackBox(
      target.field(), n,
      [target, shared](Point x) {
        // A local buffer: the target may itself be a substitution.
        std::vector<Element> image(shared->size());
        for (std::size_t i = 0; i < shared->size(); ++i) image[i] = (*shared)[i].evaluate(x);
        return target.is_zero_unchecked(image);
      },
      target.label() + " o phi");
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || rows > cols) throw Error(ErrorKind::RangeError, "need 1 <= rows <= cols");
  if (entries_.size() != rows * cols) throw Error(ErrorKind::RangeError, "entry count does not match the shape");
  for (const auto& e : entries_) {
    if (!(e.field() == entries_.front().field())) throw Error(ErrorKind::FieldMismatch, "matrix entries differ in field");
    if (e.num_vars() != entries_.front().num_vars()) {
      throw Error(ErrorKind::ArityMismatch, "matrix entries differ in arity");
    }
  }
}

PolyMatrix parse_matrix(std::istream& in) {
  std::string header;
  while (std::getline(in, header) && header.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream fields(header);
  std::size_t rows = 0, cols = 0, nvars = 0;
  std::string spec;
  if (!(fields >> rows >> cols >> nvars >> spec)) {
    throw Error(ErrorKind::SyntaxError, "matrix header must read 'rows cols nvars fieldspec'");
  }
  const Field field{ff::FieldSpec::parse(spec)};
  std::vector<Polynomial> entries;
  std::string line;
  while (entries.size() < rows * cols && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    entries.push_back(poly::parse_poly(line, field, nvars));
  }
  if (entries.size() != rows * cols) {
    throw Error(ErrorKind::SyntaxError, "expected " + std::to_string(rows * cols) + " matrix entries, found " +
                                            std::to_string(entries.size()));
  }
  if (rows <= cols) return PolyMatrix(rows, cols, std::move(entries));
  std::vector<Polynomial> transposed;
  transposed.reserve(entries.size());
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) transposed.push_back(entries[i * cols + j]);
  }
  return PolyMatrix(cols, rows, std::move(transposed));
}

PolyMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open matrix file " + path);
  return parse_matrix(in);
}

PolyMatrix generic_matrix(const Field& field, std::size_t rows, std::size_t cols) {
  std::vector<Polynomial> entries;
  for (std::size_t i = 0; i < rows * cols; ++i) entries.push_back(Polynomial::variable(field, rows * cols, i));
  return PolyMatrix(rows, cols, std::move(entries));
}

PolyMatrix curve_c_matrix(const Field& field) {
  // Column j of the 5 x 3 presentation, written in x1..x5.
  static const char* const kColumns[3][5] = {
      {"x1 + x2 - x4 - x5", "-x1 - x3 + x4 + x5", "-x1 - x3 - x4 - x5", "-x2 - x3 - x4 + x5",
       "-x1 + x2 - x3 - x4 - x5"},
      {"x1 - x2 - x3 - x5", "x1 - x2 - x3 - x4 + x5", "-x1 - x2 - x4 - x5", "-x2 - x3", "-x1 + x3 - x4 + x5"},
      {"-x1 + x4 + x5", "-x1 + x2 - x3 + x4 + x5", "-x2 + x5", "-x2 + x3", "x1 - x2 + x3 + x4 + x5"},
  };
  std::vector<Polynomial> entries;
  for (const auto& column : kColumns) {
    for (const char* text : column) entries.push_back(poly::parse_poly(text, field, 5));
  }
  return PolyMatrix(3, 5, std::move(entries));
}

std::size_t matrix_rank(const Field& field, std::span<Element> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && field.is_zero(a[pivot * cols + col])) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = col; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    }
    const Element inv = field.inv(a[rank * cols + col]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const Element factor = field.mul(a[i * cols + col], inv);
      if (field.is_zero(factor)) continue;
      for (std::size_t j = col; j < cols; ++j) {
        a[i * cols + j] = field.sub(a[i * cols + j], field.mul(factor, a[rank * cols + j]));
      }
    }
    ++rank;
  }
  return rank;
}

BlackBox det_rank_bb(const PolyMatrix& m) {
  auto shared = std::make_shared<const PolyMatrix>(m);
  std::string label = "rank<" + std::to_string(m.rows()) + " of " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " matrix";
  return BlackBox(
      m.field(), m.num_vars(),
      [shared](Point x) {
        thread_local std::vector<Element> values;
        values.resize(shared->entries().size());
        for (std::size_t i = 0; i < values.size(); ++i) values[i] = shared->entries()[i].evaluate(x);
        return matrix_rank(shared->field(), values, shared->rows(), shared->cols()) < shared->rows();
      },
      std::move(label));
}

std::vector<std::array<unsigned, 3>> ternary_monomials(unsigned degree) {
  std::vector<std::array<unsigned, 3>> out;
  for (unsigned a = degree + 1; a-- > 0;) {
    for (unsigned b = degree - a + 1; b-- > 0;) out.push_back({a, b, degree - a - b});
  }
  return out;
}

namespace {

// Everything needed to test one extension degree e: the field F_{q^e}, the
// images of F_q inside it, and for each projective point whose field of
// definition is exactly F_{q^e}, the values of every monomial and of its
// three partial derivatives.
struct ExtensionLayer {
  Field field;
  std::vector<Element> embed;
  std::size_t num_points = 0;
  // Indexed [point * monomials + m].
  std::vector<Element> value, dx, dy, dz;
};

Element power(const Field& f, Element a, unsigned e) { return e == 0 ? f.one() : f.pow(a, e); }

// a * x^i y^j z^k with the integer a reduced into the field.
Element scaled_monomial(const Field& f, unsigned a, std::array<Element, 3> p, unsigned i, unsigned j, unsigned k) {
  if (a % f.characteristic() == 0) return f.zero();
  Element v = f.from_integer(a);
  v = f.mul(v, power(f, p[0], i));
  v = f.mul(v, power(f, p[1], j));
  return f.mul(v, power(f, p[2], k));
}

ExtensionLayer build_layer(const Field& base, unsigned e, const std::vector<std::array<unsigned, 3>>& monomials) {
  const Field ext = e == 1 ? base : Field::extension(base.characteristic(), base.degree() * e);
  ExtensionLayer layer{ext, ff::embedding_table(base, ext), 0, {}, {}, {}, {}};
  const std::uint64_t q = base.order();

  // x is in a proper subfield F_{q^d} (d | e, d < e) iff x^(q^d) = x.
  std::vector<std::uint64_t> subfield_orders;
  for (unsigned d = 1; d < e; ++d) {
    if (e % d != 0) continue;
    std::uint64_t qd = 1;
    for (unsigned i = 0; i < d; ++i) qd *= q;
    subfield_orders.push_back(qd);
  }
  auto in_subfield = [&](const std::array<Element, 3>& p, std::uint64_t qd) {
    for (const Element c : p) {
      if (ext.pow(c, qd) != c) return false;
    }
    return true;
  };

  const std::uint64_t Q = ext.order();
  auto add_point = [&](std::array<Element, 3> p) {
    for (const auto qd : subfield_orders) {
      if (in_subfield(p, qd)) return;
    }
    for (const auto& [a, b, c] : monomials) {
      layer.value.push_back(scaled_monomial(ext, 1, p, a, b, c));
      layer.dx.push_back(a == 0 ? ext.zero() : scaled_monomial(ext, a, p, a - 1, b, c));
      layer.dy.push_back(b == 0 ? ext.zero() : scaled_monomial(ext, b, p, a, b - 1, c));
      layer.dz.push_back(c == 0 ? ext.zero() : scaled_monomial(ext, c, p, a, b, c - 1));
    }
    ++layer.num_points;
  };
  // Normalised representatives: (1:y:z), (0:1:z), (0:0:1).
  for (std::uint64_t y = 0; y < Q; ++y) {
    for (std::uint64_t z = 0; z < Q; ++z) add_point({ext.one(), Element{y}, Element{z}});
  }
  for (std::uint64_t z = 0; z < Q; ++z) add_point({ext.zero(), ext.one(), Element{z}});
  add_point({ext.zero(), ext.zero(), ext.one()});
  return layer;
}

}  // namespace

BlackBox singular_curve_bb(unsigned degree, const Field& field, std::optional<unsigned> ext_bound,
                           std::uint64_t work_cap) {
  if (degree < 1) throw Error(ErrorKind::RangeError, "curve degree must be >= 1");
  const unsigned bound = ext_bound.value_or(std::max(1u, (degree - 1) * (degree - 1)));
  if (bound < 1) throw Error(ErrorKind::RangeError, "ext_bound must be >= 1");
  {
    // q^(3 bound) against the cap, without overflow.
    std::uint64_t work = 1;
    for (unsigned i = 0; i < 3 * bound; ++i) {
      if (work > work_cap / field.order()) {
        throw Error(ErrorKind::UnsupportedSize, "singularity search over F_" + std::to_string(field.order()) + "^" +
                                                    std::to_string(bound) + " exceeds the work cap");
      }
      work *= field.order();
    }
  }

  const auto monomials = ternary_monomials(degree);
  auto layers = std::make_shared<std::vector<ExtensionLayer>>();
  for (unsigned e = 1; e <= bound; ++e) layers->push_back(build_layer(field, e, monomials));

  const std::size_t count = monomials.size();
  std::string label = "S_" + std::to_string(degree) + " (e <= " + std::to_string(bound) + ")";
  return BlackBox(
      field, count,
      [layers, count](Point coeffs) {
        thread_local std::vector<Element> lifted;
        lifted.resize(count);
        for (const auto& layer : *layers) {
          const Field& f = layer.field;
          for (std::size_t m = 0; m < count; ++m) lifted[m] = layer.embed[coeffs[m].code()];
          for (std::size_t pt = 0; pt < layer.num_points; ++pt) {
            const std::size_t base = pt * count;
            Element v = f.zero();
            for (std::size_t m = 0; m < count; ++m) v = f.add(v, f.mul(lifted[m], layer.value[base + m]));
            if (!f.is_zero(v)) continue;
            Element gx = f.zero(), gy = f.zero(), gz = f.zero();
            for (std::size_t m = 0; m < count; ++m) {
              gx = f.add(gx, f.mul(lifted[m], layer.dx[base + m]));
              gy = f.add(gy, f.mul(lifted[m], layer.dy[base + m]));
              gz = f.add(gz, f.mul(lifted[m], layer.dz[base + m]));
            }
            if (f.is_zero(gx) && f.is_zero(gy) && f.is_zero(gz)) return true;
          }
        }
        return false;
      },
      std::move(label));
}

}  // namespace irrtest::bb
