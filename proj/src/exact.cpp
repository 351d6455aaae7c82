#include "shedkit/exact.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

#include "shedkit/errors.hpp"

namespace shedkit {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw SingularMatrixError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return make_rational(Integer(text.substr(0, slash)), den);
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational number: '" + text + "'");
  }
}

LatticeVector::LatticeVector(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

LatticeVector::LatticeVector(std::vector<Integer> coords)
    : coords_(std::move(coords)) {}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Integer& c) { return c == 0; });
}

bool LatticeVector::is_primitive() const { return content(*this) == 1; }

std::strong_ordering operator<=>(const LatticeVector& a,
                                 const LatticeVector& b) {
  if (a.dim() != b.dim()) return a.dim() <=> b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

namespace {

void require_same_dim(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("vector dimensions differ: " + a.str() + " vs " +
                         b.str());
  }
}

}  // namespace

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  require_same_dim(a, b);
  std::vector<Integer> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return LatticeVector(std::move(out));
}

LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  require_same_dim(a, b);
  std::vector<Integer> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return LatticeVector(std::move(out));
}

LatticeVector operator*(const Integer& s, const LatticeVector& v) {
  std::vector<Integer> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s * v[i];
  return LatticeVector(std::move(out));
}

std::string LatticeVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += coords_[i].get_str();
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
  return os << v.str();
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  require_same_dim(a, b);
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> form, const LatticeVector& v) {
  if (form.size() != v.dim()) {
    throw DimensionError("form of length " + std::to_string(form.size()) +
                         " applied to " + v.str());
  }
  Rational s = 0;
  for (std::size_t i = 0; i < v.dim(); ++i) s += form[i] * v[i];
  s.canonicalize();
  return s;
}

LatticeVector cross(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != 3 || b.dim() != 3) {
    throw DimensionError("cross product needs rank-3 vectors");
  }
  return LatticeVector(std::vector<Integer>{a[1] * b[2] - a[2] * b[1],
                                            a[2] * b[0] - a[0] * b[2],
                                            a[0] * b[1] - a[1] * b[0]});
}

Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& c : v.coords()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  return g;
}

LatticeVector primitivize(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw DegenerateInputError("cannot primitivize the zero vector");
  std::vector<Integer> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  }
  return LatticeVector(std::move(out));
}

IntMatrix::IntMatrix(std::vector<LatticeVector> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.dim() != rows_.front().dim()) {
      throw DimensionError("ragged matrix rows");
    }
  }
}

IntMatrix IntMatrix::transposed() const {
  std::vector<LatticeVector> out;
  for (std::size_t j = 0; j < cols(); ++j) {
    std::vector<Integer> col(rows());
    for (std::size_t i = 0; i < rows(); ++i) col[i] = at(i, j);
    out.emplace_back(std::move(col));
  }
  return IntMatrix(std::move(out));
}

LatticeVector IntMatrix::apply(const LatticeVector& v) const {
  std::vector<Integer> out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = dot(rows_[i], v);
  return LatticeVector(std::move(out));
}

namespace {

// Square determinant for k ≤ 3 given as a callback on (row, col).
template <class At>
Integer small_det(std::size_t k, At at) {
  switch (k) {
    case 1:
      return at(0, 0);
    case 2:
      return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    case 3:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    default:
      throw DimensionError("determinant supports sizes 1 to 3 only");
  }
}

void require_square(const IntMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > 3) {
    throw DimensionError("expected a square matrix of size 1..3, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

}  // namespace

Integer determinant(const IntMatrix& m) {
  require_square(m);
  return small_det(m.rows(), [&](std::size_t i, std::size_t j) -> Integer {
    return m.at(i, j);
  });
}

IntMatrix adjugate(const IntMatrix& m) {
  require_square(m);
  const std::size_t n = m.rows();
  std::vector<std::vector<Integer>> adj(n, std::vector<Integer>(n));
  if (n == 1) {
    adj[0][0] = 1;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // cofactor C_ij, stored transposed
        std::vector<std::size_t> rs, cs;
        for (std::size_t r = 0; r < n; ++r)
          if (r != i) rs.push_back(r);
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) cs.push_back(c);
        Integer minor = small_det(n - 1, [&](std::size_t a, std::size_t b) {
          return Integer(m.at(rs[a], cs[b]));
        });
        adj[j][i] = ((i + j) % 2 == 0) ? minor : Integer(-minor);
      }
    }
  }
  std::vector<LatticeVector> rows;
  for (auto& r : adj) rows.emplace_back(std::move(r));
  return IntMatrix(std::move(rows));
}

std::vector<Rational> solve_rational(const IntMatrix& m,
                                     std::span<const Rational> rhs) {
  require_square(m);
  if (rhs.size() != m.rows()) {
    throw DimensionError("right-hand side length does not match matrix");
  }
  Integer d = determinant(m);
  if (d == 0) throw SingularMatrixError("matrix is singular");
  IntMatrix adj = adjugate(m);
  std::vector<Rational> x(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += adj.at(i, j) * rhs[j];
    x[i] = s / d;
    x[i].canonicalize();
  }
  return x;
}

Integer maximal_minor_gcd(const IntMatrix& m) {
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  if (k == 0 || k > n || k > 3) {
    throw DimensionError("maximal_minor_gcd needs 1 <= k <= n, k <= 3");
  }
  // Walk all k-subsets of the n columns via a selection mask.
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  Integer g = 0;
  do {
    std::vector<std::size_t> cs;
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) cs.push_back(j);
    Integer minor = small_det(k, [&](std::size_t a, std::size_t b) {
      return Integer(m.at(a, cs[b]));
    });
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (g == 0) throw DegenerateInputError("rows are linearly dependent");
  return g;
}

}  // namespace shedkit
