#pragma once

// Exact integer and rational linear algebra in rank 2 and 3.
//
// Integer and Rational are GMP's mpz_class / mpq_class. Every quantity the
// kernel manipulates (coordinates, multiplicities, linear form coefficients)
// is one of these; nothing is ever rounded.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace shedkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical rational: positive denominator, coprime parts.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

/// An integer vector of the lattice N (rank 2 or 3).
class LatticeVector {
 public:
  LatticeVector() = default;
  LatticeVector(std::initializer_list<long> coords);
  explicit LatticeVector(std::vector<Integer> coords);

  [[nodiscard]] std::size_t dim() const { return coords_.size(); }
  [[nodiscard]] const Integer& operator[](std::size_t i) const {
    return coords_[i];
  }
  [[nodiscard]] const std::vector<Integer>& coords() const { return coords_; }

  [[nodiscard]] bool is_zero() const;
  /// gcd of the coordinates is 1 (and the vector is nonzero).
  [[nodiscard]] bool is_primitive() const;

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.coords_ == b.coords_;
  }
  /// Lexicographic on coordinates; shorter vectors first.
  friend std::strong_ordering operator<=>(const LatticeVector& a,
                                          const LatticeVector& b);

  friend LatticeVector operator+(const LatticeVector& a,
                                 const LatticeVector& b);
  friend LatticeVector operator-(const LatticeVector& a,
                                 const LatticeVector& b);
  friend LatticeVector operator*(const Integer& s, const LatticeVector& v);

  [[nodiscard]] std::string str() const;

 private:
  std::vector<Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

/// Integer dot product.
Integer dot(const LatticeVector& a, const LatticeVector& b);
/// Rational form applied to an integer vector.
Rational dot(std::span<const Rational> form, const LatticeVector& v);

/// Cross product of two rank-3 vectors.
LatticeVector cross(const LatticeVector& a, const LatticeVector& b);

/// gcd of the absolute values of the coordinates (0 for the zero vector).
Integer content(const LatticeVector& v);

/// v / content(v). Throws DegenerateInputError on the zero vector.
LatticeVector primitivize(const LatticeVector& v);

/// Row-major integer matrix; rows share one length.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::vector<LatticeVector> rows);

  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const {
    return rows_.empty() ? 0 : rows_.front().dim();
  }
  [[nodiscard]] const LatticeVector& row(std::size_t i) const {
    return rows_[i];
  }
  [[nodiscard]] const Integer& at(std::size_t i, std::size_t j) const {
    return rows_[i][j];
  }
  [[nodiscard]] const std::vector<LatticeVector>& row_vectors() const {
    return rows_;
  }
  [[nodiscard]] IntMatrix transposed() const;

  /// m·v, for v of length cols().
  [[nodiscard]] LatticeVector apply(const LatticeVector& v) const;

 private:
  std::vector<LatticeVector> rows_;
};

/// Determinant of a 2×2 or 3×3 matrix by cofactor expansion.
Integer determinant(const IntMatrix& m);

/// Adjugate of a 2×2 or 3×3 matrix: adj(m)·m = det(m)·I.
IntMatrix adjugate(const IntMatrix& m);

/// Unique x with m·x = rhs. Throws SingularMatrixError when det(m) = 0.
std::vector<Rational> solve_rational(const IntMatrix& m,
                                     std::span<const Rational> rhs);

/// gcd of all k×k minors of a k×n matrix of rank k (k = rows()).
/// This is the index of the row lattice in its saturation.
Integer maximal_minor_gcd(const IntMatrix& m);

}  // namespace shedkit
