#pragma once

// Exact integer / rational linear algebra. Nothing in this project touches
// floating point; every entry is a GMP integer or a canonical GMP rational.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "congrusep/error.hpp"
#include "congrusep/polynomial.hpp"

namespace congrusep {

/// Dense row-major matrix. Square for group elements; rectangular shapes are
/// used for lattice maps and Smith normal form input.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("matrix data size does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  /// Dimension of a square matrix.
  std::size_t n() const {
    if (!is_square()) throw DimensionError("expected a square matrix");
    return rows_;
  }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const noexcept { return data_; }

  bool is_identity() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<mpz_class>;
using RationalMatrix = Matrix<mpq_class>;
using RationalVector = std::vector<mpq_class>;
using IntegerVector = std::vector<mpz_class>;

inline constexpr std::size_t kDefaultBitBound = 1'000'000;

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionError("dimension mismatch in matrix product");
  Matrix<T> r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) { return mat_mul(a, b); }

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("dimension mismatch in matrix sum");
  Matrix<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("dimension mismatch in matrix difference");
  Matrix<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a) {
  Matrix<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
  return r;
}

template <class T>
Matrix<T> scale(const T& c, const Matrix<T>& a) {
  Matrix<T> r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
  return r;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

template <class T>
Matrix<T> mat_pow(Matrix<T> base, std::uint64_t e) {
  Matrix<T> r = Matrix<T>::identity(base.n());
  while (e > 0) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return r;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw DimensionError("dimension mismatch in matrix-vector product");
  std::vector<T> r(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

RationalMatrix to_rational(const IntegerMatrix& a);
bool is_integral(const RationalMatrix& a);
/// Throws PreconditionError if some entry is not an integer.
IntegerMatrix to_integer(const RationalMatrix& a);

/// Parses "17", "-3", "1/2" (canonicalised). Throws InputError.
mpq_class parse_rational(std::string_view s);
mpz_class parse_integer(std::string_view s);

template <class T>
std::string to_string(const Matrix<T>& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) s += ",";
      s += a(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

mpq_class determinant(const RationalMatrix& a);
/// Fraction-free (Bareiss) determinant.
mpz_class determinant(const IntegerMatrix& a);

/// Exact inverse; throws SingularMatrixError.
RationalMatrix mat_inverse(const RationalMatrix& a);
/// Inverse of an element of GL(n,Z); throws PreconditionError if det != +-1.
IntegerMatrix unimodular_inverse(const IntegerMatrix& a);
bool is_unimodular(const IntegerMatrix& a);

/// Reduced row echelon form. `pivots` receives the pivot column of each
/// nonzero row.
RationalMatrix rref(const RationalMatrix& a, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RationalMatrix& a);

/// One solution x of a x = b, or nullopt when inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);

/// Monic characteristic polynomial det(xI - a) (Faddeev-LeVerrier).
Polynomial char_poly(const RationalMatrix& a);
Polynomial char_poly(const IntegerMatrix& a);

/// Monic minimal polynomial, from the first linear dependency among
/// I, a, a^2, ...
Polynomial min_poly(const RationalMatrix& a);

/// p(a) by Horner's rule.
RationalMatrix evaluate(const Polynomial& p, const RationalMatrix& a);

/// U * A * V == D with U, V unimodular, D diagonal (rectangular allowed),
/// nonnegative diagonal and d_1 | d_2 | ... (zeros trail).
struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;

  /// Diagonal entries d_1..d_min(rows,cols), including trailing zeros.
  std::vector<mpz_class> diagonal() const;
  /// Nonzero diagonal entries.
  std::vector<mpz_class> invariant_factors() const;
};

/// Pivot-and-reduce Smith normal form with smallest-magnitude pivoting.
/// Throws ResourceError if any entry of D, U or V grows beyond `bit_bound` bits.
SmithDecomposition smith_normal_form(const IntegerMatrix& a, std::size_t bit_bound = kDefaultBitBound);

/// Row-style Hermite normal form: U * A == H, U unimodular, H in row echelon
/// form with positive pivots and entries above each pivot reduced into
/// [0, pivot). Nonzero rows of H are a canonical basis of the row lattice.
struct HermiteDecomposition {
  IntegerMatrix H;
  IntegerMatrix U;
  std::size_t rank = 0;
};
HermiteDecomposition hermite_normal_form(const IntegerMatrix& a);

struct KernelImage {
  std::vector<RationalVector> kernel;
  std::vector<RationalVector> image;
};

/// Kernel basis from the free columns of rref(a) (free variable set to 1),
/// image basis as the nonzero rows of rref(a^T).
KernelImage kernel_and_image(const RationalMatrix& a);

}  // namespace congrusep
