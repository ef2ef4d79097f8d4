#pragma once

#include <string>
#include <vector>

#include "nary/vec.hpp"

namespace nary {

/// Dense exact matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  static Matrix identity(int n);
  static Matrix diagonal(const std::vector<Rational>& d);
  /// Rows given as nested lists, e.g. {{1, 0}, {0, 1}}.
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  Vec apply(VecView x) const;  // M x
  Vec column(int j) const;
  Vec row(int i) const;
  Matrix transpose() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a);
  friend Matrix operator*(const Rational& c, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

/// Linear maps V -> W are matrices acting on column vectors (rows = dim W).
using LinearMap = Matrix;

/// Row-reduced echelon form; returns the pivot columns.
std::vector<int> rref(Matrix& m);
int rank(const Matrix& m);
Rational determinant(const Matrix& m);
/// Exact inverse; throws SingularError (with the rank) when singular.
Matrix invert(const Matrix& m);
/// Basis of {x : M x = 0}, one vector per free column, in column order.
std::vector<std::vector<Rational>> nullspace(const Matrix& m);

enum class Symmetry { symmetric, skew };
std::string to_string(Symmetry s);
Symmetry parse_symmetry(const std::string& s);

/// Bilinear form B(x, y) = x^T M y with a declared symmetry.
struct BilinearForm {
  Matrix matrix;
  Symmetry symmetry = Symmetry::symmetric;

  BilinearForm() = default;
  /// Throws ShapeError unless `m` is square with the declared symmetry.
  BilinearForm(Matrix m, Symmetry s);

  int dim() const { return matrix.rows(); }
  Rational operator()(VecView x, VecView y) const;
  Rational at(int i, int j) const { return matrix(i, j); }
  bool nondegenerate() const { return rank(matrix) == dim(); }
};

/// Linear functional on a `dim`-dimensional space.
struct Covector {
  std::vector<Rational> coefficients;

  Covector() = default;
  explicit Covector(std::vector<Rational> c) : coefficients(std::move(c)) {}
  static Covector zero(int dim) { return Covector(std::vector<Rational>(static_cast<std::size_t>(dim))); }

  int dim() const { return static_cast<int>(coefficients.size()); }
  Rational operator()(VecView x) const;
  bool is_zero() const;
  /// tau o D
  Covector compose(const Matrix& d) const;
  friend bool operator==(const Covector&, const Covector&) = default;
};

}  // namespace nary
