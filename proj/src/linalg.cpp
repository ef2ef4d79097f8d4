#include "nary/linalg.hpp"

#include <utility>

#include "nary/errors.hpp"

namespace nary {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw ShapeError("negative matrix shape");
  a_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Rational>& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw ShapeError("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Vec Matrix::apply(VecView x) const {
  if (!x.empty() && x.back().first >= cols_) throw ShapeError("vector longer than matrix column count");
  std::vector<Term> out;
  for (int i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (const auto& t : x) s += (*this)(i, t.first) * t.second;
    if (sgn(s) != 0) out.emplace_back(i, std::move(s));
  }
  return Vec(std::move(out));
}

Vec Matrix::column(int j) const { return apply(unit(j)); }

Vec Matrix::row(int i) const {
  std::vector<Term> out;
  for (int j = 0; j < cols_; ++j)
    if (sgn((*this)(i, j)) != 0) out.emplace_back(j, (*this)(i, j));
  return Vec(std::move(out));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& v : a_)
    if (sgn(v) != 0) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator-(const Matrix& a) { return Rational(-1) * a; }

Matrix operator*(const Rational& c, const Matrix& a) {
  Matrix r = a;
  for (auto& v : r.a_) v *= c;
  return r;
}

std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(const Matrix& m) {
  Matrix w = m;
  return static_cast<int>(rref(w).size());
}

Rational determinant(const Matrix& m) {
  if (!m.square()) throw ShapeError("determinant of a non-square matrix");
  Matrix w = m;
  Rational det = 1;
  const int n = w.rows();
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && sgn(w(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
      det = -det;
    }
    det *= w(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (sgn(w(i, c)) == 0) continue;
      Rational f = w(i, c) / w(c, c);
      for (int j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return det;
}

Matrix invert(const Matrix& m) {
  if (!m.square()) throw ShapeError("inverse of a non-square matrix");
  const int n = m.rows();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  int r = 0;
  for (int p : piv)
    if (p < n) ++r;
  if (r < n) throw SingularError("matrix is singular (rank " + std::to_string(r) + " of " + std::to_string(n) + ")", r);
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<std::vector<Rational>> nullspace(const Matrix& m) {
  Matrix w = m;
  auto piv = rref(w);
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols()), 0);
  for (int p : piv) is_pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(m.cols()));
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[static_cast<std::size_t>(piv[r])] = -w(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::string to_string(Symmetry s) { return s == Symmetry::symmetric ? "symmetric" : "skew"; }

Symmetry parse_symmetry(const std::string& s) {
  if (s == "symmetric") return Symmetry::symmetric;
  if (s == "skew" || s == "skew-symmetric") return Symmetry::skew;
  throw ParseError("symmetry", "unknown symmetry '" + s + "'");
}

BilinearForm::BilinearForm(Matrix m, Symmetry s) : matrix(std::move(m)), symmetry(s) {
  if (!matrix.square()) throw ShapeError("bilinear form matrix must be square");
  for (int i = 0; i < matrix.rows(); ++i)
    for (int j = 0; j <= i; ++j) {
      bool ok = symmetry == Symmetry::symmetric ? matrix(i, j) == matrix(j, i) : matrix(i, j) == -matrix(j, i);
      if (!ok) throw ShapeError("bilinear form matrix is not " + to_string(symmetry));
    }
}

Rational BilinearForm::operator()(VecView x, VecView y) const {
  Rational s = 0;
  for (const auto& a : x)
    for (const auto& b : y) s += a.second * matrix(a.first, b.first) * b.second;
  return s;
}

Rational Covector::operator()(VecView x) const {
  Rational s = 0;
  for (const auto& t : x) {
    if (t.first >= dim()) throw ShapeError("vector longer than covector");
    s += coefficients[static_cast<std::size_t>(t.first)] * t.second;
  }
  return s;
}

bool Covector::is_zero() const {
  for (const auto& c : coefficients)
    if (sgn(c) != 0) return false;
  return true;
}

Covector Covector::compose(const Matrix& d) const {
  if (d.rows() != dim()) throw ShapeError("covector/matrix shape mismatch");
  std::vector<Rational> out(static_cast<std::size_t>(d.cols()));
  for (int j = 0; j < d.cols(); ++j)
    for (int i = 0; i < d.rows(); ++i) out[static_cast<std::size_t>(j)] += coefficients[static_cast<std::size_t>(i)] * d(i, j);
  return Covector(std::move(out));
}

}  // namespace nary
