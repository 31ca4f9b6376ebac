#pragma once

#include <initializer_list>
#include <vector>

#include "nonloc/registers.hpp"
#include "nonloc/scalar.hpp"

namespace nonloc {

// Tolerance used for float-backend matrix predicates.
inline constexpr double kMatrixEps = 1e-9;

class Matrix;

// Column vector with complex entries.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : data_(n, Complex::exact(0)) {}
  Vector(std::initializer_list<Complex> values) : data_(values) {}

  static Vector basis(std::size_t n, std::size_t k);

  std::size_t size() const { return data_.size(); }
  Complex &operator[](std::size_t i) { return data_[i]; }
  const Complex &operator[](std::size_t i) const { return data_[i]; }

  Vector &operator+=(const Vector &o);
  Vector &operator-=(const Vector &o);
  Vector &operator*=(const Complex &c);

  // <this|other> — conjugate-linear in *this.
  Complex dot(const Vector &o) const;
  Scalar norm2() const;
  double norm() const;
  bool is_exact() const;
  Vector normalized() const;  // float result unless already unit

  // |this><this|
  Matrix outer() const;
  // |this><other|
  Matrix outer(const Vector &o) const;

  bool equals(const Vector &o, double eps = kMatrixEps) const;

 private:
  std::vector<Complex> data_;
};

Vector operator+(Vector lhs, const Vector &rhs);
Vector operator-(Vector lhs, const Vector &rhs);
Vector operator*(const Complex &c, Vector v);
Vector kron(const Vector &a, const Vector &b);

// Dense complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex::exact(0)) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  // Row-major list of real exact entries given as (num, den) rationals is
  // overkill; builders use set() directly. Convenience: real matrix from
  // doubles (float backend).
  static Matrix from_reals(std::size_t rows, std::size_t cols,
                           const std::vector<double> &values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex &at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex &at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Matrix &operator+=(const Matrix &o);
  Matrix &operator-=(const Matrix &o);
  Matrix &operator*=(const Complex &c);

  Matrix dagger() const;
  Matrix transpose() const;
  Matrix conjugate() const;
  Complex trace() const;

  Vector column(std::size_t c) const;
  Vector apply(const Vector &v) const;  // this * v

  bool is_exact() const;
  Matrix to_float() const;

  bool equals(const Matrix &o, double eps = kMatrixEps) const;
  bool is_hermitian(double eps = kMatrixEps) const;
  bool is_projector(double eps = kMatrixEps) const;
  bool is_unitary(double eps = kMatrixEps) const;
  // Positive semidefiniteness. Exact matrices are decided exactly by a
  // pivoted LDL* elimination; float matrices via eigenvalues >= -eps.
  bool is_psd(double eps = kMatrixEps) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix lhs, const Matrix &rhs);
Matrix operator-(Matrix lhs, const Matrix &rhs);
Matrix operator*(const Matrix &lhs, const Matrix &rhs);
Matrix operator*(const Complex &c, Matrix m);

// Kronecker products; factor 0 is the slowest index.
Matrix kron(const Matrix &a, const Matrix &b);
Matrix kron(const std::vector<Matrix> &factors);

// Operator acting on the named registers (in the order listed), identity on
// the rest, expanded to the full layout space.
Matrix embed(const Matrix &op, const RegisterLayout &layout,
             const std::vector<std::string> &registers);

// Partial trace over the named registers; the result lives on the remaining
// registers in layout order.
Matrix partial_trace(const Matrix &m, const RegisterLayout &layout,
                     const std::vector<std::string> &traced);

// Partial transpose of the second factor of a dimA x dimB bipartite system.
Matrix partial_transpose(const Matrix &m, std::size_t dim_a,
                         std::size_t dim_b);

}  // namespace nonloc
