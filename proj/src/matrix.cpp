#include "nonloc/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "nonloc/linalg.hpp"

namespace nonloc {

//------------------------------------------------------------------------------
// Vector
//------------------------------------------------------------------------------

Vector Vector::basis(std::size_t n, std::size_t k) {
  Vector v(n);
  v[k] = Complex::exact(1);
  return v;
}

Vector &Vector::operator+=(const Vector &o) {
  if (size() != o.size()) throw std::invalid_argument("Vector: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += o[i];
  return *this;
}

Vector &Vector::operator-=(const Vector &o) {
  if (size() != o.size()) throw std::invalid_argument("Vector: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) data_[i] -= o[i];
  return *this;
}

Vector &Vector::operator*=(const Complex &c) {
  for (auto &x : data_) x *= c;
  return *this;
}

Complex Vector::dot(const Vector &o) const {
  if (size() != o.size()) throw std::invalid_argument("Vector: size mismatch");
  Complex sum = Complex::exact(0);
  for (std::size_t i = 0; i < size(); ++i) sum += data_[i].conj() * o[i];
  return sum;
}

Scalar Vector::norm2() const {
  Scalar sum = Scalar::exact(0);
  for (const auto &x : data_) sum += x.norm2();
  return sum;
}

double Vector::norm() const { return std::sqrt(norm2().to_double()); }

bool Vector::is_exact() const {
  for (const auto &x : data_)
    if (!x.is_exact()) return false;
  return true;
}

Vector Vector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("Vector: normalizing zero vector");
  Vector out = *this;
  out *= Complex::floating(1.0 / n);
  return out;
}

Matrix Vector::outer() const { return outer(*this); }

Matrix Vector::outer(const Vector &o) const {
  Matrix m(size(), o.size());
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = 0; c < o.size(); ++c)
      m.at(r, c) = data_[r] * o[c].conj();
  return m;
}

bool Vector::equals(const Vector &o, double eps) const {
  if (size() != o.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (!data_[i].equals(o[i], eps)) return false;
  return true;
}

Vector operator+(Vector lhs, const Vector &rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector &rhs) { return lhs -= rhs; }
Vector operator*(const Complex &c, Vector v) { return v *= c; }

Vector kron(const Vector &a, const Vector &b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i * b.size() + j] = a[i] * b[j];
  return out;
}

//------------------------------------------------------------------------------
// Matrix
//------------------------------------------------------------------------------

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Complex::exact(1);
  return m;
}

Matrix Matrix::from_reals(std::size_t rows, std::size_t cols,
                          const std::vector<double> &values) {
  if (values.size() != rows * cols)
    throw std::invalid_argument("Matrix::from_reals: size mismatch");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < values.size(); ++i)
    m.data_[i] = Complex::floating(values[i]);
  return m;
}

Matrix &Matrix::operator+=(const Matrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix &Matrix::operator-=(const Matrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix &Matrix::operator*=(const Complex &c) {
  for (auto &x : data_) x *= c;
  return *this;
}

Matrix Matrix::dagger() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c).conj();
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

Matrix Matrix::conjugate() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    m.data_[i] = data_[i].conj();
  return m;
}

Complex Matrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("Matrix: trace of non-square");
  Complex sum = Complex::exact(0);
  for (std::size_t i = 0; i < rows_; ++i) sum += at(i, i);
  return sum;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

Vector Matrix::apply(const Vector &v) const {
  if (v.size() != cols_) throw std::invalid_argument("Matrix: apply mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex sum = Complex::exact(0);
    for (std::size_t c = 0; c < cols_; ++c) sum += at(r, c) * v[c];
    out[r] = sum;
  }
  return out;
}

bool Matrix::is_exact() const {
  for (const auto &x : data_)
    if (!x.is_exact()) return false;
  return true;
}

Matrix Matrix::to_float() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    m.data_[i] = Complex::floating(data_[i].re.to_double(),
                                   data_[i].im.to_double());
  return m;
}

bool Matrix::equals(const Matrix &o, double eps) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!data_[i].equals(o.data_[i], eps)) return false;
  return true;
}

bool Matrix::is_hermitian(double eps) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (!at(r, c).equals(at(c, r).conj(), eps)) return false;
  return true;
}

bool Matrix::is_projector(double eps) const {
  return is_hermitian(eps) && ((*this) * (*this)).equals(*this, eps);
}

bool Matrix::is_unitary(double eps) const {
  if (rows_ != cols_) return false;
  return (dagger() * (*this)).equals(identity(rows_), eps);
}

namespace {

// Exact pivoted LDL* elimination deciding positive semidefiniteness for a
// Hermitian matrix with exact entries. Uses |M_ij|^2 <= M_ii M_jj: if every
// remaining diagonal entry is zero, any nonzero off-diagonal entry refutes
// PSD; otherwise pivot on a positive diagonal entry and eliminate.
bool exact_psd(Matrix m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i) active.push_back(i);

  while (!active.empty()) {
    std::size_t pivot = n;
    for (std::size_t i : active) {
      const int s = m.at(i, i).re.sign();
      if (!m.at(i, i).im.is_zero()) return false;
      if (s < 0) return false;
      if (s > 0 && pivot == n) pivot = i;
    }
    if (pivot == n) {
      // All-zero diagonal: PSD iff the active block vanishes.
      for (std::size_t i : active)
        for (std::size_t j : active)
          if (!m.at(i, j).is_zero(0.0)) return false;
      return true;
    }
    const Scalar d = m.at(pivot, pivot).re;
    std::vector<std::size_t> next;
    for (std::size_t i : active)
      if (i != pivot) next.push_back(i);
    for (std::size_t i : next)
      for (std::size_t j : next) {
        const Complex update = m.at(i, pivot) * m.at(pivot, j);
        m.at(i, j) -= Complex(update.re / d, update.im / d);
      }
    active = std::move(next);
  }
  return true;
}

}  // namespace

bool Matrix::is_psd(double eps) const {
  if (!is_hermitian(is_exact() ? 0.0 : eps)) return false;
  if (is_exact()) return exact_psd(*this);
  return min_eigenvalue_hermitian(*this) >= -eps;
}

Matrix operator+(Matrix lhs, const Matrix &rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix &rhs) { return lhs -= rhs; }

Matrix operator*(const Matrix &lhs, const Matrix &rhs) {
  if (lhs.cols() != rhs.rows())
    throw std::invalid_argument("Matrix: product shape mismatch");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t r = 0; r < lhs.rows(); ++r)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex &l = lhs.at(r, k);
      if (l.is_zero(0.0)) continue;
      for (std::size_t c = 0; c < rhs.cols(); ++c)
        out.at(r, c) += l * rhs.at(k, c);
    }
  return out;
}

Matrix operator*(const Complex &c, Matrix m) { return m *= c; }

Matrix kron(const Matrix &a, const Matrix &b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex &v = a.at(ar, ac);
      if (v.is_zero(0.0)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out.at(ar * b.rows() + br, ac * b.cols() + bc) = v * b.at(br, bc);
    }
  return out;
}

Matrix kron(const std::vector<Matrix> &factors) {
  if (factors.empty())
    return Matrix::identity(1);
  Matrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

Matrix embed(const Matrix &op, const RegisterLayout &layout,
             const std::vector<std::string> &registers) {
  std::vector<std::size_t> indices;
  for (const std::string &name : registers) indices.push_back(layout.find(name));
  const std::size_t sub = layout.sub_dim(indices);
  if (op.rows() != sub || op.cols() != sub)
    throw std::invalid_argument("embed: operator does not match registers");

  const std::size_t total = layout.total_dim();
  std::vector<bool> touched(layout.count(), false);
  for (std::size_t i : indices) touched[i] = true;

  Matrix out(total, total);
  for (std::size_t row = 0; row < total; ++row) {
    const std::vector<int> rd = layout.digits(row);
    const std::size_t op_row = layout.sub_index(rd, indices);
    for (std::size_t col = 0; col < total; ++col) {
      const std::vector<int> cd = layout.digits(col);
      bool diagonal_rest = true;
      for (std::size_t i = 0; i < layout.count(); ++i)
        if (!touched[i] && rd[i] != cd[i]) {
          diagonal_rest = false;
          break;
        }
      if (!diagonal_rest) continue;
      out.at(row, col) = op.at(op_row, layout.sub_index(cd, indices));
    }
  }
  return out;
}

Matrix partial_trace(const Matrix &m, const RegisterLayout &layout,
                     const std::vector<std::string> &traced) {
  const std::size_t total = layout.total_dim();
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("partial_trace: matrix does not match layout");

  std::vector<bool> is_traced(layout.count(), false);
  for (const std::string &name : traced) is_traced[layout.find(name)] = true;

  std::vector<std::size_t> kept, dropped;
  for (std::size_t i = 0; i < layout.count(); ++i)
    (is_traced[i] ? dropped : kept).push_back(i);

  Matrix out(layout.sub_dim(kept), layout.sub_dim(kept));
  for (std::size_t row = 0; row < total; ++row) {
    const std::vector<int> rd = layout.digits(row);
    const std::size_t out_row = layout.sub_index(rd, kept);
    for (std::size_t col = 0; col < total; ++col) {
      const std::vector<int> cd = layout.digits(col);
      bool diagonal_dropped = true;
      for (std::size_t i : dropped)
        if (rd[i] != cd[i]) {
          diagonal_dropped = false;
          break;
        }
      if (!diagonal_dropped) continue;
      out.at(out_row, layout.sub_index(cd, kept)) += m.at(row, col);
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix &m, std::size_t dim_a,
                         std::size_t dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw std::invalid_argument("partial_transpose: shape mismatch");
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j)
      for (std::size_t a = 0; a < dim_b; ++a)
        for (std::size_t b = 0; b < dim_b; ++b)
          out.at(i * dim_b + a, j * dim_b + b) =
              m.at(i * dim_b + b, j * dim_b + a);
  return out;
}

}  // namespace nonloc
