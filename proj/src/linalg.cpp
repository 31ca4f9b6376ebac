#include "nonloc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nonloc {

namespace {

constexpr double kJacobiThreshold = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const Matrix &m) {
  double sum = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c) {
        const double re = m.at(r, c).re.to_double();
        const double im = m.at(r, c).im.to_double();
        sum += re * re + im * im;
      }
  return std::sqrt(sum);
}

}  // namespace

EigenSystem eigh(const Matrix &hermitian) {
  if (hermitian.rows() != hermitian.cols())
    throw std::invalid_argument("eigh: non-square matrix");
  if (!hermitian.is_hermitian(1e-8))
    throw std::invalid_argument("eigh: matrix is not Hermitian");

  const std::size_t n = hermitian.rows();
  Matrix a = hermitian.to_float();
  Matrix v = Matrix::identity(n).to_float();

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiThreshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double re = a.at(p, q).re.to_double();
        const double im = a.at(p, q).im.to_double();
        const double g = std::hypot(re, im);
        if (g <= kJacobiThreshold) continue;

        // Phase factor e^{i phi} = a_pq / |a_pq|; the similarity
        // diag(e^{i phi}, 1) makes the 2x2 block real, then a classic
        // Jacobi rotation annihilates it.
        const Complex phase = Complex::floating(re / g, im / g);
        const double app = a.at(p, p).re.to_double();
        const double aqq = a.at(q, q).re.to_double();
        const double theta = (aqq - app) / (2 * g);
        const double t =
            (theta >= 0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Complex jpp = Complex::floating(c) * phase;
        const Complex jpq = Complex::floating(s) * phase;
        const Complex jqp = Complex::floating(-s);
        const Complex jqq = Complex::floating(c);

        // A <- J^dagger A J, V <- V J; only rows/cols p and q change.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = akp * jpp + akq * jqp;
          a.at(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = jpp.conj() * apk + jqp.conj() * aqk;
          a.at(q, k) = jpq.conj() * apk + jqq.conj() * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = vkp * jpp + vkq * jqp;
          v.at(k, q) = vkp * jpq + vkq * jqq;
        }
      }
  }

  EigenSystem out;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a.at(i, i).re.to_double();
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return diag[l] > diag[r]; });
  for (std::size_t i : order) {
    out.values.push_back(diag[i]);
    out.vectors.push_back(v.column(i));
  }
  return out;
}

double min_eigenvalue_hermitian(const Matrix &m) {
  const EigenSystem es = eigh(m);
  return es.values.empty() ? 0.0 : es.values.back();
}

Matrix sqrt_psd(const Matrix &m) {
  const EigenSystem es = eigh(m);
  Matrix out(m.rows(), m.cols());
  out = out.to_float();
  for (std::size_t i = 0; i < es.values.size(); ++i) {
    if (es.values[i] < -kMatrixEps)
      throw std::domain_error("sqrt_psd: negative eigenvalue");
    const double lambda = std::max(es.values[i], 0.0);
    out += Complex::floating(std::sqrt(lambda)) * es.vectors[i].outer();
  }
  return out;
}

SchmidtDecomposition schmidt_decompose(const Vector &state,
                                       std::size_t dim_left,
                                       std::size_t dim_right, double eps) {
  if (state.size() != dim_left * dim_right)
    throw std::invalid_argument("schmidt_decompose: dimension mismatch");
  if (std::abs(state.norm2().to_double() - 1.0) > eps)
    throw std::invalid_argument("schmidt_decompose: state is not normalized");

  // rho_left = Tr_right |psi><psi|; its eigenvectors are the left Schmidt
  // vectors and sqrt(eigenvalue) the coefficients.
  Matrix rho_left(dim_left, dim_left);
  for (std::size_t i = 0; i < dim_left; ++i)
    for (std::size_t j = 0; j < dim_left; ++j) {
      Complex sum = Complex::exact(0);
      for (std::size_t r = 0; r < dim_right; ++r)
        sum += state[i * dim_right + r] * state[j * dim_right + r].conj();
      rho_left.at(i, j) = sum;
    }

  const EigenSystem es = eigh(rho_left);
  SchmidtDecomposition sd;
  for (std::size_t l = 0; l < es.values.size(); ++l) {
    const double lambda = es.values[l];
    if (lambda <= eps * eps) continue;
    const double coeff = std::sqrt(lambda);
    // |right_l> = (1/c_l) (<left_l| (x) I) |psi>
    Vector right(dim_right);
    for (std::size_t r = 0; r < dim_right; ++r) {
      Complex sum = Complex::exact(0);
      for (std::size_t i = 0; i < dim_left; ++i)
        sum += es.vectors[l][i].conj() * state[i * dim_right + r];
      right[r] = sum * Complex::floating(1.0 / coeff);
    }
    sd.coefficients.push_back(coeff);
    sd.left.push_back(es.vectors[l]);
    sd.right.push_back(right);
  }
  return sd;
}

Vector schmidt_reconstruct(const SchmidtDecomposition &sd) {
  if (sd.coefficients.empty())
    throw std::invalid_argument("schmidt_reconstruct: empty decomposition");
  Vector out(sd.left.front().size() * sd.right.front().size());
  for (std::size_t l = 0; l < sd.coefficients.size(); ++l)
    out += Complex::floating(sd.coefficients[l]) *
           kron(sd.left[l], sd.right[l]);
  return out;
}

Matrix complete_isometric_columns(const Matrix &columns) {
  const std::size_t k = columns.rows();
  const std::size_t d = columns.cols();
  if (d > k)
    throw std::invalid_argument(
        "complete_isometric_columns: more columns than rows");

  std::vector<Vector> basis;
  for (std::size_t c = 0; c < d; ++c) {
    const Vector col = columns.column(c);
    for (const Vector &b : basis)
      if (b.dot(col).abs() > 1e-6)
        throw std::invalid_argument(
            "complete_isometric_columns: input columns are not orthonormal");
    if (std::abs(col.norm() - 1.0) > 1e-6)
      throw std::invalid_argument(
          "complete_isometric_columns: input columns are not orthonormal");
    basis.push_back(col);
  }

  while (basis.size() < k) {
    // Candidate standard basis vector with the largest residual.
    Vector best(k);
    double best_norm = -1.0;
    for (std::size_t e = 0; e < k; ++e) {
      Vector candidate = Vector::basis(k, e);
      for (const Vector &b : basis) candidate -= b.dot(candidate) * b;
      const double n = candidate.norm();
      if (n > best_norm) {
        best_norm = n;
        best = candidate;
      }
    }
    if (best_norm <= 1e-9)
      throw std::runtime_error(
          "complete_isometric_columns: residual space collapsed");
    best = best.normalized();
    // Re-orthogonalize once against the accumulated basis.
    for (const Vector &b : basis) best -= b.dot(best) * b;
    basis.push_back(best.normalized());
  }

  Matrix out(k, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < k; ++r) out.at(r, c) = basis[c][r];
  return out.to_float();
}

}  // namespace nonloc
