#pragma once

#include <vector>

#include "nonloc/matrix.hpp"

namespace nonloc {

// Float-backend numerics for the small (dim <= ~32) Hermitian problems in
// this codebase. Eigen-decomposition uses cyclic Jacobi rotations with an
// off-diagonal threshold of 1e-12 and at most 100 sweeps.

struct EigenSystem {
  std::vector<double> values;    // descending
  std::vector<Vector> vectors;   // orthonormal, aligned with values
};

// Hermitian eigendecomposition (float backend; exact inputs are converted).
EigenSystem eigh(const Matrix &hermitian);

double min_eigenvalue_hermitian(const Matrix &m);

// PSD square root via the spectral decomposition; negative eigenvalues below
// -1e-9 are rejected, tiny ones clamped to zero.
Matrix sqrt_psd(const Matrix &m);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // nonnegative, descending
  std::vector<Vector> left;          // orthonormal in the left factor
  std::vector<Vector> right;         // orthonormal in the right factor
};

// Schmidt decomposition of a unit vector in C^{dim_left} (x) C^{dim_right}.
SchmidtDecomposition schmidt_decompose(const Vector &state,
                                       std::size_t dim_left,
                                       std::size_t dim_right,
                                       double eps = kMatrixEps);

// Reassembles sum_l c_l |left_l> (x) |right_l>.
Vector schmidt_reconstruct(const SchmidtDecomposition &sd);

// Extends a K x d column-orthonormal matrix to a K x K unitary by modified
// Gram-Schmidt with re-orthogonalization; the added columns are standard
// basis vectors picked by largest residual norm. The first d columns are
// returned unchanged.
Matrix complete_isometric_columns(const Matrix &columns);

}  // namespace nonloc
