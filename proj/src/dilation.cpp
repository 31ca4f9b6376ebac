#include "nonloc/dilation.hpp"

#include <cmath>
#include <stdexcept>

namespace nonloc {

namespace {

constexpr double kTol = 1e-9;

void require_povm(const std::vector<Matrix> &povm, const char *what) {
  if (povm.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  const std::size_t d = povm.front().rows();
  Matrix sum(d, d);
  for (const Matrix &e : povm) {
    if (e.rows() != d || e.cols() != d)
      throw std::invalid_argument(std::string(what) + ": ragged dimensions");
    if (!e.is_hermitian(kTol))
      throw std::invalid_argument(std::string(what) + ": non-Hermitian element");
    if (!e.is_psd(kTol))
      throw std::invalid_argument(std::string(what) + ": non-PSD element");
    sum += e;
  }
  if (!sum.equals(Matrix::identity(d), kTol))
    throw std::invalid_argument(std::string(what) + ": incomplete POVM");
}

bool is_zero_matrix(const Matrix &m, double eps) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero(eps)) return false;
  return true;
}

bool all_projective(const std::vector<Matrix> &povm) {
  for (const Matrix &e : povm)
    if (!e.is_projector(kTol)) return false;
  return true;
}

}  // namespace

Rank1Decomposition rank1_decompose(const std::vector<Matrix> &povm,
                                   std::size_t vectors_per_outcome) {
  require_povm(povm, "rank1_decompose");
  const std::size_t d = povm.front().rows();

  Rank1Decomposition out;
  out.dim = d;
  std::size_t max_rank = 0;
  for (const Matrix &e : povm) {
    if (is_zero_matrix(e, kTol))
      throw std::invalid_argument(
          "rank1_decompose: zero element has no nonzero rank-one split");
    std::vector<Vector> vs;
    const EigenSystem es = eigh(e);
    for (std::size_t i = 0; i < es.values.size(); ++i) {
      if (es.values[i] <= kTol) continue;
      Vector v = es.vectors[i];
      v *= Complex::floating(std::sqrt(es.values[i]));
      vs.push_back(std::move(v));
    }
    max_rank = std::max(max_rank, vs.size());
    out.vectors.push_back(std::move(vs));
  }

  std::size_t target = vectors_per_outcome ? vectors_per_outcome : max_rank;
  if (target < max_rank)
    throw std::invalid_argument(
        "rank1_decompose: requested count below the largest rank");

  // Pad by splitting the leading vector into two equal halves.
  for (auto &vs : out.vectors)
    while (vs.size() < target) {
      Vector head = vs.front();
      head *= Complex::floating(1.0 / std::sqrt(2.0));
      vs.front() = head;
      vs.push_back(head);
    }
  return out;
}

DilationResult dilate_povm(const std::vector<Matrix> &povm,
                           std::size_t vectors_per_outcome) {
  require_povm(povm, "dilate_povm");
  const std::size_t d = povm.front().rows();
  const std::size_t outcomes = povm.size();

  if (all_projective(povm)) {
    DilationResult out;
    out.trivial = true;
    out.ancilla_dim = 1;
    out.pvm = povm;
    out.isometry = Matrix::identity(d);
    out.p_perp = Matrix::zero(d, d);
    return out;
  }

  // Rank-one vectors; zero elements contribute none.
  std::vector<std::vector<Vector>> groups(outcomes);
  std::vector<Matrix> nonzero;
  std::vector<std::size_t> nonzero_at;
  for (std::size_t k = 0; k < outcomes; ++k)
    if (!is_zero_matrix(povm[k], kTol)) {
      nonzero.push_back(povm[k]);
      nonzero_at.push_back(k);
    }
  const Rank1Decomposition decomposition =
      rank1_decompose(nonzero, vectors_per_outcome);
  for (std::size_t i = 0; i < nonzero_at.size(); ++i)
    groups[nonzero_at[i]] = decomposition.vectors[i];

  std::vector<std::pair<std::size_t, Vector>> flat;  // (outcome, x)
  for (std::size_t k = 0; k < outcomes; ++k)
    for (const Vector &x : groups[k]) flat.emplace_back(k, x);
  const std::size_t n = flat.size();
  if (n <= d)
    throw std::logic_error("dilate_povm: non-projective POVM with <= d vectors");

  const std::size_t r = n - d + 1;
  const std::size_t big = d * r;

  // Lemma-style completion: the N x d matrix with rows conj(x_f) has
  // orthonormal columns by POVM completeness; extend to an N x N unitary
  // and read the ancilla components off the added columns.
  Matrix completion_input(n, d);
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t i = 0; i < d; ++i)
      completion_input.at(f, i) = flat[f].second[i].conj();
  const Matrix u = complete_isometric_columns(completion_input);

  // y_f = x_f (x) |0> + eta (x) phi_f with eta = e_0 and phi_f orthogonal
  // to |0> in C^r.
  std::vector<Vector> ys(n, Vector(big));
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t i = 0; i < d; ++i)
      ys[f][i * r] = flat[f].second[i];
    for (std::size_t m = 0; m + d < n; ++m)
      ys[f][0 * r + 1 + m] += u.at(f, d + m).conj();
  }
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      const Complex overlap = ys[f].dot(ys[g]);
      if (!overlap.equals(f == g ? Complex::exact(1) : Complex::exact(0), kTol))
        throw std::runtime_error("dilate_povm: lifted set not orthonormal");
    }

  DilationResult out;
  out.ancilla_dim = r;

  Matrix projector_sum(big, big);
  std::vector<Matrix> partial(outcomes, Matrix::zero(big, big));
  for (std::size_t f = 0; f < n; ++f) {
    const Matrix term = ys[f].outer();
    partial[flat[f].first] += term;
    projector_sum += term;
  }
  out.p_perp = Matrix::identity(big).to_float() - projector_sum;
  if (!out.p_perp.is_projector(kTol))
    throw std::runtime_error("dilate_povm: complement is not a projector");

  for (std::size_t k = 0; k < outcomes; ++k) {
    Matrix pk = partial[k];
    if (k + 1 == outcomes) pk += out.p_perp;
    out.pvm.push_back(std::move(pk));
  }

  Matrix v(big, d);
  for (std::size_t i = 0; i < d; ++i) v.at(i * r, i) = Complex::exact(1);
  out.isometry = v.to_float();

  // Verification pass: isometry identities, PVM structure, pullback.
  const Matrix vdag = out.isometry.dagger();
  if (!(vdag * out.isometry).equals(Matrix::identity(d), kTol))
    throw std::runtime_error("dilate_povm: V*V != I");
  Matrix zero_ancilla(r, r);
  zero_ancilla.at(0, 0) = Complex::exact(1);
  if (!(out.isometry * vdag)
           .equals(kron(Matrix::identity(d), zero_ancilla), kTol))
    throw std::runtime_error("dilate_povm: VV* != I (x) |0><0|");

  Matrix pvm_sum(big, big);
  for (std::size_t k = 0; k < outcomes; ++k) {
    if (!out.pvm[k].is_projector(kTol))
      throw std::runtime_error("dilate_povm: output element not a projector");
    pvm_sum += out.pvm[k];
    for (std::size_t j = 0; j < k; ++j)
      if (!is_zero_matrix(out.pvm[k] * out.pvm[j], kTol))
        throw std::runtime_error("dilate_povm: projectors not orthogonal");
    if (!(vdag * out.pvm[k] * out.isometry).equals(povm[k], kTol))
      throw std::runtime_error("dilate_povm: pullback mismatch");
  }
  if (!pvm_sum.equals(Matrix::identity(big), kTol))
    throw std::runtime_error("dilate_povm: PVM incomplete");
  if (!is_zero_matrix(vdag * out.p_perp * out.isometry, kTol))
    throw std::runtime_error("dilate_povm: V* P_perp V != 0");

  return out;
}

TwoSettingDilation dilate_two_settings(const std::vector<Matrix> &povm0,
                                       const std::vector<Matrix> &povm1) {
  require_povm(povm0, "dilate_two_settings[0]");
  require_povm(povm1, "dilate_two_settings[1]");
  const std::size_t d = povm0.front().rows();
  if (povm1.front().rows() != d)
    throw std::invalid_argument("dilate_two_settings: dimension mismatch");

  std::vector<Matrix> e0 = povm0, e1 = povm1;
  while (e0.size() < e1.size()) e0.push_back(Matrix::zero(d, d));
  while (e1.size() < e0.size()) e1.push_back(Matrix::zero(d, d));
  const std::size_t outcomes = e0.size();

  // Stage 1: make setting 0 projective.
  const DilationResult stage0 = dilate_povm(e0);
  const Matrix &v0 = stage0.isometry;
  const std::size_t dim0 = d * stage0.ancilla_dim;

  // Intermediate POVM for setting 1 on the enlarged space; the identity
  // defect lands on outcome 0.
  std::vector<Matrix> e1_prime;
  const Matrix defect0 =
      Matrix::identity(dim0).to_float() - v0 * v0.dagger();
  for (std::size_t a = 0; a < outcomes; ++a) {
    Matrix lifted = v0 * e1[a] * v0.dagger();
    if (a == 0) lifted += defect0;
    e1_prime.push_back(std::move(lifted));
  }

  // Stage 2: make the lifted setting 1 projective.
  const DilationResult stage1 = dilate_povm(e1_prime);
  const Matrix &v1 = stage1.isometry;
  const std::size_t dim1 = dim0 * stage1.ancilla_dim;

  TwoSettingDilation out;
  out.g0_dim = stage0.ancilla_dim;
  out.g1_dim = stage1.ancilla_dim;
  out.pvm1 = stage1.pvm;

  const Matrix defect1 =
      Matrix::identity(dim1).to_float() - v1 * v1.dagger();
  for (std::size_t a = 0; a < outcomes; ++a) {
    Matrix lifted = v1 * stage0.pvm[a] * v1.dagger();
    if (a == 0) lifted += defect1;
    out.pvm0.push_back(std::move(lifted));
  }

  out.isometry = v1 * v0;

  // Verification: projectivity, completeness, pullbacks, and the product
  // form V|xi> = |xi> (x) |0> (x) |0>.
  for (int setting = 0; setting < 2; ++setting) {
    const auto &pvm = setting == 0 ? out.pvm0 : out.pvm1;
    const auto &original = setting == 0 ? e0 : e1;
    Matrix sum(dim1, dim1);
    for (std::size_t a = 0; a < outcomes; ++a) {
      if (!pvm[a].is_projector(kTol))
        throw std::runtime_error("dilate_two_settings: non-projective output");
      sum += pvm[a];
      if (!(out.isometry.dagger() * pvm[a] * out.isometry)
               .equals(original[a], kTol))
        throw std::runtime_error("dilate_two_settings: pullback mismatch");
    }
    if (!sum.equals(Matrix::identity(dim1), kTol))
      throw std::runtime_error("dilate_two_settings: incomplete output");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t row = 0; row < dim1; ++row) {
      const Complex expected = (row == i * stage0.ancilla_dim *
                                           stage1.ancilla_dim)
                                   ? Complex::exact(1)
                                   : Complex::exact(0);
      if (!out.isometry.at(row, i).equals(expected, kTol))
        throw std::runtime_error(
            "dilate_two_settings: isometry is not the |0>,|0> embedding");
    }

  return out;
}

}  // namespace nonloc
