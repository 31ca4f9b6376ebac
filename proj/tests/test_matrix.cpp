#include <doctest.h>

#include <random>

#include "nonloc/linalg.hpp"
#include "nonloc/matrix.hpp"
#include "nonloc/quantum.hpp"

using namespace nonloc;

namespace {

std::mt19937 &rng() {
  static std::mt19937 gen(101);
  return gen;
}

Matrix random_matrix(std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m.at(r, c) = Complex::floating(dist(rng()), dist(rng()));
  return m;
}

Matrix random_hermitian(std::size_t n) {
  Matrix m = random_matrix(n);
  Matrix h = m + m.dagger();
  return Complex::floating(0.5) * h;
}

Matrix random_psd(std::size_t n) {
  Matrix m = random_matrix(n);
  return m * m.dagger();
}

}  // namespace

TEST_CASE("partial trace basics") {
  RegisterLayout layout({{"L", 2, 0}, {"R", 2, 1}});

  SUBCASE("maximally entangled marginal is I/2") {
    const Matrix rho = phi_plus().outer();
    const Matrix reduced = partial_trace(rho, layout, {"R"});
    Matrix expected = Matrix::identity(2);
    expected *= Complex(Scalar::exact(1, 2));
    CHECK(reduced.equals(expected, 0.0));
  }

  SUBCASE("product state: tracing sigma leaves rho * tr(sigma)") {
    const Matrix rho = random_psd(2);
    const Matrix sigma = random_psd(2);
    const Matrix reduced = partial_trace(kron(rho, sigma), layout, {"R"});
    Matrix expected = rho;
    expected *= sigma.trace();
    CHECK(reduced.equals(expected, 1e-12));
  }
}

TEST_CASE("partial trace linearity and cyclicity on random matrices") {
  RegisterLayout layout({{"X", 2, 0}, {"Y", 3, 1}});
  for (int trial = 0; trial < 25; ++trial) {
    const Matrix rho1 = random_matrix(6);
    const Matrix rho2 = random_matrix(6);
    const Complex l1 = Complex::floating(0.7), l2 = Complex::floating(-1.3);

    // Linearity.
    Matrix lhs = partial_trace(l1 * rho1 + l2 * rho2, layout, {"Y"});
    Matrix rhs =
        l1 * partial_trace(rho1, layout, {"Y"}) +
        l2 * partial_trace(rho2, layout, {"Y"});
    CHECK(lhs.equals(rhs, 1e-12));

    // Partial cyclicity: Tr_Y[(I (x) M) rho] = Tr_Y[rho (I (x) M)].
    const Matrix m = random_matrix(3);
    const Matrix im = kron(Matrix::identity(2), m);
    CHECK(partial_trace(im * rho1, layout, {"Y"})
              .equals(partial_trace(rho1 * im, layout, {"Y"}), 1e-12));
  }
}

TEST_CASE("embed places operators on non-contiguous registers") {
  RegisterLayout layout({{"r0", 2, 0}, {"r1", 2, 1}, {"r2", 2, 2}});
  const Matrix op = random_matrix(4);
  const Matrix embedded = embed(op, layout, {"r0", "r2"});

  // Compare against a manually permuted Kronecker assembly.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int c2 = 0; c2 < 2; ++c2) {
              const std::size_t row = layout.index({a, b, c});
              const std::size_t col = layout.index({a2, b2, c2});
              const Complex expected =
                  (b == b2) ? op.at(a * 2 + c, a2 * 2 + c2)
                            : Complex::exact(0);
              CHECK(embedded.at(row, col).equals(expected, 0.0));
            }
}

TEST_CASE("exact PSD decisions") {
  const Matrix phi = phi_plus().outer();
  CHECK(phi.is_psd());
  CHECK_FALSE(partial_transpose(phi, 2, 2).is_psd());
  CHECK(Matrix::zero(3, 3).is_psd());

  Matrix neg = Matrix::identity(2);
  neg.at(1, 1) = Complex::exact(-1);
  CHECK_FALSE(neg.is_psd());

  // Zero diagonal with nonzero off-diagonal is not PSD.
  Matrix off(2, 2);
  off.at(0, 1) = Complex::exact(1);
  off.at(1, 0) = Complex::exact(1);
  CHECK_FALSE(off.is_psd());
}

TEST_CASE("jacobi eigendecomposition reconstructs random Hermitians") {
  for (std::size_t n : {2, 3, 5, 8}) {
    const Matrix h = random_hermitian(n);
    const EigenSystem es = eigh(h);
    REQUIRE(es.values.size() == n);

    Matrix rebuilt(n, n);
    rebuilt = rebuilt.to_float();
    for (std::size_t i = 0; i < n; ++i)
      rebuilt += Complex::floating(es.values[i]) * es.vectors[i].outer();
    CHECK(rebuilt.equals(h, 1e-9));

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Complex g = es.vectors[i].dot(es.vectors[j]);
        CHECK(g.equals(i == j ? Complex::exact(1) : Complex::exact(0), 1e-9));
      }
    for (std::size_t i = 0; i + 1 < n; ++i)
      CHECK(es.values[i] >= es.values[i + 1]);
  }
}

TEST_CASE("sqrt_psd squares back") {
  const Matrix p = random_psd(4);
  const Matrix s = sqrt_psd(p);
  CHECK((s * s).equals(p, 1e-8));
}

TEST_CASE("schmidt decomposition") {
  SUBCASE("maximally entangled pair") {
    const SchmidtDecomposition sd = schmidt_decompose(phi_plus(), 2, 2);
    REQUIRE(sd.coefficients.size() == 2);
    CHECK(sd.coefficients[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(sd.coefficients[1] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(schmidt_reconstruct(sd).equals(phi_plus(), 1e-9));
  }
  SUBCASE("product state has one coefficient") {
    Vector prod(4);
    prod[0] = Complex(Scalar::exact(Rat(0), Rat(1, 2)));
    prod[1] = Complex(Scalar::exact(Rat(0), Rat(1, 2)));
    const SchmidtDecomposition sd = schmidt_decompose(prod, 2, 2);
    REQUIRE(sd.coefficients.size() == 1);
    CHECK(sd.coefficients[0] == doctest::Approx(1.0));
  }
  SUBCASE("random 4x4 pure state round-trips") {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      Vector psi(16);
      for (std::size_t i = 0; i < 16; ++i)
        psi[i] = Complex::floating(dist(rng()), dist(rng()));
      psi = psi.normalized();
      const SchmidtDecomposition sd = schmidt_decompose(psi, 4, 4);
      CHECK(schmidt_reconstruct(sd).equals(psi, 1e-9));
      for (std::size_t i = 0; i + 1 < sd.coefficients.size(); ++i)
        CHECK(sd.coefficients[i] >= sd.coefficients[i + 1]);
    }
  }
  SUBCASE("non-unit input is rejected") {
    Vector bad(4);
    bad[0] = Complex::exact(2);
    CHECK_THROWS(schmidt_decompose(bad, 2, 2));
  }
}

TEST_CASE("isometric column completion") {
  SUBCASE("identity columns stay put") {
    Matrix cols(3, 2);
    cols.at(0, 0) = Complex::exact(1);
    cols.at(1, 1) = Complex::exact(1);
    const Matrix u = complete_isometric_columns(cols);
    CHECK(u.is_unitary());
    CHECK(u.at(0, 0).equals(Complex::exact(1), 1e-12));
    CHECK(u.at(1, 1).equals(Complex::exact(1), 1e-12));
  }
  SUBCASE("single unit column in C^2") {
    Matrix cols(2, 1);
    cols.at(0, 0) = Complex::floating(0.6);
    cols.at(1, 0) = Complex::floating(0.8);
    const Matrix u = complete_isometric_columns(cols);
    CHECK(u.is_unitary());
    CHECK(u.at(0, 0).equals(Complex::floating(0.6), 1e-12));
    CHECK(u.at(1, 0).equals(Complex::floating(0.8), 1e-12));
  }
  SUBCASE("random isometric input") {
    for (int trial = 0; trial < 5; ++trial) {
      // Orthonormalize three random columns in C^6.
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      std::vector<Vector> basis;
      while (basis.size() < 3) {
        Vector v(6);
        for (std::size_t i = 0; i < 6; ++i)
          v[i] = Complex::floating(dist(rng()), dist(rng()));
        for (const Vector &b : basis) v -= b.dot(v) * b;
        if (v.norm() > 1e-3) basis.push_back(v.normalized());
      }
      Matrix cols(6, 3);
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t r = 0; r < 6; ++r) cols.at(r, c) = basis[c][r];
      const Matrix u = complete_isometric_columns(cols);
      CHECK(u.is_unitary());
      for (std::size_t c = 0; c < 3; ++c)
        CHECK(u.column(c).equals(basis[c], 1e-9));
    }
  }
  SUBCASE("non-orthonormal input is rejected") {
    Matrix cols(2, 2);
    cols.at(0, 0) = Complex::exact(1);
    cols.at(0, 1) = Complex::exact(1);
    CHECK_THROWS(complete_isometric_columns(cols));
  }
}
