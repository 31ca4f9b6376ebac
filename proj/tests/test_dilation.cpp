#include <doctest.h>

#include <cmath>
#include <random>

#include "nonloc/dilation.hpp"
#include "nonloc/quantum.hpp"

using namespace nonloc;

namespace {

std::mt19937 &rng() {
  static std::mt19937 gen(555);
  return gen;
}

Vector random_state(std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = Complex::floating(dist(rng()), dist(rng()));
  return v.normalized();
}

std::vector<Matrix> trine_povm() {
  std::vector<Matrix> out;
  for (int i = 0; i < 3; ++i) {
    const double theta = 2.0 * M_PI * i / 3.0;
    Vector phi(2);
    phi[0] = Complex::floating(std::cos(theta));
    phi[1] = Complex::floating(std::sin(theta));
    Matrix e = phi.outer();
    e *= Complex::floating(2.0 / 3.0);
    out.push_back(e);
  }
  return out;
}

Matrix inv_sqrt_psd(const Matrix &m) {
  const EigenSystem es = eigh(m);
  Matrix out(m.rows(), m.cols());
  out = out.to_float();
  for (std::size_t i = 0; i < es.values.size(); ++i) {
    REQUIRE(es.values[i] > 1e-9);
    out += Complex::floating(1.0 / std::sqrt(es.values[i])) *
           es.vectors[i].outer();
  }
  return out;
}

std::vector<Matrix> random_povm(std::size_t dim, std::size_t outcomes) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Matrix> raw;
  Matrix total(dim, dim);
  for (std::size_t k = 0; k < outcomes; ++k) {
    Matrix g(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        g.at(r, c) = Complex::floating(dist(rng()), dist(rng()));
    Matrix e = g * g.dagger();
    total += e;
    raw.push_back(std::move(e));
  }
  const Matrix w = inv_sqrt_psd(total);
  std::vector<Matrix> out;
  for (const Matrix &e : raw) out.push_back(w * e * w);
  return out;
}

double born(const Matrix &effect, const Vector &state) {
  return state.dot(effect.apply(state)).re.to_double();
}

}  // namespace

TEST_CASE("rank-one decomposition") {
  SUBCASE("qubit PVM gives the two basis vectors") {
    const Rank1Decomposition d = rank1_decompose(pauli_z_projectors());
    REQUIRE(d.vectors.size() == 2);
    REQUIRE(d.vectors[0].size() == 1);
    CHECK(d.vectors[0][0].outer().equals(pauli_z_projectors()[0], 1e-9));
    CHECK(d.vectors[1][0].outer().equals(pauli_z_projectors()[1], 1e-9));
  }
  SUBCASE("trine vectors have squared norm 2/3") {
    const Rank1Decomposition d = rank1_decompose(trine_povm());
    for (const auto &vs : d.vectors) {
      REQUIRE(vs.size() == 1);
      CHECK(vs[0].norm2().to_double() == doctest::Approx(2.0 / 3));
    }
  }
  SUBCASE("rank-2 element splits into two vectors and reconstructs") {
    Matrix e0(3, 3), e1(3, 3);
    e0.at(0, 0) = Complex::floating(0.5);
    e0.at(1, 1) = Complex::floating(0.5);
    e0.at(2, 2) = Complex::floating(1.0);
    e1.at(0, 0) = Complex::floating(0.5);
    e1.at(1, 1) = Complex::floating(0.5);
    const Rank1Decomposition d = rank1_decompose({e0, e1});
    CHECK(d.vectors[0].size() == 3);
    CHECK(d.vectors[1].size() == 3);  // rank 2 padded to L = 3
    for (int k = 0; k < 2; ++k) {
      Matrix sum(3, 3);
      for (const Vector &v : d.vectors[k]) sum += v.outer();
      CHECK(sum.equals(k == 0 ? e0 : e1, 1e-9));
    }
  }
  SUBCASE("explicit vector count pads by splitting") {
    const Rank1Decomposition d = rank1_decompose(pauli_z_projectors(), 2);
    REQUIRE(d.vectors[0].size() == 2);
    Matrix sum(2, 2);
    for (const Vector &v : d.vectors[0]) sum += v.outer();
    CHECK(sum.equals(pauli_z_projectors()[0], 1e-9));
  }
  SUBCASE("zero elements are rejected") {
    CHECK_THROWS(rank1_decompose({Matrix::identity(2), Matrix::zero(2, 2)}));
  }
}

TEST_CASE("povm dilation") {
  SUBCASE("projective input returns the trivial dilation") {
    const DilationResult d = dilate_povm(pauli_z_projectors());
    CHECK(d.trivial);
    CHECK(d.ancilla_dim == 1);
    CHECK(d.pvm[0].equals(pauli_z_projectors()[0], 0.0));
  }

  SUBCASE("trine dilation preserves Born statistics") {
    const DilationResult d = dilate_povm(trine_povm());
    CHECK_FALSE(d.trivial);
    CHECK(d.ancilla_dim == 2);  // K*L - d + 1 = 3 - 2 + 1

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Vector psi = random_state(2);
      const Vector lifted = d.isometry.apply(psi);
      for (int k = 0; k < 3; ++k) {
        const double p_direct = born(trine_povm()[k], psi);
        const double p_dilated = born(d.pvm[k], lifted);
        worst = std::max(worst, std::abs(p_direct - p_dilated));
      }
    }
    CHECK(worst <= 1e-9);
  }

  SUBCASE("random POVMs satisfy every dilation invariant") {
    // Construction itself re-verifies projectivity, orthogonality,
    // completeness, V*V, VV*, the pullback and V* P_perp V = 0, throwing on
    // any breach; here we also spot-check statistics.
    for (int trial = 0; trial < 4; ++trial) {
      const std::size_t dim = 2 + trial % 3;
      const std::size_t outcomes = 2 + trial % 4;
      const std::vector<Matrix> povm = random_povm(dim, outcomes);
      const DilationResult d = dilate_povm(povm);
      for (int s = 0; s < 20; ++s) {
        const Vector psi = random_state(dim);
        const Vector lifted = d.isometry.apply(psi);
        for (std::size_t k = 0; k < outcomes; ++k)
          CHECK(born(povm[k], psi) ==
                doctest::Approx(born(d.pvm[k], lifted)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("two-setting dilation") {
  SUBCASE("projective pair passes through") {
    const TwoSettingDilation d =
        dilate_two_settings(pauli_z_projectors(), pauli_x_projectors());
    CHECK(d.g0_dim == 1);
    CHECK(d.g1_dim == 1);
    for (int trial = 0; trial < 10; ++trial) {
      const Vector psi = random_state(2);
      const Vector lifted = d.isometry.apply(psi);
      for (int a = 0; a < 2; ++a) {
        CHECK(born(pauli_z_projectors()[a], psi) ==
              doctest::Approx(born(d.pvm0[a], lifted)).epsilon(1e-9));
        CHECK(born(pauli_x_projectors()[a], psi) ==
              doctest::Approx(born(d.pvm1[a], lifted)).epsilon(1e-9));
      }
    }
  }

  SUBCASE("trine against a qubit PVM") {
    const TwoSettingDilation d =
        dilate_two_settings(trine_povm(), pauli_z_projectors());
    // The z-PVM is padded with a zero third outcome.
    REQUIRE(d.pvm1.size() == 3);
    for (int trial = 0; trial < 25; ++trial) {
      const Vector psi = random_state(2);
      const Vector lifted = d.isometry.apply(psi);
      for (int k = 0; k < 3; ++k)
        CHECK(born(trine_povm()[k], psi) ==
              doctest::Approx(born(d.pvm0[k], lifted)).epsilon(1e-9));
      for (int a = 0; a < 2; ++a)
        CHECK(born(pauli_z_projectors()[a], psi) ==
              doctest::Approx(born(d.pvm1[a], lifted)).epsilon(1e-9));
      CHECK(born(d.pvm1[2], lifted) == doctest::Approx(0.0).epsilon(1e-9));
    }
  }

  SUBCASE("noisy Alice measurements dilate into an enlarged product strategy") {
    // Mix the swap strategy's Alice projectors with white noise, dilate the
    // two settings, and attach the ancilla as a fresh Alice register in
    // |0>; the tripartite behavior must be unchanged.
    QuantumStrategy noisy = bell_swap_strategy();
    const Complex w = Complex::floating(0.8);
    const Complex n = Complex::floating(0.1);
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        noisy.povms[0][x][a] = w * noisy.povms[0][x][a] +
                               n * Matrix::identity(2);
    const Behavior reference = behavior_from_strategy(noisy);

    const TwoSettingDilation d =
        dilate_two_settings(noisy.povms[0][0], noisy.povms[0][1]);
    const std::size_t anc = d.g0_dim * d.g1_dim;
    REQUIRE(anc > 1);

    QuantumStrategy enlarged;
    enlarged.layout = RegisterLayout({{"A_b", 2, 0},
                                      {"A_anc", static_cast<int>(anc), 0},
                                      {"B_a", 2, 1},
                                      {"B_c", 2, 1},
                                      {"C_b", 2, 2}});
    enlarged.states = noisy.states;
    Matrix anc_zero(anc, 1);
    anc_zero.at(0, 0) = Complex::exact(1);
    enlarged.states.push_back({{"A_anc"}, anc_zero});
    enlarged.povms = noisy.povms;
    enlarged.povms[0] = {d.pvm0, d.pvm1};

    const Behavior dilated = behavior_from_strategy(enlarged);
    CHECK(dilated.equals(reference, 1e-9));
  }
}
