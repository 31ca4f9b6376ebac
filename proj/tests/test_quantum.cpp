#include <doctest.h>

#include <random>

#include "nonloc/games.hpp"
#include "nonloc/linalg.hpp"
#include "nonloc/quantum.hpp"

using namespace nonloc;

namespace {

const Scalar kTwoSqrt2 = Scalar::exact(2) * Scalar::sqrt2();

std::mt19937 &rng() {
  static std::mt19937 gen(4242);
  return gen;
}

Matrix random_unitary(std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Vector> basis;
  while (basis.size() < n) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = Complex::floating(dist(rng()), dist(rng()));
    for (const Vector &b : basis) v -= b.dot(v) * b;
    if (v.norm() > 1e-3) basis.push_back(v.normalized());
  }
  Matrix u(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) u.at(r, c) = basis[c][r];
  return u;
}

// Random POVM with two elements: {E, I - E} from a random contraction.
std::vector<Matrix> random_binary_povm(std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      g.at(r, c) = Complex::floating(dist(rng()), dist(rng()));
  Matrix e = g * g.dagger();
  const EigenSystem es = eigh(e);
  const double top = std::max(es.values.front(), 1e-9);
  e *= Complex::floating(0.9 / top);
  return {e, Matrix::identity(n).to_float() - e};
}

Matrix random_density(std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      g.at(r, c) = Complex::floating(dist(rng()), dist(rng()));
  Matrix rho = g * g.dagger();
  const Complex tr = rho.trace();
  rho *= Complex::floating(1.0 / tr.re.to_double());
  return rho;
}

}  // namespace

TEST_CASE("bell swap strategy reproduces the closed form exactly") {
  const QuantumStrategy s = bell_swap_strategy();
  const Behavior b = behavior_from_strategy(s);
  CHECK(b.backend() == Backend::exact);
  CHECK(b.equals(swap_witness_quantum_table(), 0.0));
  CHECK(validate(b).passed);
  CHECK(no_signaling_check(b).passed);

  const SwapWitnessResult r = swap_witness_check(b);
  CHECK(r.passed);
  CHECK(r.event_probability.equals(Scalar::exact(1, 4)));
  CHECK(r.conditional_chsh.equals(kTwoSqrt2));
}

TEST_CASE("identity POVMs give a single sure outcome") {
  QuantumStrategy s;
  s.layout = RegisterLayout({{"A", 2, 0}, {"B", 2, 1}});
  s.states.push_back({{"A", "B"}, [] {
                        Matrix m(4, 1);
                        m.at(0, 0) = Complex::exact(1);
                        return m;
                      }()});
  s.povms.push_back({{Matrix::identity(2)}});
  s.povms.push_back({{Matrix::identity(2)}});
  const Behavior b = behavior_from_strategy(s);
  CHECK(b.at({0, 0}, {0, 0}).equals(Scalar::exact(1)));
}

TEST_CASE("povm incompleteness is rejected") {
  QuantumStrategy s = bell_swap_strategy();
  s.povms[0][0][0] = Matrix::zero(2, 2);
  CHECK_THROWS(behavior_from_strategy(s));
}

TEST_CASE("ghz system satisfies the swap-witness conditions at 1/2") {
  const MeasuredSystem sys = ghz_swap_system();
  const Behavior b = behavior_from_system(sys);
  CHECK(b.backend() == Backend::exact);
  CHECK(validate(b).passed);
  CHECK(no_signaling_check(b).passed);

  const SwapWitnessResult r = swap_witness_check(b);
  CHECK(r.passed);
  CHECK(r.event_probability.equals(Scalar::exact(1, 2)));
  CHECK(r.conditional_chsh.equals(kTwoSqrt2));
  CHECK(r.alignment_probability.equals(Scalar::exact(1)));

  // Bob's marginal is uniform for both settings.
  const Behavior bob = marginalize(b, {1});
  for (int y = 0; y < 2; ++y)
    for (int out = 0; out < 2; ++out)
      CHECK(bob.at({out}, {y}).equals(Scalar::exact(1, 2)));
}

TEST_CASE("pair game quantum strategy reaches (2+sqrt2)/4 on every subgame") {
  const QuantumStrategy s = pair_game_quantum_strategy();
  const Behavior b = behavior_from_strategy(s);
  CHECK(b.backend() == Backend::exact);
  CHECK(validate(b).passed);
  CHECK(no_signaling_check(b).passed);

  const Scalar target = Scalar::exact(Rat(1, 2), Rat(1, 4));  // (2+sqrt2)/4
  const PairGameScores scores = pair_game_value(b);
  for (int y = 0; y < 2; ++y) {
    CHECK(scores.ab_subgame[y].equals(target));
    CHECK(scores.bc_subgame[y].equals(target));
  }
  CHECK(scores.ac_subgame.equals(target));

  // Conditioned on Bob's Y=2 outcome, Alice-Charlie see the four CHSH
  // variants.
  for (int b_outcome = 0; b_outcome < 4; ++b_outcome) {
    const ConditionalBehavior cond = condition(b, 1, 2, b_outcome);
    CHECK(cond.event_probability.equals(Scalar::exact(1, 4)));
    const int b_a = b_outcome >> 1, b_c = b_outcome & 1;
    CHECK(cond.behavior.equals(chsh_variant_table(b_a, b_c)));
  }
}

TEST_CASE("post-measurement states") {
  const QuantumStrategy s = bell_swap_strategy();

  SUBCASE("Bell outcome Phi+ leaves Alice-Charlie in Phi+ at probability 1/4") {
    const auto [state, prob] =
        post_measurement_state(s, 1, s.povms[1][1][0]);
    CHECK(prob.equals(Scalar::exact(1, 4)));
    CHECK(state.equals(phi_plus().outer(), 0.0));
  }
  SUBCASE("identity element leaves the reduced state untouched") {
    const auto [state, prob] =
        post_measurement_state(s, 1, Matrix::identity(4));
    CHECK(prob.equals(Scalar::exact(1)));
    RegisterLayout reduced({{"A_b", 2, 0}, {"C_b", 2, 2}});
    const Matrix expected =
        partial_trace(assemble_density(s), s.layout, {"B_a", "B_c"});
    CHECK(state.equals(expected, 0.0));
    // Both halves of both pairs are maximally mixed.
    Matrix quarter = Matrix::identity(4);
    quarter *= Complex(Scalar::exact(1, 4));
    CHECK(state.equals(quarter, 0.0));
  }
  SUBCASE("zero-probability element is an error") {
    CHECK_THROWS(post_measurement_state(s, 1, Matrix::zero(4, 4)));
  }
}

TEST_CASE("separable element on a product state yields a product mixture") {
  // Separable Bob element on the two-Bell-pair state: the reduced
  // Alice-Charlie state must equal sum_i c_i rho^A_i (x) rho^C_i with every
  // factor rank one, and carry no entanglement across the A|C cut.
  const QuantumStrategy s = bell_swap_strategy();
  const auto z = pauli_z_projectors();
  const auto x = pauli_x_projectors();

  const std::vector<SeparableTerm> terms = {
      {Scalar::exact(1, 2), z[0], x[0]},
      {Scalar::exact(1, 3), z[1], x[1]},
      {Scalar::exact(1, 5), x[0], z[0]},
  };
  SeparableElement element{terms};
  const Matrix e0 = assemble(element, 2, 2);

  const auto [state, prob] = post_measurement_state(s, 1, e0);
  CHECK(prob.sign() > 0);

  // Contraction oracle per term: rho^A = Tr_{B_a}[(I (x) L)|Phi+><Phi+|],
  // rho^C = Tr_{B_c}[(R (x) I)|Phi+><Phi+|].
  RegisterLayout pair_ab({{"A_b", 2, 0}, {"B_a", 2, 1}});
  RegisterLayout pair_bc({{"B_c", 2, 1}, {"C_b", 2, 2}});
  const Matrix pair_state = phi_plus().outer();

  Matrix oracle(4, 4);
  Scalar total = Scalar::exact(0);
  for (const SeparableTerm &t : terms) {
    const Matrix rho_a = partial_trace(
        embed(t.left, pair_ab, {"B_a"}) * pair_state, pair_ab, {"B_a"});
    const Matrix rho_c = partial_trace(
        embed(t.right, pair_bc, {"B_c"}) * pair_state, pair_bc, {"B_c"});
    // Rank one: tr(rho^2) = tr(rho)^2 for each factor.
    for (const Matrix *f : {&rho_a, &rho_c}) {
      const Scalar tr = f->trace().re;
      CHECK(((*f) * (*f)).trace().re.equals(tr * tr));
    }
    oracle += Complex(t.coefficient) * kron(rho_a, rho_c);
    total += t.coefficient * rho_a.trace().re * rho_c.trace().re;
  }
  CHECK(prob.equals(total));
  oracle *= Complex(Scalar::exact(1) / prob);
  CHECK(state.equals(oracle, 0.0));

  // No entanglement is created across the A|C cut (PPT, exact at 2x2).
  CHECK_FALSE(is_entangled_ppt(state, 2, 2));
}

TEST_CASE("ppt flag") {
  CHECK(is_entangled_ppt(phi_plus().outer(), 2, 2));
  const auto z = pauli_z_projectors();
  CHECK_FALSE(is_entangled_ppt(kron(z[0], z[1]), 2, 2));
  // Bob's Y=1 Bell element in the swap strategy is flagged entangled.
  const QuantumStrategy s = bell_swap_strategy();
  CHECK(is_entangled_ppt(s.povms[1][1][0], 2, 2));
  CHECK_FALSE(is_entangled_ppt(Matrix::zero(4, 4), 2, 2));
}

TEST_CASE("cascade to separable") {
  const auto z = pauli_z_projectors();
  const auto x = pauli_x_projectors();
  const auto d = rotated_zx_projectors(1);

  SUBCASE("projective inputs give four exact product projectors") {
    const SeparableMeasurement m = cascade_to_separable(z, x, d);
    CHECK(validate_separable(m).passed);
    REQUIRE(m.elements.size() == 4);
    for (const SeparableElement &e : m.elements)
      CHECK(e.terms.size() == 1);
    CHECK(assemble(m.elements[0], 2, 2).equals(kron(z[0], x[0]), 0.0));
    CHECK(assemble(m.elements[2], 2, 2).equals(kron(z[1], d[0]), 0.0));
  }

  SUBCASE("binned elements remain separable") {
    const SeparableMeasurement m = cascade_to_separable(z, x, d);
    SeparableElement binned;
    for (const SeparableTerm &t : m.elements[2].terms)
      binned.terms.push_back(t);
    for (const SeparableTerm &t : m.elements[3].terms)
      binned.terms.push_back(t);
    CHECK(assemble(binned, 2, 2).equals(kron(z[1], Matrix::identity(2)), 0.0));
  }

  SUBCASE("cascaded simulation equals the separable POVM on random states") {
    for (int trial = 0; trial < 5; ++trial) {
      const auto p = random_binary_povm(2);
      const auto sps = random_binary_povm(2);
      const auto t = random_binary_povm(2);
      const SeparableMeasurement m = cascade_to_separable(p, sps, t);
      const auto elements = assemble(m);

      const Matrix rho_l = random_density(2);
      const Matrix rho_r = random_density(2);
      const Matrix rho = kron(rho_l, rho_r);

      // Sequential oracle with the Lueders rule on the left register.
      for (int first = 0; first < 2; ++first) {
        const Matrix sq = sqrt_psd(p[first]);
        const Matrix k = kron(sq, Matrix::identity(2));
        const Matrix post = k * rho * k.dagger();
        const auto &second_pair = (first == 0) ? sps : t;
        for (int second = 0; second < 2; ++second) {
          const Matrix meas = kron(Matrix::identity(2), second_pair[second]);
          const double sequential = (meas * post).trace().re.to_double();
          const double direct =
              (elements[first * 2 + second] * rho).trace().re.to_double();
          CHECK(sequential == doctest::Approx(direct).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("register regrouping") {
  SUBCASE("two Bell pairs with an entangled Alice measurement") {
    // Alice and Bob share two Bell pairs; Alice performs a Bell-state
    // measurement across her two halves.
    QuantumStrategy s;
    s.layout = RegisterLayout(
        {{"A1", 2, 0}, {"A2", 2, 0}, {"B1", 2, 1}, {"B2", 2, 1}});
    s.states.push_back({{"A1", "B1"}, [] {
                          Matrix m(4, 1);
                          for (int i = 0; i < 4; ++i)
                            m.at(i, 0) = phi_plus()[i];
                          return m;
                        }()});
    s.states.push_back({{"A2", "B2"}, [] {
                          Matrix m(4, 1);
                          for (int i = 0; i < 4; ++i)
                            m.at(i, 0) = phi_plus()[i];
                          return m;
                        }()});
    s.povms.push_back({bell_projectors()});
    const auto z = pauli_z_projectors();
    s.povms.push_back({{kron(z[0], z[0]), kron(z[0], z[1]),
                        kron(z[1], z[0]), kron(z[1], z[1])}});

    const Behavior original = behavior_from_strategy(s);
    const QuantumStrategy fused = regroup_registers(s);
    CHECK(fused.layout.count() == 2);
    CHECK(fused.layout.reg(0).dim == 4);
    CHECK(fused.states.size() == 1);
    const Behavior after = behavior_from_strategy(fused);
    CHECK(after.equals(original, 0.0));
  }

  SUBCASE("single-pair strategy is unchanged in behavior") {
    QuantumStrategy s;
    s.layout = RegisterLayout({{"A", 2, 0}, {"B", 2, 1}});
    s.states.push_back({{"A", "B"}, [] {
                          Matrix m(4, 1);
                          for (int i = 0; i < 4; ++i)
                            m.at(i, 0) = phi_plus()[i];
                          return m;
                        }()});
    s.povms.push_back({pauli_z_projectors(), pauli_x_projectors()});
    s.povms.push_back({rotated_zx_projectors(1), rotated_zx_projectors(-1)});
    const QuantumStrategy fused = regroup_registers(s);
    CHECK(behavior_from_strategy(fused)
              .equals(behavior_from_strategy(s), 0.0));
  }

  SUBCASE("random two-pair strategies preserve the behavior") {
    for (int trial = 0; trial < 3; ++trial) {
      QuantumStrategy s;
      s.layout = RegisterLayout(
          {{"A1", 2, 0}, {"A2", 2, 0}, {"B1", 2, 1}, {"B2", 2, 1}});
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (const auto &pair :
           {std::pair{"A1", "B1"}, std::pair{"A2", "B2"}}) {
        Vector v(4);
        for (int i = 0; i < 4; ++i)
          v[i] = Complex::floating(dist(rng()), dist(rng()));
        v = v.normalized();
        Matrix m(4, 1);
        for (int i = 0; i < 4; ++i) m.at(i, 0) = v[i];
        s.states.push_back({{pair.first, pair.second}, m});
      }
      s.povms.push_back({random_binary_povm(4)});
      s.povms.push_back({random_binary_povm(4)});
      const QuantumStrategy fused = regroup_registers(s);
      CHECK(behavior_from_strategy(fused)
                .equals(behavior_from_strategy(s), 1e-10));
    }
  }
}

TEST_CASE("behavior is invariant under local unitary conjugation") {
  for (int trial = 0; trial < 3; ++trial) {
    QuantumStrategy s = bell_swap_strategy();
    const Matrix ua = random_unitary(2);
    const Matrix ub = kron(random_unitary(2), random_unitary(2));
    const Matrix uc = random_unitary(2);

    QuantumStrategy rotated = s;
    // States: group (A_b,B_a) gets U_A (x) U_B1, group (B_c,C_b) gets
    // U_B2 (x) U_C, consistent with the per-party POVM conjugations.
    const Matrix ub1 = random_unitary(2), ub2 = random_unitary(2);
    const Matrix full_ub = kron(ub1, ub2);
    rotated.states[0].state =
        kron(ua, ub1) * s.states[0].state;
    rotated.states[1].state =
        kron(ub2, uc) * s.states[1].state;
    auto conj_povm = [](const Matrix &u, std::vector<Matrix> povm) {
      for (Matrix &e : povm) e = u * e * u.dagger();
      return povm;
    };
    rotated.povms[0] = {conj_povm(ua, s.povms[0][0]),
                        conj_povm(ua, s.povms[0][1])};
    rotated.povms[1] = {conj_povm(full_ub, s.povms[1][0]),
                        conj_povm(full_ub, s.povms[1][1])};
    rotated.povms[2] = {conj_povm(uc, s.povms[2][0]),
                        conj_povm(uc, s.povms[2][1])};

    CHECK(behavior_from_strategy(rotated)
              .equals(behavior_from_strategy(s), 1e-12));
  }
}

TEST_CASE("alignment tradeoff probe") {
  const std::vector<TradeoffRow> rows =
      alignment_tradeoff_probe(tradeoff_probe_family());
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].label == "uninformative-separable-bob");
  CHECK(rows[0].event_probability.equals(Scalar::exact(1, 2)));
  REQUIRE(rows[0].conditional_chsh.has_value());
  CHECK(rows[0].conditional_chsh->equals(kTwoSqrt2));
  CHECK(rows[0].chsh_maximal);
  CHECK(rows[0].bound_satisfied);
  CHECK(rows[0].misalignment_probability.equals(Scalar::exact(1, 2)));

  CHECK(rows[1].label == "never-zero-bob");
  CHECK(rows[1].event_probability.equals(Scalar::exact(0)));
  CHECK_FALSE(rows[1].conditional_chsh.has_value());
  CHECK(rows[1].bound_satisfied);

  CHECK(rows[2].label == "two-singlet-selector");
  CHECK(rows[2].event_probability.equals(Scalar::exact(1, 2)));
  REQUIRE(rows[2].conditional_chsh.has_value());
  CHECK(rows[2].conditional_chsh->equals(kTwoSqrt2));
  CHECK(rows[2].chsh_maximal);
  CHECK(rows[2].bound_satisfied);
  CHECK(rows[2].misalignment_probability.equals(Scalar::exact(1, 2)));

  CHECK(rows[3].label == "product-collapse-bob");
  CHECK(rows[3].event_probability.equals(Scalar::exact(1, 4)));
  REQUIRE(rows[3].conditional_chsh.has_value());
  CHECK(rows[3].conditional_chsh->equals(Scalar::sqrt2()));
  CHECK_FALSE(rows[3].chsh_maximal);
  CHECK(rows[3].alignment_probability.equals(Scalar::exact(1)));
}
