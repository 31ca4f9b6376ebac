#include <doctest.h>

#include <random>

#include "nonloc/behavior.hpp"
#include "nonloc/games.hpp"

using namespace nonloc;

namespace {

// Random exact behavior: nonnegative random integers normalized per setting.
Behavior random_behavior(const Scenario &sc, std::mt19937 &rng) {
  Behavior out(sc, Backend::exact);
  std::uniform_int_distribution<int> dist(0, 9);
  for (TupleIterator st(sc.settings); !st.done(); st.next()) {
    std::vector<Rat> raw;
    Rat total(0);
    for (std::size_t i = 0; i < sc.outcome_tuple_count(); ++i) {
      raw.emplace_back(dist(rng) + 1);
      total += raw.back();
    }
    std::size_t i = 0;
    for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next())
      out.set(*ot, *st, Scalar::exact(Rat(raw[i++] / total)));
  }
  return out;
}

}  // namespace

TEST_CASE("validate accepts the uniform table and the swap-witness table") {
  CHECK(validate(uniform_behavior(Scenario::uniform(3, 2, 2))).passed);
  CHECK(validate(swap_witness_quantum_table()).passed);
  CHECK(validate(swap_witness_ns_table()).passed);
}

TEST_CASE("validate flags a negative entry") {
  Behavior bad = uniform_behavior(Scenario::uniform(3, 2, 2));
  bad.set({0, 0, 0}, {0, 0, 0}, Scalar::exact(-1, 8));
  bad.set({1, 0, 0}, {0, 0, 0}, Scalar::exact(3, 8));
  const ValidationReport report = validate(bad);
  CHECK_FALSE(report.passed);
  CHECK(report.max_negativity == doctest::Approx(0.125));
  CHECK(report.max_normalization_residual == 0.0);
}

TEST_CASE("validate flags a normalization failure") {
  Behavior bad = uniform_behavior(Scenario::uniform(2, 2, 2));
  bad.set({0, 0}, {1, 1}, Scalar::exact(1, 2));
  CHECK_FALSE(validate(bad).passed);
}

TEST_CASE("no-signaling check on closed forms and products") {
  CHECK(no_signaling_check(swap_witness_quantum_table()).passed);
  CHECK(no_signaling_check(swap_witness_ns_table()).passed);
  CHECK(no_signaling_check(uniform_behavior(Scenario::uniform(3, 1, 2)))
            .passed);

  // P(B=X)=1 with A, C uniform: Bob's marginal tracks Alice's setting.
  Behavior signaling(Scenario::uniform(3, 2, 2), Backend::exact);
  for (TupleIterator st(signaling.scenario().settings); !st.done(); st.next())
    for (TupleIterator ot(signaling.scenario().outcomes); !ot.done();
         ot.next())
      if ((*ot)[1] == (*st)[0])
        signaling.set(*ot, *st, Scalar::exact(1, 4));
  CHECK(validate(signaling).passed);
  const NoSignalingReport report = no_signaling_check(signaling);
  CHECK_FALSE(report.passed);
  CHECK(report.worst_residual == doctest::Approx(1.0));
}

TEST_CASE("marginalize") {
  SUBCASE("swap-witness table has a uniform Alice-Charlie marginal") {
    const Behavior marginal = marginalize(swap_witness_quantum_table(), {0, 2});
    for (TupleIterator st(marginal.scenario().settings); !st.done(); st.next())
      for (TupleIterator ot(marginal.scenario().outcomes); !ot.done();
           ot.next())
        CHECK(marginal.at(*ot, *st).equals(Scalar::exact(1, 4)));
  }
  SUBCASE("uniform marginal stays uniform") {
    const Behavior marginal =
        marginalize(uniform_behavior(Scenario::uniform(3, 2, 2)), {0, 1});
    CHECK(marginal.equals(uniform_behavior(Scenario::uniform(2, 2, 2))));
  }
  SUBCASE("signaling input is rejected") {
    Behavior signaling(Scenario::uniform(2, 2, 2), Backend::exact);
    for (TupleIterator st(signaling.scenario().settings); !st.done();
         st.next())
      signaling.set({(*st)[1], 0}, *st, Scalar::exact(1));
    CHECK_THROWS(marginalize(signaling, {0}));
  }
}

TEST_CASE("condition") {
  SUBCASE("swap-witness quantum table") {
    const ConditionalBehavior cond =
        condition(swap_witness_quantum_table(), 1, 1, 0);
    CHECK(cond.event_probability.equals(Scalar::exact(1, 4)));
    CHECK(cond.behavior.equals(chsh_quantum_table()));
  }
  SUBCASE("swap-witness no-signaling table") {
    const ConditionalBehavior cond =
        condition(swap_witness_ns_table(), 1, 1, 0);
    CHECK(cond.event_probability.equals(Scalar::exact(1, 2)));
    CHECK(cond.behavior.equals(pr_box_table()));
  }
  SUBCASE("uniform table") {
    const ConditionalBehavior cond =
        condition(uniform_behavior(Scenario::uniform(3, 2, 2)), 2, 1, 1);
    CHECK(cond.event_probability.equals(Scalar::exact(1, 2)));
    CHECK(cond.behavior.equals(uniform_behavior(Scenario::uniform(2, 2, 2))));
  }
  SUBCASE("zero-probability event is an error") {
    Behavior det = deterministic_behavior(Scenario::uniform(2, 2, 2),
                                          {{0, 0}, {0, 0}});
    CHECK_THROWS(condition(det, 0, 0, 1));
  }
}

TEST_CASE("mix") {
  const Scenario sc = Scenario::uniform(2, 2, 2);
  const Behavior d0 = deterministic_behavior(sc, {{0, 0}, {0, 0}});
  const Behavior d1 = deterministic_behavior(sc, {{1, 1}, {1, 1}});

  SUBCASE("equal mix of two deterministic tables") {
    const Behavior m =
        mix({{Scalar::exact(1, 2), d0}, {Scalar::exact(1, 2), d1}});
    CHECK(m.at({0, 0}, {0, 0}).equals(Scalar::exact(1, 2)));
    CHECK(m.at({1, 1}, {0, 0}).equals(Scalar::exact(1, 2)));
    CHECK(m.at({0, 1}, {0, 0}).equals(Scalar::exact(0)));
  }
  SUBCASE("identity mixture") {
    CHECK(mix({{Scalar::exact(1), d0}}).equals(d0));
  }
  SUBCASE("weights must sum to one") {
    CHECK_THROWS(mix({{Scalar::exact(1, 2), d0}, {Scalar::exact(1, 3), d1}}));
  }
  SUBCASE("scenario mismatch rejected") {
    CHECK_THROWS(mix({{Scalar::exact(1, 2), d0},
                      {Scalar::exact(1, 2),
                       uniform_behavior(Scenario::uniform(3, 2, 2))}}));
  }
}

namespace {

// Random exact table whose party-0 marginal does not depend on the other
// party's setting, so conditioning on party 0 is well defined.
Behavior random_conditionable(const Scenario &sc, std::mt19937 &rng) {
  Behavior out(sc, Backend::exact);
  std::uniform_int_distribution<int> dist(1, 9);
  for (int x = 0; x < sc.settings[0]; ++x) {
    std::vector<Rat> marg;
    Rat total(0);
    for (int a = 0; a < sc.outcomes[0]; ++a) {
      marg.emplace_back(dist(rng));
      total += marg.back();
    }
    for (auto &m : marg) m /= total;
    for (int z = 0; z < sc.settings[1]; ++z)
      for (int a = 0; a < sc.outcomes[0]; ++a) {
        std::vector<Rat> cond;
        Rat csum(0);
        for (int c = 0; c < sc.outcomes[1]; ++c) {
          cond.emplace_back(dist(rng));
          csum += cond.back();
        }
        for (int c = 0; c < sc.outcomes[1]; ++c)
          out.set({a, c}, {x, z}, Scalar::exact(Rat(marg[a] * cond[c] / csum)));
      }
  }
  return out;
}

}  // namespace

TEST_CASE("conditioning commutes with mixing on random exact tables") {
  std::mt19937 rng(7);
  const Scenario sc = Scenario::uniform(2, 2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Behavior b0 = random_conditionable(sc, rng);
    const Behavior b1 = random_conditionable(sc, rng);
    const Scalar w0 = Scalar::exact(2, 5), w1 = Scalar::exact(3, 5);
    const Behavior mixed = mix({{w0, b0}, {w1, b1}});

    const int party = 0, setting = 1, outcome = 0;
    const ConditionalBehavior c0 = condition(b0, party, setting, outcome);
    const ConditionalBehavior c1 = condition(b1, party, setting, outcome);
    const ConditionalBehavior mixed_cond =
        condition(mixed, party, setting, outcome);

    const Scalar g = w0 * c0.event_probability + w1 * c1.event_probability;
    CHECK(mixed_cond.event_probability.equals(g));

    const Behavior expected =
        mix({{w0 * c0.event_probability / g, c0.behavior},
             {w1 * c1.event_probability / g, c1.behavior}});
    CHECK(mixed_cond.behavior.equals(expected));
  }
}
