#include "nonloc/games.hpp"

#include <stdexcept>

namespace nonloc {

Scalar chsh_value(const Behavior &bipartite) {
  const Scenario &sc = bipartite.scenario();
  if (sc != Scenario::uniform(2, 2, 2))
    throw std::invalid_argument("chsh_value: needs a (2;2,2;2,2) behavior");
  Scalar s = bipartite.backend() == Backend::exact ? Scalar::exact(0)
                                                   : Scalar::floating(0.0);
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z) {
      Scalar correlator = bipartite.backend() == Backend::exact
                              ? Scalar::exact(0)
                              : Scalar::floating(0.0);
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) {
          const Scalar &p = bipartite.at({a, c}, {x, z});
          correlator += ((a ^ c) ? -p : p);
        }
      s += ((x & z) ? -correlator : correlator);
    }
  return s;
}

Scalar agreement_probability(const Behavior &behavior, int party_i,
                             int party_j, const std::vector<int> &settings) {
  const Scenario &sc = behavior.scenario();
  Scalar total = behavior.backend() == Backend::exact ? Scalar::exact(0)
                                                      : Scalar::floating(0.0);
  for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next())
    if ((*ot)[party_i] == (*ot)[party_j]) total += behavior.at(*ot, settings);
  return total;
}

SwapWitnessResult swap_witness_check(const Behavior &behavior,
                                     const Scalar &threshold, double eps) {
  const Scenario &sc = behavior.scenario();
  if (sc != Scenario::uniform(3, 2, 2))
    throw std::invalid_argument("swap_witness_check: needs a (3,2,2) behavior");

  SwapWitnessResult result;
  result.event_probability =
      behavior.marginal_probability(1, 1, 0, {0, 1, 0});
  result.event_positive = result.event_probability.sign() > 0;

  if (result.event_positive) {
    const ConditionalBehavior cond = condition(behavior, 1, 1, 0);
    result.conditional_chsh = chsh_value(cond.behavior);
    result.chsh_maximal = result.conditional_chsh.equals(threshold, eps);
  } else {
    result.conditional_chsh = Scalar::exact(0);
    result.chsh_maximal = false;
  }

  // P(A=B|X=0,Y=0) must be 1 for every choice of Charlie's setting.
  result.aligned = true;
  result.alignment_probability =
      agreement_probability(behavior, 0, 1, {0, 0, 0});
  for (int z = 0; z < 2; ++z) {
    const Scalar p = agreement_probability(behavior, 0, 1, {0, 0, z});
    if (!p.equals(Scalar::exact(1), eps)) result.aligned = false;
  }

  result.passed =
      result.event_positive && result.chsh_maximal && result.aligned;
  return result;
}

PairGameScores pair_game_value(
    const Behavior &behavior,
    const std::optional<std::vector<Scalar>> &input_weights) {
  const Scenario &sc = behavior.scenario();
  if (sc != Scenario::pair_game())
    throw std::invalid_argument(
        "pair_game_value: needs the (3; 2,3,2; 2,4,2) scenario");

  const bool exact = behavior.backend() == Backend::exact;
  auto zero = [&] { return exact ? Scalar::exact(0) : Scalar::floating(0.0); };

  std::vector<Scalar> weights;
  if (input_weights) {
    weights = *input_weights;
    if (weights.size() != sc.setting_tuple_count())
      throw std::invalid_argument("pair_game_value: weight count mismatch");
    Scalar total = zero();
    for (const Scalar &w : weights) {
      if (w.sign() < 0)
        throw std::invalid_argument("pair_game_value: negative input weight");
      total += w;
    }
    if (!total.equals(Scalar::exact(1)))
      throw std::invalid_argument(
          "pair_game_value: input distribution not normalized");
  } else {
    weights.assign(sc.setting_tuple_count(),
                   Scalar::exact(1, static_cast<long>(sc.setting_tuple_count()))
                       .to_backend(exact ? Backend::exact : Backend::floating));
  }

  PairGameScores scores;
  scores.overall = zero();
  scores.ab_subgame.assign(2, zero());
  scores.bc_subgame.assign(2, zero());
  scores.ac_subgame = zero();

  std::vector<Scalar> y_weight(3, zero());
  std::vector<Scalar> ab_win(2, zero()), bc_win(2, zero());
  Scalar ac_win = zero();

  for (TupleIterator st(sc.settings); !st.done(); st.next()) {
    const int x = (*st)[0], y = (*st)[1], z = (*st)[2];
    const Scalar &w = weights[sc.setting_index(*st)];
    y_weight[y] += w;

    for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next()) {
      const int a = (*ot)[0], b = (*ot)[1], c = (*ot)[2];
      const int b_a = b >> 1, b_c = b & 1;
      const Scalar &p = behavior.at(*ot, *st);
      if (y < 2) {
        const bool ab_ok = ((a ^ b_a) == (x & y));
        const bool bc_ok = ((c ^ b_c) == (z & y));
        if (ab_ok) ab_win[y] += w * p;
        if (bc_ok) bc_win[y] += w * p;
        if (ab_ok && bc_ok) scores.overall += w * p;
      } else {
        const bool ac_ok = ((a ^ c) == ((x & z) ^ (x & b_a) ^ b_c));
        if (ac_ok) {
          ac_win += w * p;
          scores.overall += w * p;
        }
      }
    }
  }

  for (int y = 0; y < 3; ++y)
    if (y_weight[y].sign() <= 0)
      throw std::invalid_argument(
          "pair_game_value: every Bob setting needs positive input weight");

  for (int y = 0; y < 2; ++y) {
    scores.ab_subgame[y] = ab_win[y] / y_weight[y];
    scores.bc_subgame[y] = bc_win[y] / y_weight[y];
  }
  scores.ac_subgame = ac_win / y_weight[2];
  return scores;
}

//------------------------------------------------------------------------------
// Closed-form tables
//------------------------------------------------------------------------------

namespace {

// (2 + sign*sqrt2)/8 with sign in {-1,+1}.
Scalar chsh_entry(int sign) {
  return Scalar::exact(Rat(1, 4), Rat(sign, 8));
}

}  // namespace

Behavior chsh_quantum_table() {
  Behavior out(Scenario::uniform(2, 2, 2), Backend::exact);
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
          out.set({a, c}, {x, z}, chsh_entry((a ^ c ^ (x & z)) ? -1 : 1));
  return out;
}

Behavior pr_box_table() {
  Behavior out(Scenario::uniform(2, 2, 2), Backend::exact);
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
          out.set({a, c}, {x, z},
                  ((a ^ c) == (x & z)) ? Scalar::exact(1, 2)
                                       : Scalar::exact(0));
  return out;
}

Behavior swap_witness_quantum_table() {
  Behavior out(Scenario::uniform(3, 2, 2), Backend::exact);
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c) {
            // Y = 0: (1 + (-1)^{a xor b} delta_{x,0})/8.
            Scalar y0 = Scalar::exact(1, 8);
            if (x == 0)
              y0 += (a ^ b) ? Scalar::exact(-1, 8) : Scalar::exact(1, 8);
            out.set({a, b, c}, {x, 0, z}, y0);

            // Y = 1: delta_{b,1}/4 + ((-1)^b/4) CHSH(a,c|x,z).
            const Scalar chsh = chsh_entry((a ^ c ^ (x & z)) ? -1 : 1);
            Scalar y1 = (b == 1) ? Scalar::exact(1, 4) : Scalar::exact(0);
            y1 += (b ? -Scalar::exact(1, 4) : Scalar::exact(1, 4)) * chsh;
            out.set({a, b, c}, {x, 1, z}, y1);
          }
  return out;
}

Behavior swap_witness_ns_table() {
  Behavior out(Scenario::uniform(3, 2, 2), Backend::exact);
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c) {
            out.set({a, b, c}, {x, 0, z},
                    (a == b) ? Scalar::exact(1, 4) : Scalar::exact(0));
            // delta_{b,1}/4 + ((-1)^b/2) delta_{a xor c, xz}/2 collapses to
            // delta_{a xor b xor c, xz}/4.
            out.set({a, b, c}, {x, 1, z},
                    ((a ^ b ^ c) == (x & z)) ? Scalar::exact(1, 4)
                                             : Scalar::exact(0));
          }
  return out;
}

Behavior chsh_variant_table(int b_a, int b_c) {
  Behavior out(Scenario::uniform(2, 2, 2), Backend::exact);
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) {
          const int parity = a ^ c ^ (x & z) ^ (x & b_a) ^ b_c;
          out.set({a, c}, {x, z}, chsh_entry(parity ? -1 : 1));
        }
  return out;
}

}  // namespace nonloc
