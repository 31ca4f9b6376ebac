#pragma once

#include <optional>
#include <vector>

#include "nonloc/behavior.hpp"

namespace nonloc {

//------------------------------------------------------------------------------
// CHSH
//------------------------------------------------------------------------------

// S = sum_{x,z} (-1)^{xz} E_xz with E_xz = sum_{a,c} (-1)^{a xor c} P(a,c|x,z).
// Requires a (2; settings 2,2; outcomes 2,2) behavior. Local bound 2,
// quantum bound 2*sqrt2, no-signaling bound 4.
Scalar chsh_value(const Behavior &bipartite);

// P(outcome of party i == outcome of party j) at the given settings.
Scalar agreement_probability(const Behavior &behavior, int party_i,
                             int party_j, const std::vector<int> &settings);

//------------------------------------------------------------------------------
// Swap-witness conditions on a (3,2,2) behavior
//------------------------------------------------------------------------------

// The three conditions characterizing the entanglement-swapping witness:
//   1. P(B=0|Y=1) > 0,
//   2. the (A,C) behavior conditioned on that event reaches the CHSH value
//      `threshold` (2*sqrt2 by default; 4 selects the no-signaling variant),
//   3. P(A=B|X=0,Y=0) = 1.
struct SwapWitnessResult {
  bool passed = false;
  bool event_positive = false;
  bool chsh_maximal = false;
  bool aligned = false;
  Scalar event_probability;      // P(B=0|Y=1)
  Scalar conditional_chsh;       // CHSH of the conditioned (A,C) table
  Scalar alignment_probability;  // P(A=B|X=0,Y=0)
};

SwapWitnessResult swap_witness_check(
    const Behavior &behavior,
    const Scalar &threshold = Scalar::exact(0, 1) + Scalar::exact(2) *
                                                          Scalar::sqrt2(),
    double eps = kFloatEps);

//------------------------------------------------------------------------------
// Pair-outcome game ((3; 2,3,2; 2,4,2) scenario)
//------------------------------------------------------------------------------

// Bob's four outcomes encode a bit pair: b = 2*B_A + B_C. For Y in {0,1} the
// round is won when A xor B_A = X*Y and C xor B_C = Z*Y (two parallel CHSH
// games); for Y = 2 when A xor C = X*Z xor (X*B_A xor B_C).
struct PairGameScores {
  Scalar overall;
  std::vector<Scalar> ab_subgame;  // P(A xor B_A = X*Y | Y), Y in {0,1}
  std::vector<Scalar> bc_subgame;  // P(C xor B_C = Z*Y | Y), Y in {0,1}
  Scalar ac_subgame;               // P(win | Y=2)
};

// `input_weights`, when given, assigns a probability to every setting tuple
// in canonical order; default is uniform. Every Y must have positive weight.
PairGameScores pair_game_value(
    const Behavior &behavior,
    const std::optional<std::vector<Scalar>> &input_weights = std::nullopt);

//------------------------------------------------------------------------------
// Closed-form tables
//------------------------------------------------------------------------------

// P(a,c|x,z) = (2 + (-1)^{a xor c xor xz} sqrt2)/8 — the CHSH-optimal
// quantum correlations on a Bell pair.
Behavior chsh_quantum_table();

// P(a,c|x,z) = delta_{a xor c, xz}/2 — the PR box.
Behavior pr_box_table();

// The (3,2,2) swap-witness behavior produced by two Bell pairs plus a Bell
// state measurement:
//   Y=0: (1 + (-1)^{a xor b} delta_{x,0})/8
//   Y=1: delta_{b,1}/4 + ((-1)^b/4) * (2 + (-1)^{a xor c xor xz} sqrt2)/8
Behavior swap_witness_quantum_table();

// The no-signaling variant reached by a PR-box network:
//   Y=0: delta_{a,b}/4
//   Y=1: delta_{b,1}/4 + ((-1)^b/2) * delta_{a xor c, xz}/2
Behavior swap_witness_ns_table();

// Conditional (A,C) table of the pair-outcome quantum strategy given Bob's
// Bell outcome (B_A, B_C): (2 + (-1)^{a xor c xor xz xor x*B_A xor B_C} sqrt2)/8.
Behavior chsh_variant_table(int b_a, int b_c);

}  // namespace nonloc
