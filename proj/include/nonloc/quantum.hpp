#pragma once

#include <optional>
#include <utility>

#include "nonloc/behavior.hpp"
#include "nonloc/strategy.hpp"

namespace nonloc {

//------------------------------------------------------------------------------
// Qubit building blocks (all entries in Q[sqrt2])
//------------------------------------------------------------------------------

// |Phi+> = (|00> + |11>)/sqrt2 and friends; k indexes {Phi+, Psi-, Phi-, Psi+}
// in the outcome order used by the pair-game strategy.
Vector phi_plus();
Vector bell_vector(int k);

std::vector<Matrix> pauli_z_projectors();
std::vector<Matrix> pauli_x_projectors();
// Projectors of (sigma_z + sign*sigma_x)/sqrt2, outcome 0 = +1 eigenvalue.
std::vector<Matrix> rotated_zx_projectors(int sign);
std::vector<Matrix> bell_projectors();  // ordered as bell_vector

//------------------------------------------------------------------------------
// States and measurement evaluation
//------------------------------------------------------------------------------

// A state (possibly non-product, e.g. GHZ) plus per-party POVMs.
struct MeasuredSystem {
  RegisterLayout layout;
  Matrix state;  // total-dim density matrix or column vector
  std::vector<std::vector<std::vector<Matrix>>> povms;

  Scenario scenario() const;
};

// Global density matrix / pure vector of a product strategy; the pure form
// exists when every group state is a vector.
Matrix assemble_density(const QuantumStrategy &strategy);
std::optional<Vector> assemble_pure(const QuantumStrategy &strategy);
MeasuredSystem to_measured_system(const QuantumStrategy &strategy);

// P(outcomes|settings) = Tr[(E_1 (x) ... (x) E_n) rho]. Validates the
// strategy first; the output passes validate() and no_signaling_check().
Behavior behavior_from_strategy(const QuantumStrategy &strategy);
Behavior behavior_from_system(const MeasuredSystem &system);

// Post-measurement state of the other parties after `party` observes the
// POVM element: Tr_party[(I (x) E (x) I) rho] / p, together with p.
std::pair<Matrix, Scalar> post_measurement_state(
    const QuantumStrategy &strategy, int party, const Matrix &element);

// PPT entanglement flag for a bipartite operator (sufficient at 2x2):
// normalizes to unit trace and tests the partial transpose for negativity.
bool is_entangled_ppt(const Matrix &op, std::size_t dim_a, std::size_t dim_b);

//------------------------------------------------------------------------------
// Separable-measurement constructions
//------------------------------------------------------------------------------

// Cascaded two-stage measurement as one separable POVM: measure {P0,P1} on
// the left register, then {S0,S1} (left outcome 0) or {T0,T1} (left outcome
// 1) on the right. Elements: P0(x)S0, P0(x)S1, P1(x)T0, P1(x)T1, each
// spectrally decomposed into rank-one product terms.
SeparableMeasurement cascade_to_separable(const std::vector<Matrix> &p_pair,
                                          const std::vector<Matrix> &s_pair,
                                          const std::vector<Matrix> &t_pair);

// Fuses each party's registers into a single register (SM-style register
// regrouping); group states sharing a party are merged. The behavior is
// unchanged.
QuantumStrategy regroup_registers(const QuantumStrategy &strategy);

//------------------------------------------------------------------------------
// Constructions
//------------------------------------------------------------------------------

// Two Bell pairs (Alice-Bob, Bob-Charlie), Bob's Y=1 a Bell-state
// measurement binned to {Phi+, rest}; reproduces swap_witness_quantum_table.
QuantumStrategy bell_swap_strategy();

// GHZ state with computational/plus-minus measurements; satisfies the
// swap-witness conditions with P(B=0|Y=1) = 1/2.
MeasuredSystem ghz_swap_system();

// Bell pairs plus a full Bell basis measurement on Y=2; wins every
// pair-game subgame at (2+sqrt2)/4.
QuantumStrategy pair_game_quantum_strategy();

//------------------------------------------------------------------------------
// Alignment-tradeoff probe
//------------------------------------------------------------------------------

// A strategy whose Bob Y=1 measurement carries an explicit separable form.
struct ProbeStrategy {
  std::string label;
  QuantumStrategy strategy;
  SeparableMeasurement bob_y1;
};

struct TradeoffRow {
  std::string label;
  Scalar event_probability;             // P(B=0|Y=1)
  std::optional<Scalar> conditional_chsh;
  Scalar alignment_probability;         // P(A=B|X=0,Y=0)
  Scalar misalignment_probability;      // P(A!=B|X=0,Y=0)
  bool chsh_maximal = false;            // |S - 2 sqrt2| <= 1e-9
  bool bound_satisfied = false;  // P(A!=B) >= P(B=0|Y=1)/2 - 1e-9
};

// For each strategy: verify the separable form matches Bob's Y=1 POVM,
// compute the behavior, and evaluate the alignment bound. Every row with a
// maximal conditional CHSH must satisfy the bound.
std::vector<TradeoffRow> alignment_tradeoff_probe(
    const std::vector<ProbeStrategy> &family);

// The hand-built probe family: an uninformative separable Bob on a direct
// Alice-Charlie Bell pair, a Bob that never reports outcome 0, the
// two-singlet selector strategy, and a product-collapsing Bob.
std::vector<ProbeStrategy> tradeoff_probe_family();

}  // namespace nonloc
