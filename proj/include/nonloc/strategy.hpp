#pragma once

#include <string>
#include <vector>

#include "nonloc/matrix.hpp"
#include "nonloc/registers.hpp"
#include "nonloc/scenario.hpp"

namespace nonloc {

// State of one group of registers: a d x d density matrix or a d x 1 pure
// column vector on the named registers (tensor order as listed).
struct GroupState {
  std::vector<std::string> registers;
  Matrix state;

  bool is_pure() const { return state.cols() == 1; }
};

// Register layout, a product of group states covering every register, and
// per-party per-setting POVMs acting on each party's registers (in layout
// order). The usual case is one bipartite state per connected pair.
struct QuantumStrategy {
  RegisterLayout layout;
  std::vector<GroupState> states;
  // povms[party][setting] is the element list of that measurement.
  std::vector<std::vector<std::vector<Matrix>>> povms;

  Scenario scenario() const;
};

struct StrategyDiagnostics {
  bool passed = false;
  std::vector<std::string> failures;
};

// Group coverage, state normalization/PSD, POVM completeness.
StrategyDiagnostics validate_strategy(const QuantumStrategy &strategy,
                                      double eps = kMatrixEps);

//------------------------------------------------------------------------------
// Separable measurements
//------------------------------------------------------------------------------

// One term c * R_left (x) R_right with rank-one projectors R.
struct SeparableTerm {
  Scalar coefficient;
  Matrix left;
  Matrix right;
};

// POVM element given as a positive sum of rank-one product terms. An empty
// term list is the zero element.
struct SeparableElement {
  std::vector<SeparableTerm> terms;
};

struct SeparableMeasurement {
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
  std::vector<SeparableElement> elements;
};

Matrix assemble(const SeparableElement &element, std::size_t left_dim,
                std::size_t right_dim);
std::vector<Matrix> assemble(const SeparableMeasurement &measurement);

// Terms well-formed (0 < c <= 1, rank-one projector factors) and the
// assembled elements complete to the identity.
StrategyDiagnostics validate_separable(const SeparableMeasurement &measurement,
                                       double eps = kMatrixEps);

}  // namespace nonloc
