#include "nonloc/strategy.hpp"

#include <stdexcept>

namespace nonloc {

Scenario QuantumStrategy::scenario() const {
  const int parties = layout.party_count();
  if (static_cast<int>(povms.size()) != parties)
    throw std::invalid_argument("QuantumStrategy: POVM list per party");
  std::vector<int> settings, outcomes;
  for (int p = 0; p < parties; ++p) {
    if (povms[p].empty())
      throw std::invalid_argument("QuantumStrategy: party without settings");
    settings.push_back(static_cast<int>(povms[p].size()));
    outcomes.push_back(static_cast<int>(povms[p].front().size()));
  }
  return Scenario(parties, settings, outcomes);
}

StrategyDiagnostics validate_strategy(const QuantumStrategy &strategy,
                                      double eps) {
  StrategyDiagnostics d;
  d.passed = true;
  auto fail = [&](const std::string &msg) {
    d.passed = false;
    d.failures.push_back(msg);
  };

  const RegisterLayout &layout = strategy.layout;

  // Group states must cover each register exactly once.
  std::vector<int> covered(layout.count(), 0);
  for (const GroupState &g : strategy.states) {
    std::size_t dim = 1;
    for (const std::string &name : g.registers) {
      const std::size_t i = layout.find(name);
      ++covered[i];
      dim *= static_cast<std::size_t>(layout.reg(i).dim);
    }
    if (g.is_pure()) {
      if (g.state.rows() != dim) fail("pure state dimension mismatch");
      const Scalar n2 = [&] {
        Scalar sum = Scalar::exact(0);
        for (std::size_t r = 0; r < g.state.rows(); ++r)
          sum += g.state.at(r, 0).norm2();
        return sum;
      }();
      if (!n2.equals(Scalar::exact(1), eps)) fail("pure state not normalized");
    } else {
      if (g.state.rows() != dim || g.state.cols() != dim)
        fail("density dimension mismatch");
      else {
        if (!g.state.is_hermitian(eps)) fail("density not Hermitian");
        if (!g.state.is_psd(eps)) fail("density not PSD");
        Complex tr = g.state.trace();
        if (!tr.equals(Complex::exact(1), eps)) fail("density trace != 1");
      }
    }
  }
  for (std::size_t i = 0; i < layout.count(); ++i) {
    if (covered[i] == 0) fail("register '" + layout.reg(i).name + "' has no state");
    if (covered[i] > 1)
      fail("register '" + layout.reg(i).name + "' covered twice");
  }

  // POVMs: PSD elements summing to the identity on the party space.
  const int parties = layout.party_count();
  if (static_cast<int>(strategy.povms.size()) != parties) {
    fail("POVM list does not match party count");
    return d;
  }
  for (int p = 0; p < parties; ++p) {
    const std::size_t dim = layout.party_dim(p);
    std::size_t outcome_count = 0;
    for (std::size_t s = 0; s < strategy.povms[p].size(); ++s) {
      const auto &elements = strategy.povms[p][s];
      if (elements.empty()) {
        fail("empty POVM");
        continue;
      }
      if (outcome_count == 0) outcome_count = elements.size();
      if (elements.size() != outcome_count)
        fail("outcome count differs across settings");
      Matrix sum(dim, dim);
      for (const Matrix &e : elements) {
        if (e.rows() != dim || e.cols() != dim) {
          fail("POVM element dimension mismatch");
          continue;
        }
        if (!e.is_psd(eps)) fail("POVM element not PSD");
        sum += e;
      }
      if (!sum.equals(Matrix::identity(dim), eps))
        fail("POVM does not sum to identity");
    }
  }
  return d;
}

//------------------------------------------------------------------------------
// Separable measurements
//------------------------------------------------------------------------------

Matrix assemble(const SeparableElement &element, std::size_t left_dim,
                std::size_t right_dim) {
  Matrix out(left_dim * right_dim, left_dim * right_dim);
  for (const SeparableTerm &t : element.terms)
    out += Complex(t.coefficient) * kron(t.left, t.right);
  return out;
}

std::vector<Matrix> assemble(const SeparableMeasurement &measurement) {
  std::vector<Matrix> out;
  for (const SeparableElement &e : measurement.elements)
    out.push_back(assemble(e, measurement.left_dim, measurement.right_dim));
  return out;
}

StrategyDiagnostics validate_separable(const SeparableMeasurement &m,
                                       double eps) {
  StrategyDiagnostics d;
  d.passed = true;
  auto fail = [&](const std::string &msg) {
    d.passed = false;
    d.failures.push_back(msg);
  };

  for (const SeparableElement &e : m.elements)
    for (const SeparableTerm &t : e.terms) {
      if (t.coefficient.sign() <= 0 ||
          (t.coefficient - Scalar::exact(1)).to_double() > eps)
        fail("coefficient outside (0, 1]");
      if (t.left.rows() != m.left_dim || t.right.rows() != m.right_dim)
        fail("term dimension mismatch");
      for (const Matrix *r : {&t.left, &t.right}) {
        if (!r->is_projector(eps)) fail("term factor is not a projector");
        if (!r->trace().equals(Complex::exact(1), eps))
          fail("term factor is not rank one");
      }
    }

  Matrix sum(m.left_dim * m.right_dim, m.left_dim * m.right_dim);
  for (const Matrix &e : assemble(m)) sum += e;
  if (!sum.equals(Matrix::identity(m.left_dim * m.right_dim), eps))
    fail("separable elements do not sum to identity");
  return d;
}

}  // namespace nonloc
