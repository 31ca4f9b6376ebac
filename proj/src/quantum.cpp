#include "nonloc/quantum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "nonloc/games.hpp"
#include "nonloc/linalg.hpp"

namespace nonloc {

//------------------------------------------------------------------------------
// Qubit building blocks
//------------------------------------------------------------------------------

namespace {

const Scalar kHalf = Scalar::exact(1, 2);
// 1/sqrt2 = sqrt2/2
const Scalar kInvSqrt2 = Scalar::exact(Rat(0), Rat(1, 2));

Matrix column_matrix(const Vector &v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
  return m;
}

Vector as_vector(const Matrix &column) {
  Vector v(column.rows());
  for (std::size_t i = 0; i < column.rows(); ++i) v[i] = column.at(i, 0);
  return v;
}

Matrix real2x2(Scalar a, Scalar b, Scalar c, Scalar d) {
  Matrix m(2, 2);
  m.at(0, 0) = Complex(std::move(a));
  m.at(0, 1) = Complex(std::move(b));
  m.at(1, 0) = Complex(std::move(c));
  m.at(1, 1) = Complex(std::move(d));
  return m;
}

}  // namespace

Vector phi_plus() { return bell_vector(0); }

Vector bell_vector(int k) {
  Vector v(4);
  switch (k) {
    case 0:  // Phi+
      v[0] = Complex(kInvSqrt2);
      v[3] = Complex(kInvSqrt2);
      break;
    case 1:  // Psi-
      v[1] = Complex(kInvSqrt2);
      v[2] = Complex(-kInvSqrt2);
      break;
    case 2:  // Phi-
      v[0] = Complex(kInvSqrt2);
      v[3] = Complex(-kInvSqrt2);
      break;
    case 3:  // Psi+
      v[1] = Complex(kInvSqrt2);
      v[2] = Complex(kInvSqrt2);
      break;
    default:
      throw std::out_of_range("bell_vector: k in 0..3");
  }
  return v;
}

std::vector<Matrix> pauli_z_projectors() {
  return {real2x2(Scalar::exact(1), Scalar::exact(0), Scalar::exact(0),
                  Scalar::exact(0)),
          real2x2(Scalar::exact(0), Scalar::exact(0), Scalar::exact(0),
                  Scalar::exact(1))};
}

std::vector<Matrix> pauli_x_projectors() {
  return {real2x2(kHalf, kHalf, kHalf, kHalf),
          real2x2(kHalf, -kHalf, -kHalf, kHalf)};
}

std::vector<Matrix> rotated_zx_projectors(int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("rotated_zx_projectors: sign must be +-1");
  // (I +- (sigma_z + sign sigma_x)/sqrt2)/2; sqrt2/4 = 1/(2 sqrt2).
  const Scalar q = Scalar::exact(Rat(0), Rat(1, 4));
  const Scalar s = sign == 1 ? q : -q;
  return {real2x2(kHalf + q, s, s, kHalf - q),
          real2x2(kHalf - q, -s, -s, kHalf + q)};
}

std::vector<Matrix> bell_projectors() {
  std::vector<Matrix> out;
  for (int k = 0; k < 4; ++k) out.push_back(bell_vector(k).outer());
  return out;
}

//------------------------------------------------------------------------------
// Assembly
//------------------------------------------------------------------------------

Scenario MeasuredSystem::scenario() const {
  const int parties = layout.party_count();
  std::vector<int> settings, outcomes;
  for (int p = 0; p < parties; ++p) {
    settings.push_back(static_cast<int>(povms.at(p).size()));
    outcomes.push_back(static_cast<int>(povms.at(p).front().size()));
  }
  return Scenario(parties, settings, outcomes);
}

namespace {

Matrix group_density(const GroupState &g) {
  if (!g.is_pure()) return g.state;
  return as_vector(g.state).outer();
}

std::vector<std::size_t> group_indices(const RegisterLayout &layout,
                                       const GroupState &g) {
  std::vector<std::size_t> out;
  for (const std::string &name : g.registers) out.push_back(layout.find(name));
  return out;
}

}  // namespace

std::optional<Vector> assemble_pure(const QuantumStrategy &strategy) {
  for (const GroupState &g : strategy.states)
    if (!g.is_pure()) return std::nullopt;

  const RegisterLayout &layout = strategy.layout;
  const std::size_t total = layout.total_dim();
  Vector out(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::vector<int> digits = layout.digits(idx);
    Complex value = Complex::exact(1);
    for (const GroupState &g : strategy.states) {
      const std::size_t sub =
          layout.sub_index(digits, group_indices(layout, g));
      value *= g.state.at(sub, 0);
      if (value.is_zero(0.0)) break;
    }
    out[idx] = value;
  }
  return out;
}

Matrix assemble_density(const QuantumStrategy &strategy) {
  if (auto pure = assemble_pure(strategy)) return pure->outer();

  const RegisterLayout &layout = strategy.layout;
  const std::size_t total = layout.total_dim();
  std::vector<Matrix> densities;
  std::vector<std::vector<std::size_t>> indices;
  for (const GroupState &g : strategy.states) {
    densities.push_back(group_density(g));
    indices.push_back(group_indices(layout, g));
  }

  Matrix out(total, total);
  for (std::size_t row = 0; row < total; ++row) {
    const std::vector<int> rd = layout.digits(row);
    for (std::size_t col = 0; col < total; ++col) {
      const std::vector<int> cd = layout.digits(col);
      Complex value = Complex::exact(1);
      for (std::size_t gi = 0; gi < densities.size(); ++gi) {
        value *= densities[gi].at(layout.sub_index(rd, indices[gi]),
                                  layout.sub_index(cd, indices[gi]));
        if (value.is_zero(0.0)) break;
      }
      out.at(row, col) = value;
    }
  }
  return out;
}

MeasuredSystem to_measured_system(const QuantumStrategy &strategy) {
  MeasuredSystem sys;
  sys.layout = strategy.layout;
  if (auto pure = assemble_pure(strategy))
    sys.state = column_matrix(*pure);
  else
    sys.state = assemble_density(strategy);
  sys.povms = strategy.povms;
  return sys;
}

//------------------------------------------------------------------------------
// Behavior evaluation
//------------------------------------------------------------------------------

namespace {

// out = (op on `indices`) |v>, identity elsewhere.
Vector apply_on_registers(const RegisterLayout &layout,
                          const std::vector<std::size_t> &indices,
                          const Matrix &op, const Vector &v) {
  const std::size_t total = layout.total_dim();
  const std::size_t sub = layout.sub_dim(indices);
  Vector out(total);

  // Radix factors of the sub-index inside the global digit vector.
  std::vector<int> sub_dims;
  for (std::size_t i : indices) sub_dims.push_back(layout.reg(i).dim);

  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<int> digits = layout.digits(idx);
    const std::size_t row = layout.sub_index(digits, indices);
    Complex sum = Complex::exact(0);
    for (std::size_t k = 0; k < sub; ++k) {
      const Complex &coeff = op.at(row, k);
      if (coeff.is_zero(0.0)) continue;
      // Write k's digits into the group slots.
      std::size_t rem = k;
      for (std::size_t i = indices.size(); i-- > 0;) {
        digits[indices[i]] = static_cast<int>(rem % sub_dims[i]);
        rem /= static_cast<std::size_t>(sub_dims[i]);
      }
      sum += coeff * v[layout.index(digits)];
    }
    out[idx] = sum;
  }
  return out;
}

void validate_system(const MeasuredSystem &sys) {
  const std::size_t total = sys.layout.total_dim();
  std::vector<std::string> failures;
  if (sys.state.cols() == 1) {
    if (sys.state.rows() != total) failures.push_back("state dimension");
  } else if (sys.state.rows() != total || sys.state.cols() != total) {
    failures.push_back("state dimension");
  }
  const int parties = sys.layout.party_count();
  if (static_cast<int>(sys.povms.size()) != parties)
    failures.push_back("POVM party count");
  for (int p = 0; p < parties && failures.empty(); ++p) {
    const std::size_t dim = sys.layout.party_dim(p);
    for (const auto &elements : sys.povms[p]) {
      Matrix sum(dim, dim);
      for (const Matrix &e : elements) {
        if (e.rows() != dim || e.cols() != dim) {
          failures.push_back("POVM element dimension");
          break;
        }
        sum += e;
      }
      if (!sum.equals(Matrix::identity(dim), kMatrixEps))
        failures.push_back("POVM incomplete beyond tolerance");
    }
  }
  if (!failures.empty()) {
    std::string msg = "behavior_from_system:";
    for (const auto &f : failures) msg += " " + f + ";";
    throw std::invalid_argument(msg);
  }
}

}  // namespace

Behavior behavior_from_system(const MeasuredSystem &sys) {
  validate_system(sys);
  const Scenario sc = sys.scenario();
  const int parties = sc.parties;

  bool exact = sys.state.is_exact();
  for (const auto &party : sys.povms)
    for (const auto &setting : party)
      for (const Matrix &e : setting) exact = exact && e.is_exact();

  Behavior out(sc, exact ? Backend::exact : Backend::floating);
  const bool pure = sys.state.cols() == 1;

  std::vector<std::vector<std::size_t>> party_regs;
  for (int p = 0; p < parties; ++p)
    party_regs.push_back(sys.layout.party_registers(p));

  if (pure) {
    const Vector psi = sys.state.column(0);
    for (TupleIterator st(sc.settings); !st.done(); st.next()) {
      for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next()) {
        Vector phi = psi;
        for (int p = 0; p < parties; ++p)
          phi = apply_on_registers(sys.layout, party_regs[p],
                                   sys.povms[p][(*st)[p]][(*ot)[p]], phi);
        const Complex val = psi.dot(phi);
        out.set(*ot, *st, val.re);
      }
    }
    return out;
  }

  const std::size_t total = sys.layout.total_dim();
  for (TupleIterator st(sc.settings); !st.done(); st.next()) {
    for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next()) {
      std::vector<const Matrix *> elements;
      for (int p = 0; p < parties; ++p)
        elements.push_back(&sys.povms[p][(*st)[p]][(*ot)[p]]);
      Complex prob = Complex::exact(0);
      for (std::size_t row = 0; row < total; ++row) {
        const std::vector<int> rd = sys.layout.digits(row);
        for (std::size_t col = 0; col < total; ++col) {
          const Complex &rho = sys.state.at(col, row);
          if (rho.is_zero(0.0)) continue;
          const std::vector<int> cd = sys.layout.digits(col);
          Complex e = Complex::exact(1);
          for (int p = 0; p < parties; ++p) {
            e *= elements[p]->at(
                sys.layout.sub_index(rd, party_regs[p]),
                sys.layout.sub_index(cd, party_regs[p]));
            if (e.is_zero(0.0)) break;
          }
          prob += e * rho;
        }
      }
      out.set(*ot, *st, prob.re);
    }
  }
  return out;
}

Behavior behavior_from_strategy(const QuantumStrategy &strategy) {
  const StrategyDiagnostics d = validate_strategy(strategy);
  if (!d.passed) {
    std::string msg = "behavior_from_strategy:";
    for (const auto &f : d.failures) msg += " " + f + ";";
    throw std::invalid_argument(msg);
  }
  return behavior_from_system(to_measured_system(strategy));
}

std::pair<Matrix, Scalar> post_measurement_state(
    const QuantumStrategy &strategy, int party, const Matrix &element) {
  const RegisterLayout &layout = strategy.layout;
  std::vector<std::string> party_names;
  for (std::size_t i : layout.party_registers(party))
    party_names.push_back(layout.reg(i).name);

  const Matrix rho = assemble_density(strategy);
  const Matrix weighted = embed(element, layout, party_names) * rho;
  const Complex prob = weighted.trace();
  if (prob.re.sign() <= 0)
    throw std::invalid_argument(
        "post_measurement_state: zero-probability element");

  Matrix reduced = partial_trace(weighted, layout, party_names);
  reduced *= Complex(Scalar::exact(1) / prob.re);
  return {std::move(reduced), prob.re};
}

bool is_entangled_ppt(const Matrix &op, std::size_t dim_a, std::size_t dim_b) {
  const Complex tr = op.trace();
  if (tr.re.sign() == 0) return false;
  Matrix normalized = op;
  normalized *= Complex(Scalar::exact(1) / tr.re);
  return !partial_transpose(normalized, dim_a, dim_b).is_psd();
}

//------------------------------------------------------------------------------
// Cascade to separable form
//------------------------------------------------------------------------------

namespace {

// Splits a PSD operator into rank-one (coefficient, projector) pairs. Exact
// rank-one projectors pass through untouched; everything else goes through
// the float spectral decomposition.
std::vector<std::pair<Scalar, Matrix>> rank_one_split(const Matrix &m) {
  std::vector<std::pair<Scalar, Matrix>> out;
  if (m.is_exact() && m.is_projector(0.0) &&
      m.trace().equals(Complex::exact(1), 0.0)) {
    out.emplace_back(Scalar::exact(1), m);
    return out;
  }
  bool zero = true;
  for (std::size_t r = 0; r < m.rows() && zero; ++r)
    for (std::size_t c = 0; c < m.cols() && zero; ++c)
      zero = m.at(r, c).is_zero(1e-14);
  if (zero) return out;

  const EigenSystem es = eigh(m);
  for (std::size_t i = 0; i < es.values.size(); ++i) {
    if (es.values[i] < -kMatrixEps)
      throw std::invalid_argument("rank_one_split: negative eigenvalue");
    if (es.values[i] <= 1e-12) continue;
    out.emplace_back(Scalar::floating(es.values[i]), es.vectors[i].outer());
  }
  return out;
}

void require_binary_povm(const std::vector<Matrix> &povm, const char *what) {
  if (povm.size() != 2)
    throw std::invalid_argument(std::string(what) + ": need two elements");
  const std::size_t dim = povm[0].rows();
  for (const Matrix &e : povm)
    if (!e.is_psd())
      throw std::invalid_argument(std::string(what) + ": element not PSD");
  if (!(povm[0] + povm[1]).equals(Matrix::identity(dim)))
    throw std::invalid_argument(std::string(what) + ": not complete");
}

}  // namespace

SeparableMeasurement cascade_to_separable(const std::vector<Matrix> &p_pair,
                                          const std::vector<Matrix> &s_pair,
                                          const std::vector<Matrix> &t_pair) {
  require_binary_povm(p_pair, "cascade P");
  require_binary_povm(s_pair, "cascade S");
  require_binary_povm(t_pair, "cascade T");
  if (s_pair[0].rows() != t_pair[0].rows())
    throw std::invalid_argument("cascade: S/T dimension mismatch");

  SeparableMeasurement out;
  out.left_dim = p_pair[0].rows();
  out.right_dim = s_pair[0].rows();

  const auto make_element = [&](const Matrix &left, const Matrix &right) {
    SeparableElement element;
    for (const auto &[cl, l] : rank_one_split(left))
      for (const auto &[cr, r] : rank_one_split(right))
        element.terms.push_back({cl * cr, l, r});
    return element;
  };

  // Outcome order: (P=0,S=0), (P=0,S=1), (P=1,T=0), (P=1,T=1).
  out.elements.push_back(make_element(p_pair[0], s_pair[0]));
  out.elements.push_back(make_element(p_pair[0], s_pair[1]));
  out.elements.push_back(make_element(p_pair[1], t_pair[0]));
  out.elements.push_back(make_element(p_pair[1], t_pair[1]));
  return out;
}

//------------------------------------------------------------------------------
// Register regrouping
//------------------------------------------------------------------------------

namespace {

Vector permute_kron_vector(const Vector &v, const std::vector<int> &src_dims,
                           const std::vector<std::size_t> &target_to_src) {
  std::vector<int> target_dims;
  for (std::size_t s : target_to_src) target_dims.push_back(src_dims[s]);
  const std::size_t n = v.size();
  Vector out(n);
  std::vector<int> td(target_dims.size());
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t rem = it;
    for (std::size_t i = target_dims.size(); i-- > 0;) {
      td[i] = static_cast<int>(rem % target_dims[i]);
      rem /= static_cast<std::size_t>(target_dims[i]);
    }
    std::vector<int> sd(src_dims.size());
    for (std::size_t i = 0; i < target_to_src.size(); ++i)
      sd[target_to_src[i]] = td[i];
    std::size_t is = 0;
    for (std::size_t i = 0; i < src_dims.size(); ++i)
      is = is * static_cast<std::size_t>(src_dims[i]) +
           static_cast<std::size_t>(sd[i]);
    out[it] = v[is];
  }
  return out;
}

Matrix permute_kron_matrix(const Matrix &m, const std::vector<int> &src_dims,
                           const std::vector<std::size_t> &target_to_src) {
  // Permute rows and columns with the same digit shuffle.
  const std::size_t n = m.rows();
  std::vector<std::size_t> row_map(n);
  {
    Vector probe(n);
    // Compute the index permutation once via a digit walk.
    std::vector<int> target_dims;
    for (std::size_t s : target_to_src) target_dims.push_back(src_dims[s]);
    for (std::size_t it = 0; it < n; ++it) {
      std::size_t rem = it;
      std::vector<int> td(target_dims.size());
      for (std::size_t i = target_dims.size(); i-- > 0;) {
        td[i] = static_cast<int>(rem % target_dims[i]);
        rem /= static_cast<std::size_t>(target_dims[i]);
      }
      std::vector<int> sd(src_dims.size());
      for (std::size_t i = 0; i < target_to_src.size(); ++i)
        sd[target_to_src[i]] = td[i];
      std::size_t is = 0;
      for (std::size_t i = 0; i < src_dims.size(); ++i)
        is = is * static_cast<std::size_t>(src_dims[i]) +
             static_cast<std::size_t>(sd[i]);
      row_map[it] = is;
    }
  }
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      out.at(r, c) = m.at(row_map[r], row_map[c]);
  return out;
}

}  // namespace

QuantumStrategy regroup_registers(const QuantumStrategy &strategy) {
  const StrategyDiagnostics d = validate_strategy(strategy);
  if (!d.passed)
    throw std::invalid_argument("regroup_registers: invalid strategy");

  const RegisterLayout &layout = strategy.layout;
  const int parties = layout.party_count();

  std::vector<Register> fused;
  for (int p = 0; p < parties; ++p)
    fused.push_back({"P" + std::to_string(p),
                     static_cast<int>(layout.party_dim(p)), p});
  RegisterLayout fused_layout(fused);

  // Union-find over groups: groups sharing a party merge.
  const std::size_t n_groups = strategy.states.size();
  std::vector<std::size_t> parent(n_groups);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find =
      [&](std::size_t i) -> std::size_t {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  std::vector<int> party_owner(parties, -1);
  for (std::size_t g = 0; g < n_groups; ++g)
    for (const std::string &name : strategy.states[g].registers) {
      const int p = layout.reg(layout.find(name)).party;
      if (party_owner[p] == -1)
        party_owner[p] = static_cast<int>(g);
      else
        parent[find(static_cast<std::size_t>(party_owner[p]))] = find(g);
    }

  QuantumStrategy out;
  out.layout = fused_layout;
  out.povms = strategy.povms;

  std::vector<bool> component_done(n_groups, false);
  for (std::size_t root = 0; root < n_groups; ++root) {
    if (find(root) != root || component_done[root]) continue;
    component_done[root] = true;

    std::vector<std::size_t> members;
    for (std::size_t g = 0; g < n_groups; ++g)
      if (find(g) == root) members.push_back(g);

    // Concatenated source register list in member order.
    std::vector<std::size_t> src_regs;
    std::vector<int> src_dims;
    bool all_pure = true;
    for (std::size_t g : members) {
      all_pure = all_pure && strategy.states[g].is_pure();
      for (const std::string &name : strategy.states[g].registers) {
        src_regs.push_back(layout.find(name));
        src_dims.push_back(layout.reg(src_regs.back()).dim);
      }
    }

    // Target order: registers sorted by (party, layout position) — exactly
    // the digit order inside the fused party registers.
    std::vector<std::size_t> order(src_regs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      const Register &rl = layout.reg(src_regs[l]);
      const Register &rr = layout.reg(src_regs[r]);
      if (rl.party != rr.party) return rl.party < rr.party;
      return src_regs[l] < src_regs[r];
    });

    GroupState merged;
    std::vector<int> component_parties;
    for (std::size_t pos : order) {
      const int p = layout.reg(src_regs[pos]).party;
      if (component_parties.empty() || component_parties.back() != p)
        component_parties.push_back(p);
    }
    for (int p : component_parties)
      merged.registers.push_back("P" + std::to_string(p));

    if (all_pure) {
      Vector combined;
      bool first = true;
      for (std::size_t g : members) {
        const Vector v = strategy.states[g].state.column(0);
        combined = first ? v : kron(combined, v);
        first = false;
      }
      merged.state = column_matrix(
          permute_kron_vector(combined, src_dims, order));
    } else {
      Matrix combined;
      bool first = true;
      for (std::size_t g : members) {
        const Matrix m = group_density(strategy.states[g]);
        combined = first ? m : kron(combined, m);
        first = false;
      }
      merged.state = permute_kron_matrix(combined, src_dims, order);
    }
    out.states.push_back(std::move(merged));
  }
  return out;
}

//------------------------------------------------------------------------------
// Constructions
//------------------------------------------------------------------------------

QuantumStrategy bell_swap_strategy() {
  QuantumStrategy s;
  s.layout = RegisterLayout({{"A_b", 2, 0},
                             {"B_a", 2, 1},
                             {"B_c", 2, 1},
                             {"C_b", 2, 2}});
  s.states.push_back({{"A_b", "B_a"}, column_matrix(phi_plus())});
  s.states.push_back({{"B_c", "C_b"}, column_matrix(phi_plus())});

  const Matrix i2 = Matrix::identity(2);
  const auto z = pauli_z_projectors();
  const auto x = pauli_x_projectors();

  // Alice: sigma_z then sigma_x.
  s.povms.push_back({z, x});
  // Bob: Y=0 measures sigma_z on the Alice-side qubit; Y=1 is the Bell-state
  // measurement binned to {Phi+, rest}.
  const Matrix phi_proj = bell_projectors()[0];
  s.povms.push_back({{kron(z[0], i2), kron(z[1], i2)},
                     {phi_proj, Matrix::identity(4) - phi_proj}});
  // Charlie: (sigma_z +- sigma_x)/sqrt2.
  s.povms.push_back({rotated_zx_projectors(1), rotated_zx_projectors(-1)});
  return s;
}

MeasuredSystem ghz_swap_system() {
  MeasuredSystem sys;
  sys.layout = RegisterLayout({{"A", 2, 0}, {"B", 2, 1}, {"C", 2, 2}});
  Vector ghz(8);
  ghz[0] = Complex(kInvSqrt2);
  ghz[7] = Complex(kInvSqrt2);
  sys.state = column_matrix(ghz);

  sys.povms.push_back({pauli_z_projectors(), pauli_x_projectors()});
  sys.povms.push_back({pauli_z_projectors(), pauli_x_projectors()});
  sys.povms.push_back({rotated_zx_projectors(1), rotated_zx_projectors(-1)});
  return sys;
}

QuantumStrategy pair_game_quantum_strategy() {
  QuantumStrategy s;
  s.layout = RegisterLayout({{"A_b", 2, 0},
                             {"B_a", 2, 1},
                             {"B_c", 2, 1},
                             {"C_b", 2, 2}});
  s.states.push_back({{"A_b", "B_a"}, column_matrix(phi_plus())});
  s.states.push_back({{"B_c", "C_b"}, column_matrix(phi_plus())});

  const auto z = pauli_z_projectors();
  const auto x = pauli_x_projectors();
  const auto dplus = rotated_zx_projectors(1);
  const auto dminus = rotated_zx_projectors(-1);

  s.povms.push_back({z, x});

  // Bob outcome b = 2*B_A + B_C. Y in {0,1}: measure the Alice-side qubit
  // with (sigma_z + (-1)^Y sigma_x)/sqrt2 and the Charlie-side qubit with
  // sigma_z resp. sigma_x. Y=2: the full Bell basis in the outcome order
  // {Phi+, Psi-, Phi-, Psi+}.
  std::vector<Matrix> y0, y1;
  for (int b = 0; b < 4; ++b) {
    const int b_a = b >> 1, b_c = b & 1;
    y0.push_back(kron(dplus[b_a], z[b_c]));
    y1.push_back(kron(dminus[b_a], x[b_c]));
  }
  s.povms.push_back({y0, y1, bell_projectors()});

  s.povms.push_back({dplus, dminus});
  return s;
}

//------------------------------------------------------------------------------
// Alignment-tradeoff probe
//------------------------------------------------------------------------------

std::vector<TradeoffRow> alignment_tradeoff_probe(
    const std::vector<ProbeStrategy> &family) {
  const Scalar two_sqrt2 = Scalar::exact(2) * Scalar::sqrt2();
  const double tol = 1e-9;
  std::vector<TradeoffRow> rows;

  for (const ProbeStrategy &ps : family) {
    const StrategyDiagnostics sep = validate_separable(ps.bob_y1);
    if (!sep.passed)
      throw std::invalid_argument("tradeoff probe: separable form invalid (" +
                                  ps.label + ")");
    const std::vector<Matrix> assembled = assemble(ps.bob_y1);
    const auto &bob_elements = ps.strategy.povms.at(1).at(1);
    if (assembled.size() != bob_elements.size())
      throw std::invalid_argument(
          "tradeoff probe: separable form element count (" + ps.label + ")");
    for (std::size_t i = 0; i < assembled.size(); ++i)
      if (!assembled[i].equals(bob_elements[i]))
        throw std::invalid_argument(
            "tradeoff probe: separable form does not match Bob's Y=1 POVM (" +
            ps.label + ")");

    const Behavior behavior = behavior_from_strategy(ps.strategy);

    TradeoffRow row;
    row.label = ps.label;
    row.event_probability = behavior.marginal_probability(1, 1, 0, {0, 1, 0});
    row.alignment_probability =
        agreement_probability(behavior, 0, 1, {0, 0, 0});
    row.misalignment_probability =
        Scalar::exact(1) - row.alignment_probability;

    if (row.event_probability.sign() > 0) {
      const ConditionalBehavior cond = condition(behavior, 1, 1, 0);
      row.conditional_chsh = chsh_value(cond.behavior);
      row.chsh_maximal =
          std::abs((*row.conditional_chsh - two_sqrt2).to_double()) <= tol;
    }

    const Scalar bound =
        row.event_probability * kHalf - Scalar::floating(tol);
    row.bound_satisfied =
        (row.misalignment_probability - bound).sign() >= 0;

    if (row.chsh_maximal && !row.bound_satisfied)
      throw std::logic_error(
          "tradeoff probe: alignment bound violated for maximal-CHSH "
          "strategy (" +
          ps.label + ")");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ProbeStrategy> tradeoff_probe_family() {
  std::vector<ProbeStrategy> family;
  const Matrix i2 = Matrix::identity(2);
  const auto z = pauli_z_projectors();

  const auto qubit_zero = [&] {
    Matrix v(2, 1);
    v.at(0, 0) = Complex::exact(1);
    return v;
  };

  // Separable element q * (I (x) I) as four rank-one product terms.
  const auto scaled_identity_element = [&](const Scalar &q) {
    SeparableElement e;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) e.terms.push_back({q, z[i], z[j]});
    return e;
  };

  {
    // Direct Alice-Charlie Bell pair; Bob's Y=1 reveals nothing.
    ProbeStrategy ps;
    ps.label = "uninformative-separable-bob";
    QuantumStrategy &s = ps.strategy;
    s.layout = RegisterLayout({{"A_c", 2, 0},
                               {"B_a", 2, 1},
                               {"B_c", 2, 1},
                               {"C_a", 2, 2}});
    s.states.push_back({{"A_c", "C_a"}, column_matrix(phi_plus())});
    s.states.push_back({{"B_a"}, qubit_zero()});
    s.states.push_back({{"B_c"}, qubit_zero()});
    s.povms.push_back({pauli_z_projectors(), pauli_x_projectors()});
    const Complex half(Scalar::exact(1, 2));
    const Matrix half_i4 = half * Matrix::identity(4);
    s.povms.push_back({{half_i4, half_i4}, {half_i4, half_i4}});
    s.povms.push_back({rotated_zx_projectors(1), rotated_zx_projectors(-1)});

    ps.bob_y1.left_dim = ps.bob_y1.right_dim = 2;
    ps.bob_y1.elements = {scaled_identity_element(Scalar::exact(1, 2)),
                          scaled_identity_element(Scalar::exact(1, 2))};
    family.push_back(std::move(ps));
  }

  {
    // Bob never reports outcome 0 on Y=1: the bound is vacuous.
    ProbeStrategy ps;
    ps.label = "never-zero-bob";
    QuantumStrategy &s = ps.strategy;
    s.layout = RegisterLayout({{"A_c", 2, 0},
                               {"B_a", 2, 1},
                               {"B_c", 2, 1},
                               {"C_a", 2, 2}});
    s.states.push_back({{"A_c", "C_a"}, column_matrix(phi_plus())});
    s.states.push_back({{"B_a"}, qubit_zero()});
    s.states.push_back({{"B_c"}, qubit_zero()});
    s.povms.push_back({pauli_z_projectors(), pauli_x_projectors()});
    s.povms.push_back({{kron(z[0], i2), kron(z[1], i2)},
                       {Matrix::zero(4, 4), Matrix::identity(4)}});
    s.povms.push_back({rotated_zx_projectors(1), rotated_zx_projectors(-1)});

    ps.bob_y1.left_dim = ps.bob_y1.right_dim = 2;
    ps.bob_y1.elements = {SeparableElement{},
                          scaled_identity_element(Scalar::exact(1))};
    family.push_back(std::move(ps));
  }

  {
    // Two Alice-Charlie singlets; qubits entangled with Bob select which
    // singlet each side measures, and Bob's Y=1 reports whether the
    // selectors agree.
    ProbeStrategy ps;
    ps.label = "two-singlet-selector";
    QuantumStrategy &s = ps.strategy;
    s.layout = RegisterLayout({{"A_b", 2, 0},
                               {"A_c1", 2, 0},
                               {"A_c2", 2, 0},
                               {"B_a", 2, 1},
                               {"B_c", 2, 1},
                               {"C_b", 2, 2},
                               {"C_a1", 2, 2},
                               {"C_a2", 2, 2}});
    s.states.push_back({{"A_b", "B_a"}, column_matrix(phi_plus())});
    s.states.push_back({{"B_c", "C_b"}, column_matrix(phi_plus())});
    s.states.push_back({{"A_c1", "C_a1"}, column_matrix(phi_plus())});
    s.states.push_back({{"A_c2", "C_a2"}, column_matrix(phi_plus())});

    // Selector-controlled CHSH measurements.
    const auto controlled = [&](const std::vector<Matrix> &proj) {
      std::vector<Matrix> out;
      for (int outcome = 0; outcome < 2; ++outcome)
        out.push_back(kron(z[0], kron(proj[outcome], i2)) +
                      kron(z[1], kron(i2, proj[outcome])));
      return out;
    };
    s.povms.push_back(
        {controlled(pauli_z_projectors()), controlled(pauli_x_projectors())});

    Matrix agree = kron(z[0], z[0]) + kron(z[1], z[1]);
    s.povms.push_back({{kron(z[0], i2), kron(z[1], i2)},
                       {agree, Matrix::identity(4) - agree}});

    s.povms.push_back({controlled(rotated_zx_projectors(1)),
                       controlled(rotated_zx_projectors(-1))});

    ps.bob_y1.left_dim = ps.bob_y1.right_dim = 2;
    SeparableElement e0, e1;
    e0.terms = {{Scalar::exact(1), z[0], z[0]}, {Scalar::exact(1), z[1], z[1]}};
    e1.terms = {{Scalar::exact(1), z[0], z[1]}, {Scalar::exact(1), z[1], z[0]}};
    ps.bob_y1.elements = {e0, e1};
    family.push_back(std::move(ps));
  }

  {
    // Bell-swap layout but Bob's Y=1 collapses to a product: submaximal
    // conditional CHSH with perfect alignment.
    ProbeStrategy ps;
    ps.label = "product-collapse-bob";
    ps.strategy = bell_swap_strategy();
    Matrix zz = kron(z[0], z[0]);
    ps.strategy.povms[1][1] = {zz, Matrix::identity(4) - zz};

    ps.bob_y1.left_dim = ps.bob_y1.right_dim = 2;
    SeparableElement e0, e1;
    e0.terms = {{Scalar::exact(1), z[0], z[0]}};
    e1.terms = {{Scalar::exact(1), z[0], z[1]},
                {Scalar::exact(1), z[1], z[0]},
                {Scalar::exact(1), z[1], z[1]}};
    ps.bob_y1.elements = {e0, e1};
    family.push_back(std::move(ps));
  }

  return family;
}

}  // namespace nonloc
