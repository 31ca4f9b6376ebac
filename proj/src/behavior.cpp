#include "nonloc/behavior.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nonloc {

Behavior::Behavior(Scenario scenario, Backend backend)
    : scenario_(std::move(scenario)), backend_(backend) {
  Scalar zero = backend == Backend::exact ? Scalar::exact(0)
                                          : Scalar::floating(0.0);
  entries_.assign(scenario_.table_size(), zero);
}

const Scalar &Behavior::at(const std::vector<int> &outcomes,
                           const std::vector<int> &settings) const {
  return entries_[scenario_.setting_index(settings) *
                      scenario_.outcome_tuple_count() +
                  scenario_.outcome_index(outcomes)];
}

void Behavior::set(const std::vector<int> &outcomes,
                   const std::vector<int> &settings, Scalar value) {
  set_flat(scenario_.setting_index(settings) *
               scenario_.outcome_tuple_count() +
           scenario_.outcome_index(outcomes),
           std::move(value));
}

void Behavior::set_flat(std::size_t flat, Scalar value) {
  entries_.at(flat) = value.to_backend(backend_);
}

Scalar Behavior::marginal_probability(
    int party, int setting, int outcome,
    const std::vector<int> &other_settings) const {
  if (static_cast<int>(other_settings.size()) != scenario_.parties)
    throw std::invalid_argument("marginal_probability: settings length");
  std::vector<int> s = other_settings;
  s[party] = setting;
  Scalar total = backend_ == Backend::exact ? Scalar::exact(0)
                                            : Scalar::floating(0.0);
  for (TupleIterator it(scenario_.outcomes); !it.done(); it.next()) {
    if ((*it)[party] == outcome) total += at(*it, s);
  }
  return total;
}

Behavior Behavior::to_backend(Backend target) const {
  if (target == backend_) return *this;
  Behavior out(scenario_, target);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = entries_[i].to_backend(target);
  return out;
}

bool Behavior::equals(const Behavior &o, double eps) const {
  if (scenario_ != o.scenario_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!entries_[i].equals(o.entries_[i], eps)) return false;
  return true;
}

//------------------------------------------------------------------------------
// Structural checks
//------------------------------------------------------------------------------

ValidationReport validate(const Behavior &behavior, double eps) {
  ValidationReport report;
  report.passed = true;
  const Scenario &sc = behavior.scenario();
  const bool exact = behavior.backend() == Backend::exact;
  const Scalar one = Scalar::exact(1);

  for (TupleIterator st(sc.settings); !st.done(); st.next()) {
    Scalar sum = exact ? Scalar::exact(0) : Scalar::floating(0.0);
    for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next()) {
      const Scalar &v = behavior.at(*ot, *st);
      if (v.sign() < 0) {
        const double mag = -v.to_double();
        if (!exact && mag <= eps) continue;
        report.max_negativity = std::max(report.max_negativity, mag);
        report.passed = false;
      }
      sum += v;
    }
    const Scalar residual = sum - one;
    if (exact ? !residual.is_zero() : std::abs(residual.to_double()) > eps) {
      report.max_normalization_residual = std::max(
          report.max_normalization_residual, std::abs(residual.to_double()));
      report.passed = false;
    }
  }
  if (report.max_negativity > 0)
    report.failures.push_back("negative entries present");
  if (report.max_normalization_residual > 0)
    report.failures.push_back("normalization violated");
  return report;
}

namespace {

// Marginal of the parties in `subset` (ascending) at the given full setting
// tuple, as a flat vector indexed canonically over the subset's outcomes.
std::vector<Scalar> subset_marginal(const Behavior &behavior,
                                    const std::vector<int> &subset,
                                    const std::vector<int> &full_settings) {
  const Scenario &sc = behavior.scenario();
  std::vector<int> sub_radices;
  for (int p : subset) sub_radices.push_back(sc.outcomes[p]);
  std::size_t size = 1;
  for (int r : sub_radices) size *= static_cast<std::size_t>(r);
  const Scalar zero = behavior.backend() == Backend::exact
                          ? Scalar::exact(0)
                          : Scalar::floating(0.0);
  std::vector<Scalar> marginal(size, zero);
  for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next()) {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      idx += static_cast<std::size_t>((*ot)[subset[i]]) * stride;
      stride *= static_cast<std::size_t>(sub_radices[i]);
    }
    marginal[idx] += behavior.at(*ot, full_settings);
  }
  return marginal;
}

}  // namespace

NoSignalingReport no_signaling_check(const Behavior &behavior, double eps) {
  NoSignalingReport report;
  report.passed = true;
  const Scenario &sc = behavior.scenario();
  const int n = sc.parties;
  const bool exact = behavior.backend() == Backend::exact;

  // Every nonempty proper subset of parties.
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> subset, complement;
    for (int p = 0; p < n; ++p)
      ((mask >> p) & 1u) ? subset.push_back(p) : complement.push_back(p);

    std::vector<int> sub_settings_radices, comp_settings_radices;
    for (int p : subset) sub_settings_radices.push_back(sc.settings[p]);
    for (int p : complement) comp_settings_radices.push_back(sc.settings[p]);

    for (TupleIterator ss(sub_settings_radices); !ss.done(); ss.next()) {
      std::optional<std::vector<Scalar>> reference;
      for (TupleIterator cs(comp_settings_radices); !cs.done(); cs.next()) {
        std::vector<int> full(n, 0);
        for (std::size_t i = 0; i < subset.size(); ++i)
          full[subset[i]] = (*ss)[i];
        for (std::size_t i = 0; i < complement.size(); ++i)
          full[complement[i]] = (*cs)[i];
        std::vector<Scalar> marginal = subset_marginal(behavior, subset, full);
        if (!reference) {
          reference = std::move(marginal);
          continue;
        }
        for (std::size_t i = 0; i < marginal.size(); ++i) {
          const Scalar diff = marginal[i] - (*reference)[i];
          const bool violated =
              exact ? !diff.is_zero() : std::abs(diff.to_double()) > eps;
          const double mag = std::abs(diff.to_double());
          if (violated && mag >= report.worst_residual) {
            report.worst_residual = std::max(report.worst_residual, mag);
            std::ostringstream os;
            os << "marginal of parties {";
            for (int p : subset) os << " " << p;
            os << " } depends on complement settings";
            report.worst_case = os.str();
          }
          if (violated) report.passed = false;
        }
      }
    }
  }
  return report;
}

//------------------------------------------------------------------------------
// Operations
//------------------------------------------------------------------------------

Behavior marginalize(const Behavior &behavior,
                     const std::vector<int> &parties_kept) {
  const NoSignalingReport ns = no_signaling_check(behavior);
  if (!ns.passed)
    throw std::invalid_argument(
        "marginalize: signaling behavior has no well-defined marginal (" +
        ns.worst_case + ")");
  const Scenario &sc = behavior.scenario();
  Behavior out(sc.restrict_to(parties_kept), behavior.backend());

  std::vector<bool> kept(sc.parties, false);
  for (int p : parties_kept) kept[p] = true;

  for (TupleIterator st(out.scenario().settings); !st.done(); st.next()) {
    // Dropped parties measured at setting 0; no-signaling makes the choice
    // irrelevant.
    std::vector<int> full_settings(sc.parties, 0);
    for (std::size_t i = 0; i < parties_kept.size(); ++i)
      full_settings[parties_kept[i]] = (*st)[i];
    for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next()) {
      std::vector<int> kept_outcomes(parties_kept.size());
      for (std::size_t i = 0; i < parties_kept.size(); ++i)
        kept_outcomes[i] = (*ot)[parties_kept[i]];
      Scalar v = out.at(kept_outcomes, *st) + behavior.at(*ot, full_settings);
      out.set(kept_outcomes, *st, std::move(v));
    }
  }
  return out;
}

ConditionalBehavior condition(const Behavior &behavior, int party, int setting,
                              int outcome) {
  const Scenario &sc = behavior.scenario();
  if (party < 0 || party >= sc.parties)
    throw std::out_of_range("condition: bad party");
  if (setting < 0 || setting >= sc.settings[party])
    throw std::out_of_range("condition: bad setting");
  if (outcome < 0 || outcome >= sc.outcomes[party])
    throw std::out_of_range("condition: bad outcome");

  std::vector<int> rest;
  for (int p = 0; p < sc.parties; ++p)
    if (p != party) rest.push_back(p);

  ConditionalBehavior result;
  result.event = {party, setting, outcome};
  result.behavior = Behavior(sc.restrict_to(rest), behavior.backend());
  Behavior &cond = result.behavior;

  std::optional<Scalar> event_prob;
  for (TupleIterator st(cond.scenario().settings); !st.done(); st.next()) {
    std::vector<int> full_settings(sc.parties);
    full_settings[party] = setting;
    for (std::size_t i = 0; i < rest.size(); ++i)
      full_settings[rest[i]] = (*st)[i];

    Scalar prob = behavior.backend() == Backend::exact ? Scalar::exact(0)
                                                       : Scalar::floating(0.0);
    for (TupleIterator ot(cond.scenario().outcomes); !ot.done(); ot.next()) {
      std::vector<int> full_outcomes(sc.parties);
      full_outcomes[party] = outcome;
      for (std::size_t i = 0; i < rest.size(); ++i)
        full_outcomes[rest[i]] = (*ot)[i];
      prob += behavior.at(full_outcomes, full_settings);
    }
    if (!event_prob) {
      event_prob = prob;
    } else if (!event_prob->equals(prob)) {
      throw std::invalid_argument(
          "condition: event probability depends on the other parties' "
          "settings (signaling input)");
    }
  }
  if (!event_prob || event_prob->sign() <= 0)
    throw std::invalid_argument("condition: zero-probability event");
  result.event_probability = *event_prob;

  for (TupleIterator st(cond.scenario().settings); !st.done(); st.next()) {
    std::vector<int> full_settings(sc.parties);
    full_settings[party] = setting;
    for (std::size_t i = 0; i < rest.size(); ++i)
      full_settings[rest[i]] = (*st)[i];
    for (TupleIterator ot(cond.scenario().outcomes); !ot.done(); ot.next()) {
      std::vector<int> full_outcomes(sc.parties);
      full_outcomes[party] = outcome;
      for (std::size_t i = 0; i < rest.size(); ++i)
        full_outcomes[rest[i]] = (*ot)[i];
      cond.set(*ot, *st,
               behavior.at(full_outcomes, full_settings) / *event_prob);
    }
  }
  return result;
}

Behavior mix(const std::vector<std::pair<Scalar, Behavior>> &parts) {
  if (parts.empty()) throw std::invalid_argument("mix: no components");
  const Scenario &sc = parts.front().second.scenario();
  Backend backend = Backend::exact;
  Scalar weight_sum = Scalar::exact(0);
  for (const auto &[w, b] : parts) {
    if (b.scenario() != sc)
      throw std::invalid_argument("mix: scenario mismatch");
    if (w.sign() < 0) throw std::invalid_argument("mix: negative weight");
    if (!w.is_exact() || b.backend() == Backend::floating)
      backend = Backend::floating;
    weight_sum += w;
  }
  if (!weight_sum.equals(Scalar::exact(1)))
    throw std::invalid_argument("mix: weights must sum to 1");

  Behavior out(sc, backend);
  for (std::size_t i = 0; i < out.size(); ++i) {
    Scalar v = backend == Backend::exact ? Scalar::exact(0)
                                         : Scalar::floating(0.0);
    for (const auto &[w, b] : parts) v += w * b.at_flat(i);
    out.set_flat(i, std::move(v));
  }
  return out;
}

//------------------------------------------------------------------------------
// Builders
//------------------------------------------------------------------------------

Behavior uniform_behavior(const Scenario &scenario, Backend backend) {
  Behavior out(scenario, backend);
  const Scalar v =
      Scalar::exact(1, static_cast<long>(scenario.outcome_tuple_count()))
          .to_backend(backend);
  for (std::size_t i = 0; i < out.size(); ++i) out.set_flat(i, v);
  return out;
}

Behavior deterministic_behavior(const Scenario &scenario,
                                const std::vector<std::vector<int>> &choices) {
  if (static_cast<int>(choices.size()) != scenario.parties)
    throw std::invalid_argument("deterministic_behavior: party count");
  for (int p = 0; p < scenario.parties; ++p)
    if (static_cast<int>(choices[p].size()) != scenario.settings[p])
      throw std::invalid_argument("deterministic_behavior: setting count");

  Behavior out(scenario, Backend::exact);
  for (TupleIterator st(scenario.settings); !st.done(); st.next()) {
    std::vector<int> outcome(scenario.parties);
    for (int p = 0; p < scenario.parties; ++p)
      outcome[p] = choices[p][(*st)[p]];
    out.set(outcome, *st, Scalar::exact(1));
  }
  return out;
}

}  // namespace nonloc
