#include "nonloc/reductions.hpp"

#include <stdexcept>

namespace nonloc {

LambdaDecomposition drop_single_setting_party(const Behavior &behavior,
                                              int party) {
  const Scenario &sc = behavior.scenario();
  if (party < 0 || party >= sc.parties)
    throw std::out_of_range("drop_single_setting_party: bad party");
  if (sc.settings[party] != 1)
    throw std::invalid_argument(
        "drop_single_setting_party: party must have exactly one setting");

  std::vector<int> rest;
  for (int p = 0; p < sc.parties; ++p)
    if (p != party) rest.push_back(p);
  std::vector<int> rest_settings_radices;
  for (int p : rest) rest_settings_radices.push_back(sc.settings[p]);

  LambdaDecomposition result;
  result.party = party;
  for (int outcome = 0; outcome < sc.outcomes[party]; ++outcome) {
    // P(A = outcome) from the first rest-setting tuple; verify it does not
    // depend on the choice.
    std::optional<Scalar> weight;
    for (TupleIterator rs(rest_settings_radices); !rs.done(); rs.next()) {
      std::vector<int> full(sc.parties, 0);
      for (std::size_t i = 0; i < rest.size(); ++i) full[rest[i]] = (*rs)[i];
      const Scalar p =
          behavior.marginal_probability(party, 0, outcome, full);
      if (!weight)
        weight = p;
      else if (!weight->equals(p))
        throw std::invalid_argument(
            "drop_single_setting_party: party marginal depends on other "
            "settings");
    }
    result.weights.push_back(*weight);
    if (weight->sign() > 0) {
      result.conditionals.push_back(
          condition(behavior, party, 0, outcome).behavior);
    } else {
      result.conditionals.push_back(std::nullopt);
    }
  }
  return result;
}

Behavior simulate_with_shared_lambda(
    const std::vector<Scalar> &weights,
    const std::vector<std::optional<Behavior>> &conditionals,
    int reporting_party) {
  if (weights.empty() || weights.size() != conditionals.size())
    throw std::invalid_argument(
        "simulate_with_shared_lambda: weights/behaviors misaligned");

  const Behavior *reference = nullptr;
  Scalar total = Scalar::exact(0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].sign() < 0)
      throw std::invalid_argument(
          "simulate_with_shared_lambda: negative weight");
    total += weights[i];
    if (weights[i].sign() > 0 && !conditionals[i])
      throw std::invalid_argument(
          "simulate_with_shared_lambda: missing conditional for a positive "
          "weight");
    if (conditionals[i]) {
      if (reference && reference->scenario() != conditionals[i]->scenario())
        throw std::invalid_argument(
            "simulate_with_shared_lambda: conditional scenarios differ");
      if (!reference) reference = &*conditionals[i];
    }
  }
  if (!total.equals(Scalar::exact(1)))
    throw std::invalid_argument(
        "simulate_with_shared_lambda: weights must sum to 1");
  if (!reference)
    throw std::invalid_argument(
        "simulate_with_shared_lambda: no conditional behaviors given");

  const Scenario &rest_sc = reference->scenario();
  if (reporting_party < 0 || reporting_party > rest_sc.parties)
    throw std::out_of_range("simulate_with_shared_lambda: bad party index");

  std::vector<int> settings, outcomes;
  for (int p = 0; p < rest_sc.parties + 1; ++p) {
    if (p == reporting_party) {
      settings.push_back(1);
      outcomes.push_back(static_cast<int>(weights.size()));
    } else {
      const int q = p < reporting_party ? p : p - 1;
      settings.push_back(rest_sc.settings[q]);
      outcomes.push_back(rest_sc.outcomes[q]);
    }
  }
  Behavior out(Scenario(rest_sc.parties + 1, settings, outcomes),
               reference->backend());

  for (TupleIterator st(out.scenario().settings); !st.done(); st.next()) {
    std::vector<int> rest_settings;
    for (int p = 0; p < out.scenario().parties; ++p)
      if (p != reporting_party) rest_settings.push_back((*st)[p]);
    for (TupleIterator ot(out.scenario().outcomes); !ot.done(); ot.next()) {
      const int lambda = (*ot)[reporting_party];
      if (weights[lambda].sign() == 0) continue;
      std::vector<int> rest_outcomes;
      for (int p = 0; p < out.scenario().parties; ++p)
        if (p != reporting_party) rest_outcomes.push_back((*ot)[p]);
      out.set(*ot, *st,
              weights[lambda] *
                  conditionals[lambda]->at(rest_outcomes, rest_settings));
    }
  }
  return out;
}

Behavior add_single_outcome_setting(const Behavior &behavior, int party,
                                    int source_setting) {
  const Scenario &sc = behavior.scenario();
  if (party < 0 || party >= sc.parties)
    throw std::out_of_range("add_single_outcome_setting: bad party");
  if (source_setting < 0 || source_setting >= sc.settings[party])
    throw std::out_of_range("add_single_outcome_setting: bad source setting");
  const NoSignalingReport ns = no_signaling_check(behavior);
  if (!ns.passed)
    throw std::invalid_argument(
        "add_single_outcome_setting: signaling input (" + ns.worst_case + ")");

  std::vector<int> settings = sc.settings;
  const int new_setting = settings[party]++;
  Behavior out(Scenario(sc.parties, settings, sc.outcomes),
               behavior.backend());

  for (TupleIterator st(out.scenario().settings); !st.done(); st.next()) {
    std::vector<int> src_settings = *st;
    const bool extended = (*st)[party] == new_setting;
    if (extended) src_settings[party] = source_setting;
    for (TupleIterator ot(sc.outcomes); !ot.done(); ot.next()) {
      if (!extended) {
        out.set(*ot, *st, behavior.at(*ot, src_settings));
        continue;
      }
      // The added setting relabels every outcome of `party` to 0.
      if ((*ot)[party] != 0) continue;
      Scalar total = behavior.backend() == Backend::exact
                         ? Scalar::exact(0)
                         : Scalar::floating(0.0);
      std::vector<int> src_outcomes = *ot;
      for (int a = 0; a < sc.outcomes[party]; ++a) {
        src_outcomes[party] = a;
        total += behavior.at(src_outcomes, src_settings);
      }
      out.set(*ot, *st, std::move(total));
    }
  }
  return out;
}

}  // namespace nonloc
