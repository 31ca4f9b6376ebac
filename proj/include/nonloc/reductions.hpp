#pragma once

#include <optional>
#include <vector>

#include "nonloc/behavior.hpp"

namespace nonloc {

// Factorization of a behavior around a single-setting party: the party's
// outcome distribution (weights) and, per outcome, the conditional behavior
// of the remaining parties. Outcomes of probability zero carry no
// conditional.
struct LambdaDecomposition {
  int party = 0;
  std::vector<Scalar> weights;
  std::vector<std::optional<Behavior>> conditionals;
};

// Splits off a party that has exactly one measurement setting:
// P(A,rest|settings) = P(A) * P(rest|settings, A). The party's outcome
// distribution must not depend on the other parties' settings.
LambdaDecomposition drop_single_setting_party(const Behavior &behavior,
                                              int party);

// Inverse construction: a shared classical variable Lambda with the given
// distribution is announced by `reporting_party` (one setting, one outcome
// per Lambda value) while the rest follow the matching conditional.
Behavior simulate_with_shared_lambda(
    const std::vector<Scalar> &weights,
    const std::vector<std::optional<Behavior>> &conditionals,
    int reporting_party);

// Adds one extra setting to `party` that deterministically reports outcome 0
// while the other parties see the marginal of `source_setting`:
// P(A=0, rest | new setting) = P(rest | source_setting). Requires a
// no-signaling input.
Behavior add_single_outcome_setting(const Behavior &behavior, int party,
                                    int source_setting);

}  // namespace nonloc
