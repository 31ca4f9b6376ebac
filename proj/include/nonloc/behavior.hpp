#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nonloc/scalar.hpp"
#include "nonloc/scenario.hpp"

namespace nonloc {

//------------------------------------------------------------------------------
// Behavior: settings-conditional outcome distribution P(outcomes|settings)
//------------------------------------------------------------------------------

// Dense table of Scalars in the canonical order: the flat index is
// setting_index * outcome_tuple_count + outcome_index, with party 0 varying
// fastest inside each tuple. Values are immutable after construction except
// through set(), which builders use; all operations return new tables.
class Behavior {
 public:
  Behavior() = default;
  Behavior(Scenario scenario, Backend backend);

  const Scenario &scenario() const { return scenario_; }
  Backend backend() const { return backend_; }
  std::size_t size() const { return entries_.size(); }

  const Scalar &at(const std::vector<int> &outcomes,
                   const std::vector<int> &settings) const;
  const Scalar &at_flat(std::size_t flat) const { return entries_[flat]; }
  void set(const std::vector<int> &outcomes, const std::vector<int> &settings,
           Scalar value);
  void set_flat(std::size_t flat, Scalar value);

  const std::vector<Scalar> &entries() const { return entries_; }

  // Probability of one party producing `outcome` under `setting`, computed
  // from the given settings of the other parties.
  Scalar marginal_probability(int party, int setting, int outcome,
                              const std::vector<int> &other_settings) const;

  Behavior to_backend(Backend target) const;

  bool equals(const Behavior &o, double eps = kFloatEps) const;

 private:
  Scenario scenario_;
  Backend backend_ = Backend::exact;
  std::vector<Scalar> entries_;
};

struct ConditioningEvent {
  int party = 0;
  int setting = 0;
  int outcome = 0;
};

// Behavior of the remaining parties after conditioning on one party's
// setting/outcome event; event_probability is the (setting-independent)
// probability of that event.
struct ConditionalBehavior {
  Behavior behavior;
  ConditioningEvent event;
  Scalar event_probability;
};

//------------------------------------------------------------------------------
// Structural checks
//------------------------------------------------------------------------------

struct ValidationReport {
  bool passed = false;
  // Worst violations, as magnitudes; exactly zero when the table is clean.
  double max_negativity = 0.0;
  double max_normalization_residual = 0.0;
  std::vector<std::string> failures;
};

// Nonnegativity and per-setting normalization. Exact tables must be exact;
// float tables are checked against eps.
ValidationReport validate(const Behavior &behavior, double eps = kFloatEps);

struct NoSignalingReport {
  bool passed = false;
  double worst_residual = 0.0;
  // Description of the worst offending (party subset, settings) pair.
  std::string worst_case;
};

// Marginals of every proper party subset must not depend on the settings of
// the complementary parties. Exact equality in exact mode.
NoSignalingReport no_signaling_check(const Behavior &behavior,
                                     double eps = kFloatEps);

//------------------------------------------------------------------------------
// Operations
//------------------------------------------------------------------------------

// Marginal behavior over `parties_kept` (order respected). Requires a
// no-signaling input so the marginal is independent of dropped settings.
Behavior marginalize(const Behavior &behavior,
                     const std::vector<int> &parties_kept);

// Conditions on (party, setting, outcome). The event probability must be
// positive and independent of the other parties' settings.
ConditionalBehavior condition(const Behavior &behavior, int party, int setting,
                              int outcome);

// Entrywise convex combination; weights must be nonnegative and sum to one.
Behavior mix(const std::vector<std::pair<Scalar, Behavior>> &parts);

//------------------------------------------------------------------------------
// Builders
//------------------------------------------------------------------------------

Behavior uniform_behavior(const Scenario &scenario,
                          Backend backend = Backend::exact);

// Product local deterministic behavior: per party, a map setting -> outcome.
Behavior deterministic_behavior(const Scenario &scenario,
                                const std::vector<std::vector<int>> &choices);

}  // namespace nonloc
