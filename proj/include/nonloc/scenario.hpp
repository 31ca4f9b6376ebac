#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nonloc {

// Measurement scenario: number of parties plus per-party setting and
// outcome counts. (3,2,2) is Scenario(3, {2,2,2}, {2,2,2}).
struct Scenario {
  int parties = 0;
  std::vector<int> settings;
  std::vector<int> outcomes;

  Scenario() = default;
  Scenario(int n_parties, std::vector<int> settings_per_party,
           std::vector<int> outcomes_per_party);

  static Scenario uniform(int n_parties, int n_settings, int n_outcomes);
  // (3 parties; settings 2,3,2; outcomes 2,4,2) of the pair-outcome game.
  static Scenario pair_game();

  std::size_t outcome_tuple_count() const;
  std::size_t setting_tuple_count() const;
  std::size_t table_size() const {
    return outcome_tuple_count() * setting_tuple_count();
  }

  // Canonical tuple indexing: party 0 varies fastest.
  std::size_t outcome_index(const std::vector<int> &outcome_tuple) const;
  std::size_t setting_index(const std::vector<int> &setting_tuple) const;
  std::vector<int> outcome_tuple(std::size_t index) const;
  std::vector<int> setting_tuple(std::size_t index) const;

  // Scenario over a subset of parties, in the order given.
  Scenario restrict_to(const std::vector<int> &parties_kept) const;

  bool operator==(const Scenario &o) const {
    return parties == o.parties && settings == o.settings &&
           outcomes == o.outcomes;
  }
  bool operator!=(const Scenario &o) const { return !(*this == o); }

  std::string str() const;
};

// Iterates all tuples with the given radices, position 0 fastest.
class TupleIterator {
 public:
  explicit TupleIterator(std::vector<int> radices)
      : radices_(std::move(radices)), tuple_(radices_.size(), 0) {
    for (int r : radices_) done_ = done_ || r <= 0;
  }

  bool done() const { return done_; }
  const std::vector<int> &operator*() const { return tuple_; }
  void next() {
    for (std::size_t i = 0; i < tuple_.size(); ++i) {
      if (++tuple_[i] < radices_[i]) return;
      tuple_[i] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<int> radices_;
  std::vector<int> tuple_;
  bool done_ = false;
};

}  // namespace nonloc
