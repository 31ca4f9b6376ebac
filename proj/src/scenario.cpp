#include "nonloc/scenario.hpp"

#include <sstream>
#include <stdexcept>

namespace nonloc {

Scenario::Scenario(int n_parties, std::vector<int> settings_per_party,
                   std::vector<int> outcomes_per_party)
    : parties(n_parties),
      settings(std::move(settings_per_party)),
      outcomes(std::move(outcomes_per_party)) {
  if (parties <= 0) throw std::invalid_argument("Scenario: need >= 1 party");
  if (static_cast<int>(settings.size()) != parties ||
      static_cast<int>(outcomes.size()) != parties)
    throw std::invalid_argument("Scenario: per-party list length mismatch");
  for (int p = 0; p < parties; ++p) {
    if (settings[p] < 1 || outcomes[p] < 1)
      throw std::invalid_argument("Scenario: counts must be >= 1");
  }
}

Scenario Scenario::uniform(int n_parties, int n_settings, int n_outcomes) {
  return Scenario(n_parties, std::vector<int>(n_parties, n_settings),
                  std::vector<int>(n_parties, n_outcomes));
}

Scenario Scenario::pair_game() { return Scenario(3, {2, 3, 2}, {2, 4, 2}); }

std::size_t Scenario::outcome_tuple_count() const {
  std::size_t n = 1;
  for (int k : outcomes) n *= static_cast<std::size_t>(k);
  return n;
}

std::size_t Scenario::setting_tuple_count() const {
  std::size_t n = 1;
  for (int m : settings) n *= static_cast<std::size_t>(m);
  return n;
}

static std::size_t tuple_index(const std::vector<int> &tuple,
                               const std::vector<int> &radices) {
  if (tuple.size() != radices.size())
    throw std::invalid_argument("Scenario: tuple length mismatch");
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (std::size_t p = 0; p < tuple.size(); ++p) {
    if (tuple[p] < 0 || tuple[p] >= radices[p])
      throw std::out_of_range("Scenario: tuple entry out of range");
    idx += static_cast<std::size_t>(tuple[p]) * stride;
    stride *= static_cast<std::size_t>(radices[p]);
  }
  return idx;
}

static std::vector<int> tuple_decode(std::size_t index,
                                     const std::vector<int> &radices) {
  std::vector<int> tuple(radices.size());
  for (std::size_t p = 0; p < radices.size(); ++p) {
    tuple[p] = static_cast<int>(index % static_cast<std::size_t>(radices[p]));
    index /= static_cast<std::size_t>(radices[p]);
  }
  return tuple;
}

std::size_t Scenario::outcome_index(const std::vector<int> &t) const {
  return tuple_index(t, outcomes);
}
std::size_t Scenario::setting_index(const std::vector<int> &t) const {
  return tuple_index(t, settings);
}
std::vector<int> Scenario::outcome_tuple(std::size_t index) const {
  return tuple_decode(index, outcomes);
}
std::vector<int> Scenario::setting_tuple(std::size_t index) const {
  return tuple_decode(index, settings);
}

Scenario Scenario::restrict_to(const std::vector<int> &parties_kept) const {
  std::vector<int> s, o;
  for (int p : parties_kept) {
    if (p < 0 || p >= parties)
      throw std::out_of_range("Scenario: bad party index");
    s.push_back(settings[p]);
    o.push_back(outcomes[p]);
  }
  return Scenario(static_cast<int>(parties_kept.size()), std::move(s),
                  std::move(o));
}

std::string Scenario::str() const {
  std::ostringstream os;
  os << "(" << parties << "; settings";
  for (int m : settings) os << " " << m;
  os << "; outcomes";
  for (int k : outcomes) os << " " << k;
  os << ")";
  return os.str();
}

}  // namespace nonloc
