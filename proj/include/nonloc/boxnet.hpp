#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nonloc/behavior.hpp"

namespace nonloc {

//------------------------------------------------------------------------------
// Network model
//------------------------------------------------------------------------------

// A PR box shared between two parties: on inputs (u, v) it emits outputs
// (o_l, o_r) with o_l uniform and o_l xor o_r = u*v, so each side's marginal
// is an unbiased coin.
struct PRBox {
  std::string id;
  int left_party = 0;
  int right_party = 0;
};

// Input bit fed into one side of a box: for each setting of the owning
// party, a constant XORed with a subset of the bits that party has received
// so far (shared bits first, then this party's box outputs in box order).
struct InputWire {
  std::vector<std::uint8_t> constants;     // [setting]
  std::vector<std::vector<int>> taps;      // [setting] -> received-bit indices

  static InputWire zero(int settings) {
    InputWire w;
    w.constants.assign(settings, 0);
    w.taps.assign(settings, {});
    return w;
  }
};

// One outcome bit: per-setting constant XOR a per-setting subset of all
// bits the party received. A party with 2^k outcomes carries k bits, least
// significant first.
struct OutcomeBit {
  std::vector<std::uint8_t> constants;
  std::vector<std::vector<int>> taps;
};

struct OutcomeMap {
  std::vector<OutcomeBit> bits;
};

// Ordered DAG of PR boxes plus globally shared random bits. Causality:
// a wire may tap only shared bits and outputs of earlier boxes.
struct BoxNetwork {
  Scenario scenario;
  int shared_bits = 0;
  std::vector<PRBox> boxes;
  std::vector<std::array<InputWire, 2>> wires;  // [box][side]; 0 = left
  std::vector<OutcomeMap> outcome_maps;         // [party]

  // Free random bits driving one evaluation: shared bits then one per box.
  int free_bits() const {
    return shared_bits + static_cast<int>(boxes.size());
  }
};

struct NetworkDiagnostics {
  bool passed = false;
  std::vector<std::string> failures;
};

// Structural validation: party indices, wire arities, causality of taps,
// power-of-two outcome counts matching the bit maps.
NetworkDiagnostics validate_network(const BoxNetwork &network);

// Number of bits `party` has received before box `box_index` runs.
int received_prefix(const BoxNetwork &network, int party, int box_index);

//------------------------------------------------------------------------------
// Evaluation
//------------------------------------------------------------------------------

// Exact behavior of the network: uniform enumeration of the 2^free_bits
// internal assignments per setting tuple; entries are dyadic rationals.
Behavior evaluate(const BoxNetwork &network);

//------------------------------------------------------------------------------
// Exhaustive wiring search
//------------------------------------------------------------------------------

// Candidate-family description: fixed boxes/shared bits, with explicit
// per-side wire candidates and per-party outcome-map candidates. The
// candidate index decomposes mixed-radix with box 0's left side fastest,
// then its right side, box 1, ..., then outcome maps of party 0, 1, ...
struct WiringFamily {
  Scenario scenario;
  int shared_bits = 0;
  std::vector<PRBox> boxes;
  std::vector<std::array<std::vector<InputWire>, 2>> wire_candidates;
  std::vector<std::vector<OutcomeMap>> outcome_candidates;

  std::uint64_t size() const;
  BoxNetwork instantiate(std::uint64_t index) const;
};

struct SearchResult {
  std::optional<BoxNetwork> network;
  std::uint64_t candidate_index = 0;   // valid when network is set
  std::uint64_t candidates_checked = 0;
};

// First (lowest-index) network whose exact evaluated behavior equals
// `target`; parallel workers scan deterministic chunks and the lowest
// matching index wins regardless of completion order.
SearchResult search_wiring(const WiringFamily &family, const Behavior &target,
                           int threads = 0);

// Generic-predicate variant (slower; evaluates an exact Behavior per
// candidate).
SearchResult search_wiring(const WiringFamily &family,
                           const std::function<bool(const Behavior &)> &pred,
                           int threads = 0);

// Candidate-list helpers. Constant wires enumerate the 2^settings
// per-setting-constant functions (setting 0 least significant). Affine
// wires enumerate per-setting (constant, tap-subset) codes over the given
// universe, code = constant + 2 * subset_bits, setting 0 fastest.
std::vector<InputWire> constant_wires(int settings);
std::vector<InputWire> affine_wires(int settings,
                                    const std::vector<int> &tap_universe);
// One-bit outcome maps: subset of the universe fixed across settings
// (subset code slowest), per-setting constants fastest.
std::vector<OutcomeMap> one_bit_outcome_maps(
    int settings, const std::vector<int> &tap_universe);

//------------------------------------------------------------------------------
// Constructions
//------------------------------------------------------------------------------

// Single PR box reported directly: the bipartite table delta_{A xor C, XZ}/2.
BoxNetwork pr_box_network();

// Frozen two-box network reproducing swap_witness_ns_table exactly: a
// Charlie-Alice box feeding Alice's input of an Alice-Bob box.
BoxNetwork swap_boxnet();

// The search family (declared in the docs) that regenerates swap_boxnet;
// search_wiring(family, swap_witness_ns_table()) finds it.
WiringFamily swap_boxnet_family();

// Frozen five-box + shared-bit network winning the pair-outcome game with
// probability 1. Bob's second-box inputs are (0,1,0) by construction and
// the outcome maps are the XOR forms fixed by the construction.
BoxNetwork pair_game_boxnet();

// Deterministic staged search that regenerates pair_game_boxnet within the
// declared family; returns the found network (or nullopt, never a
// fabricated one).
struct StagedSearchResult {
  std::optional<BoxNetwork> network;
  std::uint64_t stage_a_survivors = 0;
  std::uint64_t stage_b_survivors = 0;
  std::uint64_t candidates_checked = 0;
};
StagedSearchResult regenerate_pair_game_boxnet();

}  // namespace nonloc
