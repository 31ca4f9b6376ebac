#include "nonloc/boxnet.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "nonloc/games.hpp"

namespace nonloc {

//------------------------------------------------------------------------------
// Validation
//------------------------------------------------------------------------------

int received_prefix(const BoxNetwork &network, int party, int box_index) {
  int count = network.shared_bits;
  for (int i = 0; i < box_index; ++i) {
    if (network.boxes[i].left_party == party) ++count;
    if (network.boxes[i].right_party == party) ++count;
  }
  return count;
}

namespace {

int total_received(const BoxNetwork &network, int party) {
  return received_prefix(network, party,
                         static_cast<int>(network.boxes.size()));
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_int(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

}  // namespace

NetworkDiagnostics validate_network(const BoxNetwork &network) {
  NetworkDiagnostics d;
  d.passed = true;
  auto fail = [&](const std::string &msg) {
    d.passed = false;
    d.failures.push_back(msg);
  };

  const Scenario &sc = network.scenario;
  if (network.shared_bits < 0) fail("negative shared bit count");
  if (network.wires.size() != network.boxes.size())
    fail("wire list does not match box list");

  for (std::size_t i = 0; i < network.boxes.size(); ++i) {
    const PRBox &box = network.boxes[i];
    if (box.left_party < 0 || box.left_party >= sc.parties ||
        box.right_party < 0 || box.right_party >= sc.parties)
      fail("box '" + box.id + "': party out of range");
    else if (box.left_party == box.right_party)
      fail("box '" + box.id + "': both sides on one party");
    if (i >= network.wires.size()) continue;
    for (int side = 0; side < 2; ++side) {
      const int party = side == 0 ? box.left_party : box.right_party;
      if (party < 0 || party >= sc.parties) continue;
      const InputWire &w = network.wires[i][side];
      if (static_cast<int>(w.constants.size()) != sc.settings[party] ||
          static_cast<int>(w.taps.size()) != sc.settings[party]) {
        fail("box '" + box.id + "': wire arity != owner settings");
        continue;
      }
      const int prefix = received_prefix(network, party,
                                         static_cast<int>(i));
      for (const auto &subset : w.taps)
        for (int t : subset)
          if (t < 0 || t >= prefix)
            fail("box '" + box.id + "': tap breaks causality");
    }
  }

  if (static_cast<int>(network.outcome_maps.size()) != sc.parties) {
    fail("outcome map count != parties");
    return d;
  }
  for (int p = 0; p < sc.parties; ++p) {
    if (!is_power_of_two(sc.outcomes[p])) {
      fail("party outcome count must be a power of two");
      continue;
    }
    const OutcomeMap &map = network.outcome_maps[p];
    if (static_cast<int>(map.bits.size()) != log2_int(sc.outcomes[p])) {
      fail("outcome bit count mismatch");
      continue;
    }
    const int received = total_received(network, p);
    for (const OutcomeBit &bit : map.bits) {
      if (static_cast<int>(bit.constants.size()) != sc.settings[p] ||
          static_cast<int>(bit.taps.size()) != sc.settings[p]) {
        fail("outcome bit arity != settings");
        continue;
      }
      for (const auto &subset : bit.taps)
        for (int t : subset)
          if (t < 0 || t >= received) fail("outcome tap out of range");
    }
  }
  return d;
}

//------------------------------------------------------------------------------
// Exact evaluation (reference enumeration)
//------------------------------------------------------------------------------

namespace {

std::uint8_t eval_wire(const InputWire &w, int setting,
                       const std::vector<std::uint8_t> &received) {
  std::uint8_t b = w.constants[setting];
  for (int t : w.taps[setting]) b ^= received[t];
  return b & 1u;
}

std::uint8_t eval_bit(const OutcomeBit &bit, int setting,
                      const std::vector<std::uint8_t> &received) {
  std::uint8_t b = bit.constants[setting];
  for (int t : bit.taps[setting]) b ^= received[t];
  return b & 1u;
}

}  // namespace

Behavior evaluate(const BoxNetwork &network) {
  const NetworkDiagnostics d = validate_network(network);
  if (!d.passed) {
    std::string msg = "evaluate:";
    for (const auto &f : d.failures) msg += " " + f + ";";
    throw std::invalid_argument(msg);
  }
  const Scenario &sc = network.scenario;
  const int nf = network.free_bits();
  if (nf > 24) throw std::invalid_argument("evaluate: too many free bits");
  const std::uint64_t assignments = 1ull << nf;

  Behavior out(sc, Backend::exact);
  std::vector<std::uint64_t> counts;
  std::vector<std::vector<std::uint8_t>> received(sc.parties);
  std::vector<int> outcome(sc.parties);

  for (TupleIterator st(sc.settings); !st.done(); st.next()) {
    counts.assign(sc.outcome_tuple_count(), 0);
    for (std::uint64_t a = 0; a < assignments; ++a) {
      for (int p = 0; p < sc.parties; ++p) {
        received[p].clear();
        for (int s = 0; s < network.shared_bits; ++s)
          received[p].push_back((a >> s) & 1u);
      }
      for (std::size_t i = 0; i < network.boxes.size(); ++i) {
        const PRBox &box = network.boxes[i];
        const std::uint8_t u = eval_wire(network.wires[i][0],
                                         (*st)[box.left_party],
                                         received[box.left_party]);
        const std::uint8_t v = eval_wire(network.wires[i][1],
                                         (*st)[box.right_party],
                                         received[box.right_party]);
        const std::uint8_t t = (a >> (network.shared_bits + i)) & 1u;
        received[box.left_party].push_back(t);
        received[box.right_party].push_back(t ^ (u & v));
      }
      for (int p = 0; p < sc.parties; ++p) {
        int idx = 0;
        const OutcomeMap &map = network.outcome_maps[p];
        for (std::size_t b = 0; b < map.bits.size(); ++b)
          idx |= eval_bit(map.bits[b], (*st)[p], received[p]) << b;
        outcome[p] = idx;
      }
      ++counts[sc.outcome_index(outcome)];
    }
    const std::size_t base = sc.setting_index(*st) * sc.outcome_tuple_count();
    for (std::size_t o = 0; o < counts.size(); ++o) {
      Rat r(static_cast<unsigned long>(counts[o]),
            static_cast<unsigned long>(assignments));
      r.canonicalize();
      out.set_flat(base + o, Scalar::exact(Rat(r)));
    }
  }
  return out;
}

//------------------------------------------------------------------------------
// Bitmask evaluation (shared by the searches)
//------------------------------------------------------------------------------

namespace {

// Truth tables over all assignments of up to 6 free bits, packed in a
// uint64. Bit j of a mask is the expression's value when the free bits
// take the values encoded by j (bit v of j = free bit v).
struct MaskCtx {
  int n_vars = 0;
  std::uint64_t ones = 0;
  std::array<std::uint64_t, 6> var{};
};

MaskCtx make_mask_ctx(int n_vars) {
  if (n_vars > 6) throw std::invalid_argument("mask context: > 6 free bits");
  MaskCtx ctx;
  ctx.n_vars = n_vars;
  const std::uint64_t count = 1ull << n_vars;
  ctx.ones = count == 64 ? ~0ull : ((1ull << count) - 1);
  for (int v = 0; v < n_vars; ++v) {
    std::uint64_t m = 0;
    for (std::uint64_t j = 0; j < count; ++j)
      if ((j >> v) & 1u) m |= 1ull << j;
    ctx.var[v] = m;
  }
  return ctx;
}

std::uint64_t wire_mask(const InputWire &w, int setting,
                        const std::vector<std::uint64_t> &received,
                        std::uint64_t ones) {
  std::uint64_t m = w.constants[setting] ? ones : 0;
  for (int t : w.taps[setting]) m ^= received[t];
  return m;
}

std::uint64_t bit_mask(const OutcomeBit &bit, int setting,
                       const std::vector<std::uint64_t> &received,
                       std::uint64_t ones) {
  std::uint64_t m = bit.constants[setting] ? ones : 0;
  for (int t : bit.taps[setting]) m ^= received[t];
  return m;
}

// Borrowed view of one candidate: wires/maps point into the family's pools.
struct NetworkView {
  const Scenario *scenario = nullptr;
  int shared_bits = 0;
  const std::vector<PRBox> *boxes = nullptr;
  std::vector<const InputWire *> left, right;
  std::vector<const OutcomeMap *> maps;
};

NetworkView view_of(const BoxNetwork &n) {
  NetworkView v;
  v.scenario = &n.scenario;
  v.shared_bits = n.shared_bits;
  v.boxes = &n.boxes;
  for (std::size_t i = 0; i < n.boxes.size(); ++i) {
    v.left.push_back(&n.wires[i][0]);
    v.right.push_back(&n.wires[i][1]);
  }
  for (const OutcomeMap &m : n.outcome_maps) v.maps.push_back(&m);
  return v;
}

// Exact outcome counts (denominator 2^free_bits), one row per setting
// tuple in canonical order.
void mask_counts(const NetworkView &net, const MaskCtx &ctx,
                 std::vector<std::uint32_t> &counts) {
  const Scenario &sc = *net.scenario;
  const std::uint64_t assignments = 1ull << ctx.n_vars;
  counts.assign(sc.table_size(), 0);

  std::vector<std::vector<std::uint64_t>> received(sc.parties);
  std::vector<std::vector<std::uint64_t>> outcome_bits(sc.parties);

  for (TupleIterator st(sc.settings); !st.done(); st.next()) {
    for (int p = 0; p < sc.parties; ++p) {
      received[p].clear();
      for (int s = 0; s < net.shared_bits; ++s)
        received[p].push_back(ctx.var[s]);
    }
    for (std::size_t i = 0; i < net.boxes->size(); ++i) {
      const PRBox &box = (*net.boxes)[i];
      const std::uint64_t u = wire_mask(*net.left[i], (*st)[box.left_party],
                                        received[box.left_party], ctx.ones);
      const std::uint64_t v = wire_mask(*net.right[i], (*st)[box.right_party],
                                        received[box.right_party], ctx.ones);
      const std::uint64_t t = ctx.var[net.shared_bits + i];
      received[box.left_party].push_back(t);
      received[box.right_party].push_back(t ^ (u & v));
    }
    for (int p = 0; p < sc.parties; ++p) {
      outcome_bits[p].clear();
      for (const OutcomeBit &bit : net.maps[p]->bits)
        outcome_bits[p].push_back(
            bit_mask(bit, (*st)[p], received[p], ctx.ones));
    }
    const std::size_t base = sc.setting_index(*st) * sc.outcome_tuple_count();
    for (std::uint64_t j = 0; j < assignments; ++j) {
      std::size_t idx = 0;
      std::size_t stride = 1;
      for (int p = 0; p < sc.parties; ++p) {
        int o = 0;
        for (std::size_t b = 0; b < outcome_bits[p].size(); ++b)
          o |= static_cast<int>((outcome_bits[p][b] >> j) & 1u) << b;
        idx += static_cast<std::size_t>(o) * stride;
        stride *= static_cast<std::size_t>(sc.outcomes[p]);
      }
      ++counts[base + idx];
    }
  }
}

}  // namespace

//------------------------------------------------------------------------------
// Wiring family and search
//------------------------------------------------------------------------------

std::uint64_t WiringFamily::size() const {
  std::uint64_t n = 1;
  for (const auto &sides : wire_candidates)
    n *= static_cast<std::uint64_t>(sides[0].size()) *
         static_cast<std::uint64_t>(sides[1].size());
  for (const auto &maps : outcome_candidates)
    n *= static_cast<std::uint64_t>(maps.size());
  return n;
}

namespace {

NetworkView decode_candidate(const WiringFamily &family, std::uint64_t index) {
  NetworkView v;
  v.scenario = &family.scenario;
  v.shared_bits = family.shared_bits;
  v.boxes = &family.boxes;
  for (const auto &sides : family.wire_candidates) {
    v.left.push_back(&sides[0][index % sides[0].size()]);
    index /= sides[0].size();
    v.right.push_back(&sides[1][index % sides[1].size()]);
    index /= sides[1].size();
  }
  for (const auto &maps : family.outcome_candidates) {
    v.maps.push_back(&maps[index % maps.size()]);
    index /= maps.size();
  }
  return v;
}

BoxNetwork materialize(const NetworkView &v) {
  BoxNetwork n;
  n.scenario = *v.scenario;
  n.shared_bits = v.shared_bits;
  n.boxes = *v.boxes;
  for (std::size_t i = 0; i < v.left.size(); ++i)
    n.wires.push_back({*v.left[i], *v.right[i]});
  for (const OutcomeMap *m : v.maps) n.outcome_maps.push_back(*m);
  return n;
}

void check_family(const WiringFamily &family) {
  if (family.wire_candidates.size() != family.boxes.size())
    throw std::invalid_argument("search: wire candidates per box required");
  if (static_cast<int>(family.outcome_candidates.size()) !=
      family.scenario.parties)
    throw std::invalid_argument("search: outcome candidates per party");
  for (const auto &sides : family.wire_candidates)
    if (sides[0].empty() || sides[1].empty())
      throw std::invalid_argument("search: empty candidate list");
  for (const auto &maps : family.outcome_candidates)
    if (maps.empty())
      throw std::invalid_argument("search: empty outcome candidate list");
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

}  // namespace

BoxNetwork WiringFamily::instantiate(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("instantiate: index");
  return materialize(decode_candidate(*this, index));
}

SearchResult search_wiring(const WiringFamily &family, const Behavior &target,
                           int threads) {
  check_family(family);
  if (target.scenario() != family.scenario)
    throw std::invalid_argument("search: target scenario mismatch");

  const int nf =
      family.shared_bits + static_cast<int>(family.boxes.size());
  const std::uint64_t n = family.size();
  SearchResult result;

  // Networks emit dyadic probabilities with denominator 2^free_bits; a
  // target outside that grid can never match.
  const std::uint64_t assignments = 1ull << nf;
  std::vector<std::uint32_t> target_counts(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Scalar scaled =
        target.at_flat(i) * Scalar::exact(static_cast<long>(assignments));
    if (!scaled.is_exact()) {
      result.candidates_checked = 0;
      return result;
    }
    const Quad &q = scaled.quad();
    if (q.b != 0 || q.a.get_den() != 1 || q.a < 0) {
      result.candidates_checked = 0;
      return result;
    }
    target_counts[i] = static_cast<std::uint32_t>(q.a.get_num().get_ui());
  }

  const MaskCtx ctx = make_mask_ctx(nf);
  const int n_threads = resolve_threads(threads);
  std::atomic<std::uint64_t> best{n};
  std::atomic<std::uint64_t> checked{0};

  const std::uint64_t chunk = (n + n_threads - 1) / n_threads;
  std::vector<std::thread> workers;
  for (int w = 0; w < n_threads; ++w) {
    workers.emplace_back([&, w] {
      std::vector<std::uint32_t> counts;
      std::uint64_t local_checked = 0;
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, n);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, n);
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if (best.load(std::memory_order_relaxed) <= idx) break;
        ++local_checked;
        const NetworkView view = decode_candidate(family, idx);
        mask_counts(view, ctx, counts);
        if (counts.size() == target_counts.size() &&
            std::equal(counts.begin(), counts.end(), target_counts.begin())) {
          std::uint64_t expect = best.load();
          while (idx < expect &&
                 !best.compare_exchange_weak(expect, idx)) {
          }
          break;
        }
      }
      checked += local_checked;
    });
  }
  for (auto &t : workers) t.join();

  result.candidates_checked = checked.load();
  const std::uint64_t found = best.load();
  if (found < n) {
    BoxNetwork net = family.instantiate(found);
    // Re-verify through the reference evaluator.
    if (!evaluate(net).equals(target, 0.0))
      throw std::logic_error("search: fast path disagreed with evaluate()");
    result.network = std::move(net);
    result.candidate_index = found;
  }
  return result;
}

SearchResult search_wiring(const WiringFamily &family,
                           const std::function<bool(const Behavior &)> &pred,
                           int threads) {
  check_family(family);
  const std::uint64_t n = family.size();
  const int n_threads = resolve_threads(threads);
  std::atomic<std::uint64_t> best{n};
  std::atomic<std::uint64_t> checked{0};

  const std::uint64_t chunk = (n + n_threads - 1) / n_threads;
  std::vector<std::thread> workers;
  for (int w = 0; w < n_threads; ++w) {
    workers.emplace_back([&, w] {
      std::uint64_t local_checked = 0;
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, n);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, n);
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        if (best.load(std::memory_order_relaxed) <= idx) break;
        ++local_checked;
        if (pred(evaluate(family.instantiate(idx)))) {
          std::uint64_t expect = best.load();
          while (idx < expect &&
                 !best.compare_exchange_weak(expect, idx)) {
          }
          break;
        }
      }
      checked += local_checked;
    });
  }
  for (auto &t : workers) t.join();

  SearchResult result;
  result.candidates_checked = checked.load();
  const std::uint64_t found = best.load();
  if (found < n) {
    result.network = family.instantiate(found);
    result.candidate_index = found;
  }
  return result;
}

//------------------------------------------------------------------------------
// Candidate-list helpers
//------------------------------------------------------------------------------

std::vector<InputWire> constant_wires(int settings) {
  std::vector<InputWire> out;
  for (int code = 0; code < (1 << settings); ++code) {
    InputWire w = InputWire::zero(settings);
    for (int s = 0; s < settings; ++s) w.constants[s] = (code >> s) & 1;
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<InputWire> affine_wires(int settings,
                                    const std::vector<int> &tap_universe) {
  const int per_setting = 2 << tap_universe.size();
  std::uint64_t total = 1;
  for (int s = 0; s < settings; ++s) total *= per_setting;

  std::vector<InputWire> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    InputWire w = InputWire::zero(settings);
    std::uint64_t rem = code;
    for (int s = 0; s < settings; ++s) {
      const int c = static_cast<int>(rem % per_setting);
      rem /= per_setting;
      w.constants[s] = c & 1;
      for (std::size_t u = 0; u < tap_universe.size(); ++u)
        if ((c >> (1 + u)) & 1) w.taps[s].push_back(tap_universe[u]);
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<OutcomeMap> one_bit_outcome_maps(
    int settings, const std::vector<int> &tap_universe) {
  std::vector<OutcomeMap> out;
  for (int subset = 0; subset < (1 << tap_universe.size()); ++subset) {
    std::vector<int> taps;
    for (std::size_t u = 0; u < tap_universe.size(); ++u)
      if ((subset >> u) & 1) taps.push_back(tap_universe[u]);
    for (int consts = 0; consts < (1 << settings); ++consts) {
      OutcomeBit bit;
      for (int s = 0; s < settings; ++s) {
        bit.constants.push_back((consts >> s) & 1);
        bit.taps.push_back(taps);
      }
      OutcomeMap map;
      map.bits.push_back(std::move(bit));
      out.push_back(std::move(map));
    }
  }
  return out;
}

//------------------------------------------------------------------------------
// Constructions
//------------------------------------------------------------------------------

BoxNetwork pr_box_network() {
  BoxNetwork n;
  n.scenario = Scenario::uniform(2, 2, 2);
  n.shared_bits = 0;
  n.boxes.push_back({"AC", 0, 1});
  InputWire x = InputWire::zero(2);
  x.constants = {0, 1};
  n.wires.push_back({x, x});
  OutcomeBit direct;
  direct.constants = {0, 0};
  direct.taps = {{0}, {0}};
  n.outcome_maps.assign(2, OutcomeMap{{direct}});
  return n;
}

BoxNetwork swap_boxnet() {
  BoxNetwork n;
  n.scenario = Scenario::uniform(3, 2, 2);
  n.shared_bits = 0;
  n.boxes.push_back({"CA", 2, 0});
  n.boxes.push_back({"AB", 0, 1});

  InputWire setting_wire = InputWire::zero(2);
  setting_wire.constants = {0, 1};

  // Charlie feeds Z, Alice feeds X into the first box; Alice then pipes the
  // received bit A' into the second box whose Bob side reads Y.
  InputWire alice_forward = InputWire::zero(2);
  alice_forward.taps = {{0}, {0}};
  n.wires.push_back({setting_wire, setting_wire});
  n.wires.push_back({alice_forward, setting_wire});

  auto direct_bit = [](std::vector<int> taps) {
    OutcomeBit bit;
    bit.constants = {0, 0};
    bit.taps = {taps, taps};
    return bit;
  };
  n.outcome_maps = {OutcomeMap{{direct_bit({1})}},   // A = second box output
                    OutcomeMap{{direct_bit({0})}},   // B = its Bob side
                    OutcomeMap{{direct_bit({0})}}};  // C = first box output
  return n;
}

WiringFamily swap_boxnet_family() {
  WiringFamily f;
  f.scenario = Scenario::uniform(3, 2, 2);
  f.shared_bits = 0;
  f.boxes = {{"CA", 2, 0}, {"AB", 0, 1}};
  f.wire_candidates.push_back({constant_wires(2), constant_wires(2)});
  f.wire_candidates.push_back({affine_wires(2, {0}), constant_wires(2)});
  f.outcome_candidates = {one_bit_outcome_maps(2, {0, 1}),
                          one_bit_outcome_maps(2, {0}),
                          one_bit_outcome_maps(2, {0})};
  return f;
}

BoxNetwork pair_game_boxnet() {
  BoxNetwork n;
  n.scenario = Scenario::pair_game();
  n.shared_bits = 1;  // S, read by Alice and Bob
  n.boxes = {{"CA", 2, 0},
             {"AB2", 0, 1},
             {"AB3", 0, 1},
             {"BC4", 1, 2},
             {"BC5", 1, 2}};

  // Received-bit indices. Alice: S=0, A1=1, A2=2, A3=3. Bob: S=0, B2=1,
  // B3=2, B4=3, B5=4. Charlie: S=0, C1=1, C4=2, C5=3.
  InputWire x_wire = InputWire::zero(2);
  x_wire.constants = {0, 1};
  InputWire z_wire = x_wire;

  InputWire u3 = InputWire::zero(2);
  u3.taps = {{1}, {1, 0}};  // A1, plus S when X = 1

  InputWire v2 = InputWire::zero(3);
  v2.constants = {0, 1, 0};
  InputWire v3 = InputWire::zero(3);
  v3.constants = {0, 0, 1};
  InputWire v4 = v2;
  InputWire v5 = v3;

  InputWire w5 = InputWire::zero(2);
  w5.taps = {{1}, {1}};  // C1 for both settings

  n.wires.push_back({z_wire, x_wire});  // CA: Charlie Z | Alice X
  n.wires.push_back({x_wire, v2});      // AB2: Alice X | Bob (0,1,0)
  n.wires.push_back({u3, v3});          // AB3: Alice A1(+S) | Bob (0,0,1)
  n.wires.push_back({v4, z_wire});      // BC4: Bob (0,1,0) | Charlie Z
  n.wires.push_back({v5, w5});          // BC5: Bob (0,0,1) | Charlie C1

  auto xor_bit = [](int settings, std::vector<std::vector<int>> taps) {
    OutcomeBit bit;
    bit.constants.assign(settings, 0);
    bit.taps = std::move(taps);
    return bit;
  };

  // A = A2 xor A3, C = C4 xor C5; Bob reports (B_A, B_C) with
  // B_A = B2 xor B3 (S when Y=2) and B_C = B4 xor B5 (all four when Y=2).
  OutcomeMap alice{{xor_bit(2, {{2, 3}, {2, 3}})}};
  OutcomeMap charlie{{xor_bit(2, {{2, 3}, {2, 3}})}};
  OutcomeMap bob;
  bob.bits.push_back(xor_bit(3, {{3, 4}, {3, 4}, {1, 2, 3, 4}}));  // B_C
  bob.bits.push_back(xor_bit(3, {{1, 2}, {1, 2}, {0}}));           // B_A
  n.outcome_maps = {alice, bob, charlie};
  return n;
}

//------------------------------------------------------------------------------
// Staged regeneration of the pair-game network
//------------------------------------------------------------------------------

namespace {

// Free bits: S = var 0, box i's coin = var 1+i.
struct StagedSpace {
  std::vector<InputWire> u2 = affine_wires(2, {0, 1});     // S, A1
  std::vector<InputWire> u3 = affine_wires(2, {0, 1, 2});  // S, A1, A2
  std::vector<InputWire> v3 = constant_wires(3);
  std::vector<InputWire> v4 = constant_wires(3);
  std::vector<InputWire> v5 = constant_wires(3);
  std::vector<InputWire> w4 = affine_wires(2, {1});        // C1
  std::vector<InputWire> w5 = affine_wires(2, {1, 2});     // C1, C4
  std::vector<InputWire> u1 = affine_wires(2, {0});        // S
  std::vector<InputWire> w1 = constant_wires(2);
  InputWire v2 = [] {
    InputWire w = InputWire::zero(3);
    w.constants = {0, 1, 0};
    return w;
  }();
};

struct StageA {
  std::uint64_t index;
  const InputWire *u2, *u3, *v3;
};
struct StageB {
  std::uint64_t index;
  const InputWire *v4, *v5, *w4, *w5;
};

}  // namespace

StagedSearchResult regenerate_pair_game_boxnet() {
  const StagedSpace space;
  const MaskCtx ctx = make_mask_ctx(6);
  StagedSearchResult result;

  // Stage A: Alice-Bob subgame conditions for Y in {0,1} must hold
  // identically: u2*v2(y) xor u3*v3(y) == x*y. Alice's received bits here
  // are S (var 0), A1 (var 1, box-1 influence cancels for any survivor),
  // A2 (var 2).
  std::vector<StageA> stage_a;
  {
    const std::vector<std::uint64_t> alice_received = {ctx.var[0], ctx.var[1],
                                                       ctx.var[2]};
    std::uint64_t index = 0;
    for (std::size_t iv = 0; iv < space.v3.size(); ++iv)
      for (std::size_t i3 = 0; i3 < space.u3.size(); ++i3)
        for (std::size_t i2 = 0; i2 < space.u2.size(); ++i2) {
          // Enumeration order: u2 fastest, then u3, then v3.
          const std::uint64_t my_index =
              i2 + space.u2.size() * (i3 + space.u3.size() * iv);
          const InputWire &u2 = space.u2[i2];
          const InputWire &u3 = space.u3[i3];
          const InputWire &v3 = space.v3[iv];
          bool ok = true;
          for (int x = 0; x < 2 && ok; ++x) {
            const std::uint64_t u2m =
                wire_mask(u2, x, alice_received, ctx.ones);
            const std::uint64_t u3m =
                wire_mask(u3, x, alice_received, ctx.ones);
            for (int y = 0; y < 2 && ok; ++y) {
              const std::uint64_t lhs = (space.v2.constants[y] ? u2m : 0) ^
                                        (v3.constants[y] ? u3m : 0);
              ok = lhs == ((x & y) ? ctx.ones : 0);
            }
          }
          if (ok) stage_a.push_back({my_index, &u2, &u3, &v3});
          ++index;
        }
    std::sort(stage_a.begin(), stage_a.end(),
              [](const StageA &l, const StageA &r) { return l.index < r.index; });
    result.stage_a_survivors = stage_a.size();
  }

  // Stage B: Bob-Charlie subgame conditions, v4*w4 xor v5*w5 == z*y for
  // Y in {0,1}. Charlie receives S (unused by family), C1 = var 1, and C4
  // computed from the current candidate.
  std::vector<StageB> stage_b;
  {
    std::uint64_t index = 0;
    for (std::size_t iw5 = 0; iw5 < space.w5.size(); ++iw5)
      for (std::size_t iw4 = 0; iw4 < space.w4.size(); ++iw4)
        for (std::size_t iv5 = 0; iv5 < space.v5.size(); ++iv5)
          for (std::size_t iv4 = 0; iv4 < space.v4.size(); ++iv4) {
            const std::uint64_t my_index =
                iv4 +
                space.v4.size() *
                    (iv5 + space.v5.size() * (iw4 + space.w4.size() * iw5));
            const InputWire &v4 = space.v4[iv4];
            const InputWire &v5 = space.v5[iv5];
            const InputWire &w4 = space.w4[iw4];
            const InputWire &w5 = space.w5[iw5];
            bool ok = true;
            for (int y = 0; y < 2 && ok; ++y)
              for (int z = 0; z < 2 && ok; ++z) {
                std::vector<std::uint64_t> charlie = {ctx.var[0], ctx.var[1]};
                const std::uint64_t w4m = wire_mask(w4, z, charlie, ctx.ones);
                const std::uint64_t c4 =
                    ctx.var[4] ^ (v4.constants[y] ? w4m : 0);
                charlie.push_back(c4);
                const std::uint64_t w5m = wire_mask(w5, z, charlie, ctx.ones);
                const std::uint64_t lhs = (v4.constants[y] ? w4m : 0) ^
                                          (v5.constants[y] ? w5m : 0);
                ok = lhs == ((z & y) ? ctx.ones : 0);
              }
            if (ok) stage_b.push_back({my_index, &v4, &v5, &w4, &w5});
            ++index;
          }
    std::sort(stage_b.begin(), stage_b.end(),
              [](const StageB &l, const StageB &r) { return l.index < r.index; });
    result.stage_b_survivors = stage_b.size();
  }

  // Hash every stage-B survivor by its Y=2 contribution
  // v4(2)*w4 xor v5(2)*w5 per z (x-independent), keyed to the first index.
  std::map<std::array<std::uint64_t, 2>, std::size_t> b_by_signature;
  for (std::size_t bi = 0; bi < stage_b.size(); ++bi) {
    const StageB &b = stage_b[bi];
    std::array<std::uint64_t, 2> sig{};
    for (int z = 0; z < 2; ++z) {
      std::vector<std::uint64_t> charlie = {ctx.var[0], ctx.var[1]};
      const std::uint64_t w4m = wire_mask(*b.w4, z, charlie, ctx.ones);
      const std::uint64_t c4 =
          ctx.var[4] ^ (b.v4->constants[2] ? w4m : 0);
      charlie.push_back(c4);
      const std::uint64_t w5m = wire_mask(*b.w5, z, charlie, ctx.ones);
      sig[z] = (b.v4->constants[2] ? w4m : 0) ^
               (b.v5->constants[2] ? w5m : 0);
    }
    b_by_signature.emplace(sig, bi);  // keeps the first (lowest) index
  }

  // Stage C: for each stage-A survivor and each (u1, w1), the Y=2 win
  // condition u3*v3(2) xor part_b xor xz xor x*S == 0 fixes the needed
  // stage-B signature; candidates are ordered by (a, b, u1, w1).
  for (const StageA &a : stage_a) {
    struct Hit {
      std::uint64_t b_index;
      std::size_t u1, w1, b_pos;
    };
    std::vector<Hit> hits;
    for (std::size_t iu1 = 0; iu1 < space.u1.size(); ++iu1)
      for (std::size_t iw1 = 0; iw1 < space.w1.size(); ++iw1) {
        const InputWire &u1 = space.u1[iu1];
        const InputWire &w1 = space.w1[iw1];

        std::array<std::uint64_t, 2> needed_by_z{};
        bool consistent = true;
        for (int z = 0; z < 2 && consistent; ++z) {
          std::uint64_t needed = 0;
          for (int x = 0; x < 2; ++x) {
            const std::vector<std::uint64_t> s_only = {ctx.var[0]};
            const std::uint64_t u1m = wire_mask(u1, x, s_only, ctx.ones);
            const std::uint64_t w1m = w1.constants[z] ? ctx.ones : 0;
            const std::uint64_t a1 = ctx.var[1] ^ (u1m & w1m);
            const std::vector<std::uint64_t> alice = {ctx.var[0], a1,
                                                      ctx.var[2]};
            const std::uint64_t u3m = wire_mask(*a.u3, x, alice, ctx.ones);
            const std::uint64_t part_a =
                a.v3->constants[2] ? u3m : 0;
            const std::uint64_t target =
                ((x & z) ? ctx.ones : 0) ^ (x ? ctx.var[0] : 0);
            const std::uint64_t need = part_a ^ target;
            if (x == 0)
              needed = need;
            else if (need != needed)
              consistent = false;  // part_b cannot depend on x
          }
          needed_by_z[z] = needed;
        }
        if (!consistent) continue;
        const auto it = b_by_signature.find(needed_by_z);
        if (it != b_by_signature.end())
          hits.push_back({stage_b[it->second].index, iu1, iw1, it->second});
      }
    if (hits.empty()) continue;
    std::sort(hits.begin(), hits.end(), [](const Hit &l, const Hit &r) {
      if (l.b_index != r.b_index) return l.b_index < r.b_index;
      if (l.u1 != r.u1) return l.u1 < r.u1;
      return l.w1 < r.w1;
    });
    const Hit &h = hits.front();
    const StageB &b = stage_b[h.b_pos];

    BoxNetwork n = pair_game_boxnet();
    n.wires[0] = {space.w1[h.w1], space.u1[h.u1]};
    n.wires[1] = {space.u2[0], space.v2};  // placeholder, fixed below
    // Recover the stage-A component wires.
    std::uint64_t rem = a.index;
    const std::size_t i2 = rem % space.u2.size();
    rem /= space.u2.size();
    const std::size_t i3 = rem % space.u3.size();
    rem /= space.u3.size();
    const std::size_t iv3 = rem;
    n.wires[1] = {space.u2[i2], space.v2};
    n.wires[2] = {space.u3[i3], space.v3[iv3]};
    n.wires[3] = {*b.v4, *b.w4};
    n.wires[4] = {*b.v5, *b.w5};

    const NetworkDiagnostics diag = validate_network(n);
    if (!diag.passed)
      throw std::logic_error("staged search produced an invalid network");
    const Behavior behavior = evaluate(n);
    const PairGameScores scores = pair_game_value(behavior);
    if (!scores.overall.equals(Scalar::exact(1), 0.0))
      throw std::logic_error("staged search candidate does not win the game");
    result.network = std::move(n);
    result.candidates_checked =
        stage_a.size() + stage_b.size();  // stages dominate the work
    return result;
  }
  return result;
}

}  // namespace nonloc
