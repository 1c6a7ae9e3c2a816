#pragma once
// Compilation of walk steps into the gate IR. Three families:
//   * standard/directed walks on injective encodings, lowered as partial
//     permutations of the (coin x position) register;
//   * a structured fast path for parity-marker encodings whose even/odd
//     neighbours share a bit prefix (the shift becomes a prefix permutation
//     plus one flip of the marker bit);
//   * the directed walk on the Hamming-weight register with one rotated
//     coin per step, plus a measurement-side merge stage built from a
//     CNOT/CCX/CSWAP canonicalization and two-state rotations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "encoding.hpp"
#include "qsim.hpp"
#include "walk.hpp"

namespace qwalk {

struct BoundaryOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedDepth : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SynthesisFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Circuit families. SQW/DQW lower the shift as a register permutation;
// DqwAncilla is the Hamming-register construction with per-step coins.
enum class CircuitWalk { SQW, DQW, DqwAncilla };

inline std::string to_string(CircuitWalk w) {
  switch (w) {
    case CircuitWalk::SQW: return "sqw";
    case CircuitWalk::DQW: return "dqw";
    case CircuitWalk::DqwAncilla: return "dqw-ancilla";
  }
  throw std::logic_error("unknown circuit walk");
}

inline CircuitWalk parse_circuit_walk(std::string_view s) {
  if (s == "sqw") return CircuitWalk::SQW;
  if (s == "dqw") return CircuitWalk::DQW;
  if (s == "dqw-ancilla") return CircuitWalk::DqwAncilla;
  throw std::invalid_argument("unknown circuit walk: " + std::string(s));
}

// How controls of lowered permutation gates are chosen. Minimal picks the
// smallest control set that leaves every already-placed state untouched
// (exhaustive by size, then lexicographic -- deterministic). FullComplement
// controls on every other register qubit, making each gate an exact
// transposition that is correct on the whole register.
enum class ControlPolicy { Minimal, FullComplement };

// Which sources a single standard-walk step acts on: the even sublattice,
// the odd sublattice, or (directed walk) every encodable position.
enum class ShiftDirection { Even, Odd, Full };

struct ShiftEntry {
  int coin = 0;  // 0 = up branch, 1 = down branch
  Bits src;      // position pattern before the shift
  Bits dst;      // position pattern after the shift
};

struct ShiftPermutation {
  EncodingName encoding = EncodingName::Table1;
  WalkVariant variant = WalkVariant::SQW;
  int position_width = 0;
  std::vector<ShiftEntry> entries;  // movers and explicit fixed points
};

// Builds the coin-resolved position permutation of one walk step over the
// given source positions (defaults: the full parity class for Even/Odd, all
// positions with an encodable right neighbour for Full). A requested source
// whose shifted neighbour is not encodable raises BoundaryOverflow.
inline ShiftPermutation shift_permutation(
    const Encoding& enc, WalkVariant variant, ShiftDirection direction,
    const std::optional<std::vector<long long>>& sources = std::nullopt) {
  if (!enc.injective())
    throw SynthesisFailure("shift permutation needs an injective encoding; " +
                           to_string(enc.name()) + " is not");
  if (variant == WalkVariant::SSQW)
    throw std::invalid_argument("no single-step permutation family for the split-step walk");

  std::vector<long long> xs;
  if (sources) {
    xs = *sources;
    std::sort(xs.begin(), xs.end());
    for (long long x : xs)
      if (!enc.contains(x))
        throw OutOfDomain("source position " + std::to_string(x) + " not encodable");
    if (variant == WalkVariant::SQW) {
      const int want = direction == ShiftDirection::Even ? 0 : 1;
      if (direction == ShiftDirection::Full)
        throw std::invalid_argument("standard-walk steps act on one parity class");
      for (long long x : xs)
        if (((x % 2) + 2) % 2 != want)
          throw std::invalid_argument("source parity does not match the direction");
    }
  } else {
    for (const auto& r : enc.rows()) {
      const int par = static_cast<int>(((r.x % 2) + 2) % 2);
      if (variant == WalkVariant::SQW) {
        if (direction == ShiftDirection::Full)
          throw std::invalid_argument("standard-walk steps act on one parity class");
        if (par == (direction == ShiftDirection::Even ? 0 : 1)) xs.push_back(r.x);
      } else {
        if (enc.contains(r.x + 1)) xs.push_back(r.x);  // silently drop the edge
      }
    }
  }

  ShiftPermutation p;
  p.encoding = enc.name();
  p.variant = variant;
  p.position_width = enc.width();
  for (long long x : xs) {
    if (variant == WalkVariant::SQW) {
      if (!enc.contains(x - 1) || !enc.contains(x + 1))
        throw BoundaryOverflow("position " + std::to_string(x) +
                               " shifts outside the encodable window");
      p.entries.push_back({0, enc.encode(x), enc.encode(x - 1)});
      p.entries.push_back({1, enc.encode(x), enc.encode(x + 1)});
    } else {
      if (!enc.contains(x + 1))
        throw BoundaryOverflow("position " + std::to_string(x) +
                               " shifts outside the encodable window");
      p.entries.push_back({0, enc.encode(x), enc.encode(x)});
      p.entries.push_back({1, enc.encode(x), enc.encode(x + 1)});
    }
  }
  return p;
}

namespace detail {

// One source -> target pair of local basis indices (bit W-1-j = local qubit j).
struct PairMap {
  unsigned src = 0;
  unsigned dst = 0;
};

inline unsigned gray_rank(unsigned g) {
  unsigned b = 0;
  while (g) {
    b ^= g;
    g >>= 1;
  }
  return b;
}

inline int local_bit(unsigned state, int qubit, int width) {
  return static_cast<int>((state >> (width - 1 - qubit)) & 1u);
}

// Lowers an injective partial map of basis states to X-family gates.
// Pairs are placed fixed-points-first in Gray order; each state is routed
// to its target along a BFS-shortest hypercube path that avoids already
// placed states, and every edge becomes one (multi-)controlled X whose
// control set never fires on a placed state. All collateral movement of
// unplaced states is tracked exactly.
inline std::vector<Gate> lower_partial_permutation(int width,
                                                   std::vector<PairMap> pairs,
                                                   const std::vector<int>& qubit_of,
                                                   ControlPolicy policy) {
  if (width < 1 || width > 20) throw std::invalid_argument("bad local width");
  if (static_cast<int>(qubit_of.size()) != width)
    throw std::invalid_argument("qubit map size != local width");
  const unsigned dim = 1u << width;
  {
    std::set<unsigned> srcs, dsts;
    for (const PairMap& p : pairs) {
      if (p.src >= dim || p.dst >= dim)
        throw std::invalid_argument("pair outside the local space");
      if (!srcs.insert(p.src).second)
        throw SynthesisFailure("duplicate source in permutation");
      if (!dsts.insert(p.dst).second)
        throw SynthesisFailure("duplicate target in permutation");
    }
  }

  std::stable_sort(pairs.begin(), pairs.end(), [](const PairMap& a, const PairMap& b) {
    const bool fa = a.src == a.dst;
    const bool fb = b.src == b.dst;
    if (fa != fb) return fa;  // fixed points first
    return gray_rank(a.src) < gray_rank(b.src);
  });

  std::vector<unsigned> sigma(dim);  // original state -> current location
  for (unsigned i = 0; i < dim; ++i) sigma[i] = i;
  std::vector<char> frozen(dim, 0);
  std::vector<Gate> gates;

  auto matches = [&](unsigned state, unsigned pattern, const std::vector<int>& sel) {
    for (int q : sel)
      if (local_bit(state, q, width) != local_bit(pattern, q, width)) return false;
    return true;
  };

  auto any_frozen_matches = [&](unsigned pattern, const std::vector<int>& sel) {
    for (unsigned f = 0; f < dim; ++f)
      if (frozen[f] && matches(f, pattern, sel)) return true;
    return false;
  };

  auto emit_edge = [&](unsigned from, int d) {
    std::vector<int> chosen;
    if (policy == ControlPolicy::FullComplement) {
      for (int q = 0; q < width; ++q)
        if (q != d) chosen.push_back(q);
      if (any_frozen_matches(from, chosen))
        throw SynthesisFailure("transposition collides with a placed state");
    } else {
      std::vector<int> avail;
      for (int q = 0; q < width; ++q)
        if (q != d) avail.push_back(q);
      bool found = false;
      const int m = static_cast<int>(avail.size());
      for (int k = 0; k <= m && !found; ++k) {
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
          std::vector<int> sel;
          sel.reserve(static_cast<std::size_t>(k));
          for (int i : idx) sel.push_back(avail[static_cast<std::size_t>(i)]);
          if (!any_frozen_matches(from, sel)) {
            chosen = sel;
            found = true;
            break;
          }
          // next combination in lexicographic order
          int i = k - 1;
          while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - k + i) --i;
          if (i < 0) break;
          ++idx[static_cast<std::size_t>(i)];
          for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
      }
      if (!found) throw SynthesisFailure("no admissible control set");  // unreachable: full set works
    }

    std::vector<Control> controls;
    controls.reserve(chosen.size());
    for (int q : chosen) controls.push_back({qubit_of[static_cast<std::size_t>(q)],
                                             local_bit(from, q, width)});
    gates.push_back(controlled_x(std::move(controls), qubit_of[static_cast<std::size_t>(d)]));

    // apply the gate to the tracked locations
    const unsigned tbit = 1u << (width - 1 - d);
    for (unsigned o = 0; o < dim; ++o)
      if (matches(sigma[o], from, chosen)) sigma[o] ^= tbit;
  };

  // Transposition of `from` and its bit-d neighbour: full-complement controls
  // fire on exactly those two states, so nothing else moves. Used to route
  // through occupied territory, where collateral movement must stay zero.
  auto emit_swap_edge = [&](unsigned from, int d) {
    std::vector<Control> controls;
    controls.reserve(static_cast<std::size_t>(width) - 1);
    for (int q = 0; q < width; ++q)
      if (q != d)
        controls.push_back({qubit_of[static_cast<std::size_t>(q)],
                            local_bit(from, q, width)});
    gates.push_back(
        controlled_x(std::move(controls), qubit_of[static_cast<std::size_t>(d)]));
    const unsigned tbit = 1u << (width - 1 - d);
    const unsigned other = from ^ tbit;
    for (unsigned o = 0; o < dim; ++o)
      if (sigma[o] == from || sigma[o] == other) sigma[o] ^= tbit;
  };

  // BFS-shortest hypercube path, optionally confined to non-frozen states.
  // Returns the bit flipped at each hop, or nothing when walled off.
  auto bfs_path = [&](unsigned src, unsigned dst,
                      bool avoid_frozen) -> std::optional<std::vector<int>> {
    std::vector<int> parent_bit(dim, -1);
    std::vector<char> seen(dim, 0);
    std::vector<unsigned> queue;
    queue.push_back(src);
    seen[src] = 1;
    bool reached = false;
    for (std::size_t head = 0; head < queue.size() && !reached; ++head) {
      const unsigned node = queue[head];
      for (int d = 0; d < width; ++d) {
        const unsigned nb = node ^ (1u << (width - 1 - d));
        if (seen[nb] || (avoid_frozen && frozen[nb])) continue;
        seen[nb] = 1;
        parent_bit[nb] = d;
        if (nb == dst) {
          reached = true;
          break;
        }
        queue.push_back(nb);
      }
    }
    if (!reached) return std::nullopt;
    std::vector<int> path_bits;  // from dst back to src
    for (unsigned node = dst; node != src;) {
      const int d = parent_bit[node];
      path_bits.push_back(d);
      node ^= 1u << (width - 1 - d);
    }
    std::reverse(path_bits.begin(), path_bits.end());
    return path_bits;
  };

  for (const PairMap& p : pairs) {
    unsigned cur = sigma[p.src];
    if (cur == p.dst) {
      frozen[p.dst] = 1;
      continue;
    }
    if (const auto path = bfs_path(cur, p.dst, true)) {
      unsigned at = cur;
      for (int d : *path) {
        emit_edge(at, d);
        at ^= 1u << (width - 1 - d);
      }
    } else {
      // Placed states wall off every avoiding path. Swap-conjugation routes
      // straight through: surgical transpositions carry the state along the
      // unrestricted shortest path, and the mirrored tail walks every
      // displaced occupant back home, leaving a pure (cur, dst) transposition.
      const auto bits = bfs_path(cur, p.dst, false);
      if (!bits) throw std::logic_error("hypercube disconnected");
      std::vector<unsigned> nodes{cur};
      for (int d : *bits) nodes.push_back(nodes.back() ^ (1u << (width - 1 - d)));
      const int hops = static_cast<int>(bits->size());
      for (int i = 0; i + 1 < hops; ++i)
        emit_swap_edge(nodes[static_cast<std::size_t>(i)],
                       (*bits)[static_cast<std::size_t>(i)]);
      emit_swap_edge(nodes[static_cast<std::size_t>(hops - 1)],
                     (*bits)[static_cast<std::size_t>(hops - 1)]);
      for (int i = hops - 2; i >= 0; --i)
        emit_swap_edge(nodes[static_cast<std::size_t>(i)],
                       (*bits)[static_cast<std::size_t>(i)]);
    }
    if (sigma[p.src] != p.dst)
      throw std::logic_error("routing lost track of a state");
    frozen[p.dst] = 1;
  }
  for (const PairMap& p : pairs)
    if (sigma[p.src] != p.dst) throw std::logic_error("permutation incompletely placed");
  return gates;
}

// Local space (coin + full position register) used by the generic bodies.
inline std::vector<int> full_register_map(int coin, const std::vector<int>& position) {
  std::vector<int> m;
  m.push_back(coin);
  m.insert(m.end(), position.begin(), position.end());
  return m;
}

inline unsigned pack_local(int coin_value, unsigned pos_value, int pos_width) {
  return (static_cast<unsigned>(coin_value) << pos_width) | pos_value;
}

}  // namespace detail

// Lowers one walk step given as an explicit permutation: a coin rotation
// followed by X-family gates realizing the position map on each branch.
inline Circuit synthesize_step(const ShiftPermutation& perm, double theta,
                               CoinConvention conv,
                               ControlPolicy policy = ControlPolicy::Minimal) {
  const int pw = perm.position_width;
  Circuit c;
  c.width = 1 + pw;
  c.coin = 0;
  for (int i = 0; i < pw; ++i) c.position.push_back(1 + i);
  c.gates.push_back(coin_gate(0, theta, conv));

  std::vector<detail::PairMap> pairs;
  pairs.reserve(perm.entries.size());
  for (const ShiftEntry& e : perm.entries) {
    pairs.push_back({detail::pack_local(e.coin, e.src.value, pw),
                     detail::pack_local(e.coin, e.dst.value, pw)});
  }
  auto gates = detail::lower_partial_permutation(
      1 + pw, std::move(pairs), detail::full_register_map(0, c.position), policy);
  c.gates.insert(c.gates.end(), gates.begin(), gates.end());
  return c;
}

struct SynthesisPlan {
  CircuitWalk walk = CircuitWalk::SQW;
  EncodingName encoding = EncodingName::Table1;
  int steps = 0;
  CoinConvention convention = CoinConvention::Phase;
  bool fixed_initial = false;   // restrict each step to states reachable from x0
  long long x0 = 0;
  bool parity_tracking = false; // fold the per-step marker flips into one final X
  ControlPolicy policy = ControlPolicy::Minimal;
};

namespace detail {

// Step body for a prefix-paired encoding: the shift touches only the
// coin+prefix subspace, then the parity marker bit is flipped once.
// Exact on states whose positions lie in `sources` (one parity class).
inline std::vector<Gate> structured_sqw_body(const Encoding& enc,
                                             const std::vector<long long>& sources,
                                             const std::vector<int>& position,
                                             ControlPolicy policy) {
  const int pw = enc.width();
  std::vector<PairMap> pairs;
  std::set<unsigned> fixed_prefixes;  // nothing is pinned: both branches move
  for (long long x : sources) {
    if (!enc.contains(x - 1) || !enc.contains(x + 1))
      throw BoundaryOverflow("position " + std::to_string(x) +
                             " shifts outside the encodable window");
    const unsigned pre = enc.encode(x).value >> 1;
    const unsigned pre_up = enc.encode(x - 1).value >> 1;
    const unsigned pre_down = enc.encode(x + 1).value >> 1;
    pairs.push_back({pack_local(0, pre, pw - 1), pack_local(0, pre_up, pw - 1)});
    pairs.push_back({pack_local(1, pre, pw - 1), pack_local(1, pre_down, pw - 1)});
  }
  std::vector<int> qubit_of;  // coin + prefix qubits (all but the marker)
  qubit_of.push_back(0);
  for (int i = 0; i + 1 < pw; ++i) qubit_of.push_back(position[static_cast<std::size_t>(i)]);
  return lower_partial_permutation(pw, std::move(pairs), qubit_of, policy);
}

// Structured directed-step body for a prefix-paired table whose forward
// (non-negative) pair prefixes follow a two-mask alternating cycle: one
// prefix bit flips on every pair hop, so its value selects which of the two
// flip masks the current pair needs. One step is then
//   [ mcx(coin, marker, selector=v   -> each even-hop bit) ]
//   [ mcx(coin, marker, selector=!v  -> each odd-hop bit)  ]
//   ccx(coin, marker -> selector)
//   cx(coin -> marker)
// which maps enc(x) to enc(x+1) for every non-negative x with an encodable
// successor, conditioning on at most coin + marker + selector (order 3).
// Returns nothing when the table's prefixes lack the alternating structure.
inline std::optional<std::vector<Gate>> structured_dqw_increment(
    const Encoding& enc, const std::vector<int>& position) {
  const int prefw = enc.width() - 1;
  std::vector<unsigned> prefixes;  // pair prefixes p(k) for pairs (2k, 2k+1)
  for (long long x = 0; enc.contains(x); x += 2)
    prefixes.push_back(enc.encode(x).value >> 1);
  if (prefixes.size() < 2) return std::nullopt;
  std::vector<unsigned> masks;
  for (std::size_t k = 0; k + 1 < prefixes.size(); ++k)
    masks.push_back(prefixes[k] ^ prefixes[k + 1]);
  const unsigned even_mask = masks[0];
  const unsigned odd_mask = masks.size() > 1 ? masks[1] : masks[0];
  unsigned common = ~0u;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    if (masks[k] != (k % 2 == 0 ? even_mask : odd_mask)) return std::nullopt;
    common &= masks[k];
  }
  int sel = -1;  // selector: a prefix bit that flips on every hop
  for (int i = 0; i < prefw; ++i)
    if (common & (1u << (prefw - 1 - i))) { sel = i; break; }
  if (sel < 0) return std::nullopt;
  const int coin = 0;
  const int marker = position.back();
  const int sel_q = position[static_cast<std::size_t>(sel)];
  const int v = static_cast<int>((prefixes[0] >> (prefw - 1 - sel)) & 1u);
  std::vector<Gate> gates;
  auto emit_flips = [&](unsigned mask, int sel_polarity) {
    for (int i = 0; i < prefw; ++i) {
      if (i == sel || !(mask & (1u << (prefw - 1 - i)))) continue;
      gates.push_back(controlled_x(
          {Control{coin, 1}, Control{marker, 1}, Control{sel_q, sel_polarity}},
          position[static_cast<std::size_t>(i)]));
    }
  };
  emit_flips(even_mask, v);
  emit_flips(odd_mask, v ^ 1);
  gates.push_back(controlled_x({Control{coin, 1}, Control{marker, 1}}, sel_q));
  gates.push_back(controlled_x({Control{coin, 1}}, marker));
  return gates;
}

// Directed-walk step body. For parity-marker encodings the down-shift is a
// prefix permutation (conditioned on the coin) followed by cx(coin, marker);
// otherwise the full pattern map is lowered with explicit up fixed points.
inline std::vector<Gate> dqw_body(const Encoding& enc,
                                  const std::vector<long long>& sources,
                                  const std::vector<int>& position,
                                  ControlPolicy policy) {
  const int pw = enc.width();
  std::vector<Gate> gates;
  if (enc.prefix_paired() &&
      std::all_of(sources.begin(), sources.end(),
                  [](long long x) { return x >= 0; })) {
    // Forward-only support: the structured increment is exact on every
    // non-negative source, independent of the control policy.
    if (auto body = structured_dqw_increment(enc, position)) return *body;
  }
  if (enc.prefix_paired()) {
    std::vector<PairMap> pairs;
    for (long long x : sources) {
      if (!enc.contains(x + 1))
        throw BoundaryOverflow("position " + std::to_string(x) +
                               " shifts outside the encodable window");
      pairs.push_back({pack_local(0, enc.encode(x).value, pw),
                       pack_local(0, enc.encode(x).value, pw)});
      // shift with the marker flip deferred to the final cx
      pairs.push_back({pack_local(1, enc.encode(x).value, pw),
                       pack_local(1, enc.encode(x + 1).value ^ 1u, pw)});
    }
    gates = lower_partial_permutation(1 + pw, std::move(pairs),
                                      full_register_map(0, position), policy);
    gates.push_back(controlled_x({Control{0, 1}}, position.back()));
  } else {
    std::vector<PairMap> pairs;
    for (long long x : sources) {
      if (!enc.contains(x + 1))
        throw BoundaryOverflow("position " + std::to_string(x) +
                               " shifts outside the encodable window");
      pairs.push_back({pack_local(0, enc.encode(x).value, pw),
                       pack_local(0, enc.encode(x).value, pw)});
      pairs.push_back({pack_local(1, enc.encode(x).value, pw),
                       pack_local(1, enc.encode(x + 1).value, pw)});
    }
    gates = lower_partial_permutation(1 + pw, std::move(pairs),
                                      full_register_map(0, position), policy);
  }
  return gates;
}

inline std::vector<Gate> generic_sqw_body(const Encoding& enc,
                                          const std::vector<long long>& sources,
                                          const std::vector<int>& position,
                                          ControlPolicy policy) {
  const int pw = enc.width();
  std::vector<PairMap> pairs;
  for (long long x : sources) {
    if (!enc.contains(x - 1) || !enc.contains(x + 1))
      throw BoundaryOverflow("position " + std::to_string(x) +
                             " shifts outside the encodable window");
    pairs.push_back({pack_local(0, enc.encode(x).value, pw),
                     pack_local(0, enc.encode(x - 1).value, pw)});
    pairs.push_back({pack_local(1, enc.encode(x).value, pw),
                     pack_local(1, enc.encode(x + 1).value, pw)});
  }
  return lower_partial_permutation(1 + pw, std::move(pairs),
                                   full_register_map(0, position), policy);
}

}  // namespace detail

inline Circuit synthesize_dqw_ancilla(int steps, const std::vector<double>& thetas);

// Compiles a multi-step walk. Each step restricts its sources to positions
// that can actually carry amplitude: the step parity (standard walk), plus
// the reachable window around x0 when fixed_initial is set. The circuit is
// exact on initial states at encodable positions within capacity.
inline Circuit synthesize_walk(const SynthesisPlan& plan,
                               const std::vector<double>& thetas) {
  if (plan.steps < 0) throw std::invalid_argument("steps must be non-negative");
  if (static_cast<int>(thetas.size()) != plan.steps)
    throw std::invalid_argument("need one coin angle per step");
  if (plan.walk == CircuitWalk::DqwAncilla) {
    if (plan.encoding != EncodingName::Hamming)
      throw std::invalid_argument("the ancilla construction runs on the hamming encoding");
    return synthesize_dqw_ancilla(plan.steps, thetas);
  }
  const Encoding& enc = encoding(plan.encoding);
  if (!enc.injective())
    throw SynthesisFailure("walk " + to_string(plan.walk) +
                           " needs an injective encoding; use dqw-ancilla for hamming");
  if (!enc.contains(plan.x0))
    throw OutOfDomain("start position " + std::to_string(plan.x0) + " not encodable");
  if (plan.parity_tracking &&
      (plan.walk != CircuitWalk::SQW || !enc.prefix_paired()))
    throw std::invalid_argument(
        "parity tracking needs a standard walk on a prefix-paired encoding");

  // capacity: the walk's support after `steps` steps must stay encodable
  const long long lo = plan.walk == CircuitWalk::SQW ? plan.x0 - plan.steps : plan.x0;
  const long long hi = plan.x0 + plan.steps;
  if (lo < enc.min_x() || hi > enc.max_x())
    throw CapacityExceeded("support [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] after " + std::to_string(plan.steps) + " steps exceeds " +
                           to_string(plan.encoding));

  Circuit c;
  c.width = 1 + enc.width();
  c.coin = 0;
  for (int i = 0; i < enc.width(); ++i) c.position.push_back(1 + i);

  const bool structured = enc.prefix_paired() && plan.walk == CircuitWalk::SQW;
  for (int k = 1; k <= plan.steps; ++k) {
    std::vector<long long> sources;
    if (plan.walk == CircuitWalk::SQW) {
      const int par = static_cast<int>((((plan.x0 + k - 1) % 2) + 2) % 2);
      for (const auto& r : enc.rows()) {
        if (static_cast<int>(((r.x % 2) + 2) % 2) != par) continue;
        if (!enc.contains(r.x - 1) || !enc.contains(r.x + 1)) continue;
        if (plan.fixed_initial && std::llabs(r.x - plan.x0) > k - 1) continue;
        sources.push_back(r.x);
      }
    } else {
      for (const auto& r : enc.rows()) {
        if (!enc.contains(r.x + 1)) continue;
        if (plan.fixed_initial && (r.x < plan.x0 || r.x > plan.x0 + k - 1)) continue;
        sources.push_back(r.x);
      }
    }
    c.gates.push_back(coin_gate(0, thetas[static_cast<std::size_t>(k - 1)],
                                plan.convention));
    std::vector<Gate> body;
    if (plan.walk == CircuitWalk::SQW) {
      if (structured) {
        body = detail::structured_sqw_body(enc, sources, c.position, plan.policy);
        if (!plan.parity_tracking) body.push_back(x_gate(c.position.back()));
      } else {
        body = detail::generic_sqw_body(enc, sources, c.position, plan.policy);
      }
    } else {
      body = detail::dqw_body(enc, sources, c.position, plan.policy);
    }
    c.gates.insert(c.gates.end(), body.begin(), body.end());
  }
  if (structured && plan.parity_tracking && plan.steps % 2 == 1)
    c.gates.push_back(x_gate(c.position.back()));
  return c;
}

// ---------------------------------------------------------------------------
// Directed walk on the Hamming-weight register with per-step coin angles.

// Canonical position pattern representing the (coin, weight) class of a
// walk of `steps` steps after the merge stage.
inline Bits merged_class_ket(int steps, int coin, int weight) {
  static const std::map<std::tuple<int, int, int>, const char*> table = {
      {{1, 0, 0}, "0000"}, {{1, 1, 1}, "1000"},
      {{2, 0, 0}, "0000"}, {{2, 1, 1}, "0100"}, {{2, 0, 1}, "1000"}, {{2, 1, 2}, "1100"},
      {{3, 0, 0}, "0000"}, {{3, 1, 1}, "0010"}, {{3, 0, 1}, "0100"},
      {{3, 1, 2}, "0110"}, {{3, 0, 2}, "1100"}, {{3, 1, 3}, "1110"},
      {{4, 0, 0}, "0000"}, {{4, 1, 1}, "0001"}, {{4, 0, 1}, "0100"},
      {{4, 1, 2}, "0101"}, {{4, 0, 2}, "0110"}, {{4, 1, 3}, "0111"},
      {{4, 0, 3}, "1110"}, {{4, 1, 4}, "1111"}};
  auto it = table.find({steps, coin, weight});
  if (it == table.end())
    throw std::invalid_argument("no merged class for that (steps, coin, weight)");
  return Bits::from_string(it->second);
}

namespace detail {

// Applies a permutation gate to a single basis index (coin gates rejected).
inline std::uint64_t permute_index(const Gate& g, std::uint64_t idx, int n) {
  auto bit = [n](int q) { return std::uint64_t{1} << (n - 1 - q); };
  for (const Control& c : g.controls) {
    const bool on = (idx & bit(c.qubit)) != 0;
    if (on != (c.polarity == 1)) return idx;
  }
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::MCX:
      return idx ^ bit(g.targets[0]);
    case GateKind::Swap:
    case GateKind::CSwap: {
      const std::uint64_t a = bit(g.targets[0]);
      const std::uint64_t b = bit(g.targets[1]);
      const bool va = (idx & a) != 0;
      const bool vb = (idx & b) != 0;
      if (va == vb) return idx;
      return idx ^ a ^ b;
    }
    case GateKind::Coin:
      throw std::logic_error("coin gate is not a basis permutation");
  }
  throw std::logic_error("unknown gate kind");
}

struct WeightedKet {
  std::uint64_t index = 0;
  double amp = 0.0;
};

// Two-state rotation steps produced by chain reduction.
struct RotationStep {
  double phi = 0.0;
  int target = 0;
  std::vector<Control> controls;
};

// Reduces a real-amplitude family of basis kets to the all-zeros ket by
// rotations between Hamming-adjacent states, farthest-from-zero first.
// Every step's residual amplitude lands with a positive sign, so the fully
// reduced state is exactly +|0...0>.
inline std::vector<RotationStep> reduce_chain(int n, std::vector<WeightedKet> family) {
  std::map<std::uint64_t, double> amps;
  for (const WeightedKet& k : family) {
    if (std::abs(k.amp) < 1e-15) continue;
    if (!amps.emplace(k.index, k.amp).second)
      throw std::invalid_argument("duplicate ket in family");
  }
  std::vector<RotationStep> steps;
  while (!(amps.size() == 1 && amps.begin()->first == 0) && !amps.empty()) {
    auto pick = amps.end();
    int best_pop = -1;
    for (auto it = amps.begin(); it != amps.end(); ++it) {
      if (it->first == 0) continue;
      const int pop = __builtin_popcountll(it->first);
      if (pop > best_pop || (pop == best_pop && it->first > pick->first)) {
        best_pop = pop;
        pick = it;
      }
    }
    if (pick == amps.end()) break;  // only the zero ket remains
    const std::uint64_t u = pick->first;
    const double au = pick->second;
    int d = -1;  // lowest qubit index whose bit is set in u
    for (int q = 0; q < n; ++q) {
      if (u & (std::uint64_t{1} << (n - 1 - q))) {
        d = q;
        break;
      }
    }
    const std::uint64_t v = u ^ (std::uint64_t{1} << (n - 1 - d));
    const double av = amps.count(v) ? amps[v] : 0.0;
    amps.erase(u);
    // u carries the bit-1 amplitude of the (v, u) pair; zero it into v
    const double phi = -std::atan2(au, av);
    const double r = std::hypot(au, av);
    amps[v] = r;
    if (std::abs(phi) < 1e-15) continue;
    RotationStep s;
    s.phi = phi;
    s.target = d;
    for (int q = 0; q < n; ++q) {
      if (q == d) continue;
      s.controls.push_back({q, static_cast<int>((u >> (n - 1 - q)) & 1u)});
    }
    steps.push_back(std::move(s));
  }
  if (amps.size() != 1 || amps.begin()->first != 0 || amps.begin()->second < 0.9)
    throw std::logic_error("chain reduction did not land on the zero ket");
  return steps;
}

// Emits a rotation R(phi) = [[cos,-sin],[sin,cos]] on `target`, applied only
// when the controls fire: mcx, R(-phi/2), mcx, R(phi/2), with each plane
// rotation written as two involutive coin gates (real convention).
inline void emit_controlled_rotation(std::vector<Gate>& gates, const RotationStep& s) {
  auto plane_rotation = [&](double angle) {
    gates.push_back(coin_gate(s.target, 0.0, CoinConvention::Real));
    gates.push_back(coin_gate(s.target, angle, CoinConvention::Real));
  };
  gates.push_back(controlled_x(s.controls, s.target));
  plane_rotation(-s.phi / 2.0);
  gates.push_back(controlled_x(s.controls, s.target));
  plane_rotation(s.phi / 2.0);
}

// Per-path amplitude model of the directed walk body with real coins:
// hopping factors M(0|0)=c, M(1|0)=s, M(0|1)=s, M(1|1)=-c per step.
inline std::vector<WeightedKet> premerge_family(int steps,
                                                const std::vector<double>& thetas,
                                                int width) {
  std::vector<WeightedKet> fam;
  for (unsigned m = 0; m < (1u << steps); ++m) {
    double amp = 1.0;
    int prev = 0;
    for (int k = 1; k <= steps; ++k) {
      const int mk = static_cast<int>((m >> (steps - k)) & 1u);
      const double c = std::cos(thetas[static_cast<std::size_t>(k - 1)]);
      const double sgn = std::sin(thetas[static_cast<std::size_t>(k - 1)]);
      if (prev == 0) amp *= (mk == 0 ? c : sgn);
      else amp *= (mk == 0 ? sgn : -c);
      prev = mk;
    }
    const int coin = static_cast<int>(m & 1u);
    std::uint64_t idx = 0;
    if (coin) idx |= std::uint64_t{1} << (width - 1);  // qubit 0
    for (int k = 1; k <= steps; ++k) {
      if ((m >> (steps - k)) & 1u)
        idx |= std::uint64_t{1} << (width - 1 - k);  // position qubit k
    }
    fam.push_back({idx, amp});
  }
  return fam;
}

inline std::vector<WeightedKet> merged_family(int steps,
                                              const std::vector<double>& thetas,
                                              int width) {
  std::map<std::pair<int, int>, double> classes;  // (coin, weight) -> amp
  for (const WeightedKet& k : premerge_family(steps, thetas, width)) {
    const int coin = static_cast<int>((k.index >> (width - 1)) & 1u);
    int weight = 0;
    for (int q = 1; q <= steps; ++q)
      weight += static_cast<int>((k.index >> (width - 1 - q)) & 1u);
    classes[{coin, weight}] += k.amp;
  }
  std::vector<WeightedKet> fam;
  for (const auto& [cw, amp] : classes) {
    const Bits pos = merged_class_ket(steps, cw.first, cw.second);
    std::uint64_t idx = 0;
    if (cw.first) idx |= std::uint64_t{1} << (width - 1);
    for (int i = 0; i < 4; ++i)
      if (pos.bit(i)) idx |= std::uint64_t{1} << (width - 2 - i);
    fam.push_back({idx, amp});
  }
  return fam;
}

}  // namespace detail

inline int dqw_ancilla_count(int steps) {
  return steps >= 2 ? (steps - 1) * (steps - 2) / 2 : 0;
}

// Directed walk on the Hamming-weight register: step k rotates the coin by
// theta_k (real convention) and feeds position qubit k. The merge stage then
// folds every (coin, weight) class onto its canonical pattern: a fixed
// cnot/ccx/cswap canonicalization routes equal-weight patterns together and
// records which branch arrived on ancilla flags, and a rotation chain
// interferes the flagged branches into the flag-free canonical ket.
inline Circuit synthesize_dqw_ancilla(int steps, const std::vector<double>& thetas) {
  if (steps < 1 || steps > 4)
    throw UnsupportedDepth("the ancilla construction is tabulated for 1..4 steps");
  if (static_cast<int>(thetas.size()) != steps)
    throw std::invalid_argument("need one coin angle per step");

  Circuit c;
  const int anc = dqw_ancilla_count(steps);
  c.width = 5 + anc;
  c.coin = 0;
  c.position = {1, 2, 3, 4};
  for (int i = 0; i < anc; ++i) c.ancilla.push_back(5 + i);

  for (int k = 1; k <= steps; ++k) {
    c.gates.push_back(coin_gate(0, thetas[static_cast<std::size_t>(k - 1)],
                                CoinConvention::Real));
    c.gates.push_back(controlled_x({Control{0, 1}}, k));
  }

  std::vector<Gate> canon;
  if (steps == 3) {
    const int a = 5;
    canon.push_back(controlled_x({Control{1, 1}}, a));
    canon.push_back(cswap_gate(Control{a, 1}, 1, 2));
    canon.push_back(controlled_x({Control{1, 1}}, a));
  } else if (steps == 4) {
    const int a1 = 5, a2 = 6, a3 = 7;
    canon.push_back(controlled_x({Control{1, 1}, Control{2, 0}}, a1));
    canon.push_back(cswap_gate(Control{a1, 1}, 1, 2));
    canon.push_back(controlled_x({Control{2, 0}, Control{3, 1}}, a2));
    canon.push_back(cswap_gate(Control{a2, 1}, 2, 3));
    canon.push_back(controlled_x({Control{1, 1}, Control{3, 0}}, a3));
    canon.push_back(cswap_gate(Control{a3, 1}, 1, 3));
  }
  c.gates.insert(c.gates.end(), canon.begin(), canon.end());

  // interference stage: rotate the flagged branches into the canonical kets
  std::vector<detail::WeightedKet> from =
      detail::premerge_family(steps, thetas, c.width);
  for (detail::WeightedKet& k : from) {
    for (const Gate& g : canon) k.index = detail::permute_index(g, k.index, c.width);
  }
  const std::vector<detail::WeightedKet> to =
      detail::merged_family(steps, thetas, c.width);

  const std::vector<detail::RotationStep> chain_from =
      detail::reduce_chain(c.width, from);
  const std::vector<detail::RotationStep> chain_to = detail::reduce_chain(c.width, to);

  std::vector<Gate> interference;
  for (const detail::RotationStep& s : chain_from)
    detail::emit_controlled_rotation(interference, s);
  for (auto it = chain_to.rbegin(); it != chain_to.rend(); ++it) {
    detail::RotationStep inv = *it;
    inv.phi = -inv.phi;
    detail::emit_controlled_rotation(interference, inv);
  }
  c.gates.insert(c.gates.end(), interference.begin(), interference.end());
  return c;
}

// ---------------------------------------------------------------------------
// Resource table and encoding comparison

struct ResourceEstimate {
  CircuitWalk walk = CircuitWalk::SQW;
  int qubits = 0;
  long long max_steps = 0;
  int max_control_order = 0;  // step bodies; the ancilla merge stage is excluded
  int ancillas = 0;
};

namespace detail {

inline int ceil_log2(long long v) {
  int b = 0;
  while ((1ll << b) < v) ++b;
  return b;
}

}  // namespace detail

inline ResourceEstimate estimate_resources_for_qubits(CircuitWalk walk, int qubits) {
  if (qubits < 1) throw std::invalid_argument("need at least one qubit");
  ResourceEstimate r;
  r.walk = walk;
  r.qubits = qubits;
  switch (walk) {
    case CircuitWalk::SQW:
      r.max_steps = qubits >= 2 ? (1ll << (qubits - 2)) - 1 : 0;
      r.max_control_order = std::max(qubits - 2, 0);
      break;
    case CircuitWalk::DQW:
      r.max_steps = (1ll << (qubits - 1)) - 1;
      r.max_control_order = std::max(qubits - 1, 0);
      break;
    case CircuitWalk::DqwAncilla: {
      int best = 0;
      for (int n = 1; 1 + n + dqw_ancilla_count(n) <= qubits; ++n) best = n;
      r.max_steps = best;
      r.max_control_order = best >= 1 ? 1 : 0;
      r.ancillas = dqw_ancilla_count(best);
      break;
    }
  }
  return r;
}

inline ResourceEstimate estimate_resources_for_steps(CircuitWalk walk, int steps) {
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  int qubits = 0;
  switch (walk) {
    case CircuitWalk::SQW:
      qubits = detail::ceil_log2(steps + 1) + 2;
      break;
    case CircuitWalk::DQW:
      qubits = detail::ceil_log2(steps + 1) + 1;
      break;
    case CircuitWalk::DqwAncilla:
      qubits = 1 + steps + dqw_ancilla_count(steps);
      break;
  }
  ResourceEstimate r = estimate_resources_for_qubits(walk, qubits);
  if (walk == CircuitWalk::DqwAncilla) {
    r.max_steps = steps;
    r.ancillas = dqw_ancilla_count(steps);
  }
  return r;
}

struct CompareRow {
  EncodingName encoding = EncodingName::Table1;
  bool ancilla_route = false;  // compiled with the Hamming-register family
  Metrics metrics;
  int ancillas = 0;
  std::string error;  // non-empty when this encoding cannot host the walk
};

// Synthesizes the same walk over several encodings and tabulates gate
// metrics. Hamming rides the ancilla construction (directed walks only);
// rows that cannot be built carry the reason instead of metrics. Rows are
// compiled under the full-complement policy so the table reflects each
// encoding's structural cost rather than what control-set minimization can
// recover from a sparse reachable window.
inline std::vector<CompareRow> compare_encodings(
    CircuitWalk walk, int steps, double theta, const std::vector<EncodingName>& encs,
    bool fixed_initial = true, CoinConvention conv = CoinConvention::Phase,
    ControlPolicy policy = ControlPolicy::FullComplement) {
  std::vector<double> thetas(static_cast<std::size_t>(std::max(steps, 0)), theta);
  std::vector<CompareRow> rows;
  for (EncodingName e : encs) {
    CompareRow row;
    row.encoding = e;
    try {
      Circuit c;
      if (e == EncodingName::Hamming || walk == CircuitWalk::DqwAncilla) {
        if (walk == CircuitWalk::SQW)
          throw SynthesisFailure("no standard-walk family on the hamming register");
        row.ancilla_route = true;
        c = synthesize_dqw_ancilla(steps, thetas);
      } else {
        SynthesisPlan plan;
        plan.walk = walk;
        plan.encoding = e;
        plan.steps = steps;
        plan.convention = conv;
        plan.fixed_initial = fixed_initial;
        plan.policy = policy;
        c = synthesize_walk(plan, thetas);
      }
      row.metrics = metrics(c);
      row.ancillas = static_cast<int>(c.ancilla.size());
    } catch (const std::exception& ex) {
      row.error = ex.what();
    }
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    if (a.error.empty() != b.error.empty()) return a.error.empty();
    if (a.error.empty()) {
      if (a.metrics.max_control_order != b.metrics.max_control_order)
        return a.metrics.max_control_order < b.metrics.max_control_order;
      if (a.metrics.total != b.metrics.total) return a.metrics.total < b.metrics.total;
    }
    return to_string(a.encoding) < to_string(b.encoding);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// End-to-end check of a compiled circuit against the walk itself.

// Evolves per-step angles (used to cross-check circuits with varying coins).
inline WalkState evolve_variable(WalkVariant variant, const std::vector<double>& thetas,
                                 CoinConvention conv, const InitialState& init = {},
                                 long long x0 = 0) {
  WalkSpec spec;
  spec.variant = variant;
  spec.convention = conv;
  spec.initial = init;
  spec.initial_position = x0;
  WalkState st = make_initial(spec);
  for (double th : thetas) {
    switch (variant) {
      case WalkVariant::SQW: st = step_sqw(st, th, conv); break;
      case WalkVariant::DQW: st = step_dqw(st, th, conv); break;
      case WalkVariant::SSQW: st = step_ssqw(st, th, th, conv); break;
    }
  }
  return st;
}

inline double total_variation(const Distribution& a, const Distribution& b) {
  std::map<long long, double> diff;
  for (const auto& e : a.entries) diff[e.x] += e.p;
  for (const auto& e : b.entries) diff[e.x] -= e.p;
  double tv = 0.0;
  for (const auto& [x, d] : diff) tv += std::abs(d);
  return tv / 2.0;
}

struct CircuitWalkCheck {
  double total_variation = 0.0;   // circuit readout vs direct evolution
  double ancilla_weight = 0.0;    // probability of any ancilla leaving |0>
  double norm_error = 0.0;
};

// Runs the compiled plan on the statevector simulator from (up, x0) and
// compares the coin-marginalized position distribution with the walk.
inline CircuitWalkCheck check_plan_against_walk(const SynthesisPlan& plan,
                                                const std::vector<double>& thetas) {
  Circuit c = synthesize_walk(plan, thetas);
  const Encoding& enc = encoding(plan.encoding);

  QState s(c.width);
  if (plan.walk != CircuitWalk::DqwAncilla && plan.x0 != 0) {
    const Bits pos = enc.encode(plan.x0);
    std::uint64_t idx = 0;
    for (int i = 0; i < pos.width; ++i)
      if (pos.bit(i)) idx |= std::uint64_t{1} << (c.width - 2 - i);
    s = QState::from_basis(c.width, idx);
  }
  s = run(std::move(s), c);

  CircuitWalkCheck out;
  out.norm_error = std::abs(s.norm() - 1.0);
  if (!c.ancilla.empty()) {
    std::vector<int> keep_traced;  // trace out everything except ancillas
    for (int q = 0; q < c.width; ++q)
      if (std::find(c.ancilla.begin(), c.ancilla.end(), q) == c.ancilla.end())
        keep_traced.push_back(q);
    const ReducedState anc = trace_out(s, keep_traced);
    out.ancilla_weight = 1.0 - anc.probs[0];
  }

  const Distribution measured = position_distribution(s, enc, c.coin, c.position);
  const WalkVariant v =
      plan.walk == CircuitWalk::SQW ? WalkVariant::SQW : WalkVariant::DQW;
  const CoinConvention conv = plan.walk == CircuitWalk::DqwAncilla
                                  ? CoinConvention::Real
                                  : plan.convention;
  const long long x0 = plan.walk == CircuitWalk::DqwAncilla ? 0 : plan.x0;
  const WalkState w = evolve_variable(v, thetas, conv, InitialState{}, x0);
  out.total_variation = total_variation(measured, distribution(w));
  return out;
}

}  // namespace qwalk
