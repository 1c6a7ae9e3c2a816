#pragma once
// Dense statevector simulator for the circuit IR. Amplitude index convention:
// qubit q occupies index bit (n-1-q), so the binary rendering of an index,
// most significant bit first, reads as the ket with qubit 0 leftmost.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "circuit.hpp"
#include "encoding.hpp"
#include "walk.hpp"

namespace qwalk {

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct CapacityExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxSimQubits = 12;

struct QState {
  int n = 0;
  std::vector<cd> amps;

  explicit QState(int n_qubits) : n(n_qubits) {
    if (n < 1) throw std::invalid_argument("need at least one qubit");
    if (n > kMaxSimQubits)
      throw CapacityExceeded("statevector simulator is capped at " +
                             std::to_string(kMaxSimQubits) + " qubits");
    amps.assign(std::size_t{1} << n, cd{0.0, 0.0});
    amps[0] = cd{1.0, 0.0};
  }

  std::uint64_t mask(int qubit) const {
    if (qubit < 0 || qubit >= n) throw IndexOutOfRange("qubit index out of range");
    return std::uint64_t{1} << (n - 1 - qubit);
  }

  static QState from_basis(int n_qubits, std::uint64_t index) {
    QState s(n_qubits);
    if (index >= s.amps.size()) throw IndexOutOfRange("basis index out of range");
    s.amps[0] = cd{0.0, 0.0};
    s.amps[index] = cd{1.0, 0.0};
    return s;
  }

  static QState from_bits(const Bits& b) {
    return from_basis(b.width, b.value);
  }

  double norm() const {
    double t = 0.0;
    for (const cd& a : amps) t += std::norm(a);
    return t;
  }
};

inline std::string ket_string(int n, std::uint64_t index) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if (index & (std::uint64_t{1} << (n - 1 - q))) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

namespace detail {

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
};

inline ControlMask control_mask(const QState& s, const Gate& g) {
  ControlMask cm;
  for (const Control& c : g.controls) {
    const std::uint64_t bit = s.mask(c.qubit);
    cm.mask |= bit;
    if (c.polarity == 1) cm.value |= bit;
  }
  return cm;
}

}  // namespace detail

inline void apply_gate(QState& s, const Gate& g) {
  detail::check_gate(g, s.n);
  const auto [cmask, cval] = detail::control_mask(s, g);
  const std::uint64_t dim = s.amps.size();
  switch (g.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::MCX: {
      const std::uint64_t t = s.mask(g.targets[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & cmask) == cval && !(i & t)) std::swap(s.amps[i], s.amps[i | t]);
      }
      break;
    }
    case GateKind::Coin: {
      const CoinMatrix m = coin_matrix(g.theta, g.conv);
      const std::uint64_t t = s.mask(g.targets[0]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & t) continue;
        const cd a0 = s.amps[i];
        const cd a1 = s.amps[i | t];
        s.amps[i] = m.m00 * a0 + m.m01 * a1;
        s.amps[i | t] = m.m10 * a0 + m.m11 * a1;
      }
      break;
    }
    case GateKind::Swap:
    case GateKind::CSwap: {
      const std::uint64_t a = s.mask(g.targets[0]);
      const std::uint64_t b = s.mask(g.targets[1]);
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & cmask) == cval && (i & a) && !(i & b))
          std::swap(s.amps[i], s.amps[(i ^ a) | b]);
      }
      break;
    }
  }
}

inline QState run(QState s, const Circuit& c) {
  if (c.width != s.n) throw std::invalid_argument("circuit width != state qubits");
  c.validate();
  for (const Gate& g : c.gates) apply_gate(s, g);
  return s;
}

// Diagonal of the reduced density matrix over the kept qubits (every qubit
// not listed in `traced`), plus its purity Tr(rho^2).
struct ReducedState {
  std::vector<int> kept;        // ascending qubit indices
  std::vector<double> probs;    // indexed by kept-qubit pattern, MSB first
  double purity = 0.0;
};

inline ReducedState trace_out(const QState& s, const std::vector<int>& traced) {
  std::vector<bool> is_traced(static_cast<std::size_t>(s.n), false);
  for (int q : traced) {
    if (q < 0 || q >= s.n) throw IndexOutOfRange("traced qubit out of range");
    is_traced[static_cast<std::size_t>(q)] = true;
  }
  ReducedState r;
  for (int q = 0; q < s.n; ++q)
    if (!is_traced[static_cast<std::size_t>(q)]) r.kept.push_back(q);
  const int k = static_cast<int>(r.kept.size());
  if (k == 0) throw std::invalid_argument("cannot trace out every qubit");
  if (k > 10) throw CapacityExceeded("reduced density matrix capped at 10 qubits");

  std::vector<int> traced_list;
  for (int q = 0; q < s.n; ++q)
    if (is_traced[static_cast<std::size_t>(q)]) traced_list.push_back(q);
  const int e = static_cast<int>(traced_list.size());

  const std::uint64_t keep_dim = std::uint64_t{1} << k;
  const std::uint64_t env_dim = std::uint64_t{1} << e;
  std::vector<cd> rho(keep_dim * keep_dim, cd{0.0, 0.0});

  auto scatter = [&](std::uint64_t pattern, const std::vector<int>& qs) {
    std::uint64_t idx = 0;
    const int m = static_cast<int>(qs.size());
    for (int i = 0; i < m; ++i) {
      if (pattern & (std::uint64_t{1} << (m - 1 - i)))
        idx |= std::uint64_t{1} << (s.n - 1 - qs[static_cast<std::size_t>(i)]);
    }
    return idx;
  };

  std::vector<cd> v(keep_dim);
  for (std::uint64_t env = 0; env < env_dim; ++env) {
    const std::uint64_t env_idx = scatter(env, traced_list);
    for (std::uint64_t a = 0; a < keep_dim; ++a)
      v[a] = s.amps[env_idx | scatter(a, r.kept)];
    for (std::uint64_t a = 0; a < keep_dim; ++a) {
      if (v[a] == cd{0.0, 0.0}) continue;
      for (std::uint64_t b = 0; b < keep_dim; ++b)
        rho[a * keep_dim + b] += v[a] * std::conj(v[b]);
    }
  }

  r.probs.resize(keep_dim);
  for (std::uint64_t a = 0; a < keep_dim; ++a)
    r.probs[a] = rho[a * keep_dim + a].real();
  double purity = 0.0;
  for (std::uint64_t a = 0; a < keep_dim; ++a)
    for (std::uint64_t b = 0; b < keep_dim; ++b)
      purity += std::norm(rho[a * keep_dim + b]);
  r.purity = purity;
  return r;
}

// Coin-resolved position distribution of a register state: the coin qubit and
// the listed position qubits (most significant first) are read out, all other
// qubits are marginalized. A pattern outside the encoding's image carrying
// more than `unmapped_tol` of amplitude is an error for injective encodings.
inline Distribution position_distribution(const QState& s, const Encoding& enc,
                                          int coin_qubit,
                                          const std::vector<int>& position_qubits,
                                          double unmapped_tol = 1e-12) {
  if (static_cast<int>(position_qubits.size()) != enc.width())
    throw std::invalid_argument("position register width != encoding width");
  std::map<long long, std::pair<double, double>> acc;
  const std::uint64_t dim = s.amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    const double p = std::norm(s.amps[i]);
    if (p == 0.0) continue;
    unsigned pattern = 0;
    for (int q : position_qubits)
      pattern = (pattern << 1) | static_cast<unsigned>((i >> (s.n - 1 - q)) & 1u);
    const Bits b(enc.width(), pattern);
    if (!enc.decodes(b)) {
      if (std::sqrt(p) > unmapped_tol)
        throw UnmappedBitString("amplitude on pattern " + b.str() +
                                " outside the image of " + to_string(enc.name()));
      continue;
    }
    const long long x = enc.decode(b);
    const bool coin_down = (i >> (s.n - 1 - coin_qubit)) & 1u;
    auto& slot = acc[x];
    (coin_down ? slot.second : slot.first) += p;
  }
  Distribution d;
  for (const auto& [x, pr] : acc) {
    DistributionEntry e;
    e.x = x;
    e.p_up = pr.first;
    e.p_down = pr.second;
    e.p = pr.first + pr.second;
    d.entries.push_back(e);
  }
  return d;
}

// Deterministic measurement sampling in the computational basis: shot u is
// drawn from a seeded mt19937_64 via the 53-bit mantissa trick, identical on
// every platform. Returns index -> count.
inline std::map<std::uint64_t, std::uint64_t> sample(const QState& s,
                                                     std::uint64_t shots,
                                                     std::uint64_t seed) {
  std::vector<std::pair<double, std::uint64_t>> cdf;  // cumulative, index
  double total = 0.0;
  for (std::uint64_t i = 0; i < s.amps.size(); ++i) {
    const double p = std::norm(s.amps[i]);
    if (p > 0.0) {
      total += p;
      cdf.emplace_back(total, i);
    }
  }
  if (cdf.empty()) throw std::invalid_argument("cannot sample the zero state");
  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u,
                               [](const auto& e, double val) { return e.first < val; });
    if (it == cdf.end()) --it;
    ++counts[it->second];
  }
  return counts;
}

}  // namespace qwalk
