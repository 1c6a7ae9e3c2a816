#pragma once
// Discrete-time quantum walks on the integer line -- standard (SQW),
// directed (DQW) and split-step (SSQW) variants -- evolved by direct
// amplitude bookkeeping on a growing window of lattice sites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qwalk {

using cd = std::complex<double>;

// Which 2x2 coin kernel a rotation angle denotes.
//   Phase: [[cos t, -i sin t], [-i sin t, cos t]]   (unit determinant)
//   Real:  [[cos t,    sin t], [   sin t, -cos t]]  (involutive, real)
enum class CoinConvention { Phase, Real };

enum class WalkVariant { SQW, DQW, SSQW };

struct CoinMatrix {
  cd m00, m01, m10, m11;
};

inline CoinMatrix coin_matrix(double theta, CoinConvention conv) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (conv == CoinConvention::Phase) {
    const cd mis{0.0, -s};
    return CoinMatrix{cd{c, 0.0}, mis, mis, cd{c, 0.0}};
  }
  return CoinMatrix{cd{c, 0.0}, cd{s, 0.0}, cd{s, 0.0}, cd{-c, 0.0}};
}

// Coin-register preparation cos(delta)|up> + e^{-i eta} sin(delta)|down>.
struct InitialState {
  double delta = 0.0;
  double eta = 0.0;
};

struct WalkSpec {
  WalkVariant variant = WalkVariant::SQW;
  double theta = 0.0;
  std::optional<double> theta2;  // second SSQW coin angle; defaults to theta
  CoinConvention convention = CoinConvention::Phase;
  InitialState initial;
  long long initial_position = 0;
  int steps = 0;
};

// Coin-resolved amplitudes over the contiguous site window
// [offset, offset + size - 1]; index i holds site offset + i.
struct WalkState {
  int t = 0;
  long long offset = 0;
  std::vector<cd> up;
  std::vector<cd> down;

  std::size_t size() const { return up.size(); }
  long long min_x() const { return offset; }
  long long max_x() const { return offset + static_cast<long long>(size()) - 1; }

  bool in_window(long long x) const { return x >= min_x() && x <= max_x(); }

  cd up_at(long long x) const {
    return in_window(x) ? up[static_cast<std::size_t>(x - offset)] : cd{0.0, 0.0};
  }
  cd down_at(long long x) const {
    return in_window(x) ? down[static_cast<std::size_t>(x - offset)] : cd{0.0, 0.0};
  }
  double probability_at(long long x) const {
    return std::norm(up_at(x)) + std::norm(down_at(x));
  }
  double norm() const {
    double n = 0.0;
    for (const cd& a : up) n += std::norm(a);
    for (const cd& a : down) n += std::norm(a);
    return n;
  }
};

inline WalkState make_initial(const WalkSpec& spec) {
  WalkState st;
  st.t = 0;
  st.offset = spec.initial_position;
  st.up = {cd{std::cos(spec.initial.delta), 0.0}};
  st.down = {std::exp(cd{0.0, -spec.initial.eta}) * std::sin(spec.initial.delta)};
  return st;
}

namespace detail {

// Applies the coin to every site in place.
inline void apply_coin(WalkState& st, const CoinMatrix& m) {
  for (std::size_t i = 0; i < st.size(); ++i) {
    const cd u = st.up[i];
    const cd d = st.down[i];
    st.up[i] = m.m00 * u + m.m01 * d;
    st.down[i] = m.m10 * u + m.m11 * d;
  }
}

// Shift on a window grown by one site on each side:
// up moves to x-1, down moves to x+1.
inline WalkState shift_both(const WalkState& st) {
  WalkState out;
  out.t = st.t;
  out.offset = st.offset - 1;
  out.up.assign(st.size() + 2, cd{0.0, 0.0});
  out.down.assign(st.size() + 2, cd{0.0, 0.0});
  for (std::size_t i = 0; i < st.size(); ++i) {
    out.up[i] = st.up[i];        // (offset-1) + i  ==  (offset + i) - 1
    out.down[i + 2] = st.down[i];
  }
  return out;
}

// Directed shift: up stays, down moves to x+1; window grows one site right.
inline WalkState shift_down_only(const WalkState& st) {
  WalkState out;
  out.t = st.t;
  out.offset = st.offset;
  out.up.assign(st.size() + 1, cd{0.0, 0.0});
  out.down.assign(st.size() + 1, cd{0.0, 0.0});
  for (std::size_t i = 0; i < st.size(); ++i) {
    out.up[i] = st.up[i];
    out.down[i + 1] = st.down[i];
  }
  return out;
}

// Half shift moving only the up branch to x-1; window grows one site left.
inline WalkState shift_up_only(const WalkState& st) {
  WalkState out;
  out.t = st.t;
  out.offset = st.offset - 1;
  out.up.assign(st.size() + 1, cd{0.0, 0.0});
  out.down.assign(st.size() + 1, cd{0.0, 0.0});
  for (std::size_t i = 0; i < st.size(); ++i) {
    out.up[i] = st.up[i];
    out.down[i + 1] = st.down[i];  // offset-1 + (i+1) == offset + i
  }
  return out;
}

}  // namespace detail

// One standard step: coin, then shift (up to x-1, down to x+1).
inline WalkState step_sqw(const WalkState& st, double theta, CoinConvention conv) {
  WalkState tmp = st;
  detail::apply_coin(tmp, coin_matrix(theta, conv));
  WalkState out = detail::shift_both(tmp);
  out.t = st.t + 1;
  return out;
}

// One directed step: coin, then one-sided shift (up stays, down to x+1).
inline WalkState step_dqw(const WalkState& st, double theta, CoinConvention conv) {
  WalkState tmp = st;
  detail::apply_coin(tmp, coin_matrix(theta, conv));
  WalkState out = detail::shift_down_only(tmp);
  out.t = st.t + 1;
  return out;
}

// One split step: coin(theta1), down-shift right; coin(theta2), up-shift left.
inline WalkState step_ssqw(const WalkState& st, double theta1, double theta2,
                           CoinConvention conv) {
  WalkState tmp = st;
  detail::apply_coin(tmp, coin_matrix(theta1, conv));
  tmp = detail::shift_down_only(tmp);
  detail::apply_coin(tmp, coin_matrix(theta2, conv));
  WalkState out = detail::shift_up_only(tmp);
  out.t = st.t + 1;
  return out;
}

inline WalkState step(const WalkState& st, const WalkSpec& spec) {
  switch (spec.variant) {
    case WalkVariant::SQW:
      return step_sqw(st, spec.theta, spec.convention);
    case WalkVariant::DQW:
      return step_dqw(st, spec.theta, spec.convention);
    case WalkVariant::SSQW:
      return step_ssqw(st, spec.theta, spec.theta2.value_or(spec.theta),
                       spec.convention);
  }
  throw std::logic_error("unknown walk variant");
}

// Evolves the initial state of `spec` by spec.steps steps.
inline WalkState evolve(const WalkSpec& spec) {
  if (spec.steps < 0) throw std::invalid_argument("steps must be non-negative");
  WalkState st = make_initial(spec);
  for (int k = 0; k < spec.steps; ++k) st = step(st, spec);
  return st;
}

// Site-resolved probabilities. Entries cover the full window, sorted by x.
struct DistributionEntry {
  long long x = 0;
  double p_up = 0.0;
  double p_down = 0.0;
  double p = 0.0;
};

struct Distribution {
  std::vector<DistributionEntry> entries;

  double total() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.p;
    return s;
  }
};

inline Distribution distribution(const WalkState& st) {
  Distribution d;
  d.entries.reserve(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) {
    DistributionEntry e;
    e.x = st.offset + static_cast<long long>(i);
    e.p_up = std::norm(st.up[i]);
    e.p_down = std::norm(st.down[i]);
    e.p = e.p_up + e.p_down;
    d.entries.push_back(e);
  }
  return d;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  long long argmax = 0;  // ties resolved toward the smaller site
};

inline Moments moments(const Distribution& d) {
  Moments m;
  double total = 0.0;
  double ex = 0.0;
  double exx = 0.0;
  double best = -1.0;
  for (const auto& e : d.entries) {
    total += e.p;
    const double x = static_cast<double>(e.x);
    ex += x * e.p;
    exx += x * x * e.p;
    if (e.p > best) {
      best = e.p;
      m.argmax = e.x;
    }
  }
  if (total > 0.0) {
    ex /= total;
    exx /= total;
  }
  m.mean = ex;
  m.variance = exx - ex * ex;
  return m;
}

}  // namespace qwalk
