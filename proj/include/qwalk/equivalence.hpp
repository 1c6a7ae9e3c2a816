#pragma once
// Numeric certification that the three walk variants simulate each other:
// a split step equals two standard steps on the even sublattice, and a
// translated square of the directed walk. Deviations are amplitude-level.

#include <algorithm>
#include <stdexcept>
#include <string>

#include "walk.hpp"

namespace qwalk {

// Raised when compressing a state onto the even sublattice finds weight
// on an odd site (the relabelling is then meaningless).
struct NonZeroOddAmplitude : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rigid translation x -> x + shift.
inline WalkState translate(const WalkState& st, long long shift) {
  WalkState out = st;
  out.offset += shift;
  return out;
}

// Relabels even sites 2y -> y. Any odd-site amplitude above `tol` throws.
inline WalkState compress_even(const WalkState& st, double tol = 1e-12) {
  for (long long x = st.min_x(); x <= st.max_x(); ++x) {
    if (((x % 2) + 2) % 2 == 1) {
      const double w = std::abs(st.up_at(x)) + std::abs(st.down_at(x));
      if (w > tol) {
        throw NonZeroOddAmplitude("site " + std::to_string(x) +
                                  " carries amplitude " + std::to_string(w));
      }
    }
  }
  long long first_even = st.min_x();
  if (((first_even % 2) + 2) % 2 == 1) ++first_even;
  WalkState out;
  out.t = st.t;
  out.offset = first_even / 2;  // exact: first_even is even
  for (long long x = first_even; x <= st.max_x(); x += 2) {
    out.up.push_back(st.up_at(x));
    out.down.push_back(st.down_at(x));
  }
  return out;
}

// Largest |amplitude difference| between two states over the union of
// their windows, compared branch by branch.
inline double max_amplitude_deviation(const WalkState& a, const WalkState& b) {
  const long long lo = std::min(a.min_x(), b.min_x());
  const long long hi = std::max(a.max_x(), b.max_x());
  double dev = 0.0;
  for (long long x = lo; x <= hi; ++x) {
    dev = std::max(dev, std::abs(a.up_at(x) - b.up_at(x)));
    dev = std::max(dev, std::abs(a.down_at(x) - b.down_at(x)));
  }
  return dev;
}

namespace detail {

inline WalkSpec base_spec(WalkVariant v, double theta, int steps,
                          const InitialState& init, CoinConvention conv) {
  WalkSpec s;
  s.variant = v;
  s.theta = theta;
  s.convention = conv;
  s.initial = init;
  s.initial_position = 0;
  s.steps = steps;
  return s;
}

}  // namespace detail

// psi_split(y, t) versus psi_standard(2y, 2t): evolves both walks from the
// same coin state at the origin and returns the max amplitude deviation
// after identifying site 2y of the standard walk with site y.
inline double deviation_ssqw_vs_sqw(double theta, int steps,
                                    const InitialState& init = {},
                                    CoinConvention conv = CoinConvention::Phase) {
  WalkState ss =
      evolve(detail::base_spec(WalkVariant::SSQW, theta, steps, init, conv));
  WalkState sq =
      evolve(detail::base_spec(WalkVariant::SQW, theta, 2 * steps, init, conv));
  return max_amplitude_deviation(ss, compress_even(sq));
}

// psi_standard(2y, 2t) versus psi_directed(y + t, 2t): the squared directed
// walk, pulled back by t sites, matches the standard walk's even sublattice.
inline double deviation_dqw_vs_sqw(double theta, int steps,
                                   const InitialState& init = {},
                                   CoinConvention conv = CoinConvention::Phase) {
  WalkState dq =
      evolve(detail::base_spec(WalkVariant::DQW, theta, 2 * steps, init, conv));
  WalkState sq =
      evolve(detail::base_spec(WalkVariant::SQW, theta, 2 * steps, init, conv));
  return max_amplitude_deviation(translate(dq, -steps), compress_even(sq));
}

// psi_split(y, t) versus psi_directed(y + t, 2t).
inline double deviation_ssqw_vs_dqw(double theta, int steps,
                                    const InitialState& init = {},
                                    CoinConvention conv = CoinConvention::Phase) {
  WalkState ss =
      evolve(detail::base_spec(WalkVariant::SSQW, theta, steps, init, conv));
  WalkState dq =
      evolve(detail::base_spec(WalkVariant::DQW, theta, 2 * steps, init, conv));
  return max_amplitude_deviation(ss, translate(dq, -steps));
}

struct EquivalenceReport {
  double ssqw_vs_sqw = 0.0;
  double dqw_vs_sqw = 0.0;
  double ssqw_vs_dqw = 0.0;

  double worst() const {
    return std::max({ssqw_vs_sqw, dqw_vs_sqw, ssqw_vs_dqw});
  }
  bool passed(double tol = 1e-10) const { return worst() < tol; }
};

inline EquivalenceReport certify_equivalence(
    double theta, int steps, const InitialState& init = {},
    CoinConvention conv = CoinConvention::Phase) {
  EquivalenceReport r;
  r.ssqw_vs_sqw = deviation_ssqw_vs_sqw(theta, steps, init, conv);
  r.dqw_vs_sqw = deviation_dqw_vs_sqw(theta, steps, init, conv);
  r.ssqw_vs_dqw = deviation_ssqw_vs_dqw(theta, steps, init, conv);
  return r;
}

}  // namespace qwalk
