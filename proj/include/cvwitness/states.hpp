#pragma once

#include "cvwitness/fock.hpp"

namespace cvw {

struct TmsvParams {
  double lambda{0.0};
  int cutoff{2};
};

struct CatParams {
  cxd alpha{0.0};
  cxd beta{0.0};
  double z{0.0};
  int cutoff{2};
};

struct NoonParams {
  int n{1};
  cxd alpha{1.0};
  cxd beta{0.0};
  int cutoff{2};
};

PureState vacuum_state(int num_modes, int cutoff);
PureState fock_state(int n, int cutoff, ModeLabel mode = mode_a());

// Truncated coherent state, renormalized; leakage above the budget is an
// error (pick a larger cutoff).
PureState coherent(cxd alpha, int cutoff, ModeLabel mode = mode_a(),
                   double leak_budget = tol::leak_budget);

// Single-mode squeezed vacuum, squeezing along x: amplitudes
// (-tanh r)^k sqrt((2k)!)/(2^k k!) on |2k>, so <a^2> = -cosh(r) sinh(r).
PureState squeezed(double r, int cutoff, ModeLabel mode = mode_a(),
                   double leak_budget = tol::leak_budget);

// Two-mode squeezed vacuum sum_n lambda^n |n,n> on (a1, b1).
PureState tmsv(const TmsvParams& p, ModeLabel ma = mode_a(), ModeLabel mb = mode_b(),
               double leak_budget = tol::leak_budget);

// Rank-<=2 mixture of the even/odd superpositions of |alpha,beta> and
// |-alpha,-beta>, with weights w+ = N z (1+s), w- = N (2-z)(1-s) where
// s = exp(-2(|alpha|^2+|beta|^2)).
Ensemble mixed_cat(const CatParams& p, ModeLabel ma = mode_a(), ModeLabel mb = mode_b(),
                   double leak_budget = tol::leak_budget);

// alpha |n,0> + beta |0,n>; exactly representable, needs cutoff > n.
PureState noon(const NoonParams& p, ModeLabel ma = mode_a(), ModeLabel mb = mode_b());

}  // namespace cvw
