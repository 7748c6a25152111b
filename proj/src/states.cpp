#include "cvwitness/states.hpp"

#include <cmath>

namespace cvw {

namespace {

void check_leakage(const PureState& s, double budget, const char* what) {
  double leak = s.leakage();
  if (leak > budget)
    throw CutoffTooSmallError(std::string(what) + ": leakage " + std::to_string(leak) +
                              " exceeds budget " + std::to_string(budget) +
                              " at cutoff " + std::to_string(s.cutoff()));
}

}  // namespace

PureState vacuum_state(int num_modes, int cutoff) {
  std::vector<ModeLabel> modes;
  for (int i = 1; i <= num_modes; ++i) modes.push_back(mode_a(i));
  return PureState::vacuum(std::move(modes), cutoff);
}

PureState fock_state(int n, int cutoff, ModeLabel mode) {
  return PureState::fock({mode}, cutoff, {n});
}

PureState coherent(cxd alpha, int cutoff, ModeLabel mode, double leak_budget) {
  std::vector<cxd> amp(cutoff);
  cxd c = 1.0;
  amp[0] = c;
  for (int n = 1; n < cutoff; ++n) {
    c *= alpha / std::sqrt(static_cast<double>(n));
    amp[n] = c;
  }
  PureState s({mode}, cutoff, std::move(amp), /*renormalize=*/true);
  check_leakage(s, leak_budget, "coherent");
  return s;
}

PureState squeezed(double r, int cutoff, ModeLabel mode, double leak_budget) {
  if (r < 0) throw InvalidArgumentError("squeezing parameter must be >= 0");
  std::vector<cxd> amp(cutoff, 0.0);
  double t = -std::tanh(r);
  double c = 1.0;
  amp[0] = c;
  for (int k = 1; 2 * k < cutoff; ++k) {
    // c_k / c_{k-1} = t * sqrt((2k-1)(2k)) / (2k)
    c *= t * std::sqrt(static_cast<double>((2 * k - 1) * (2 * k))) / (2.0 * k);
    amp[2 * k] = c;
  }
  PureState s({mode}, cutoff, std::move(amp), /*renormalize=*/true);
  check_leakage(s, leak_budget, "squeezed");
  return s;
}

PureState tmsv(const TmsvParams& p, ModeLabel ma, ModeLabel mb, double leak_budget) {
  if (std::abs(p.lambda) >= 1.0)
    throw InvalidArgumentError("tmsv requires |lambda| < 1");
  const int d = p.cutoff;
  std::vector<cxd> amp(static_cast<std::size_t>(d) * d, 0.0);
  double c = 1.0;
  for (int n = 0; n < d; ++n) {
    amp[static_cast<std::size_t>(n) * d + n] = c;
    c *= p.lambda;
  }
  PureState s({ma, mb}, d, std::move(amp), /*renormalize=*/true);
  check_leakage(s, leak_budget, "tmsv");
  return s;
}

Ensemble mixed_cat(const CatParams& p, ModeLabel ma, ModeLabel mb, double leak_budget) {
  if (p.z < 0.0 || p.z > 1.0) throw InvalidArgumentError("cat mixing parameter z must be in [0,1]");
  if (p.z == 0.0 && p.alpha == cxd(0.0) && p.beta == cxd(0.0))
    throw IllDefinedStateError("cat state with z=0 and alpha=beta=0 is ill-defined");

  const int d = p.cutoff;
  const double s = std::exp(-2.0 * (std::norm(p.alpha) + std::norm(p.beta)));
  const double N = 0.5 / (1.0 - (1.0 - p.z) * s);
  const double wp = N * p.z * (1.0 + s);
  const double wm = N * (2.0 - p.z) * (1.0 - s);

  PureState u = tensor(coherent(p.alpha, d, ma, leak_budget), coherent(p.beta, d, mb, leak_budget));
  PureState v = tensor(coherent(-p.alpha, d, ma, leak_budget), coherent(-p.beta, d, mb, leak_budget));

  std::vector<std::pair<double, PureState>> branches;
  const double weight_floor = 1e-15;
  for (int sign : {+1, -1}) {
    double w = sign > 0 ? wp : wm;
    if (w <= weight_floor) continue;
    std::vector<cxd> amp(u.dim());
    for (std::size_t i = 0; i < amp.size(); ++i)
      amp[i] = u.amplitudes()[i] + static_cast<double>(sign) * v.amplitudes()[i];
    branches.emplace_back(w, PureState({ma, mb}, d, std::move(amp), /*renormalize=*/true));
  }
  // the two analytic weights sum to 1; after dropping a vanishing branch,
  // renormalize the rounding residue away
  double wsum = 0;
  for (auto& [w, b] : branches) wsum += w;
  for (auto& [w, b] : branches) w /= wsum;
  Ensemble e(std::move(branches));
  if (e.leakage() > leak_budget)
    throw CutoffTooSmallError("mixed_cat: leakage " + std::to_string(e.leakage()) +
                              " exceeds budget " + std::to_string(leak_budget));
  return e;
}

PureState noon(const NoonParams& p, ModeLabel ma, ModeLabel mb) {
  if (p.n < 1) throw InvalidArgumentError("noon requires n >= 1");
  if (p.cutoff <= p.n)
    throw CutoffTooSmallError("noon requires cutoff > n");
  if (std::abs(std::norm(p.alpha) + std::norm(p.beta) - 1.0) > tol::norm)
    throw InvalidArgumentError("noon amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
  const int d = p.cutoff;
  std::vector<cxd> amp(static_cast<std::size_t>(d) * d, 0.0);
  amp[static_cast<std::size_t>(p.n) * d + 0] = p.alpha;
  amp[static_cast<std::size_t>(0) * d + p.n] = p.beta;
  return PureState({ma, mb}, d, std::move(amp));
}

}  // namespace cvw
