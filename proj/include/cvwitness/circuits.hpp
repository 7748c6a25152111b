#pragma once

#include <map>
#include <optional>

#include "cvwitness/fock.hpp"

namespace cvw {

// Passive mode transformation a_i -> sum_j M_ij a_j over the listed modes.
struct ModeUnitary {
  Eigen::MatrixXcd matrix;
  std::vector<ModeLabel> mode_order;

  ModeUnitary(Eigen::MatrixXcd m, std::vector<ModeLabel> order);
  int num_modes() const { return static_cast<int>(mode_order.size()); }
};

struct CircuitElement {
  enum class Kind { BS, PS };
  Kind kind{Kind::BS};
  ModeLabel m1;
  ModeLabel m2;       // unused for PS
  double param{0.5};  // transmittivity for BS, phase for PS

  static CircuitElement bs(ModeLabel m1, ModeLabel m2, double tau);
  static CircuitElement ps(ModeLabel m, double theta);
};

// Elements are applied to the state in list order (the first element acts
// first), so the composed mode matrix is M = E_n ... E_2 E_1.
struct CircuitSpec {
  std::vector<CircuitElement> elements;

  std::vector<ModeLabel> touched_modes() const;  // in order of first appearance
};

// The building blocks as printed: bs has the -sqrt(tau) lower-right sign,
// ps is exp(-i theta).
ModeUnitary bs(double tau, ModeLabel m1 = mode_a(1), ModeLabel m2 = mode_a(2));
ModeUnitary ps(double theta, ModeLabel m = mode_a(1));

// Product of the embedded element matrices in application order. The mode
// order defaults to first appearance in the spec.
ModeUnitary compose(const CircuitSpec& spec,
                    std::optional<std::vector<ModeLabel>> mode_order = std::nullopt);

// Lifts a mode unitary to the truncated Fock space, so that the lifted U
// satisfies U† a_i U = sum_j M_ij a_j (exact on every fully retained total
// photon-number sector). One- and two-mode inputs are lifted directly from
// the exact photon-number-block matrix elements; larger inputs are factored
// into two-mode Givens blocks and a diagonal phase layer first.
FockOperator lift(const ModeUnitary& u, int cutoff);

// Applies the circuit element-by-element without forming the joint unitary.
PureState apply_circuit(const PureState& s, const CircuitSpec& spec);
Ensemble apply_circuit(const Ensemble& s, const CircuitSpec& spec);

// Pure-loss channel: couples the mode to a fresh vacuum ancilla via a beam
// splitter of transmittance tau; the ancilla is appended to the mode list and
// never read.
PureState loss(const PureState& s, ModeLabel mode, double tau);
Ensemble loss(const Ensemble& s, ModeLabel mode, double tau);

// Transmittance per mode; modes absent from the map are lossless.
struct LossMap {
  std::map<ModeLabel, double> tau;

  bool empty() const { return tau.empty(); }
  double get(ModeLabel m) const {
    auto it = tau.find(m);
    return it == tau.end() ? 1.0 : it->second;
  }
};

Ensemble apply_losses(const Ensemble& s, const LossMap& losses);

// The measurement circuits used by the witnesses, on canonical copy labels
// a1..a3 / b1..b3 (single copy a1, b1 for the spin witness):
//   d124/concentrator   mean-field concentration on both parties
//   d124/C1 C2 C3       spin-product readout circuits on modes (2,3)
//   d149/F1..F5         three-copy readout circuits
//   d1913/Lx Ly Lz      joint spin measurement circuits on (a1, b1)
const std::map<std::string, CircuitSpec>& named_circuits();
const CircuitSpec& named_circuit(const std::string& key);  // throws on unknown key

}  // namespace cvw
