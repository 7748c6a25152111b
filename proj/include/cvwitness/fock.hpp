#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvwitness/errors.hpp"

namespace cvw {

using cxd = std::complex<double>;

namespace tol {
// |norm^2 - 1| allowed on constructed states and ensemble weights.
inline constexpr double norm = 1e-10;
// Hermiticity / unitarity slack on operator matrices.
inline constexpr double op = 1e-12;
// Default truncation (leakage) budget for analytic state constructors.
inline constexpr double leak_budget = 1e-9;
// Residual imaginary part allowed on witness values.
inline constexpr double witness_imag = 1e-9;
}  // namespace tol

enum class Party : unsigned char { A, B, Ancilla };

// A mode is identified by (party, copy). Its position in a given state is the
// axis index of that state's amplitude tensor (PureState::axis_of).
struct ModeLabel {
  Party party{Party::A};
  int copy{1};
  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

inline ModeLabel mode_a(int copy = 1) { return {Party::A, copy}; }
inline ModeLabel mode_b(int copy = 1) { return {Party::B, copy}; }
inline ModeLabel mode_anc(int index) { return {Party::Ancilla, index}; }

std::string to_string(ModeLabel m);
ModeLabel parse_mode_label(const std::string& text);

struct WordFactor {
  ModeLabel mode;
  bool dagger{false};
  friend auto operator<=>(const WordFactor&, const WordFactor&) = default;
};

// Product of ladder operators, applied right-to-left as usual for operator
// products; the empty word is the identity.
class OperatorWord {
 public:
  OperatorWord() = default;
  explicit OperatorWord(std::vector<WordFactor> factors) : factors_(std::move(factors)) {}

  // Parses e.g. "a+ a b+ b" (dagger as trailing '+', "1" or "" for identity).
  // Letters map to party A/B on the given copy.
  static OperatorWord parse(const std::string& text, int copy = 1);

  const std::vector<WordFactor>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  std::size_t size() const { return factors_.size(); }

  OperatorWord on_copy(int copy) const;  // relabels every factor's copy index
  OperatorWord adjoint() const;
  OperatorWord concat(const OperatorWord& rhs) const;  // this * rhs

  // Stable-sorts factors by mode; factors on distinct modes commute, so this
  // is a canonical form suitable for symbolic comparison.
  OperatorWord canonical() const;

  std::string str() const;
  friend auto operator<=>(const OperatorWord&, const OperatorWord&) = default;

 private:
  std::vector<WordFactor> factors_;
};

class PureState {
 public:
  PureState(std::vector<ModeLabel> modes, int cutoff, std::vector<cxd> amplitudes,
            bool renormalize = false);

  static PureState vacuum(std::vector<ModeLabel> modes, int cutoff);
  // Product Fock state |n_0, n_1, ...> over the given modes.
  static PureState fock(std::vector<ModeLabel> modes, int cutoff, std::vector<int> occupations);

  int cutoff() const { return cutoff_; }
  int num_modes() const { return static_cast<int>(modes_.size()); }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<ModeLabel>& modes() const { return modes_; }
  const std::vector<cxd>& amplitudes() const { return amp_; }
  std::vector<cxd>& mutable_amplitudes() { return amp_; }

  int axis_of(ModeLabel m) const;          // throws ModeNotFoundError
  bool has_mode(ModeLabel m) const;
  std::size_t stride(int axis) const;      // row-major, axis 0 slowest

  double squared_norm() const;
  // Total probability of any mode occupying its top Fock level.
  double leakage() const;

  PureState relabeled_copy(int copy) const;  // sets every non-ancilla label's copy index

 private:
  std::vector<ModeLabel> modes_;
  int cutoff_{0};
  std::vector<cxd> amp_;
};

// Convex mixture of pure states on a shared mode list and cutoff. A PureState
// converts implicitly to a single-branch Ensemble, so mixed-state entry points
// accept both.
class Ensemble {
 public:
  Ensemble(const PureState& s) : branches_{{1.0, s}} {}  // NOLINT(google-explicit-constructor)
  Ensemble(std::vector<std::pair<double, PureState>> branches);

  const std::vector<std::pair<double, PureState>>& branches() const { return branches_; }
  int cutoff() const { return branches_.front().second.cutoff(); }
  const std::vector<ModeLabel>& modes() const { return branches_.front().second.modes(); }
  double leakage() const;
  Ensemble relabeled_copy(int copy) const;

 private:
  std::vector<std::pair<double, PureState>> branches_;
};

// Dense operator on an ordered subset of modes; matrix dimension cutoff^k.
class FockOperator {
 public:
  FockOperator(std::vector<ModeLabel> acting_modes, int cutoff, Eigen::MatrixXcd matrix,
               bool hermitian = false);

  const std::vector<ModeLabel>& acting_modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  bool hermitian() const { return hermitian_; }

  FockOperator adjoint() const;
  FockOperator operator*(const FockOperator& rhs) const;  // same mode set required

 private:
  std::vector<ModeLabel> modes_;
  int cutoff_{0};
  Eigen::MatrixXcd mat_;
  bool hermitian_{false};
};

// Elementary single-mode operators.
FockOperator annihilation(int cutoff, ModeLabel mode = mode_a());
FockOperator creation(int cutoff, ModeLabel mode = mode_a());
FockOperator number_op(int cutoff, ModeLabel mode = mode_a());
FockOperator identity_op(int cutoff, std::vector<ModeLabel> modes);

// Sum of scalar-weighted operator words. Stays symbolic (cutoff independent),
// so products and adjoints are exact; used for spin observables and multicopy
// determinant operators whose dense form would not fit in memory.
class OperatorSum {
 public:
  OperatorSum() = default;
  static OperatorSum word(cxd coeff, OperatorWord w);
  static OperatorSum identity(cxd coeff = 1.0);

  OperatorSum operator+(const OperatorSum& rhs) const;
  OperatorSum operator-(const OperatorSum& rhs) const;
  OperatorSum operator*(const OperatorSum& rhs) const;
  OperatorSum operator*(cxd scale) const;
  OperatorSum adjoint() const;

  // Merges canonically equal words; drops coefficients below eps.
  OperatorSum simplified(double eps = 1e-14) const;
  bool is_hermitian(double eps = 1e-12) const;
  std::size_t num_terms() const { return terms_.size(); }
  const std::vector<std::pair<cxd, OperatorWord>>& terms() const { return terms_; }

  FockOperator to_dense(std::vector<ModeLabel> modes, int cutoff, bool hermitian = false) const;

 private:
  std::vector<std::pair<cxd, OperatorWord>> terms_;
};

// --- state/operator algebra ---------------------------------------------

PureState tensor(const PureState& s1, const PureState& s2);
Ensemble tensor(const Ensemble& s1, const Ensemble& s2);

// Contracts op into the state on its acting modes; result may be unnormalized.
PureState apply(const FockOperator& op, const PureState& s);
PureState apply(const OperatorWord& w, const PureState& s);
PureState apply(const OperatorSum& sum, const PureState& s);

cxd expectation(const FockOperator& op, const PureState& s);
cxd expectation(const FockOperator& op, const Ensemble& s);
cxd expectation(const OperatorWord& w, const PureState& s);
cxd expectation(const OperatorWord& w, const Ensemble& s);
cxd expectation(const OperatorSum& sum, const PureState& s);
cxd expectation(const OperatorSum& sum, const Ensemble& s);

// Moment of an operator word; alias of expectation so witness code consumes
// moments uniformly.
cxd moment(const Ensemble& s, const OperatorWord& w);

struct PhotonDistribution {
  std::vector<ModeLabel> modes;
  int cutoff{0};
  std::vector<double> p;  // row-major over the listed modes

  double& at(const std::vector<int>& occupation);
  double total() const;
};

// Joint photon-number distribution over the given modes (other modes traced
// out). With no subset given, all non-ancilla modes are used.
PhotonDistribution photon_distribution(const Ensemble& s, const std::vector<ModeLabel>& modes);
PhotonDistribution photon_distribution(const Ensemble& s);

double norm_leakage(const Ensemble& s);

// Expectation of a function of the photon numbers of the given modes,
// i.e. sum over the joint counting distribution of f(occupations).
double photon_functional(const Ensemble& s, const std::vector<ModeLabel>& modes,
                         const std::function<double(const std::vector<int>&)>& f);

// --- misc helpers ---------------------------------------------------------

// Applies a single ladder operator along one tensor axis, in place.
void apply_ladder_axis(std::vector<cxd>& amp, int cutoff, std::size_t stride, bool dagger);

// exp(alpha a† - alpha* a) on the truncated space (unitary by construction).
Eigen::MatrixXcd displacement_matrix(cxd alpha, int cutoff);
PureState displaced(const PureState& s, ModeLabel mode, cxd alpha);

}  // namespace cvw
