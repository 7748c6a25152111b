#include "cvwitness/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cvw {

namespace {

std::size_t pow_size(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

void check_cutoff(int cutoff) {
  if (cutoff < 2) throw InvalidCutoffError("cutoff must be >= 2, got " + std::to_string(cutoff));
}

void check_unique_labels(const std::vector<ModeLabel>& modes) {
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = i + 1; j < modes.size(); ++j)
      if (modes[i] == modes[j])
        throw LabelCollisionError("duplicate mode label " + to_string(modes[i]));
}

// Reorders tensor axes: output axis k carries input axis perm[k].
std::vector<cxd> permute_axes(const std::vector<cxd>& in, int cutoff, int m,
                              const std::vector<int>& perm) {
  std::vector<std::size_t> in_stride(m, 1);
  for (int i = m - 2; i >= 0; --i) in_stride[i] = in_stride[i + 1] * cutoff;
  std::vector<std::size_t> gather_stride(m);
  for (int k = 0; k < m; ++k) gather_stride[k] = in_stride[perm[k]];

  std::vector<cxd> out(in.size());
  std::vector<int> digits(m, 0);
  std::size_t src = 0;
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = in[src];
    for (int ax = m - 1; ax >= 0; --ax) {
      src += gather_stride[ax];
      if (++digits[ax] < cutoff) break;
      digits[ax] = 0;
      src -= gather_stride[ax] * cutoff;
    }
  }
  return out;
}

}  // namespace

std::string to_string(ModeLabel m) {
  const char* prefix = m.party == Party::A ? "a" : (m.party == Party::B ? "b" : "anc");
  return prefix + std::to_string(m.copy);
}

ModeLabel parse_mode_label(const std::string& text) {
  auto fail = [&] { throw InvalidArgumentError("bad mode label '" + text + "'"); };
  Party p;
  std::size_t at = 0;
  if (text.rfind("anc", 0) == 0) {
    p = Party::Ancilla;
    at = 3;
  } else if (!text.empty() && (text[0] == 'a' || text[0] == 'b')) {
    p = text[0] == 'a' ? Party::A : Party::B;
    at = 1;
  } else {
    fail();
  }
  if (at >= text.size()) fail();
  int copy = 0;
  for (; at < text.size(); ++at) {
    if (!std::isdigit(static_cast<unsigned char>(text[at]))) fail();
    copy = copy * 10 + (text[at] - '0');
  }
  if (copy < 1) fail();
  return {p, copy};
}

OperatorWord OperatorWord::parse(const std::string& text, int copy) {
  std::vector<WordFactor> factors;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    bool dagger = false;
    if (tok.size() >= 2 && tok.back() == '+') {
      dagger = true;
      tok.pop_back();
    }
    if (tok == "a")
      factors.push_back({mode_a(copy), dagger});
    else if (tok == "b")
      factors.push_back({mode_b(copy), dagger});
    else
      throw InvalidArgumentError("bad word token '" + tok + "'");
  }
  return OperatorWord(std::move(factors));
}

OperatorWord OperatorWord::on_copy(int copy) const {
  auto f = factors_;
  for (auto& x : f)
    if (x.mode.party != Party::Ancilla) x.mode.copy = copy;
  return OperatorWord(std::move(f));
}

OperatorWord OperatorWord::adjoint() const {
  std::vector<WordFactor> f(factors_.rbegin(), factors_.rend());
  for (auto& x : f) x.dagger = !x.dagger;
  return OperatorWord(std::move(f));
}

OperatorWord OperatorWord::concat(const OperatorWord& rhs) const {
  auto f = factors_;
  f.insert(f.end(), rhs.factors_.begin(), rhs.factors_.end());
  return OperatorWord(std::move(f));
}

OperatorWord OperatorWord::canonical() const {
  auto f = factors_;
  std::stable_sort(f.begin(), f.end(),
                   [](const WordFactor& x, const WordFactor& y) { return x.mode < y.mode; });
  return OperatorWord(std::move(f));
}

std::string OperatorWord::str() const {
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += ' ';
    out += to_string(f.mode);
    if (f.dagger) out += '+';
  }
  return out;
}

PureState::PureState(std::vector<ModeLabel> modes, int cutoff, std::vector<cxd> amplitudes,
                     bool renormalize)
    : modes_(std::move(modes)), cutoff_(cutoff), amp_(std::move(amplitudes)) {
  check_cutoff(cutoff_);
  check_unique_labels(modes_);
  if (amp_.size() != pow_size(cutoff_, num_modes()))
    throw InvalidArgumentError("amplitude tensor size does not match cutoff^modes");
  double n2 = squared_norm();
  if (renormalize) {
    if (n2 <= 0) throw IllDefinedStateError("cannot normalize zero state");
    double s = 1.0 / std::sqrt(n2);
    for (auto& a : amp_) a *= s;
  } else if (std::abs(n2 - 1.0) > tol::norm) {
    throw NumericalInconsistencyError("state norm^2 deviates from 1 by " +
                                      std::to_string(std::abs(n2 - 1.0)));
  }
}

PureState PureState::vacuum(std::vector<ModeLabel> modes, int cutoff) {
  check_cutoff(cutoff);
  std::vector<cxd> amp(pow_size(cutoff, static_cast<int>(modes.size())), 0.0);
  amp[0] = 1.0;
  return PureState(std::move(modes), cutoff, std::move(amp));
}

PureState PureState::fock(std::vector<ModeLabel> modes, int cutoff, std::vector<int> occupations) {
  check_cutoff(cutoff);
  if (occupations.size() != modes.size())
    throw InvalidArgumentError("occupation list does not match mode list");
  std::size_t idx = 0;
  for (int n : occupations) {
    if (n < 0 || n >= cutoff)
      throw CutoffTooSmallError("fock level " + std::to_string(n) + " not below cutoff " +
                                std::to_string(cutoff));
    idx = idx * cutoff + static_cast<std::size_t>(n);
  }
  std::vector<cxd> amp(pow_size(cutoff, static_cast<int>(modes.size())), 0.0);
  amp[idx] = 1.0;
  return PureState(std::move(modes), cutoff, std::move(amp));
}

int PureState::axis_of(ModeLabel m) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i] == m) return static_cast<int>(i);
  throw ModeNotFoundError("mode " + to_string(m) + " not present in state");
}

bool PureState::has_mode(ModeLabel m) const {
  return std::find(modes_.begin(), modes_.end(), m) != modes_.end();
}

std::size_t PureState::stride(int axis) const {
  return pow_size(cutoff_, num_modes() - 1 - axis);
}

double PureState::squared_norm() const {
  double s = 0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

double PureState::leakage() const {
  const int m = num_modes();
  const int d = cutoff_;
  double leak = 0;
  std::vector<int> digits(m, 0);
  int at_top = 0;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (at_top > 0) leak += std::norm(amp_[i]);
    for (int ax = m - 1; ax >= 0; --ax) {
      if (digits[ax] == d - 1) --at_top;
      if (++digits[ax] < d) {
        if (digits[ax] == d - 1) ++at_top;
        break;
      }
      digits[ax] = 0;
    }
  }
  return leak;
}

PureState PureState::relabeled_copy(int copy) const {
  auto modes = modes_;
  for (auto& m : modes)
    if (m.party != Party::Ancilla) m.copy = copy;
  return PureState(std::move(modes), cutoff_, amp_);
}

Ensemble::Ensemble(std::vector<std::pair<double, PureState>> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw IllDefinedStateError("ensemble needs at least one branch");
  double wsum = 0;
  for (const auto& [w, s] : branches_) {
    if (w < 0) throw IllDefinedStateError("negative ensemble weight");
    wsum += w;
    if (s.cutoff() != cutoff() || s.modes() != modes())
      throw InvalidArgumentError("ensemble branches must share modes and cutoff");
  }
  if (std::abs(wsum - 1.0) > tol::norm)
    throw NumericalInconsistencyError("ensemble weights sum to " + std::to_string(wsum));
}

double Ensemble::leakage() const {
  double leak = 0;
  for (const auto& [w, s] : branches_) leak += w * s.leakage();
  return leak;
}

Ensemble Ensemble::relabeled_copy(int copy) const {
  std::vector<std::pair<double, PureState>> out;
  out.reserve(branches_.size());
  for (const auto& [w, s] : branches_) out.emplace_back(w, s.relabeled_copy(copy));
  return Ensemble(std::move(out));
}

FockOperator::FockOperator(std::vector<ModeLabel> acting_modes, int cutoff,
                           Eigen::MatrixXcd matrix, bool hermitian)
    : modes_(std::move(acting_modes)), cutoff_(cutoff), mat_(std::move(matrix)),
      hermitian_(hermitian) {
  check_cutoff(cutoff_);
  check_unique_labels(modes_);
  const auto dim = static_cast<Eigen::Index>(pow_size(cutoff_, static_cast<int>(modes_.size())));
  if (mat_.rows() != dim || mat_.cols() != dim)
    throw InvalidArgumentError("operator matrix dimension does not match cutoff^modes");
  if (hermitian_) {
    double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol::op)
      throw NumericalInconsistencyError("operator flagged hermitian deviates by " +
                                        std::to_string(dev));
  }
}

FockOperator FockOperator::adjoint() const {
  return FockOperator(modes_, cutoff_, mat_.adjoint(), hermitian_);
}

FockOperator FockOperator::operator*(const FockOperator& rhs) const {
  if (modes_ != rhs.modes_ || cutoff_ != rhs.cutoff_)
    throw InvalidArgumentError("operator product requires identical mode sets");
  return FockOperator(modes_, cutoff_, mat_ * rhs.mat_, false);
}

FockOperator annihilation(int cutoff, ModeLabel mode) {
  check_cutoff(cutoff);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return FockOperator({mode}, cutoff, std::move(m));
}

FockOperator creation(int cutoff, ModeLabel mode) { return annihilation(cutoff, mode).adjoint(); }

FockOperator number_op(int cutoff, ModeLabel mode) {
  check_cutoff(cutoff);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) m(n, n) = n;
  return FockOperator({mode}, cutoff, std::move(m), true);
}

FockOperator identity_op(int cutoff, std::vector<ModeLabel> modes) {
  const auto dim = static_cast<Eigen::Index>(pow_size(cutoff, static_cast<int>(modes.size())));
  return FockOperator(std::move(modes), cutoff, Eigen::MatrixXcd::Identity(dim, dim), true);
}

OperatorSum OperatorSum::word(cxd coeff, OperatorWord w) {
  OperatorSum s;
  s.terms_.emplace_back(coeff, std::move(w));
  return s;
}

OperatorSum OperatorSum::identity(cxd coeff) { return word(coeff, OperatorWord{}); }

OperatorSum OperatorSum::operator+(const OperatorSum& rhs) const {
  OperatorSum s = *this;
  s.terms_.insert(s.terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  return s;
}

OperatorSum OperatorSum::operator-(const OperatorSum& rhs) const { return *this + rhs * cxd(-1.0); }

OperatorSum OperatorSum::operator*(const OperatorSum& rhs) const {
  OperatorSum s;
  s.terms_.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& [c1, w1] : terms_)
    for (const auto& [c2, w2] : rhs.terms_) s.terms_.emplace_back(c1 * c2, w1.concat(w2));
  return s;
}

OperatorSum OperatorSum::operator*(cxd scale) const {
  OperatorSum s = *this;
  for (auto& [c, w] : s.terms_) c *= scale;
  return s;
}

OperatorSum OperatorSum::adjoint() const {
  OperatorSum s;
  s.terms_.reserve(terms_.size());
  for (const auto& [c, w] : terms_) s.terms_.emplace_back(std::conj(c), w.adjoint());
  return s;
}

OperatorSum OperatorSum::simplified(double eps) const {
  std::map<OperatorWord, cxd> merged;
  for (const auto& [c, w] : terms_) merged[w.canonical()] += c;
  OperatorSum s;
  for (const auto& [w, c] : merged)
    if (std::abs(c) > eps) s.terms_.emplace_back(c, w);
  return s;
}

bool OperatorSum::is_hermitian(double eps) const {
  return (*this - adjoint()).simplified(eps).num_terms() == 0;
}

FockOperator OperatorSum::to_dense(std::vector<ModeLabel> modes, int cutoff,
                                   bool hermitian) const {
  const auto dim = pow_size(cutoff, static_cast<int>(modes.size()));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<cxd> basis(dim, 0.0);
    basis[col] = 1.0;
    PureState e(modes, cutoff, std::move(basis));
    PureState out = apply(*this, e);
    for (std::size_t row = 0; row < dim; ++row)
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = out.amplitudes()[row];
  }
  return FockOperator(std::move(modes), cutoff, std::move(m), hermitian);
}

PureState tensor(const PureState& s1, const PureState& s2) {
  if (s1.cutoff() != s2.cutoff())
    throw InvalidArgumentError("tensor requires matching cutoffs");
  for (const auto& m : s2.modes())
    if (s1.has_mode(m)) throw LabelCollisionError("tensor with overlapping label " + to_string(m));
  std::vector<ModeLabel> modes = s1.modes();
  modes.insert(modes.end(), s2.modes().begin(), s2.modes().end());
  std::vector<cxd> amp(s1.dim() * s2.dim());
  std::size_t k = 0;
  for (const auto& x : s1.amplitudes())
    for (const auto& y : s2.amplitudes()) amp[k++] = x * y;
  return PureState(std::move(modes), s1.cutoff(), std::move(amp));
}

Ensemble tensor(const Ensemble& s1, const Ensemble& s2) {
  std::vector<std::pair<double, PureState>> out;
  for (const auto& [w1, b1] : s1.branches())
    for (const auto& [w2, b2] : s2.branches()) out.emplace_back(w1 * w2, tensor(b1, b2));
  return Ensemble(std::move(out));
}

void apply_ladder_axis(std::vector<cxd>& amp, int cutoff, std::size_t stride, bool dagger) {
  const std::size_t block = stride * static_cast<std::size_t>(cutoff);
  for (std::size_t base = 0; base < amp.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      cxd* p = amp.data() + base + off;
      if (dagger) {
        for (int n = cutoff - 1; n >= 1; --n)
          p[static_cast<std::size_t>(n) * stride] =
              std::sqrt(static_cast<double>(n)) * p[static_cast<std::size_t>(n - 1) * stride];
        p[0] = 0.0;
      } else {
        for (int n = 0; n + 1 < cutoff; ++n)
          p[static_cast<std::size_t>(n) * stride] =
              std::sqrt(static_cast<double>(n + 1)) * p[static_cast<std::size_t>(n + 1) * stride];
        p[static_cast<std::size_t>(cutoff - 1) * stride] = 0.0;
      }
    }
  }
}

PureState apply(const OperatorWord& w, const PureState& s) {
  std::vector<cxd> amp = s.amplitudes();
  // rightmost factor acts first
  for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it) {
    int axis = s.axis_of(it->mode);
    apply_ladder_axis(amp, s.cutoff(), s.stride(axis), it->dagger);
  }
  PureState out = s;
  out.mutable_amplitudes() = std::move(amp);
  return out;
}

PureState apply(const FockOperator& op, const PureState& s) {
  const int m = s.num_modes();
  const int k = static_cast<int>(op.acting_modes().size());
  if (op.cutoff() != s.cutoff())
    throw InvalidArgumentError("operator and state cutoffs differ");
  std::vector<int> acting(k);
  std::vector<bool> is_acting(m, false);
  for (int i = 0; i < k; ++i) {
    acting[i] = s.axis_of(op.acting_modes()[i]);
    is_acting[acting[i]] = true;
  }
  std::vector<int> perm;
  perm.reserve(m);
  for (int ax = 0; ax < m; ++ax)
    if (!is_acting[ax]) perm.push_back(ax);
  for (int i = 0; i < k; ++i) perm.push_back(acting[i]);

  std::vector<cxd> x = permute_axes(s.amplitudes(), s.cutoff(), m, perm);
  const auto D = static_cast<Eigen::Index>(op.matrix().rows());
  const auto R = static_cast<Eigen::Index>(x.size() / static_cast<std::size_t>(D));
  using RowMat = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<RowMat> X(x.data(), R, D);
  RowMat Y = X * op.matrix().transpose();
  std::vector<cxd> y(Y.data(), Y.data() + Y.size());

  std::vector<int> inv(m);
  for (int i = 0; i < m; ++i) inv[perm[i]] = i;
  std::vector<cxd> amp = permute_axes(y, s.cutoff(), m, inv);
  PureState out = s;
  out.mutable_amplitudes() = std::move(amp);
  return out;
}

PureState apply(const OperatorSum& sum, const PureState& s) {
  std::vector<cxd> acc(s.dim(), 0.0);
  for (const auto& [c, w] : sum.terms()) {
    PureState t = apply(w, s);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * t.amplitudes()[i];
  }
  PureState out = s;
  out.mutable_amplitudes() = std::move(acc);
  return out;
}

namespace {
cxd vdot(const std::vector<cxd>& x, const std::vector<cxd>& y) {
  cxd s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

template <typename Op>
cxd pure_expectation(const Op& op, const PureState& s) {
  return vdot(s.amplitudes(), apply(op, s).amplitudes());
}

template <typename Op>
cxd mixed_expectation(const Op& op, const Ensemble& s) {
  cxd tot = 0;
  for (const auto& [w, b] : s.branches()) tot += w * pure_expectation(op, b);
  return tot;
}
}  // namespace

cxd expectation(const FockOperator& op, const PureState& s) { return pure_expectation(op, s); }
cxd expectation(const FockOperator& op, const Ensemble& s) { return mixed_expectation(op, s); }
cxd expectation(const OperatorWord& w, const PureState& s) { return pure_expectation(w, s); }
cxd expectation(const OperatorWord& w, const Ensemble& s) { return mixed_expectation(w, s); }
cxd expectation(const OperatorSum& sum, const PureState& s) { return pure_expectation(sum, s); }
cxd expectation(const OperatorSum& sum, const Ensemble& s) { return mixed_expectation(sum, s); }

cxd moment(const Ensemble& s, const OperatorWord& w) { return expectation(w, s); }

double& PhotonDistribution::at(const std::vector<int>& occupation) {
  std::size_t idx = 0;
  for (int n : occupation) idx = idx * static_cast<std::size_t>(cutoff) + static_cast<std::size_t>(n);
  return p[idx];
}

double PhotonDistribution::total() const { return std::accumulate(p.begin(), p.end(), 0.0); }

PhotonDistribution photon_distribution(const Ensemble& s, const std::vector<ModeLabel>& modes) {
  if (modes.empty()) throw InvalidArgumentError("photon_distribution needs at least one mode");
  const int d = s.cutoff();
  PhotonDistribution dist{modes, d, std::vector<double>(pow_size(d, static_cast<int>(modes.size())), 0.0)};
  for (const auto& [w, b] : s.branches()) {
    const int m = b.num_modes();
    std::vector<std::size_t> sel_stride(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) sel_stride[k] = b.stride(b.axis_of(modes[k]));

    std::vector<int> digits(m, 0);
    std::size_t sel = 0;  // running index into dist.p
    std::vector<std::size_t> axis_weight(m, 0);
    for (int ax = 0; ax < m; ++ax) {
      for (std::size_t k = 0; k < modes.size(); ++k)
        if (b.axis_of(modes[k]) == ax) {
          std::size_t wgt = 1;
          for (std::size_t j = k + 1; j < modes.size(); ++j) wgt *= static_cast<std::size_t>(d);
          axis_weight[ax] = wgt;
        }
    }
    for (std::size_t i = 0; i < b.dim(); ++i) {
      dist.p[sel] += w * std::norm(b.amplitudes()[i]);
      for (int ax = m - 1; ax >= 0; --ax) {
        sel += axis_weight[ax];
        if (++digits[ax] < d) break;
        digits[ax] = 0;
        sel -= axis_weight[ax] * static_cast<std::size_t>(d);
      }
    }
  }
  return dist;
}

PhotonDistribution photon_distribution(const Ensemble& s) {
  std::vector<ModeLabel> keep;
  for (const auto& m : s.modes())
    if (m.party != Party::Ancilla) keep.push_back(m);
  return photon_distribution(s, keep);
}

double norm_leakage(const Ensemble& s) { return s.leakage(); }

double photon_functional(const Ensemble& s, const std::vector<ModeLabel>& modes,
                         const std::function<double(const std::vector<int>&)>& f) {
  double tot = 0;
  for (const auto& [w, b] : s.branches()) {
    const int m = b.num_modes();
    const int d = b.cutoff();
    std::vector<int> sel_axis(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) sel_axis[k] = b.axis_of(modes[k]);
    std::vector<int> digits(m, 0);
    std::vector<int> occ(modes.size(), 0);
    for (std::size_t i = 0; i < b.dim(); ++i) {
      double p = std::norm(b.amplitudes()[i]);
      if (p > 0) {
        for (std::size_t k = 0; k < modes.size(); ++k) occ[k] = digits[sel_axis[k]];
        tot += w * p * f(occ);
      }
      for (int ax = m - 1; ax >= 0; --ax) {
        if (++digits[ax] < d) break;
        digits[ax] = 0;
      }
    }
  }
  return tot;
}

Eigen::MatrixXcd displacement_matrix(cxd alpha, int cutoff) {
  check_cutoff(cutoff);
  // H = -i (alpha a† - alpha* a) is hermitian; D = exp(iH)
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  const cxd mi(0.0, -1.0);
  for (int n = 1; n < cutoff; ++n) {
    h(n, n - 1) = mi * alpha * std::sqrt(static_cast<double>(n));
    h(n - 1, n) = std::conj(h(n, n - 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(cutoff);
  for (int i = 0; i < cutoff; ++i) phases(i) = std::exp(cxd(0.0, es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

PureState displaced(const PureState& s, ModeLabel mode, cxd alpha) {
  FockOperator d({mode}, s.cutoff(), displacement_matrix(alpha, s.cutoff()));
  return apply(d, s);
}

}  // namespace cvw
