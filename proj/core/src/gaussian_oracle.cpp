#include "mwqi/verification/gaussian_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mwqi/errors.hpp"

namespace mwqi::verification {
namespace {

using cd = std::complex<double>;
constexpr double tolerance = 1e-9;

double max_abs(const Eigen::MatrixXcd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace

std::size_t SecondMomentTable::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw DomainError("unknown mode label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

cd SecondMomentTable::number(const std::string& a, const std::string& b) const {
  return n(index_of(a), index_of(b));
}

cd SecondMomentTable::anomalous(const std::string& a, const std::string& b) const {
  return m(index_of(a), index_of(b));
}

SecondMomentTable thermal_table(const std::vector<std::string>& labels, const std::vector<double>& occupancies) {
  if (labels.size() != occupancies.size()) throw DomainError("thermal_table: label/occupancy count mismatch");
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) throw DomainError("thermal_table: duplicate labels");
  const auto k = static_cast<Eigen::Index>(labels.size());
  SecondMomentTable t;
  t.labels = labels;
  t.n = Eigen::MatrixXcd::Zero(k, k);
  t.m = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(occupancies[i] >= 0.0)) throw DomainError("thermal_table: negative occupancy");
    t.n(i, i) = occupancies[i];
  }
  return t;
}

SecondMomentTable direct_sum(const SecondMomentTable& a, const SecondMomentTable& b) {
  SecondMomentTable t;
  t.labels = a.labels;
  t.labels.insert(t.labels.end(), b.labels.begin(), b.labels.end());
  std::set<std::string> unique(t.labels.begin(), t.labels.end());
  if (unique.size() != t.labels.size()) throw DomainError("direct_sum: duplicate labels");
  const Eigen::Index ka = a.n.rows();
  const Eigen::Index k = ka + b.n.rows();
  t.n = Eigen::MatrixXcd::Zero(k, k);
  t.m = Eigen::MatrixXcd::Zero(k, k);
  t.n.topLeftCorner(ka, ka) = a.n;
  t.m.topLeftCorner(ka, ka) = a.m;
  t.n.bottomRightCorner(k - ka, k - ka) = b.n;
  t.m.bottomRightCorner(k - ka, k - ka) = b.m;
  return t;
}

void check_physical(const SecondMomentTable& t) {
  const auto k = static_cast<Eigen::Index>(t.labels.size());
  if (t.n.rows() != k || t.n.cols() != k || t.m.rows() != k || t.m.cols() != k) {
    throw DomainError("second-moment table has inconsistent dimensions");
  }
  const double scale = std::max({1.0, max_abs(t.n), max_abs(t.m)});
  if (max_abs(t.n - t.n.adjoint()) > tolerance * scale) throw DomainError("<a^+ a> block is not Hermitian");
  if (max_abs(t.m - t.m.transpose()) > tolerance * scale) throw DomainError("<a a> block is not symmetric");
  // Uncertainty relation V + i Omega / 2 >= 0. Checking the symplectic
  // spectrum alone would miss covariances that are not positive definite.
  const Eigen::MatrixXd v = quadrature_covariance(t);
  Eigen::MatrixXcd u = v.cast<cd>();
  for (Eigen::Index i = 0; i + 1 < u.rows(); i += 2) {
    u(i, i + 1) += cd(0.0, 0.5);
    u(i + 1, i) -= cd(0.0, 0.5);
  }
  if (u.size() == 0) return;
  const double lowest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(u, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (lowest < -tolerance * scale) {
    std::ostringstream msg;
    msg << "unphysical table: V + i Omega/2 has eigenvalue " << lowest;
    throw DomainError(msg.str());
  }
}

SecondMomentTable apply_linear_map(const SecondMomentTable& t, const std::vector<OutputMode>& map) {
  const auto k_in = static_cast<Eigen::Index>(t.labels.size());
  const auto k_out = static_cast<Eigen::Index>(map.size());
  Eigen::MatrixXcd alpha = Eigen::MatrixXcd::Zero(k_out, k_in);
  Eigen::MatrixXcd beta = Eigen::MatrixXcd::Zero(k_out, k_in);
  std::set<std::string> out_labels;
  for (Eigen::Index r = 0; r < k_out; ++r) {
    if (!out_labels.insert(map[r].label).second) throw DomainError("duplicate output label '" + map[r].label + "'");
    for (const auto& term : map[r].terms) {
      const auto c = static_cast<Eigen::Index>(t.index_of(term.input));
      (term.conjugate ? beta : alpha)(r, c) += term.coef;
    }
  }

  // Canonical commutators of the outputs.
  const Eigen::MatrixXcd comm = alpha * alpha.adjoint() - beta * beta.adjoint();
  const Eigen::MatrixXcd comm_anti = alpha * beta.transpose() - beta * alpha.transpose();
  const double scale = std::max({1.0, max_abs(alpha * alpha.adjoint()), max_abs(beta * beta.adjoint())});
  for (Eigen::Index r = 0; r < k_out; ++r) {
    if (std::abs(comm(r, r) - 1.0) > tolerance * scale) {
      std::ostringstream msg;
      msg << "map does not preserve [o, o^+] = 1 for output '" << map[r].label << "' (got " << comm(r, r).real()
          << ")";
      throw ConsistencyError(msg.str());
    }
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(k_out, k_out);
  if (max_abs(comm - id) > tolerance * scale || max_abs(comm_anti) > tolerance * scale) {
    throw ConsistencyError("map outputs are not mutually commuting bosonic modes");
  }

  const Eigen::MatrixXcd n_shift = Eigen::MatrixXcd::Identity(k_in, k_in) + t.n.transpose();  // <a_j a_m^+>
  SecondMomentTable out;
  for (const auto& o : map) out.labels.push_back(o.label);
  out.n = alpha.conjugate() * t.n * alpha.transpose() + alpha.conjugate() * t.m.conjugate() * beta.transpose() +
          beta.conjugate() * t.m * alpha.transpose() + beta.conjugate() * n_shift * beta.transpose();
  out.m = alpha * t.m * alpha.transpose() + alpha * n_shift * beta.transpose() + beta * t.n * alpha.transpose() +
          beta * t.m.conjugate() * beta.transpose();
  return out;
}

std::vector<OutputMode> passthrough(const std::vector<std::string>& labels) {
  std::vector<OutputMode> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(OutputMode{l, {MapTerm{l, cd(1.0), false}}});
  return out;
}

NumberMoments wick_number_moments(const SecondMomentTable& t, const std::map<std::string, double>& weights) {
  check_physical(t);
  std::vector<std::pair<Eigen::Index, double>> w;
  for (const auto& [label, weight] : weights) w.emplace_back(static_cast<Eigen::Index>(t.index_of(label)), weight);

  NumberMoments r;
  for (const auto& [i, wi] : w) r.mean += wi * t.n(i, i).real();
  // Cov(n_i, n_j) = <a_i^+ a_j^+><a_i a_j> + <a_i^+ a_j><a_i a_j^+>
  //              = |m_ij|^2 + |n_ij|^2 + delta_ij n_ii.
  for (const auto& [i, wi] : w) {
    for (const auto& [j, wj] : w) {
      double cov = std::norm(t.m(i, j)) + std::norm(t.n(i, j));
      if (i == j) cov += t.n(i, i).real();
      r.variance += wi * wj * cov;
    }
  }
  return r;
}

Eigen::MatrixXd quadrature_covariance(const SecondMomentTable& t) {
  const auto k = static_cast<Eigen::Index>(t.labels.size());
  const Eigen::MatrixXcd half_id = 0.5 * Eigen::MatrixXcd::Identity(k, k);
  // Symmetrised correlations of xi = (a_1..a_k, a_1^+..a_k^+).
  Eigen::MatrixXcd sigma(2 * k, 2 * k);
  sigma.topLeftCorner(k, k) = t.m;
  sigma.topRightCorner(k, k) = t.n.transpose() + half_id;
  sigma.bottomLeftCorner(k, k) = t.n + half_id;
  sigma.bottomRightCorner(k, k) = t.m.conjugate();

  const double r = 1.0 / std::sqrt(2.0);
  const cd i(0.0, 1.0);
  Eigen::MatrixXcd tr = Eigen::MatrixXcd::Zero(2 * k, 2 * k);
  for (Eigen::Index q = 0; q < k; ++q) {
    tr(2 * q, q) = r;
    tr(2 * q, k + q) = r;
    tr(2 * q + 1, q) = -i * r;
    tr(2 * q + 1, k + q) = i * r;
  }
  const Eigen::MatrixXcd v = tr * sigma * tr.transpose();
  const double scale = std::max(1.0, max_abs(v));
  if (v.imag().cwiseAbs().maxCoeff() > tolerance * scale) {
    throw DomainError("quadrature covariance is not real: table lacks bosonic structure");
  }
  Eigen::MatrixXd out = v.real();
  return 0.5 * (out + out.transpose());
}

std::vector<double> symplectic_spectrum_numeric(const Eigen::MatrixXd& cm) {
  if (cm.rows() != cm.cols() || cm.rows() % 2 != 0) throw DomainError("covariance matrix must be 2N x 2N");
  const double scale = cm.size() == 0 ? 1.0 : std::max(1.0, cm.cwiseAbs().maxCoeff());
  if ((cm - cm.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("covariance matrix is not symmetric");
  }
  const Eigen::Index n = cm.rows() / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(cm.rows(), cm.cols());
  for (Eigen::Index q = 0; q < n; ++q) {
    omega(2 * q, 2 * q + 1) = 1.0;
    omega(2 * q + 1, 2 * q) = -1.0;
  }
  const Eigen::MatrixXcd a = cd(0.0, 1.0) * (omega * cm).cast<cd>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  if (solver.info() != Eigen::Success) throw DomainError("eigenvalue solver failed");
  std::vector<double> moduli;
  for (Eigen::Index q = 0; q < a.rows(); ++q) moduli.push_back(std::abs(solver.eigenvalues()(q)));
  std::sort(moduli.begin(), moduli.end());
  std::vector<double> out;
  for (Eigen::Index q = 0; q < n; ++q) out.push_back(0.5 * (moduli[2 * q] + moduli[2 * q + 1]));
  return out;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& cm, std::size_t mode) {
  const auto p = static_cast<Eigen::Index>(2 * mode + 1);
  if (p >= cm.rows()) throw DomainError("partial_transpose: mode index out of range");
  Eigen::MatrixXd out = cm;
  out.row(p) *= -1.0;
  out.col(p) *= -1.0;
  return out;
}

}  // namespace mwqi::verification
