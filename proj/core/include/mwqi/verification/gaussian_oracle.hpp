#pragma once

// Generic zero-mean Gaussian-state toolkit used to audit the closed forms.
// Nothing here knows about converters or receivers: states are tables of
// second moments, channels are linear maps, statistics come from Wick
// factorisation and spectra from eigenvalues.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mwqi::verification {

/// n(i, j) = <a_i^+ a_j>, m(i, j) = <a_i a_j>.
struct SecondMomentTable {
  std::vector<std::string> labels;
  Eigen::MatrixXcd n;
  Eigen::MatrixXcd m;

  std::size_t index_of(const std::string& label) const;
  std::complex<double> number(const std::string& a, const std::string& b) const;
  std::complex<double> anomalous(const std::string& a, const std::string& b) const;
};

/// Independent thermal modes.
SecondMomentTable thermal_table(const std::vector<std::string>& labels, const std::vector<double>& occupancies);

/// Concatenation of two uncorrelated tables (labels must be distinct).
SecondMomentTable direct_sum(const SecondMomentTable& a, const SecondMomentTable& b);

/// Throws DomainError if the blocks lack Hermitian / symmetric structure or
/// the quadrature covariance violates the uncertainty principle.
void check_physical(const SecondMomentTable& t);

/// out = sum coef * input (conjugate = false) or coef * input^+ (conjugate = true).
struct MapTerm {
  std::string input;
  std::complex<double> coef;
  bool conjugate = false;
};

struct OutputMode {
  std::string label;
  std::vector<MapTerm> terms;
};

/// Propagates the table through the map. The outputs must be canonical
/// bosonic modes ([o_k, o_l^+] = delta_kl, [o_k, o_l] = 0 within 1e-9),
/// otherwise ConsistencyError.
SecondMomentTable apply_linear_map(const SecondMomentTable& t, const std::vector<OutputMode>& map);

/// Identity legs for the listed modes, for composing partial maps.
std::vector<OutputMode> passthrough(const std::vector<std::string>& labels);

struct NumberMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of sum_i w_i a_i^+ a_i by fourth-moment factorisation.
NumberMoments wick_number_moments(const SecondMomentTable& t, const std::map<std::string, double>& weights);

/// Symmetrised covariance in (x_1, p_1, x_2, p_2, ...), x = (a + a^+)/sqrt 2,
/// vacuum variance 1/2.
Eigen::MatrixXd quadrature_covariance(const SecondMomentTable& t);

/// Symplectic eigenvalues (ascending) from the moduli of the eigenvalues of
/// i Omega V. Throws DomainError for a non-symmetric or odd-sized input.
std::vector<double> symplectic_spectrum_numeric(const Eigen::MatrixXd& cm);

/// Flips the momentum of mode `mode` (0-based).
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& cm, std::size_t mode);

}  // namespace mwqi::verification
