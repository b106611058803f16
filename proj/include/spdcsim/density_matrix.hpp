#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace spdcsim {

/// Two-qubit polarization density matrix on the ordered basis
/// (HH, HV, VH, VV).
class PolarizationDensityMatrix {
 public:
  using Matrix = Eigen::Matrix4cd;

  /// Maximally mixed state.
  PolarizationDensityMatrix();
  explicit PolarizationDensityMatrix(const Matrix& m) : m_(m) {}

  /// The source family: 1/2 (|HH><HH| + |VV><VV| + c |VV><HH| + h.c.),
  /// so c = 1 is Phi+ and c = e^{i zeta} the state (|HH> + e^{i zeta}|VV>)/sqrt2.
  static PolarizationDensityMatrix from_coherence(std::complex<double> c);
  static PolarizationDensityMatrix pure(const Eigen::Vector4cd& psi);

  const Matrix& matrix() const { return m_; }
  std::complex<double> operator()(int i, int j) const { return m_(i, j); }

  double hermiticity_error() const;  // max elementwise |m - m^dagger|
  double trace_error() const;        // |tr(m) - 1|
  std::array<double, 4> eigenvalues() const;  // ascending, of (m+m^dagger)/2
  double min_eigenvalue() const;

  /// Throws NumericalError when the matrix is not Hermitian / unit trace /
  /// positive semidefinite within the given tolerances.
  void require_valid(double herm_tol = 1e-12, double trace_tol = 1e-12,
                     double eig_floor = -1e-10) const;

 private:
  Matrix m_;
};

/// (|HH> + e^{i zeta} |VV>)/sqrt(2).
Eigen::Vector4cd phi_state(double zeta);
Eigen::Vector4cd bell_phi_plus();
Eigen::Vector4cd bell_phi_minus();

/// <a1 a2| rho |a1 a2> with |a> = cos(a)|H> + sin(a)|V> on each arm.
double coincidence_probability(const PolarizationDensityMatrix& rho,
                               double alpha1, double alpha2);

/// <target| rho |target> for a normalized pure target.
double fidelity(const PolarizationDensityMatrix& rho,
                const Eigen::Vector4cd& target);

/// 1/2 * sum |eig(a - b)|.
double trace_distance(const PolarizationDensityMatrix& a,
                      const PolarizationDensityMatrix& b);

}  // namespace spdcsim
