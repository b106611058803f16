#include "spdcsim/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include "spdcsim/errors.hpp"

namespace spdcsim {

PolarizationDensityMatrix::PolarizationDensityMatrix()
    : m_(0.25 * Matrix::Identity()) {}

PolarizationDensityMatrix PolarizationDensityMatrix::from_coherence(
    std::complex<double> c) {
  Matrix m = Matrix::Zero();
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  m(3, 0) = 0.5 * c;
  m(0, 3) = 0.5 * std::conj(c);
  return PolarizationDensityMatrix(m);
}

PolarizationDensityMatrix PolarizationDensityMatrix::pure(
    const Eigen::Vector4cd& psi) {
  const Eigen::Vector4cd n = psi / psi.norm();
  return PolarizationDensityMatrix(n * n.adjoint());
}

double PolarizationDensityMatrix::hermiticity_error() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double PolarizationDensityMatrix::trace_error() const {
  return std::abs(m_.trace() - std::complex<double>(1.0, 0.0));
}

std::array<double, 4> PolarizationDensityMatrix::eigenvalues() const {
  const Matrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  std::array<double, 4> ev{};
  for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()(i);
  return ev;
}

double PolarizationDensityMatrix::min_eigenvalue() const {
  return eigenvalues()[0];
}

void PolarizationDensityMatrix::require_valid(double herm_tol, double trace_tol,
                                              double eig_floor) const {
  std::ostringstream msg;
  bool ok = true;
  if (hermiticity_error() > herm_tol) {
    msg << " hermiticity error " << hermiticity_error() << ";";
    ok = false;
  }
  if (trace_error() > trace_tol) {
    msg << " trace error " << trace_error() << ";";
    ok = false;
  }
  if (min_eigenvalue() < eig_floor) {
    msg << " min eigenvalue " << min_eigenvalue() << ";";
    ok = false;
  }
  if (!ok) throw NumericalError("density matrix invariants violated:" + msg.str());
}

Eigen::Vector4cd phi_state(double zeta) {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  v(0) = s;
  v(3) = s * std::exp(std::complex<double>(0.0, zeta));
  return v;
}

Eigen::Vector4cd bell_phi_plus() { return phi_state(0.0); }
Eigen::Vector4cd bell_phi_minus() { return phi_state(3.141592653589793238); }

double coincidence_probability(const PolarizationDensityMatrix& rho,
                               double alpha1, double alpha2) {
  Eigen::Vector4cd v;
  const double c1 = std::cos(alpha1), s1 = std::sin(alpha1);
  const double c2 = std::cos(alpha2), s2 = std::sin(alpha2);
  v << c1 * c2, c1 * s2, s1 * c2, s1 * s2;
  return v.dot(rho.matrix() * v).real();
}

double fidelity(const PolarizationDensityMatrix& rho,
                const Eigen::Vector4cd& target) {
  return target.dot(rho.matrix() * target).real();
}

double trace_distance(const PolarizationDensityMatrix& a,
                      const PolarizationDensityMatrix& b) {
  const Eigen::Matrix4cd d = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(0.5 * (d + d.adjoint()));
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace spdcsim
