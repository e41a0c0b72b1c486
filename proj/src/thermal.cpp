#include "xyzdm/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xyzdm {

double XState::partition() const { return std::exp(log_partition); }

double XState::trace() const { return w1 + w2 + mu_plus + mu_minus; }

XState gibbs_closed_form(const ModelParams& p) {
  validate_params(p);
  if (!(p.T > 0.0)) {
    throw std::invalid_argument("thermal state requires T > 0; use ground_state_density for T = 0");
  }
  const double beta = 1.0 / p.T;
  const double x = xi(p), e = eta(p);
  const double s = beta * p.Jz / 2.0, pp = beta * x, q = beta * e;

  // Boltzmann weights exp(-beta eps_i) shifted by the largest exponent.
  const std::array<double, 4> ex = {s + pp, s - pp, -s + q, -s - q};
  const double lmax = *std::max_element(ex.begin(), ex.end());
  const double e1 = std::exp(ex[0] - lmax), e2 = std::exp(ex[1] - lmax);
  const double e3 = std::exp(ex[2] - lmax), e4 = std::exp(ex[3] - lmax);
  const double zs = e1 + e2 + e3 + e4;

  // b/xi and u/xi are taken as 0 when xi = 0; exact since then e1 = e2.
  const double b_xi = x > 0.0 ? p.b / x : 0.0;
  const double big_eta = e > 0.0 ? p.B / e : 0.0;

  XState out;
  out.w1 = (e1 * (1.0 - b_xi) + e2 * (1.0 + b_xi)) / (2.0 * zs);
  out.w2 = (e1 * (1.0 + b_xi) + e2 * (1.0 - b_xi)) / (2.0 * zs);
  out.mu_plus = (e3 * (1.0 - big_eta) + e4 * (1.0 + big_eta)) / (2.0 * zs);
  out.mu_minus = (e3 * (1.0 + big_eta) + e4 * (1.0 - big_eta)) / (2.0 * zs);
  out.nu = e > 0.0 ? -(p.J * p.gamma / e) * (e3 - e4) / (2.0 * zs) : 0.0;
  out.z = x > 0.0 ? -(central_coupling(p) / x) * ((e1 - e2) / (2.0 * zs)) : complexd(0.0, 0.0);
  out.log_partition = lmax + std::log(zs);
  return out;
}

Matrix4c gibbs_numeric(const ModelParams& p) {
  validate_params(p);
  if (!(p.T > 0.0)) {
    throw std::invalid_argument("thermal state requires T > 0; use ground_state_density for T = 0");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(build_hamiltonian(p));
  const Eigen::Vector4d w = es.eigenvalues();
  Eigen::Vector4d boltz;
  const double wmin = w.minCoeff();
  for (int i = 0; i < 4; ++i) boltz[i] = std::exp(-(w[i] - wmin) / p.T);
  const Matrix4c rho =
      es.eigenvectors() * boltz.asDiagonal() * es.eigenvectors().adjoint();
  return rho / rho.trace().real();
}

Matrix4c xstate_to_matrix(const XState& s) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = s.mu_plus;
  m(1, 1) = s.w1;
  m(2, 2) = s.w2;
  m(3, 3) = s.mu_minus;
  m(0, 3) = m(3, 0) = s.nu;
  m(1, 2) = s.z;
  m(2, 1) = std::conj(s.z);
  return m;
}

XState matrix_to_xstate(const Matrix4c& m, double tol) {
  if (!is_hermitian(m, tol)) {
    throw std::invalid_argument("X-state embedding requires a Hermitian matrix");
  }
  static const int off_x[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3},
                                  {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  for (const auto& ij : off_x) {
    if (std::abs(m(ij[0], ij[1])) > tol) {
      throw std::invalid_argument("matrix has entries outside the X pattern");
    }
  }
  if (std::abs(m(0, 3).imag()) > tol) {
    throw std::invalid_argument("corner coherence must be real");
  }
  XState out;
  out.mu_plus = m(0, 0).real();
  out.w1 = m(1, 1).real();
  out.w2 = m(2, 2).real();
  out.mu_minus = m(3, 3).real();
  out.nu = m(0, 3).real();
  out.z = m(1, 2);
  out.log_partition = 0.0;
  return out;
}

}  // namespace xyzdm
