#include "xyzdm/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace xyzdm {

namespace {

bool all_finite(const ModelParams& p) {
  return std::isfinite(p.J) && std::isfinite(p.gamma) && std::isfinite(p.Jz) &&
         std::isfinite(p.D) && std::isfinite(p.B) && std::isfinite(p.b) &&
         std::isfinite(p.T);
}

// Unit eigenvectors of [[d, u], [conj(u), -d]] for eigenvalues +-|(d, u)|,
// parameterized to stay continuous as u -> 0.
struct BlockPair {
  complexd plus0, plus1;    // eigenvector for +splitting
  complexd minus0, minus1;  // eigenvector for -splitting
};

BlockPair block_eigenvectors(double d, complexd u) {
  const double chi = std::atan2(std::abs(u), d);
  const double alpha = std::arg(u);
  const complexd ph = std::polar(1.0, alpha);
  const double c = std::cos(chi / 2.0), s = std::sin(chi / 2.0);
  return {ph * c, complexd(s, 0.0), -ph * s, complexd(c, 0.0)};
}

// Rotates the largest-magnitude component to the positive real axis.
void normalize_phase(Vector4c& v) {
  int imax = 0;
  double best = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double a = std::abs(v[i]);
    if (a > best + 1e-15) {
      best = a;
      imax = i;
    }
  }
  if (best > 0.0) v *= std::conj(v[imax]) / best;
}

}  // namespace

void validate_params(const ModelParams& p) {
  if (!all_finite(p)) {
    throw std::invalid_argument("model parameters must be finite");
  }
  if (!(std::abs(p.gamma) <= 1.0)) {
    throw std::invalid_argument("anisotropy gamma must satisfy |gamma| <= 1, got " +
                                std::to_string(p.gamma));
  }
}

double xi(const ModelParams& p) {
  return std::sqrt(p.b * p.b + p.J * p.J + p.Jz * p.D * p.Jz * p.D);
}

double eta(const ModelParams& p) {
  const double jg = p.J * p.gamma;
  return std::sqrt(p.B * p.B + jg * jg);
}

complexd central_coupling(const ModelParams& p) {
  return {p.J, p.Jz * p.D};
}

Matrix4c build_hamiltonian(const ModelParams& p) {
  validate_params(p);
  const complexd u = central_coupling(p);
  Matrix4c h = Matrix4c::Zero();
  h(0, 0) = p.Jz / 2.0 + p.B;
  h(1, 1) = -p.Jz / 2.0 + p.b;
  h(2, 2) = -p.Jz / 2.0 - p.b;
  h(3, 3) = p.Jz / 2.0 - p.B;
  h(0, 3) = h(3, 0) = p.J * p.gamma;
  h(1, 2) = u;
  h(2, 1) = std::conj(u);
  return h;
}

double SpectralData::ground_energy() const {
  return *std::min_element(energies.begin(), energies.end());
}

int SpectralData::ground_index() const {
  return static_cast<int>(std::min_element(energies.begin(), energies.end()) -
                          energies.begin());
}

double SpectralData::ground_gap() const {
  std::array<double, 4> e = energies;
  std::sort(e.begin(), e.end());
  return e[1] - e[0];
}

SpectralData spectral_data(const ModelParams& p) {
  validate_params(p);
  SpectralData out;
  out.xi = xi(p);
  out.eta = eta(p);
  out.energies = {-p.Jz / 2.0 + out.xi, -p.Jz / 2.0 - out.xi,
                  p.Jz / 2.0 + out.eta, p.Jz / 2.0 - out.eta};

  const BlockPair central = block_eigenvectors(p.b, central_coupling(p));
  const BlockPair outer = block_eigenvectors(p.B, complexd(p.J * p.gamma, 0.0));

  for (auto& v : out.states) v = Vector4c::Zero();
  out.states[0][1] = central.plus0;
  out.states[0][2] = central.plus1;
  out.states[1][1] = central.minus0;
  out.states[1][2] = central.minus1;
  out.states[2][0] = outer.plus0;
  out.states[2][3] = outer.plus1;
  out.states[3][0] = outer.minus0;
  out.states[3][3] = outer.minus1;
  for (auto& v : out.states) normalize_phase(v);
  return out;
}

Matrix4c ground_state_density(const ModelParams& p, double tol) {
  const SpectralData sd = spectral_data(p);
  const double e0 = sd.ground_energy();
  const double window = tol * std::max(1.0, std::abs(e0));
  Matrix4c rho = Matrix4c::Zero();
  int count = 0;
  for (int i = 0; i < 4; ++i) {
    if (sd.energies[i] - e0 <= window) {
      rho += sd.states[i] * sd.states[i].adjoint();
      ++count;
    }
  }
  return rho / static_cast<double>(count);
}

const Matrix2c& pauli(int k) {
  static const std::array<Matrix2c, 4> sigma = [] {
    std::array<Matrix2c, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, complexd(0, -1), complexd(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  if (k < 0 || k > 3) throw std::invalid_argument("pauli index must be 0..3");
  return sigma[k];
}

const Vector4c& bell_state(int k) {
  static const std::array<Vector4c, 4> bell = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Vector4c psi_minus;
    psi_minus << 0, r, -r, 0;
    std::array<Vector4c, 4> out;
    for (int mu = 0; mu < 4; ++mu) {
      out[mu] = kron2(pauli(mu), pauli(0)) * psi_minus;
    }
    return out;
  }();
  if (k < 0 || k > 3) throw std::invalid_argument("bell index must be 0..3");
  return bell[k];
}

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

bool is_hermitian(const Matrix4c& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_density(const Matrix4c& m, double tol) {
  if (!is_hermitian(m, tol)) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > tol || std::abs(m.trace().imag()) > tol) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("density matrix must be positive semidefinite");
  }
}

}  // namespace xyzdm
