#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "test_util.hpp"
#include "xyzdm/model.hpp"

using namespace xyzdm;

namespace {

double residual(const Matrix4c& h, const Vector4c& v, double e) {
  return (h * v - e * v).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("hamiltonian entries follow the block structure") {
  ModelParams p{.J = 1.3, .gamma = 0.4, .Jz = -0.7, .D = 1.1, .B = 0.9, .b = 0.2};
  const Matrix4c h = build_hamiltonian(p);
  CHECK(h(0, 0).real() == doctest::Approx(-0.35 + 0.9).epsilon(1e-15));
  CHECK(h(1, 1).real() == doctest::Approx(0.35 + 0.2).epsilon(1e-15));
  CHECK(h(2, 2).real() == doctest::Approx(0.35 - 0.2).epsilon(1e-15));
  CHECK(h(3, 3).real() == doctest::Approx(-0.35 - 0.9).epsilon(1e-15));
  CHECK(h(0, 3) == complexd(1.3 * 0.4, 0.0));
  CHECK(h(1, 2) == complexd(1.3, -0.7 * 1.1));
  CHECK(h(2, 1) == std::conj(h(1, 2)));
  CHECK(h(0, 1) == complexd(0.0, 0.0));
  CHECK(is_hermitian(h));
}

TEST_CASE("closed-form spectrum at a pinned parameter point") {
  ModelParams p{.J = 1.0, .gamma = 0.5, .Jz = -1.0, .D = 1.0, .B = 0.8, .b = 0.0};
  const SpectralData sd = spectral_data(p);
  CHECK(sd.xi == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sd.eta == doctest::Approx(std::sqrt(0.89)).epsilon(1e-15));
  CHECK(sd.energies[0] == doctest::Approx(1.9142135623730951).epsilon(1e-15));
  CHECK(sd.energies[1] == doctest::Approx(-0.9142135623730951).epsilon(1e-15));
  CHECK(sd.energies[2] == doctest::Approx(0.4433981132056604).epsilon(1e-15));
  CHECK(sd.energies[3] == doctest::Approx(-1.4433981132056604).epsilon(1e-15));
  CHECK(sd.ground_index() == 3);
  const Matrix4c h = build_hamiltonian(p);
  for (int i = 0; i < 4; ++i) {
    CHECK(residual(h, sd.states[i], sd.energies[i]) < 1e-14);
    CHECK(sd.states[i].norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("eigenvectors satisfy H v = e v over random draws") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 300; ++k) {
    const ModelParams p = test::draw_params(rng);
    const Matrix4c h = build_hamiltonian(p);
    const SpectralData sd = spectral_data(p);
    for (int i = 0; i < 4; ++i) {
      CHECK(residual(h, sd.states[i], sd.energies[i]) < 1e-12);
      CHECK(sd.states[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        CHECK(std::abs(sd.states[i].dot(sd.states[j])) < 1e-12);
      }
    }
  }
}

TEST_CASE("degenerate couplings keep the eigensystem well defined") {
  // xi = 0 and eta = 0 simultaneously: all couplings off, pure field terms.
  ModelParams p{.J = 0.0, .gamma = 0.0, .Jz = 2.0, .D = 0.0, .B = 0.0, .b = 0.0};
  const SpectralData sd = spectral_data(p);
  const Matrix4c h = build_hamiltonian(p);
  for (int i = 0; i < 4; ++i) {
    CHECK(residual(h, sd.states[i], sd.energies[i]) < 1e-15);
    CHECK(sd.states[i].norm() == doctest::Approx(1.0).epsilon(1e-15));
  }
  // b-dominated central block without transverse coupling.
  p = ModelParams{.J = 0.0, .gamma = 0.0, .Jz = 1.0, .D = 0.0, .B = 0.5, .b = -0.75};
  const SpectralData sd2 = spectral_data(p);
  const Matrix4c h2 = build_hamiltonian(p);
  for (int i = 0; i < 4; ++i) {
    CHECK(residual(h2, sd2.states[i], sd2.energies[i]) < 1e-15);
  }
}

TEST_CASE("pauli and bell conventions") {
  for (int k = 0; k < 4; ++k) {
    CHECK((pauli(k) * pauli(k) - pauli(0)).cwiseAbs().maxCoeff() < 1e-15);
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const complexd ip = bell_state(i).dot(bell_state(j));
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-15);
    }
  }
  // bell_state(k) is (pauli(k) x 1) |Psi->.
  Vector4c psi_minus;
  psi_minus << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
  for (int k = 0; k < 4; ++k) {
    const Vector4c expect = kron2(pauli(k), pauli(0)) * psi_minus;
    CHECK((bell_state(k) - expect).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("ground state density matches the numeric eigensolver") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const ModelParams p = test::draw_params(rng);
    const Matrix4c rho = ground_state_density(p);
    require_density(rho);
    const SpectralData sd = spectral_data(p);
    if (sd.ground_gap() > 1e-6) {
      // Pure projector: rho^2 = rho and the energy expectation is E0.
      CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-12);
      const double e = (build_hamiltonian(p) * rho).trace().real();
      CHECK(e == doctest::Approx(sd.ground_energy()).epsilon(1e-10));
    }
  }
}

TEST_CASE("ground state density at an exact level crossing") {
  // Jz = 0, J = 1, b = 0, D = 0, gamma = 0, B = 1: both blocks reach -1.
  ModelParams p{.J = 1.0, .gamma = 0.0, .Jz = 0.0, .D = 0.0, .B = 1.0, .b = 0.0};
  const SpectralData sd = spectral_data(p);
  CHECK(sd.ground_gap() < 1e-15);
  const Matrix4c rho = ground_state_density(p);
  require_density(rho);
  // Equal mixture of two orthogonal states: purity 1/2.
  CHECK((rho * rho).trace().real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  ModelParams p;
  p.gamma = 1.5;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  p.gamma = 0.0;
  p.J = std::nan("");
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  CHECK_THROWS_AS(pauli(4), std::invalid_argument);
  CHECK_THROWS_AS(bell_state(-1), std::invalid_argument);
}

TEST_CASE("density matrix validation") {
  Matrix4c m = Matrix4c::Identity() * 0.25;
  CHECK_NOTHROW(require_density(m));
  m(0, 1) = complexd(0.1, 0.0);  // not Hermitian
  CHECK_THROWS_AS(require_density(m), std::invalid_argument);
  m = Matrix4c::Identity() * 0.5;  // trace 2
  CHECK_THROWS_AS(require_density(m), std::invalid_argument);
  m = Matrix4c::Zero();  // negative eigenvalue
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  CHECK_THROWS_AS(require_density(m), std::invalid_argument);
}
