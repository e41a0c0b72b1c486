#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace xyzdm {

using complexd = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

// Two-qubit XYZ exchange with a z-axis Dzyaloshinskii-Moriya term in an
// inhomogeneous magnetic field (k_B = 1, sigma_z|0> = +|0>, basis order
// |00>, |01>, |10>, |11>):
//
//   H = (J/2) [(1+gamma) sx.sx + (1-gamma) sy.sy] + (Jz/2) sz.sz
//     + (Jz D/2) (sx.sy - sy.sx) + ((B+b)/2) sz.1 + ((B-b)/2) 1.sz
//
// The matrix couples only {|01>,|10>} (central block, splitting xi) and
// {|00>,|11>} (outer block, splitting eta).
struct ModelParams {
  double J = 1.0;      // planar exchange strength
  double gamma = 0.0;  // XY anisotropy, |gamma| <= 1
  double Jz = 0.0;     // z-axis exchange strength
  double D = 0.0;      // Dzyaloshinskii-Moriya strength in units of Jz
  double B = 0.0;      // uniform field component
  double b = 0.0;      // field inhomogeneity, site fields are B +- b
  double T = 1.0;      // temperature; thermal quantities require T > 0
};

// Throws std::invalid_argument on non-finite values or |gamma| > 1.
// T is allowed to be any finite value here; thermal operations reject
// T <= 0 themselves so that ground-state quantities remain usable at T = 0.
void validate_params(const ModelParams& p);

// Central-block splitting sqrt(b^2 + J^2 + (Jz D)^2).
double xi(const ModelParams& p);

// Outer-block splitting sqrt(B^2 + (J gamma)^2).
double eta(const ModelParams& p);

// Central off-diagonal coupling u = J + i Jz D.
complexd central_coupling(const ModelParams& p);

Matrix4c build_hamiltonian(const ModelParams& p);

// Closed-form eigensystem, grouped by invariant block:
//   index 0: central +   energy -Jz/2 + xi   (span of |01>, |10>)
//   index 1: central -   energy -Jz/2 - xi
//   index 2: outer   +   energy  Jz/2 + eta  (span of |00>, |11>)
//   index 3: outer   -   energy  Jz/2 - eta
// Eigenvectors are unit norm with the largest component rotated real
// positive, which keeps the xi -> 0 and eta -> 0 limits well defined.
struct SpectralData {
  std::array<double, 4> energies{};
  std::array<Vector4c, 4> states{};
  double xi = 0.0;
  double eta = 0.0;

  double ground_energy() const;
  int ground_index() const;   // lowest level, smallest index on exact ties
  double ground_gap() const;  // distance from the ground level to the next one
};

SpectralData spectral_data(const ModelParams& p);

// Projector onto the ground level, or the equal mixture over all levels
// within tol * max(1, |E_ground|) of it. The mixture is the T -> 0 limit of
// the Gibbs state at a level crossing.
Matrix4c ground_state_density(const ModelParams& p, double tol = 1e-9);

// k = 0..3 -> identity, sx, sy, sz.
const Matrix2c& pauli(int k);

// Bell basis ordered so that bell_state(k) = (pauli(k) x 1)|Psi->:
// Psi-, Phi- and Phi+ up to global phase, Psi+. With this pairing a pure
// |Psi-> resource teleports exactly through the pauli(k) corrections.
const Vector4c& bell_state(int k);

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b);

bool is_hermitian(const Matrix4c& m, double tol = 1e-10);

// Throws std::invalid_argument unless m is Hermitian with unit trace and
// eigenvalues >= -tol.
void require_density(const Matrix4c& m, double tol = 1e-8);

}  // namespace xyzdm
