#pragma once

#include <array>

#include "xyzdm/entanglement.hpp"
#include "xyzdm/model.hpp"
#include "xyzdm/thermal.hpp"

namespace xyzdm {

// Pure input family |psi> = cos(theta/2)|10> + e^{-i phi} sin(theta/2)|01>
// with theta in [0, pi]; its concurrence is sin(theta).
struct InputState {
  double theta = 0.0;
  double phi = 0.0;
};

void validate_input(const InputState& s);

double input_concurrence(const InputState& s);

Matrix4c input_density(const InputState& s);

// Bell-basis diagonal of the resource in bell_state(0..3) order. The channel
// must be a valid density matrix.
std::array<double, 4> bell_probabilities(const Matrix4c& channel);

// Entanglement teleportation through two copies of the resource: the
// generalized depolarizing channel
//   rho_out = sum_{mu,nu} q_mu q_nu (s_mu x s_nu) rho_in (s_mu x s_nu).
// This 16-term sum is the ground truth the closed forms below are checked
// against.
Matrix4c teleport_density(const Matrix4c& channel, const Matrix4c& rho_in);

// Output of the thermal channel at the given input, in closed form. Stays in
// the X family; equal outer populations w m, corner 4 Re(z) nu cos(phi)
// sin(theta), central block mixing the input angles with w = w1 + w2 and
// m = mu_plus + mu_minus.
XState output_closed_form(const ModelParams& p, const InputState& s);

// Closed-form Wootters spectrum of the output, grouped like xstate_lambdas.
LambdaQuad output_lambdas_closed(const ModelParams& p, const InputState& s);

double output_concurrence_closed(const ModelParams& p, const InputState& s);

// Overlap fidelity tr(rho_in rho_out). rho_in must be pure within tol.
double fidelity(const Matrix4c& rho_in, const Matrix4c& rho_out,
                double tol = 1e-8);

// Literal angle form a' sin^2(theta/2) + b' cos^2(theta/2) +
// Re[c' e^{-i phi}] sin(theta). Coincides with the overlap at phi = 0; at
// general phi it does not (see the verification audit), which is why the
// decomposition below is the default evaluation path.
double fidelity_angle_form(const ModelParams& p, const InputState& s);

// Channel-only coefficients of F = classical + quantum * C_in^2:
//   classical = w^2, quantum = 1/2 - w + 2 (nu^2 cos(2 phi) + Re(z)^2).
struct FidelitySplit {
  double classical = 0.0;
  double quantum = 0.0;
};

FidelitySplit fidelity_split(const ModelParams& p, double phi);

// Decomposition form, exact against the overlap for every theta, phi.
double fidelity_closed(const ModelParams& p, const InputState& s);

// Input-averaged fidelity of the thermal channel in closed form:
//   (cosh^2(beta eta) + e^{2 beta Jz} (2 cosh^2(beta xi)
//    + (J/xi)^2 sinh^2(beta xi))) / (3 (cosh(beta eta)
//    + e^{beta Jz} cosh(beta xi))^2)
// evaluated with max-shifted exponentials so it is finite for all T > 0.
double average_fidelity(const ModelParams& p);

// Oracle for average_fidelity: 64x64 Gauss-Legendre average of the overlap
// fidelity of the 16-term sum over the input sphere.
double average_fidelity_quadrature(const ModelParams& p);

}  // namespace xyzdm
